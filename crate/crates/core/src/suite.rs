//! Named, seeded checks behind `pf verify`.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matching::{enumerate_pfaff, matching_count, PfaffPermutation};
use crate::models::{self, cosine_tolerance, Kernel, Positions};
use crate::perm::{classify_runs, dihedral_group, enumerate_sym};
use crate::pfaffian::{
    determinant, hook_expand_skew, hook_expand_symmetric, pfaffian_direct_with, symbolic_pfaffian,
    Mode, Settings, TriangularArray,
};
use crate::poly::Poly;
use crate::report::VerificationReport;
use crate::scalar::{rat, ratio, Scalar};
use crate::symmetry::{act, is_dihedral, sym_of_g_with, symmetry_group_with, ActionMode};

/// Random cases per `n` for the randomized checks.
const RANDOM_ARRAYS: usize = 50;
const RANDOM_VECTORS: usize = 100;
const TRIG_CASES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Enumeration,
    Pf4Golden,
    HookOracle,
    SkewDet,
    SymDihedral,
    SsymSkew,
    DihedralInvariance,
    SquareDiffForm,
    Collapse,
    CosineForm,
    CycleProduct,
    DetExamples,
    TrigProduct,
    TrigAlternating,
}

impl Check {
    pub const ALL: [Check; 14] = [
        Check::Enumeration,
        Check::Pf4Golden,
        Check::HookOracle,
        Check::SkewDet,
        Check::SymDihedral,
        Check::SsymSkew,
        Check::DihedralInvariance,
        Check::SquareDiffForm,
        Check::Collapse,
        Check::CosineForm,
        Check::CycleProduct,
        Check::DetExamples,
        Check::TrigProduct,
        Check::TrigAlternating,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Enumeration => "enumeration",
            Check::Pf4Golden => "pf4-golden",
            Check::HookOracle => "hook-oracle",
            Check::SkewDet => "skew-det",
            Check::SymDihedral => "sym-dihedral",
            Check::SsymSkew => "ssym-skew",
            Check::DihedralInvariance => "dihedral-invariance",
            Check::SquareDiffForm => "square-diff",
            Check::Collapse => "collapse",
            Check::CosineForm => "cosine",
            Check::CycleProduct => "cycle-product",
            Check::DetExamples => "det-examples",
            Check::TrigProduct => "trig-product",
            Check::TrigAlternating => "trig-alternating",
        }
    }

    /// Checks that do not depend on `n` run once per invocation.
    pub fn takes_n(self) -> bool {
        !matches!(self, Check::Pf4Golden | Check::TrigProduct)
    }

    /// Largest `n` run by default and under `--expensive`.
    pub fn limits(self) -> (usize, usize) {
        match self {
            Check::Enumeration => (6, 8),
            Check::Pf4Golden | Check::TrigProduct => (usize::MAX, usize::MAX),
            Check::HookOracle => (4, 5),
            Check::SkewDet => (3, 5),
            Check::SymDihedral => (3, 4),
            Check::SsymSkew => (3, 4),
            Check::DihedralInvariance => (4, 5),
            Check::SquareDiffForm => (5, 7),
            Check::Collapse => (3, 4),
            Check::CosineForm => (7, 8),
            Check::CycleProduct => (4, 4),
            Check::DetExamples => (3, 4),
            Check::TrigAlternating => (16, 64),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Check::ALL.iter().map(|c| c.name()).collect();
                Error::Parse(format!("unknown check {s:?}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Overrides the default floating tolerance of numeric checks.
    pub tol: Option<f64>,
    pub expensive: bool,
    pub settings: Settings,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            tol: None,
            expensive: false,
            settings: Settings::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Ran(VerificationReport),
    Skipped { check: Check, n: usize, reason: String },
}

impl Outcome {
    pub fn passed(&self) -> bool {
        match self {
            Outcome::Ran(r) => r.pass,
            Outcome::Skipped { .. } => true,
        }
    }
}

/// Runs every check in `checks` for every `n` in `ns`. Checks independent of
/// `n` run once.
pub fn run_suite(checks: &[Check], ns: std::ops::RangeInclusive<usize>, opts: &SuiteOptions) -> Result<Vec<Outcome>> {
    let mut out = Vec::new();
    for &check in checks {
        if check.takes_n() {
            for n in ns.clone() {
                out.push(run_check(check, n, opts)?);
            }
        } else {
            out.push(run_check(check, 0, opts)?);
        }
    }
    Ok(out)
}

fn rng_for(check: Check, n: usize, seed: u64) -> ChaCha8Rng {
    let salt = (check as u64) << 32 | n as u64;
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

pub fn run_check(check: Check, n: usize, opts: &SuiteOptions) -> Result<Outcome> {
    let (default_limit, expensive_limit) = check.limits();
    let limit = if opts.expensive { expensive_limit } else { default_limit };
    if check.takes_n() && n == 0 {
        return Ok(Outcome::Skipped {
            check,
            n,
            reason: "needs n >= 1".into(),
        });
    }
    if n > limit {
        let reason = if n <= expensive_limit {
            format!("n = {n} needs --expensive (default limit {default_limit})")
        } else {
            format!("n = {n} is beyond the limit {expensive_limit}")
        };
        return Ok(Outcome::Skipped { check, n, reason });
    }
    let mut rng = rng_for(check, n, opts.seed);
    let s = &opts.settings;
    let report = match check {
        Check::Enumeration => enumeration(n, s)?,
        Check::Pf4Golden => pf4_golden(s)?,
        Check::HookOracle => hook_oracle(n, &mut rng)?,
        Check::SkewDet => skew_det(n, &mut rng)?,
        Check::SymDihedral => sym_dihedral(n, s)?,
        Check::SsymSkew => ssym_skew(n, s)?,
        Check::DihedralInvariance => dihedral_invariance(n, s)?,
        Check::SquareDiffForm => square_diff(n, opts)?,
        Check::Collapse => collapse(n, &mut rng, s)?,
        Check::CosineForm => cosine(n, &mut rng, opts)?,
        Check::CycleProduct => cycle_product(n, opts)?,
        Check::DetExamples => det_examples(n)?,
        Check::TrigProduct => trig_product(&mut rng, opts),
        Check::TrigAlternating => trig_alternating(n, &mut rng, opts),
    };
    let needs_seed = matches!(
        check,
        Check::HookOracle
            | Check::SkewDet
            | Check::Collapse
            | Check::CosineForm
            | Check::TrigProduct
            | Check::TrigAlternating
    );
    Ok(Outcome::Ran(if needs_seed {
        report.with_seed(opts.seed)
    } else {
        report
    }))
}

/// Brute-force filter of `S_{2n}`: `i_k < j_k` and `i_1 < i_2 < ... < i_n`.
pub fn brute_force_matchings(two_n: usize, cap: usize) -> Result<BTreeSet<Vec<usize>>> {
    Ok(enumerate_sym(two_n, cap)?
        .filter(|p| {
            let im = p.images();
            im.chunks(2).all(|c| c[0] < c[1]) && im.chunks(2).zip(im.chunks(2).skip(1)).all(|(a, b)| a[0] < b[0])
        })
        .map(|p| p.images().to_vec())
        .collect())
}

fn flat(m: &PfaffPermutation) -> Vec<usize> {
    m.pairs().iter().flat_map(|&(i, j)| [i, j]).collect()
}

fn enumeration(n: usize, s: &Settings) -> Result<VerificationReport> {
    let two_n = 2 * n;
    let expected = matching_count(two_n);
    let mut count = 0u64;
    let mut seen = BTreeSet::new();
    let compare = two_n <= 8 && two_n <= s.caps.sym;
    for (m, _) in enumerate_pfaff(two_n, s.caps.pfaff)? {
        count += 1;
        if compare {
            seen.insert(flat(&m));
        }
    }
    let mut report = VerificationReport::new("enumeration", n, "count")
        .sides(count.to_string(), expected.to_string());
    if count != expected {
        report.fail(format!("{count} matchings, expected {expected}"));
    }
    if compare {
        report.mode = "count+set".into();
        let brute = brute_force_matchings(two_n, s.caps.sym)?;
        if let Some(extra) = seen.symmetric_difference(&brute).next() {
            report.fail(format!("set mismatch at {extra:?}"));
        }
    }
    Ok(report)
}

/// The generic order-4 pfaffian in the juxtaposed text form.
pub const PF4_TEXT: &str = "a(1,2)a(3,4) - a(1,3)a(2,4) + a(1,4)a(2,3)";

fn pf4_golden(s: &Settings) -> Result<VerificationReport> {
    let pf = symbolic_pfaffian(4, s)?;
    let mut report = VerificationReport::new("pf4-golden", 2, "symbolic").sides(pf.pretty(), PF4_TEXT);
    if pf.pretty() != PF4_TEXT || pf != PF4_TEXT.parse::<Poly>()? {
        report.fail("expansion differs");
    }
    Ok(report)
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    ratio(rng.random_range(-9..=9), rng.random_range(1..=4))
}

fn hook_oracle(n: usize, rng: &mut ChaCha8Rng) -> Result<VerificationReport> {
    let two_n = 2 * n;
    let mut report = VerificationReport::new("hook-oracle", n, "symmetric+skew")
        .sides("hook expansions", "direct pfaffian");
    let direct_settings = Settings::default();
    for case in 0..RANDOM_ARRAYS {
        for mode in [Mode::Symmetric, Mode::Skew] {
            let arr = TriangularArray::from_fn(two_n, mode, |_, _| random_rational(rng));
            let want = pfaffian_direct_with(&arr, &direct_settings)?;
            for s in 1..=two_n {
                let got = match mode {
                    Mode::Symmetric => hook_expand_symmetric(&arr, s)?,
                    _ => hook_expand_skew(&arr, s)?,
                };
                if got != want {
                    report.fail(format!("case {case}, {mode} mode, hook {s}: {got} vs {want}"));
                }
            }
        }
    }
    Ok(report)
}

fn skew_det(n: usize, rng: &mut ChaCha8Rng) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("skew-det", n, "skew").sides("det", "pf^2");
    for case in 0..RANDOM_ARRAYS {
        let arr = TriangularArray::from_fn(2 * n, Mode::Skew, |_, _| rat(rng.random_range(-9..=9)));
        let det = determinant(&arr)?;
        let pf = pfaffian_direct_with(&arr, &Settings::default())?;
        if det != &pf * &pf {
            report.fail(format!("case {case}: det {det}, pf {pf}"));
        }
    }
    Ok(report)
}

fn sym_dihedral(n: usize, s: &Settings) -> Result<VerificationReport> {
    let two_n = 2 * n;
    let pf = symbolic_pfaffian(two_n, s)?;
    let group = symmetry_group_with(&pf, two_n, ActionMode::SymmetricGens, false, s)?;
    let dihedral = dihedral_group(two_n)?;
    let mut report = VerificationReport::new("sym-dihedral", n, "symmetric")
        .sides(group.summary(), format!("dihedral subgroup of order {}", dihedral.len()));
    if !is_dihedral(&group, two_n)? {
        let w = group.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
        report.fail(format!("symmetric difference contains {w}"));
    }
    Ok(report)
}

fn ssym_skew(n: usize, s: &Settings) -> Result<VerificationReport> {
    let two_n = 2 * n;
    let pf = symbolic_pfaffian(two_n, s)?;
    let mut report = VerificationReport::new("ssym-skew", n, "skew")
        .sides("act(p, pf)", "sign(p) pf for every p");
    for p in enumerate_sym(two_n, s.caps.sym)? {
        if act(&p, &pf, ActionMode::SkewGens)? != pf.clone().with_sign(p.sign()) {
            report.fail(format!("p = {p}"));
        }
    }
    Ok(report)
}

fn dihedral_invariance(n: usize, s: &Settings) -> Result<VerificationReport> {
    let two_n = 2 * n;
    let pf = symbolic_pfaffian(two_n, s)?;
    let mut report = VerificationReport::new("dihedral-invariance", n, "symmetric")
        .sides("act(d, pf)", "pf for every dihedral d");
    for d in dihedral_group(two_n)? {
        if act(&d, &pf, ActionMode::SymmetricGens)? != pf {
            report.fail(format!("d = {d}"));
        }
    }
    Ok(report)
}

fn square_diff(n: usize, opts: &SuiteOptions) -> Result<VerificationReport> {
    let symbolic_limit = if opts.expensive { models::SQUARE_DIFF_MAX_N } else { 3 };
    if n <= symbolic_limit {
        models::verify_square_diff_with(n, &opts.settings)
    } else {
        models::verify_square_diff_numeric(n, &opts.settings)
    }
}

fn random_positions(rng: &mut ChaCha8Rng, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.random_range(-PI..PI)).collect()
}

fn collapse(n: usize, rng: &mut ChaCha8Rng, s: &Settings) -> Result<VerificationReport> {
    let two_n = 2 * n;
    let mut report = VerificationReport::new("collapse", n, "square-diff+cosine")
        .sides("pf on collapsed positions", "c pf on remaining positions");
    let symbolic = Positions::Symbolic(models::symbolic_positions(two_n));
    for k in 1..=two_n {
        report.absorb(models::verify_collapse_with(&Kernel::SquareDiff, &symbolic, k, s)?);
        for _ in 0..10 {
            let xs = Positions::Numeric(random_positions(rng, two_n));
            report.absorb(models::verify_collapse_with(&Kernel::Cosine, &xs, k, s)?);
        }
    }
    Ok(report)
}

fn cosine(n: usize, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> Result<VerificationReport> {
    let tol = opts.tol.unwrap_or_else(|| cosine_tolerance(n));
    let mut report = VerificationReport::new("cosine", n, "cosine")
        .sides("pf(cos(x_i - x_j))", "cos(x_1 - x_2 + ... - x_2n)");
    for _ in 0..RANDOM_VECTORS {
        let xs = random_positions(rng, 2 * n);
        report.absorb(models::verify_cosine_with(n, &xs, tol, &opts.settings)?);
    }
    Ok(report)
}

fn cycle_product(n: usize, opts: &SuiteOptions) -> Result<VerificationReport> {
    let two_n = 2 * n;
    let s = &opts.settings;
    let mut report = VerificationReport::new("cycle-product", n, "positions")
        .sides("run classification", "dihedral membership");
    // Brute-force Sym(g) at order 8 is slow; the classifier is cheap there.
    if two_n <= 6 || opts.expensive {
        let group = sym_of_g_with(two_n, s)?;
        report = report.sides(group.summary(), "dihedral subgroup");
        if !group.equals_dihedral {
            report.fail(group.summary());
        }
    }
    let dihedral = dihedral_group(two_n)?;
    for p in enumerate_sym(two_n, s.caps.sym)? {
        if classify_runs(&p)?.is_dihedral() != dihedral.contains(&p) {
            report.fail(format!("run classification disagrees at {p}"));
        }
    }
    Ok(report)
}

fn det_examples(n: usize) -> Result<VerificationReport> {
    let mut report = models::verify_square_diff_determinant(2 * n - 1)?;
    report.absorb(models::verify_square_diff_determinant(2 * n)?);
    report.n = n;
    Ok(report)
}

fn trig_product(rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> VerificationReport {
    let tol = opts.tol.unwrap_or(models::TRIG_PRODUCT_TOL);
    let mut report = VerificationReport::new("trig-product", 3, "float")
        .sides("-cos a cos(t-a) + cos b cos(t-b)", "sin(a-b) sin(a+b-t)");
    for _ in 0..TRIG_CASES {
        let [a, b, t] = [0; 3].map(|_| rng.random_range(-PI..PI));
        report.absorb(models::verify_trig_product_tol(a, b, t, tol));
    }
    report
}

fn trig_alternating(n: usize, rng: &mut ChaCha8Rng, opts: &SuiteOptions) -> VerificationReport {
    let tol = opts.tol.unwrap_or(models::TRIG_ALTERNATING_TOL);
    let mut report = VerificationReport::new("trig-alternating", n, "float")
        .sides("alternating sine and cosine sums", "0 and the closed form");
    for _ in 0..TRIG_CASES {
        let alphas = random_positions(rng, n);
        report.absorb(models::verify_trig_alternating_tol(&alphas, tol));
    }
    report
}
