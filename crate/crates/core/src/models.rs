//! Kernel-generated arrays `a(i,j) = ψ(x_i, x_j)` and the closed-form
//! identities they satisfy.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pfaffian::{pfaffian_direct_with, Mode, Settings, TriangularArray};
use crate::poly::{rational_to_f64, Poly, Var};
use crate::report::VerificationReport;
use crate::scalar::rat;

/// Tolerance for the cosine collapse check.
pub const COLLAPSE_TOL: f64 = 1e-12;
/// Default tolerance for the first trigonometric identity.
pub const TRIG_PRODUCT_TOL: f64 = 1e-13;
/// Default tolerance for the alternating sine/cosine sums.
pub const TRIG_ALTERNATING_TOL: f64 = 1e-12;
/// Largest `n` for the symbolic `(x_i - x_j)^2` identity.
pub const SQUARE_DIFF_MAX_N: usize = 4;

/// Tolerance for the cosine pfaffian at order `2n`: the sum has `(2n-1)!!`
/// unit-magnitude terms, so the bound is relaxed past `n = 5`.
pub fn cosine_tolerance(n: usize) -> f64 {
    if n <= 5 {
        1e-12
    } else {
        1e-10
    }
}

/// A translation-invariant symbolic kernel given as a polynomial in `x1`
/// (first argument) and `x2` (second argument).
#[derive(Debug, Clone, PartialEq)]
pub struct CustomKernel {
    expr: Poly,
}

impl CustomKernel {
    pub fn new(expr: Poly) -> Result<Self> {
        if let Some(v) = expr
            .variables()
            .into_iter()
            .find(|v| !matches!(v, Var::Pos(1) | Var::Pos(2)))
        {
            return Err(Error::KernelPrecondition(format!(
                "kernel may only use x1 and x2, found {v}"
            )));
        }
        Ok(CustomKernel { expr })
    }

    pub fn expr(&self) -> &Poly {
        &self.expr
    }

    fn apply(&self, x: &Poly, y: &Poly) -> Poly {
        self.expr.substitute(&HashMap::from([
            (Var::Pos(1), x.clone()),
            (Var::Pos(2), y.clone()),
        ]))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Kernel {
    /// `(x - y)^2`.
    SquareDiff,
    /// `cos(x - y)`; numeric only.
    Cosine,
    CustomSymbolic(CustomKernel),
}

impl Kernel {
    pub fn name(&self) -> &'static str {
        match self {
            Kernel::SquareDiff => "square-diff",
            Kernel::Cosine => "cosine",
            Kernel::CustomSymbolic(_) => "custom",
        }
    }

    /// `c = ψ(0, 0)`.
    pub fn diagonal_constant(&self) -> BigRational {
        match self {
            Kernel::SquareDiff => BigRational::zero(),
            Kernel::Cosine => BigRational::one(),
            Kernel::CustomSymbolic(k) => k
                .apply(&Poly::zero(), &Poly::zero())
                .as_constant()
                .expect("kernel uses only x1 and x2"),
        }
    }

    pub fn eval_symbolic(&self, x: &Poly, y: &Poly) -> Result<Poly> {
        match self {
            Kernel::SquareDiff => {
                let d = x - y;
                Ok(&d * &d)
            }
            Kernel::Cosine => Err(Error::NonNumericKernel("cosine")),
            Kernel::CustomSymbolic(k) => Ok(k.apply(x, y)),
        }
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        match self {
            Kernel::SquareDiff => (x - y) * (x - y),
            Kernel::Cosine => (x - y).cos(),
            Kernel::CustomSymbolic(k) => k
                .expr
                .eval_float(&HashMap::from([(Var::Pos(1), x), (Var::Pos(2), y)]))
                .expect("kernel uses only x1 and x2"),
        }
    }

    /// Checks `ψ(x,y) = ψ(y,x)` and `ψ(x+z, y+z) = ψ(x,y)` symbolically.
    /// The built-in kernels satisfy both by construction.
    pub fn check_collapse_preconditions(&self) -> Result<()> {
        let Kernel::CustomSymbolic(k) = self else {
            return Ok(());
        };
        let (x, y, z) = (Poly::x(1), Poly::x(2), Poly::x(3));
        if k.apply(&y, &x) != k.expr {
            return Err(Error::KernelPrecondition(format!(
                "{} is not symmetric in x1, x2",
                k.expr
            )));
        }
        if k.apply(&(&x + &z), &(&y + &z)) != k.expr {
            return Err(Error::KernelPrecondition(format!(
                "{} is not translation invariant",
                k.expr
            )));
        }
        Ok(())
    }
}

fn check_even_positions(len: usize) -> Result<()> {
    if len % 2 != 0 {
        return Err(Error::OddSize(len));
    }
    Ok(())
}

/// Symmetric array with entries `ψ(x_i, x_j)` for symbolic or exact positions.
pub fn kernel_array_symbolic(k: &Kernel, xs: &[Poly]) -> Result<TriangularArray<Poly>> {
    check_even_positions(xs.len())?;
    if matches!(k, Kernel::Cosine) {
        return Err(Error::NonNumericKernel("cosine"));
    }
    let mut err = None;
    let arr = TriangularArray::from_fn(xs.len(), Mode::Symmetric, |i, j| {
        k.eval_symbolic(&xs[i - 1], &xs[j - 1]).unwrap_or_else(|e| {
            err = Some(e);
            Poly::zero()
        })
    });
    err.map_or(Ok(arr), Err)
}

/// Exact array for rational positions.
pub fn kernel_array_rational(k: &Kernel, xs: &[BigRational]) -> Result<TriangularArray<BigRational>> {
    let positions: Vec<Poly> = xs.iter().cloned().map(Poly::constant).collect();
    let arr = kernel_array_symbolic(k, &positions)?;
    Ok(arr.map(|p| p.as_constant().expect("constant positions give constant entries")))
}

pub fn kernel_array_f64(k: &Kernel, xs: &[f64]) -> Result<TriangularArray<f64>> {
    check_even_positions(xs.len())?;
    Ok(TriangularArray::from_fn(xs.len(), Mode::Symmetric, |i, j| {
        k.eval_f64(xs[i - 1], xs[j - 1])
    }))
}

/// `x_1, ..., x_m` as polynomials.
pub fn symbolic_positions(m: usize) -> Vec<Poly> {
    (1..=m).map(Poly::x).collect()
}

/// The cycle product `(x_1 - x_2)(x_2 - x_3) ... (x_{2n} - x_1)`, expanded.
pub fn g_poly(two_n: usize) -> Result<Poly> {
    if two_n == 0 {
        return Err(Error::EmptySize);
    }
    check_even_positions(two_n)?;
    Ok((1..=two_n).fold(Poly::one(), |acc, i| {
        let next = if i == two_n { 1 } else { i + 1 };
        &acc * &(&Poly::x(i) - &Poly::x(next))
    }))
}

/// `-(-2)^(n-1)`, the constant relating the square-difference pfaffian to `g_{2n}`.
pub fn square_diff_constant(n: usize) -> BigRational {
    -rat(-2).pow(n as i32 - 1)
}

/// `(-2)^(n-1) (2n-1)`, the square-difference pfaffian at positions `1..2n`.
pub fn square_diff_value_at_integers(n: usize) -> BigRational {
    rat(-2).pow(n as i32 - 1) * rat(2 * n as i64 - 1)
}

fn integer_positions(m: usize) -> Vec<BigRational> {
    (1..=m as i64).map(rat).collect()
}

/// Symbolic identity `pf = -(-2)^(n-1) g_{2n}` for the square-difference
/// kernel, plus its specialization at positions `1, ..., 2n`.
pub fn verify_square_diff(n: usize) -> Result<VerificationReport> {
    verify_square_diff_with(n, &Settings::default())
}

pub fn verify_square_diff_with(n: usize, settings: &Settings) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::EmptySize);
    }
    if n > SQUARE_DIFF_MAX_N {
        return Err(Error::CapExceeded {
            what: "symbolic square-difference identity n",
            requested: n,
            cap: SQUARE_DIFF_MAX_N,
        });
    }
    let two_n = 2 * n;
    let arr = kernel_array_symbolic(&Kernel::SquareDiff, &symbolic_positions(two_n))?;
    let pf = pfaffian_direct_with(&arr, settings)?;
    let expected = g_poly(two_n)?.scale(&square_diff_constant(n));
    let mut report = VerificationReport::new("square-diff", n, "symbolic")
        .sides(pf.pretty(), expected.pretty());
    let diff = &pf - &expected;
    if !diff.is_zero() {
        report.residual = diff.max_abs_coefficient();
        report.fail(format!("difference {}", diff.pretty()));
    }
    let numeric = verify_square_diff_numeric(n, settings)?;
    report.absorb(numeric);
    Ok(report)
}

/// `pf((i - j)^2) = (-2)^(n-1) (2n - 1)` by direct summation.
pub fn verify_square_diff_numeric(n: usize, settings: &Settings) -> Result<VerificationReport> {
    let arr = kernel_array_rational(&Kernel::SquareDiff, &integer_positions(2 * n))?;
    let value = pfaffian_direct_with(&arr, settings)?;
    let expected = square_diff_value_at_integers(n);
    let mut report = VerificationReport::new("square-diff-numeric", n, "rational")
        .sides(value.to_string(), expected.to_string());
    if value != expected {
        report.residual = rational_to_f64(&(&value - &expected)).abs();
        report.fail(format!("pf(1..{}) = {value}, expected {expected}", 2 * n));
    }
    Ok(report)
}

/// Positions for the collapse identity.
#[derive(Debug, Clone, PartialEq)]
pub enum Positions {
    Symbolic(Vec<Poly>),
    Numeric(Vec<f64>),
}

impl Positions {
    pub fn len(&self) -> usize {
        match self {
            Positions::Symbolic(v) => v.len(),
            Positions::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Index paired with `s` in the collapse: `s + 1`, wrapping `2n` to `1`.
pub fn collapse_partner(s: usize, two_n: usize) -> usize {
    if s == two_n {
        1
    } else {
        s + 1
    }
}

fn collapse<T: Clone>(xs: &[T], s: usize) -> (Vec<T>, Vec<T>) {
    let t = collapse_partner(s, xs.len());
    let mut collapsed = xs.to_vec();
    collapsed[t - 1] = xs[s - 1].clone();
    let rest = xs
        .iter()
        .enumerate()
        .filter(|&(k, _)| k + 1 != s && k + 1 != t)
        .map(|(_, v)| v.clone())
        .collect();
    (collapsed, rest)
}

/// Collapse identity: setting `x_{s+1} := x_s` (cyclically) gives
/// `pf_{2n} = ψ(0,0) · pf_{2n-2}` on the remaining positions.
pub fn verify_collapse(k: &Kernel, xs: &Positions, s: usize) -> Result<VerificationReport> {
    verify_collapse_with(k, xs, s, &Settings::default())
}

pub fn verify_collapse_with(
    k: &Kernel,
    xs: &Positions,
    s: usize,
    settings: &Settings,
) -> Result<VerificationReport> {
    k.check_collapse_preconditions()?;
    let two_n = xs.len();
    if two_n == 0 {
        return Err(Error::EmptySize);
    }
    check_even_positions(two_n)?;
    if s == 0 || s > two_n {
        return Err(Error::IndexOutOfRange {
            index: s,
            bound: two_n,
        });
    }
    let c = k.diagonal_constant();
    let n = two_n / 2;
    match xs {
        Positions::Symbolic(xs) => {
            let (collapsed, rest) = collapse(xs, s);
            let lhs = pfaffian_direct_with(&kernel_array_symbolic(k, &collapsed)?, settings)?;
            let rhs = pfaffian_direct_with(&kernel_array_symbolic(k, &rest)?, settings)?.scale(&c);
            let mut report = VerificationReport::new("collapse", n, k.name())
                .sides(lhs.pretty(), rhs.pretty());
            let diff = &lhs - &rhs;
            if !diff.is_zero() {
                report.residual = diff.max_abs_coefficient();
                report.fail(format!("s = {s}: difference {}", diff.pretty()));
            }
            Ok(report)
        }
        Positions::Numeric(xs) => {
            let (collapsed, rest) = collapse(xs, s);
            let lhs = pfaffian_direct_with(&kernel_array_f64(k, &collapsed)?, settings)?;
            let rhs = rational_to_f64(&c) * pfaffian_direct_with(&kernel_array_f64(k, &rest)?, settings)?;
            let mut report = VerificationReport::new("collapse", n, k.name())
                .sides(format!("{lhs:e}"), format!("{rhs:e}"));
            report.observe((lhs - rhs).abs(), COLLAPSE_TOL, || format!("s = {s}, xs = {xs:?}"));
            Ok(report)
        }
    }
}

/// `cos(x_1 - x_2 + x_3 - ... - x_{2n})`.
pub fn alternating_cosine(xs: &[f64]) -> f64 {
    xs.iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x } else { -x })
        .sum::<f64>()
        .cos()
}

/// Cosine pfaffian against `cos(x_1 - x_2 + ... - x_{2n})`.
pub fn verify_cosine(n: usize, xs: &[f64], tol: f64) -> Result<VerificationReport> {
    verify_cosine_with(n, xs, tol, &Settings::default())
}

pub fn verify_cosine_with(
    n: usize,
    xs: &[f64],
    tol: f64,
    settings: &Settings,
) -> Result<VerificationReport> {
    if xs.len() != 2 * n {
        return Err(Error::SizeMismatch {
            left: xs.len(),
            right: 2 * n,
        });
    }
    let lhs = pfaffian_direct_with(&kernel_array_f64(&Kernel::Cosine, xs)?, settings)?;
    let rhs = alternating_cosine(xs);
    let mut report =
        VerificationReport::new("cosine", n, "cosine").sides(format!("{lhs:e}"), format!("{rhs:e}"));
    report.observe((lhs - rhs).abs(), tol, || format!("xs = {xs:?}"));
    Ok(report)
}

/// `-cos α cos(θ-α) + cos β cos(θ-β) = sin(α-β) sin(α+β-θ)`.
pub fn verify_trig_product(alpha: f64, beta: f64, theta: f64) -> VerificationReport {
    verify_trig_product_tol(alpha, beta, theta, TRIG_PRODUCT_TOL)
}

pub fn verify_trig_product_tol(alpha: f64, beta: f64, theta: f64, tol: f64) -> VerificationReport {
    let lhs = -alpha.cos() * (theta - alpha).cos() + beta.cos() * (theta - beta).cos();
    let rhs = (alpha - beta).sin() * (alpha + beta - theta).sin();
    let mut report =
        VerificationReport::new("trig-product", 3, "float").sides(format!("{lhs:e}"), format!("{rhs:e}"));
    report.observe((lhs - rhs).abs(), tol, || {
        format!("alpha = {alpha}, beta = {beta}, theta = {theta}")
    });
    report
}

/// `sum_{j in range} (-1)^j α_j` over 1-based indices.
fn alternating_sum(alphas: &[f64], range: std::ops::Range<usize>) -> f64 {
    range
        .map(|j| if j % 2 == 0 { alphas[j - 1] } else { -alphas[j - 1] })
        .sum()
}

/// The two alternating sums `Σ_i (-1)^i f(α_i) sin(Σ_{j<i} (-1)^j α_j - Σ_{j>i} (-1)^j α_j)`
/// with `f = sin` and `f = cos`.
pub fn trig_alternating_sums(alphas: &[f64]) -> (f64, f64) {
    let n = alphas.len();
    let mut sine_sum = 0.0;
    let mut cosine_sum = 0.0;
    for i in 1..=n {
        let arg = alternating_sum(alphas, 1..i) - alternating_sum(alphas, i + 1..n + 1);
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        sine_sum += sign * alphas[i - 1].sin() * arg.sin();
        cosine_sum += sign * alphas[i - 1].cos() * arg.sin();
    }
    (sine_sum, cosine_sum)
}

/// Closed form of the cosine sum: 0 for odd `n`, `sin(Σ_j (-1)^j α_j)` for even `n`.
pub fn trig_alternating_cosine_closed_form(alphas: &[f64]) -> f64 {
    if alphas.len() % 2 == 1 {
        0.0
    } else {
        alternating_sum(alphas, 1..alphas.len() + 1).sin()
    }
}

/// The sine sum vanishes; the cosine sum matches its closed form.
pub fn verify_trig_alternating(alphas: &[f64]) -> VerificationReport {
    verify_trig_alternating_tol(alphas, TRIG_ALTERNATING_TOL)
}

pub fn verify_trig_alternating_tol(alphas: &[f64], tol: f64) -> VerificationReport {
    let (sine_sum, cosine_sum) = trig_alternating_sums(alphas);
    let closed = trig_alternating_cosine_closed_form(alphas);
    let mut report = VerificationReport::new("trig-alternating", alphas.len(), "float").sides(
        format!("sine sum {sine_sum:e}; cosine sum {cosine_sum:e}"),
        format!("0; {closed:e}"),
    );
    report.observe(sine_sum.abs(), tol, || format!("sine sum at {alphas:?}"));
    report.observe((cosine_sum - closed).abs(), tol, || {
        format!("cosine sum at {alphas:?}")
    });
    report
}

/// Expected determinant of the `m × m` matrix `((x_i - x_j)^2)`.
pub fn square_diff_determinant_closed_form(m: usize) -> Poly {
    match m {
        2 => -(&Poly::x(1) - &Poly::x(2)).pow(4),
        3 => {
            let cycle = &(&(&Poly::x(1) - &Poly::x(2)) * &(&Poly::x(2) - &Poly::x(3)))
                * &(&Poly::x(3) - &Poly::x(1));
            (&cycle * &cycle).scale(&rat(2))
        }
        _ => Poly::zero(),
    }
}

/// Symbolic determinant of the full square-difference matrix of size `m`
/// against its closed form.
pub fn verify_square_diff_determinant(m: usize) -> Result<VerificationReport> {
    let arr = TriangularArray::from_fn(m, Mode::Symmetric, |i, j| {
        let d = &Poly::x(i) - &Poly::x(j);
        &d * &d
    });
    let det = crate::pfaffian::determinant(&arr)?;
    let expected = square_diff_determinant_closed_form(m);
    let mut report =
        VerificationReport::new("det-examples", m, "symbolic").sides(det.pretty(), expected.pretty());
    let diff = &det - &expected;
    if !diff.is_zero() {
        report.residual = diff.max_abs_coefficient();
        report.fail(format!("size {m}: difference {}", diff.pretty()));
    }
    Ok(report)
}
