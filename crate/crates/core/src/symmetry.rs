//! The `S_m` action on generator polynomials and brute-force symmetry groups.
//!
//! A permutation `p` acts on generators by `a(i,j) -> a(p⁻¹(i), p⁻¹(j))` and on
//! positions by `x(i) -> x(p⁻¹(i))`, extended to polynomials by substitution.
//! Under substitution this composes as `act(p, act(q, f)) = act(q ∘ p, f)`.
//! Stabilizers are subgroups under either order, so `Sym`/`SSym` do not depend
//! on it.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::g_poly;
use crate::pfaffian::Settings;
use crate::perm::{dihedral_group, enumerate_sym, Permutation, SymIter};
use crate::poly::{Poly, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionMode {
    /// `a(j,i) = a(i,j)`.
    SymmetricGens,
    /// `a(j,i) = -a(i,j)`.
    SkewGens,
}

impl ActionMode {
    pub fn name(self) -> &'static str {
        match self {
            ActionMode::SymmetricGens => "symmetric",
            ActionMode::SkewGens => "skew",
        }
    }
}

fn max_index(poly: &Poly) -> usize {
    poly.variables()
        .into_iter()
        .map(|v| match v {
            Var::Pos(i) => i,
            Var::Gen(_, j) => j,
        })
        .max()
        .unwrap_or(0)
}

fn check_indices(poly: &Poly, m: usize) -> Result<()> {
    let top = max_index(poly);
    if top > m {
        return Err(Error::IndexOutOfRange {
            index: top,
            bound: m,
        });
    }
    Ok(())
}

/// Image of one variable under the inverse permutation `inv`, with the sign
/// produced by normalizing a generator to `i < j`.
fn image(inv: &Permutation, v: Var, mode: ActionMode) -> (Var, i32) {
    match v {
        Var::Pos(i) => (Var::Pos(inv.apply(i)), 1),
        Var::Gen(i, j) => {
            let (a, b) = (inv.apply(i), inv.apply(j));
            if a < b {
                (Var::Gen(a, b), 1)
            } else {
                let sign = match mode {
                    ActionMode::SymmetricGens => 1,
                    ActionMode::SkewGens => -1,
                };
                (Var::Gen(b, a), sign)
            }
        }
    }
}

/// `p · poly` with generator normalization per `mode`.
pub fn act(p: &Permutation, poly: &Poly, mode: ActionMode) -> Result<Poly> {
    check_indices(poly, p.len())?;
    let inv = p.inverse();
    Ok(poly.rename_signed(|v| image(&inv, v, mode)))
}

/// Whether `p · poly = sign · poly`, with `sign = sign(p)` when `signed`.
/// Checks term by term and stops at the first mismatch; the action permutes
/// monomials injectively, so matching every image term suffices.
fn fixes(p: &Permutation, poly: &Poly, mode: ActionMode, signed: bool) -> bool {
    let inv = p.inverse();
    let target = if signed { p.sign() } else { 1 };
    poly.terms().all(|(m, c)| {
        let mut sign = target;
        let renamed = crate::poly::Monomial::from_powers(
            m.powers()
                .iter()
                .map(|&(v, e)| {
                    let (w, s) = image(&inv, v, mode);
                    if s < 0 && e % 2 == 1 {
                        sign = -sign;
                    }
                    (w, e)
                })
                .collect::<Vec<_>>(),
        );
        let expected = if sign < 0 { -c.clone() } else { c.clone() };
        poly.coefficient(&renamed) == expected
    })
}

/// A subgroup of `S_degree` found by brute force, compared with the dihedral
/// subgroup `<rotation, reflection>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub degree: usize,
    pub order: usize,
    pub equals_dihedral: bool,
    /// On mismatch, a permutation in exactly one of the two groups.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Permutation>,
    pub elements: BTreeSet<Permutation>,
}

impl GroupReport {
    /// Verifies that `elements` contains the identity and is closed under
    /// composition before building the report.
    pub fn new(degree: usize, elements: BTreeSet<Permutation>) -> Result<Self> {
        if !elements.contains(&Permutation::identity(degree)) {
            return Err(Error::NotClosed("identity missing".into()));
        }
        for p in &elements {
            for q in &elements {
                let pq = p.compose(q)?;
                if !elements.contains(&pq) {
                    return Err(Error::NotClosed(format!("{p} ∘ {q} = {pq} is missing")));
                }
            }
        }
        let (equals_dihedral, witness) = if degree % 2 == 0 {
            let dihedral = dihedral_group(degree)?;
            let witness = elements.symmetric_difference(&dihedral).next().cloned();
            (witness.is_none(), witness)
        } else {
            (false, None)
        };
        Ok(GroupReport {
            degree,
            order: elements.len(),
            equals_dihedral,
            witness,
            elements,
        })
    }

    pub fn summary(&self) -> String {
        let verdict = if self.equals_dihedral {
            "equals the dihedral group <rotation, reflection>".to_string()
        } else if let Some(w) = &self.witness {
            format!("differs from the dihedral group, witness {w}")
        } else {
            "not compared (odd degree)".to_string()
        };
        format!("order {} subgroup of S_{}: {}", self.order, self.degree, verdict)
    }
}

fn search(
    m: usize,
    settings: &Settings,
    keep: impl Fn(&Permutation) -> bool + Sync,
) -> Result<BTreeSet<Permutation>> {
    if settings.parallel {
        let blocks = (1..=m)
            .into_par_iter()
            .map(|first| {
                SymIter::with_first(m, first, settings.caps.sym)
                    .map(|it| it.filter(|p| keep(p)).collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(blocks.into_iter().flatten().collect())
    } else {
        Ok(enumerate_sym(m, settings.caps.sym)?.filter(|p| keep(p)).collect())
    }
}

/// `Sym(poly)` (or `SSym(poly)` when `signed`) inside `S_m`, by brute force.
/// The zero polynomial is fixed by everything.
pub fn symmetry_group(poly: &Poly, m: usize, mode: ActionMode, signed: bool) -> Result<GroupReport> {
    symmetry_group_with(poly, m, mode, signed, &Settings::default())
}

pub fn symmetry_group_with(
    poly: &Poly,
    m: usize,
    mode: ActionMode,
    signed: bool,
    settings: &Settings,
) -> Result<GroupReport> {
    check_indices(poly, m)?;
    let elements = search(m, settings, |p| fixes(p, poly, mode, signed))?;
    GroupReport::new(m, elements)
}

/// Whether the report's group is exactly `<rotation, reflection>` in `S_two_n`.
pub fn is_dihedral(report: &GroupReport, two_n: usize) -> Result<bool> {
    if report.degree != two_n {
        return Err(Error::SizeMismatch {
            left: report.degree,
            right: two_n,
        });
    }
    Ok(report.elements == dihedral_group(two_n)?)
}

/// `g(x_{p(1)}, ..., x_{p(m)})`, the position substitution `x_i -> x_{p(i)}`.
pub fn permute_positions(p: &Permutation, poly: &Poly) -> Result<Poly> {
    check_indices(poly, p.len())?;
    Ok(poly.rename_signed(|v| match v {
        Var::Pos(i) => (Var::Pos(p.apply(i)), 1),
        other => (other, 1),
    }))
}

/// Brute-force symmetry group of the cycle product `g_{2n}` under position
/// substitution.
pub fn sym_of_g(two_n: usize) -> Result<GroupReport> {
    sym_of_g_with(two_n, &Settings::default())
}

pub fn sym_of_g_with(two_n: usize, settings: &Settings) -> Result<GroupReport> {
    let g = g_poly(two_n)?;
    let elements = search(two_n, settings, |p| {
        permute_positions(p, &g).is_ok_and(|h| h == g)
    })?;
    GroupReport::new(two_n, elements)
}
