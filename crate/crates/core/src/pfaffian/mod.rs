//! Triangular arrays and their pfaffians.
//!
//! A pfaffian only needs the upper triangle `a(i,j)`, `i < j`. The array's
//! [`Mode`] says how the lower triangle is completed when an algorithm needs
//! it (hook expansions and determinants).

mod det;
mod file;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::matching::{check_two_n, enumerate_pfaff, PfaffIter};
use crate::scalar::Scalar;

pub use det::{bareiss_determinant, determinant, minor_expansion_determinant, Determinant};
pub use file::{AnyArray, AnyScalar, ArrayFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `a(j,i) = a(i,j)`, zero diagonal.
    Symmetric,
    /// `a(j,i) = -a(i,j)`, zero diagonal.
    Skew,
    /// Upper triangle only.
    Plain,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Symmetric => "symmetric",
            Mode::Skew => "skew",
            Mode::Plain => "plain",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Options shared by the enumeration-heavy entry points.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Settings {
    pub caps: Caps,
    pub parallel: bool,
}

/// Heaviside step: 1 for `s > 0`, else 0.
pub fn heaviside(s: i64) -> i64 {
    i64::from(s > 0)
}

fn parity_sign(exponent: usize) -> i32 {
    if exponent % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Upper-triangular entries `a(i,j)`, `1 <= i < j <= order`.
///
/// Any order is accepted so that determinants of odd-sized completed
/// matrices can be taken; pfaffian routines reject odd orders.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularArray<S> {
    order: usize,
    mode: Mode,
    entries: Vec<S>,
}

impl<S: Scalar> TriangularArray<S> {
    pub fn from_fn(order: usize, mode: Mode, mut entry: impl FnMut(usize, usize) -> S) -> Self {
        let mut entries = Vec::with_capacity(order * order.saturating_sub(1) / 2);
        for i in 1..=order {
            for j in i + 1..=order {
                entries.push(entry(i, j));
            }
        }
        TriangularArray {
            order,
            mode,
            entries,
        }
    }

    /// Requires exactly the `order(order-1)/2` upper-triangular keys.
    pub fn from_entries(
        order: usize,
        mode: Mode,
        mut entries: BTreeMap<(usize, usize), S>,
    ) -> Result<Self> {
        let mut flat = Vec::with_capacity(order * order.saturating_sub(1) / 2);
        for i in 1..=order {
            for j in i + 1..=order {
                let v = entries.remove(&(i, j)).ok_or_else(|| Error::Schema {
                    key: format!("entries.{i},{j}"),
                    message: "missing entry".into(),
                })?;
                flat.push(v);
            }
        }
        if let Some(&(i, j)) = entries.keys().next() {
            return Err(Error::Schema {
                key: format!("entries.{i},{j}"),
                message: format!("not an upper-triangular index of an order-{order} array"),
            });
        }
        Ok(TriangularArray {
            order,
            mode,
            entries: flat,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        // Row i starts after rows 1..i-1, which hold (order - r) entries each.
        let before: usize = (1..i).map(|r| self.order - r).sum();
        before + (j - i - 1)
    }

    /// Stored entry `a(i,j)` for `1 <= i < j <= order`.
    pub fn entry(&self, i: usize, j: usize) -> &S {
        assert!(
            1 <= i && i < j && j <= self.order,
            "a({i},{j}) is not an upper-triangular index"
        );
        &self.entries[self.slot(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: S) {
        assert!(1 <= i && i < j && j <= self.order);
        let k = self.slot(i, j);
        self.entries[k] = value;
    }

    /// Entry of the completed matrix according to the mode.
    pub fn lookup(&self, i: usize, j: usize) -> Result<S> {
        for idx in [i, j] {
            if idx == 0 || idx > self.order {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    bound: self.order,
                });
            }
        }
        if i < j {
            return Ok(self.entry(i, j).clone());
        }
        match self.mode {
            Mode::Plain => Err(Error::WrongMode {
                op: "lower-triangle lookup",
                mode: "plain",
            }),
            _ if i == j => Ok(S::zero()),
            Mode::Symmetric => Ok(self.entry(j, i).clone()),
            Mode::Skew => Ok(-self.entry(j, i).clone()),
        }
    }

    /// Upper-triangular entries in row-major order.
    pub fn iter_upper(&self) -> impl Iterator<Item = ((usize, usize), &S)> {
        let order = self.order;
        (1..=order)
            .flat_map(move |i| (i + 1..=order).map(move |j| (i, j)))
            .zip(&self.entries)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TriangularArray<T> {
        TriangularArray {
            order: self.order,
            mode: self.mode,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// The array on the remaining indices, relabeled in order to `1..`.
    pub fn without_indices(&self, removed: &[usize]) -> TriangularArray<S> {
        let kept: Vec<usize> = (1..=self.order).filter(|k| !removed.contains(k)).collect();
        TriangularArray::from_fn(kept.len(), self.mode, |i, j| {
            self.entry(kept[i - 1], kept[j - 1]).clone()
        })
    }

    fn require_pfaffian_order(&self) -> Result<()> {
        if self.order % 2 != 0 {
            return Err(Error::OddSize(self.order));
        }
        Ok(())
    }
}

/// Signed sum of Pfaff aggregates over every perfect matching.
pub fn pfaffian_direct<S: Scalar>(arr: &TriangularArray<S>) -> Result<S> {
    pfaffian_direct_with(arr, &Settings::default())
}

pub fn pfaffian_direct_with<S: Scalar>(arr: &TriangularArray<S>, settings: &Settings) -> Result<S> {
    arr.require_pfaffian_order()?;
    if arr.order == 0 {
        return Ok(S::one());
    }
    check_two_n(arr.order, settings.caps.pfaff)?;
    let sum = |stream: PfaffIter| {
        stream.fold(S::zero(), |acc, (m, sign)| {
            let aggregate = m
                .pairs()
                .iter()
                .fold(S::one(), |p, &(i, j)| p * arr.entry(i, j).clone());
            acc + aggregate.with_sign(sign)
        })
    };
    if settings.parallel {
        let partials = (2..=arr.order)
            .into_par_iter()
            .map(|j| PfaffIter::with_first_partner(arr.order, j, settings.caps.pfaff).map(sum))
            .collect::<Result<Vec<S>>>()?;
        Ok(partials.into_iter().fold(S::zero(), |a, b| a + b))
    } else {
        Ok(sum(enumerate_pfaff(arr.order, settings.caps.pfaff)?))
    }
}

/// Pfaffian of the sub-array on `indices` (sorted), expanding along the first
/// index. Uses upper-triangular entries only.
fn sub_pfaffian<S: Scalar>(arr: &TriangularArray<S>, indices: &[usize]) -> S {
    let Some((&first, rest)) = indices.split_first() else {
        return S::one();
    };
    let mut total = S::zero();
    let mut remaining = Vec::with_capacity(rest.len().saturating_sub(1));
    for (t, &partner) in rest.iter().enumerate() {
        remaining.clear();
        remaining.extend(rest.iter().copied().filter(|&k| k != partner));
        let term = arr.entry(first, partner).clone() * sub_pfaffian(arr, &remaining);
        total = total + term.with_sign(parity_sign(t));
    }
    total
}

fn check_hook(arr: &TriangularArray<impl Scalar>, s: usize, want: Mode, op: &'static str) -> Result<()> {
    if arr.mode != want {
        return Err(Error::WrongMode {
            op,
            mode: arr.mode.name(),
        });
    }
    arr.require_pfaffian_order()?;
    if s == 0 || s > arr.order {
        return Err(Error::IndexOutOfRange {
            index: s,
            bound: arr.order,
        });
    }
    Ok(())
}

fn hook_expand<S: Scalar>(arr: &TriangularArray<S>, s: usize, sign_of: impl Fn(usize) -> i32) -> Result<S> {
    let mut total = S::zero();
    for j in (1..=arr.order).filter(|&j| j != s) {
        let rest: Vec<usize> = (1..=arr.order).filter(|&k| k != s && k != j).collect();
        let term = arr.lookup(s, j)? * sub_pfaffian(arr, &rest);
        total = total + term.with_sign(sign_of(j));
    }
    Ok(total)
}

/// Expansion along hook `s` of a symmetric array:
/// `sum_{j != s} (-1)^(s+j+1) a(s,j) pf(without s, j)`.
pub fn hook_expand_symmetric<S: Scalar>(arr: &TriangularArray<S>, s: usize) -> Result<S> {
    check_hook(arr, s, Mode::Symmetric, "symmetric hook expansion")?;
    hook_expand(arr, s, |j| parity_sign(s + j + 1))
}

/// Expansion along hook `s` of a skew array, where `a(s,j) = -a(j,s)` for
/// `j < s` and the Heaviside term supplies the compensating sign:
/// `sum_{j != s} (-1)^(s+j+1+H(s-j)) a(s,j) pf(without s, j)`.
pub fn hook_expand_skew<S: Scalar>(arr: &TriangularArray<S>, s: usize) -> Result<S> {
    check_hook(arr, s, Mode::Skew, "skew hook expansion")?;
    hook_expand(arr, s, |j| {
        let h = heaviside(s as i64 - j as i64) as usize;
        parity_sign(s + j + 1 + h)
    })
}

/// First-index expansion with sub-pfaffians memoized by index subset.
pub fn pfaffian_memoized<S: Scalar>(arr: &TriangularArray<S>) -> Result<S> {
    arr.require_pfaffian_order()?;
    check_two_n(arr.order.max(2), crate::caps::HARD_LIMIT)?;
    fn go<S: Scalar>(arr: &TriangularArray<S>, mask: u32, memo: &mut HashMap<u32, S>) -> S {
        if mask == 0 {
            return S::one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let first = mask.trailing_zeros();
        let rest = mask & !(1 << first);
        let mut total = S::zero();
        let mut t = 0;
        let mut scan = rest;
        while scan != 0 {
            let partner = scan.trailing_zeros();
            scan &= scan - 1;
            let entry = arr.entry(first as usize + 1, partner as usize + 1).clone();
            let term = entry * go(arr, rest & !(1 << partner), memo);
            total = total + term.with_sign(parity_sign(t));
            t += 1;
        }
        memo.insert(mask, total.clone());
        total
    }
    let full = if arr.order == 0 { 0 } else { (1u32 << arr.order) - 1 };
    Ok(go(arr, full, &mut HashMap::new()))
}

/// The generic array with entries `a(i,j)` as polynomial variables.
pub fn symbolic_array(two_n: usize, mode: Mode) -> TriangularArray<crate::poly::Poly> {
    TriangularArray::from_fn(two_n, mode, crate::poly::Poly::a)
}

/// Generic symbolic pfaffian of order `two_n`.
pub fn symbolic_pfaffian(two_n: usize, settings: &Settings) -> Result<crate::poly::Poly> {
    pfaffian_direct_with(&symbolic_array(two_n, Mode::Symmetric), settings)
}
