//! Sparse multivariate polynomials over the rationals.
//!
//! Variables come in two families: positions `x(i)` and generators `a(i,j)`
//! with `i < j`. Positions sort before generators, each family by index.
//! Monomials are ordered graded-lexicographically with that variable order,
//! so `x1` is the most significant variable; terms print highest first.

mod json;
mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub use json::parse_rational;
pub use text::parse_poly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Position variable `x_i`, `i >= 1`.
    Pos(usize),
    /// Generator `a_{i,j}`, always stored with `1 <= i < j`.
    Gen(usize, usize),
}

impl Var {
    pub fn pos(i: usize) -> Result<Var> {
        if i == 0 {
            return Err(Error::IndexOutOfRange {
                index: 0,
                bound: usize::MAX,
            });
        }
        Ok(Var::Pos(i))
    }

    pub fn gen(i: usize, j: usize) -> Result<Var> {
        if i == 0 || i >= j {
            return Err(Error::UnnormalizedGenerator(i, j));
        }
        Ok(Var::Gen(i, j))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Pos(i) => write!(f, "x{i}"),
            Var::Gen(i, j) => write!(f, "a({i},{j})"),
        }
    }
}

/// Product of variable powers, kept sorted by variable with no zero exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    powers: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial {
            powers: vec![(v, 1)],
        }
    }

    /// Normalizes arbitrary `(var, exponent)` pairs: merges repeats, drops zeros.
    pub fn from_powers(powers: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_default() += e;
        }
        Monomial {
            powers: map.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.powers
    }

    pub fn degree(&self) -> u32 {
        self.powers.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.powers
            .binary_search_by(|(w, _)| w.cmp(&v))
            .map(|k| self.powers[k].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut powers = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut a, mut b) = (self.powers.iter().peekable(), other.powers.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        powers.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        powers.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        powers.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&p), None) => {
                    powers.push(p);
                    a.next();
                }
                (None, Some(&&p)) => {
                    powers.push(p);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial { powers }
    }

    pub fn variables(&self) -> impl Iterator<Item = Var> + '_ {
        self.powers.iter().map(|&(v, _)| v)
    }
}

impl Ord for Monomial {
    /// Graded lex: total degree first, then the exponent of the most
    /// significant variable where the two differ.
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        for (&(va, ea), &(vb, eb)) in self.powers.iter().zip(&other.powers) {
            match va.cmp(&vb) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal if ea != eb => return ea.cmp(&eb),
                Ordering::Equal => {}
            }
        }
        self.powers.len().cmp(&other.powers.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with rational coefficients; zero coefficients are never stored,
/// so structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        Poly::term(BigRational::one(), Monomial::var(v))
    }

    /// `x_i`. Panics if `i == 0`.
    pub fn x(i: usize) -> Self {
        Poly::var(Var::pos(i).expect("position index must be >= 1"))
    }

    /// `a(i,j)`. Panics unless `1 <= i < j`.
    pub fn a(i: usize, j: usize) -> Self {
        Poly::var(Var::gen(i, j).expect("generator must satisfy 1 <= i < j"))
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from possibly repeated or cancelling terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Poly::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn variables(&self) -> std::collections::BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.variables()).collect()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::default();
        }
        Poly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one();
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    /// Replaces each mapped variable by a polynomial; unmapped ones are kept.
    pub fn substitute(&self, map: &HashMap<Var, Poly>) -> Poly {
        self.substitute_with(|v| map.get(&v).cloned())
    }

    pub fn substitute_with(&self, image: impl Fn(Var) -> Option<Poly>) -> Poly {
        let mut cache: HashMap<Var, Vec<Poly>> = HashMap::new();
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut factor = Poly::constant(c.clone());
            for &(v, e) in &m.powers {
                let powers = cache.entry(v).or_insert_with(|| match image(v) {
                    Some(p) => vec![Poly::one(), p],
                    None => Vec::new(),
                });
                if powers.is_empty() {
                    kept.push((v, e));
                    continue;
                }
                while powers.len() <= e as usize {
                    let next = powers.last().unwrap() * &powers[1];
                    powers.push(next);
                }
                factor = &factor * &powers[e as usize];
            }
            let kept = Poly::term(BigRational::one(), Monomial { powers: kept });
            out = out + &factor * &kept;
        }
        out
    }

    /// Renames variables through an injective map, flipping the sign of a
    /// term for every variable whose image carries sign `-1`.
    pub(crate) fn rename_signed(&self, image: impl Fn(Var) -> (Var, i32)) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let mut sign = 1;
            let powers = m.powers.iter().map(|&(v, e)| {
                let (w, s) = image(v);
                if s < 0 && e % 2 == 1 {
                    sign = -sign;
                }
                (w, e)
            });
            let renamed = Monomial::from_powers(powers.collect::<Vec<_>>());
            out.add_term(renamed, if sign < 0 { -c.clone() } else { c.clone() });
        }
        out
    }

    /// Evaluates in any scalar ring, given coefficient conversion and a
    /// lookup for every variable.
    pub fn eval_with<T: Scalar>(
        &self,
        coeff: impl Fn(&BigRational) -> T,
        lookup: impl Fn(Var) -> Option<T>,
    ) -> Result<T> {
        let mut total = T::zero();
        for (m, c) in &self.terms {
            let mut t = coeff(c);
            for &(v, e) in &m.powers {
                let value = lookup(v).ok_or_else(|| Error::MissingVariable(v.to_string()))?;
                for _ in 0..e {
                    t = t * value.clone();
                }
            }
            total = total + t;
        }
        Ok(total)
    }

    pub fn eval_rational(&self, assignment: &HashMap<Var, BigRational>) -> Result<BigRational> {
        self.eval_with(|c| c.clone(), |v| assignment.get(&v).cloned())
    }

    pub fn eval_float(&self, assignment: &HashMap<Var, f64>) -> Result<f64> {
        self.eval_with(rational_to_f64, |v| assignment.get(&v).copied())
    }

    /// Largest absolute coefficient, as a float; 0 for the zero polynomial.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms
            .values()
            .map(|c| rational_to_f64(&c.abs()))
            .fold(0.0, f64::max)
    }
}

pub fn rational_to_f64(c: &BigRational) -> f64 {
    c.to_f64().unwrap_or(f64::NAN)
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(BigRational::one())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Poly {
    type Output = Poly;

    fn add(mut self, rhs: Poly) -> Poly {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(mut self) -> Poly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for Poly {
    type Output = Poly;

    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;

    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Scalar for Poly {
    fn from_i64(v: i64) -> Self {
        Poly::constant(crate::scalar::rat(v))
    }
}

impl From<BigRational> for Poly {
    fn from(c: BigRational) -> Self {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::from_i64(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn x(i: usize) -> Poly {
        Poly::x(i)
    }

    #[test]
    fn add_neg_cancels() {
        let p = &(&x(1) * &x(2)) + &Poly::a(1, 3);
        assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn product_of_differences() {
        let p = &(&x(1) - &x(2)) * &(&x(2) - &x(1));
        let expected = Poly::from_terms([
            (Monomial::from_powers([(Var::Pos(1), 2)]), rat(-1)),
            (Monomial::from_powers([(Var::Pos(1), 1), (Var::Pos(2), 1)]), rat(2)),
            (Monomial::from_powers([(Var::Pos(2), 2)]), rat(-1)),
        ]);
        assert_eq!(p, expected);
    }

    #[test]
    fn scale_example() {
        let d = &x(1) - &x(2);
        let g2 = &d * &(&x(2) - &x(1));
        assert_eq!(g2.scale(&rat(-2)), (&d * &d).scale(&rat(2)));
        assert!(g2.scale(&rat(0)).is_zero());
    }

    #[test]
    fn substitute_examples() {
        let d = &x(1) - &x(2);
        let collapsed = d.substitute(&HashMap::from([(Var::Pos(2), x(1))]));
        assert!(collapsed.is_zero());
        let sq = &d * &d;
        let replaced =
            Poly::a(1, 2).substitute(&HashMap::from([(Var::Gen(1, 2), sq.clone())]));
        assert_eq!(replaced, sq);
    }

    #[test]
    fn substitute_with_powers() {
        // x1^3 * x2 with x1 -> (x2 + 1)
        let p = &x(1).pow(3) * &x(2);
        let q = p.substitute(&HashMap::from([(Var::Pos(1), &x(2) + &Poly::one())]));
        assert_eq!(q, &(&x(2) + &Poly::one()).pow(3) * &x(2));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            Poly::from(5).eval_rational(&HashMap::new()).unwrap(),
            rat(5)
        );
        assert_eq!(
            x(1).eval_float(&HashMap::from([(Var::Pos(1), 0.25)])).unwrap(),
            0.25
        );
        let d = &x(1) - &x(2);
        let sq = &d * &d;
        let at = HashMap::from([(Var::Pos(1), 1.5), (Var::Pos(2), 0.5)]);
        assert_eq!(sq.eval_float(&at).unwrap(), 1.0);
    }

    #[test]
    fn eval_missing_variable() {
        let err = x(3).eval_rational(&HashMap::new()).unwrap_err();
        assert_eq!(err, Error::MissingVariable("x3".into()));
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let m = |p: &[(Var, u32)]| Monomial::from_powers(p.to_vec());
        let x1 = Var::Pos(1);
        let x2 = Var::Pos(2);
        let a12 = Var::Gen(1, 2);
        assert!(m(&[(x2, 2)]) > m(&[(x1, 1)]));
        assert!(m(&[(x1, 2)]) > m(&[(x1, 1), (x2, 1)]));
        assert!(m(&[(x1, 1), (x2, 1)]) > m(&[(x2, 2)]));
        assert!(m(&[(x1, 1)]) > m(&[(a12, 1)]));
        assert!(m(&[]) < m(&[(a12, 1)]));
        assert!(Var::Pos(9) < Var::Gen(1, 2));
        assert!(Var::Gen(1, 4) < Var::Gen(2, 3));
    }

    #[test]
    fn degree_and_constants() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!((&x(1) * &Poly::a(1, 2)).degree(), Some(2));
        assert_eq!(Poly::from(3).as_constant(), Some(rat(3)));
        assert_eq!(x(1).as_constant(), None);
    }

    #[test]
    fn signed_rename() {
        // a(1,2)^2 * a(1,3) with both mapped to negated generators.
        let p = &Poly::a(1, 2).pow(2) * &Poly::a(1, 3);
        let q = p.rename_signed(|v| match v {
            Var::Gen(1, 2) => (Var::Gen(2, 3), -1),
            Var::Gen(1, 3) => (Var::Gen(1, 2), -1),
            other => (other, 1),
        });
        assert_eq!(q, -(&Poly::a(2, 3).pow(2) * &Poly::a(1, 2)));
    }
}
