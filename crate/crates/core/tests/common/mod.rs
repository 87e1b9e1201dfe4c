//! Oracles shared by the integration suites; written independently of the
//! library's enumeration and action code.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::Zero;

use pfsym::pfaffian::{Mode, TriangularArray};
use pfsym::poly::{Poly, Var};
use pfsym::scalar::rat;

/// All permutations of `0..m` (Heap's algorithm) with their signs.
pub fn all_perms(m: usize) -> Vec<(Vec<usize>, i32)> {
    fn parity(p: &[usize]) -> i32 {
        let mut seen = vec![false; p.len()];
        let mut sign = 1;
        for start in 0..p.len() {
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = p[k];
                len += 1;
            }
            if len > 0 && len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
    let mut a: Vec<usize> = (0..m).collect();
    let mut out = vec![(a.clone(), 1)];
    let mut c = vec![0; m];
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push((a.clone(), parity(&a)));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

pub fn full(arr: &TriangularArray<BigRational>) -> Vec<Vec<BigRational>> {
    let m = arr.order();
    (1..=m)
        .map(|i| (1..=m).map(|j| arr.lookup(i, j).unwrap()).collect())
        .collect()
}

/// `pf = 1/(2^n n!) Σ_{σ ∈ S_2n} sgn σ Π a(σ(2i-1), σ(2i))` over the skew completion.
pub fn pfaffian_by_full_sum(upper: &TriangularArray<BigRational>) -> BigRational {
    let m = upper.order();
    let skew = upper.clone().with_mode(Mode::Skew);
    let a = full(&skew);
    let mut total = BigRational::zero();
    for (p, sign) in all_perms(m) {
        let mut prod = rat(sign as i64);
        for k in 0..m / 2 {
            prod *= &a[p[2 * k]][p[2 * k + 1]];
        }
        total += prod;
    }
    let n = m / 2;
    let norm: i64 = (1..=n as i64).product::<i64>() * (1i64 << n);
    total / rat(norm)
}

pub fn leibniz(a: &[Vec<BigRational>]) -> BigRational {
    all_perms(a.len())
        .into_iter()
        .map(|(p, sign)| {
            p.iter()
                .enumerate()
                .fold(rat(sign as i64), |acc, (r, &c)| acc * &a[r][c])
        })
        .sum()
}

/// Rotations `i -> i + k` and reflections `i -> k - i` (mod m) as image lists.
pub fn dihedral_by_hand(m: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for k in 0..m {
        out.insert((0..m).map(|i| (i + k) % m + 1).collect());
        out.insert((0..m).map(|i| (k + m - i) % m + 1).collect());
    }
    out
}

/// `a(i,j) -> a(p⁻¹ i, p⁻¹ j)` by explicit substitution through the poly API.
pub fn act_by_substitution(p: &[usize], f: &Poly, skew: bool) -> Poly {
    let m = p.len();
    let mut inv = vec![0; m + 1];
    for (k, &v) in p.iter().enumerate() {
        inv[v] = k + 1;
    }
    let mut map = HashMap::new();
    for i in 1..=m {
        for j in i + 1..=m {
            let (a, b) = (inv[i], inv[j]);
            let image = if a < b {
                Poly::a(a, b)
            } else if skew {
                -Poly::a(b, a)
            } else {
                Poly::a(b, a)
            };
            map.insert(Var::Gen(i, j), image);
        }
    }
    f.substitute(&map)
}

/// Images `1..=m` of a 0-based permutation.
pub fn one_based(p: &[usize]) -> Vec<usize> {
    p.iter().map(|v| v + 1).collect()
}
