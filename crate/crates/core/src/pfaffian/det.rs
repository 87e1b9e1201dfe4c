use num_rational::BigRational;
use num_traits::Zero;

use super::{Mode, TriangularArray};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Scalars with a preferred determinant algorithm.
pub trait Determinant: Scalar {
    fn det(matrix: Vec<Vec<Self>>) -> Self;
}

impl Determinant for BigRational {
    fn det(matrix: Vec<Vec<Self>>) -> Self {
        bareiss_determinant(matrix)
    }
}

impl Determinant for f64 {
    fn det(matrix: Vec<Vec<Self>>) -> Self {
        float_determinant(matrix)
    }
}

impl Determinant for Poly {
    fn det(matrix: Vec<Vec<Self>>) -> Self {
        minor_expansion_determinant(&matrix)
    }
}

/// Determinant of the full matrix completed from the array's upper triangle
/// (zero diagonal). Any order is accepted; plain arrays have no completion.
pub fn determinant<S: Determinant>(arr: &TriangularArray<S>) -> Result<S> {
    if arr.mode() == Mode::Plain {
        return Err(Error::WrongMode {
            op: "determinant",
            mode: "plain",
        });
    }
    let n = arr.order();
    let mut matrix = Vec::with_capacity(n);
    for i in 1..=n {
        let row = (1..=n).map(|j| arr.lookup(i, j)).collect::<Result<Vec<S>>>()?;
        matrix.push(row);
    }
    Ok(S::det(matrix))
}

/// Fraction-free Gaussian elimination. Every division is exact, so entries
/// stay integral when the input is.
pub fn bareiss_determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut sign = 1;
    let mut prev = BigRational::from_i64(1);
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigRational::zero();
            };
            m.swap(k, pivot);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigRational::from_i64(1);
    }
    m[n - 1][n - 1].clone().with_sign(sign)
}

fn float_determinant(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for k in 0..n {
        let pivot = (k..n)
            .max_by(|&a, &b| m[a][k].abs().total_cmp(&m[b][k].abs()))
            .expect("non-empty range");
        if m[pivot][k] == 0.0 {
            return 0.0;
        }
        if pivot != k {
            m.swap(pivot, k);
            det = -det;
        }
        det *= m[k][k];
        for i in k + 1..n {
            let factor = m[i][k] / m[k][k];
            for j in k..n {
                m[i][j] -= factor * m[k][j];
            }
        }
    }
    det
}

/// Laplace expansion along rows, memoized on the set of used columns:
/// `O(2^n n)` ring multiplications. Works in any commutative ring; meant for
/// the small symbolic sizes where elimination would need division.
pub fn minor_expansion_determinant<S: Scalar>(m: &[Vec<S>]) -> S {
    let n = m.len();
    assert!(n < 32, "minor expansion is limited to n < 32");
    // minors[mask] = det of rows (n - |mask|)..n restricted to columns in mask.
    let mut minors: Vec<Option<S>> = vec![None; 1 << n];
    minors[0] = Some(S::one());
    for mask in 1usize..(1 << n) {
        let row = n - mask.count_ones() as usize;
        let mut total = S::zero();
        let mut position = 0;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let rest = minors[mask & !(1 << col)].as_ref().expect("smaller mask filled");
            let term = m[row][col].clone() * rest.clone();
            total = total + if position % 2 == 0 { term } else { -term };
            position += 1;
        }
        minors[mask] = Some(total);
    }
    minors[(1 << n) - 1].take().expect("full mask filled")
}
