//! Pfaff permutations: perfect matchings of `[2n]` written in the normal form
//! `(i_1, j_1, ..., i_n, j_n)` with `i_1 < ... < i_n` and `i_s < j_s`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<(usize, usize)>", into = "Vec<(usize, usize)>")]
pub struct PfaffPermutation {
    pairs: Vec<(usize, usize)>,
}

impl PfaffPermutation {
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        let two_n = 2 * pairs.len();
        let mut seen = vec![false; two_n];
        let mut last_first = 0;
        for &(i, j) in &pairs {
            if i <= last_first {
                return Err(Error::InvalidMatching(format!(
                    "first elements must strictly increase: {pairs:?}"
                )));
            }
            if i >= j {
                return Err(Error::InvalidMatching(format!("pair ({i},{j}) has i >= j")));
            }
            for v in [i, j] {
                if v > two_n || seen[v - 1] {
                    return Err(Error::InvalidMatching(format!(
                        "{pairs:?} is not a permutation of 1..={two_n}"
                    )));
                }
                seen[v - 1] = true;
            }
            last_first = i;
        }
        Ok(PfaffPermutation { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn two_n(&self) -> usize {
        2 * self.pairs.len()
    }

    /// The one-line sequence `(i_1, j_1, ..., i_n, j_n)` as an element of `S_2n`.
    pub fn flatten(&self) -> Permutation {
        Permutation::from_images_unchecked(self.pairs.iter().flat_map(|&(i, j)| [i, j]).collect())
    }
}

impl TryFrom<Vec<(usize, usize)>> for PfaffPermutation {
    type Error = Error;

    fn try_from(pairs: Vec<(usize, usize)>) -> Result<Self> {
        PfaffPermutation::new(pairs)
    }
}

impl From<PfaffPermutation> for Vec<(usize, usize)> {
    fn from(m: PfaffPermutation) -> Self {
        m.pairs
    }
}

impl fmt::Display for PfaffPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, j) in &self.pairs {
            write!(f, "({i},{j})")?;
        }
        Ok(())
    }
}

/// Sign of the flattened one-line sequence, by counting inversions.
pub fn matching_sign(m: &PfaffPermutation) -> i32 {
    m.flatten().sign()
}

/// `(2n-1)!!`, the number of perfect matchings of `[2n]`.
pub fn matching_count(two_n: usize) -> u64 {
    (1..two_n as u64).step_by(2).product()
}

pub(crate) fn check_two_n(two_n: usize, cap: usize) -> Result<()> {
    if two_n == 0 {
        return Err(Error::EmptySize);
    }
    if two_n % 2 != 0 {
        return Err(Error::OddSize(two_n));
    }
    if two_n > cap {
        return Err(Error::CapExceeded {
            what: "pfaffian order",
            requested: two_n,
            cap,
        });
    }
    Ok(())
}

/// Lazy stream of `(matching, sign)` in lexicographic order of the flattening.
///
/// A matching is encoded by its choice digits: at level `k` the smallest
/// unmatched index is paired with the `c_k`-th larger unmatched index, where
/// `0 <= c_k < 2n - 2k - 1`. Lexicographic order on digits equals
/// lexicographic order on flattenings, and the sign is `(-1)^(sum c_k)`
/// since placing the partner next to the smallest free index jumps over
/// exactly `c_k` smaller entries.
#[derive(Debug, Clone)]
pub struct PfaffIter {
    two_n: usize,
    digits: Vec<usize>,
    pinned_first: bool,
    done: bool,
}

impl PfaffIter {
    fn radix(&self, level: usize) -> usize {
        self.two_n - 2 * level - 1
    }

    /// Only the matchings that pair `1` with `partner`. The ranges for
    /// `partner = 2..=2n` partition the full stream in order.
    pub fn with_first_partner(two_n: usize, partner: usize, cap: usize) -> Result<Self> {
        check_two_n(two_n, cap)?;
        if partner < 2 || partner > two_n {
            return Err(Error::IndexOutOfRange {
                index: partner,
                bound: two_n,
            });
        }
        let mut digits = vec![0; two_n / 2];
        digits[0] = partner - 2;
        Ok(PfaffIter {
            two_n,
            digits,
            pinned_first: true,
            done: false,
        })
    }

    fn decode(&self) -> (PfaffPermutation, i32) {
        let mut free: Vec<usize> = (1..=self.two_n).collect();
        let mut pairs = Vec::with_capacity(self.digits.len());
        let mut parity = 0;
        for &c in &self.digits {
            let i = free.remove(0);
            let j = free.remove(c);
            pairs.push((i, j));
            parity += c;
        }
        let sign = if parity % 2 == 0 { 1 } else { -1 };
        (PfaffPermutation { pairs }, sign)
    }

    fn advance(&mut self) {
        let lowest = usize::from(self.pinned_first);
        for level in (lowest..self.digits.len()).rev() {
            if self.digits[level] + 1 < self.radix(level) {
                self.digits[level] += 1;
                return;
            }
            self.digits[level] = 0;
        }
        self.done = true;
    }
}

impl Iterator for PfaffIter {
    type Item = (PfaffPermutation, i32);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = self.decode();
        self.advance();
        Some(item)
    }
}

/// Every Pfaff permutation of `[two_n]` with its sign; `(two_n - 1)!!` items.
pub fn enumerate_pfaff(two_n: usize, cap: usize) -> Result<PfaffIter> {
    check_two_n(two_n, cap)?;
    Ok(PfaffIter {
        two_n,
        digits: vec![0; two_n / 2],
        pinned_first: false,
        done: false,
    })
}
