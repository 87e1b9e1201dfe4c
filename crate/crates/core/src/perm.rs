//! Permutations of `[m] = {1, ..., m}` in one-line notation.
//!
//! Entry `k` of the one-line form (1-based) is the image `p(k)`. Composition
//! follows the function convention `(p ∘ q)(k) = p(q(k))`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation {
            images: (1..=m).collect(),
        }
    }

    /// Builds a permutation from 1-based images, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &v in &images {
            if v == 0 || v > m || seen[v - 1] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `p(k)` for `1 <= k <= m`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for (i, &a) in self.images.iter().enumerate() {
            count += self.images[i + 1..].iter().filter(|&&b| b < a).count();
        }
        count
    }

    /// `+1` or `-1`, the parity of the inversion count.
    pub fn sign(&self) -> i32 {
        if self.inversions() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&k| self.apply(k)).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Lexicographic stream over `S_m`, optionally restricted to `p(1) = first`.
#[derive(Debug, Clone)]
pub struct SymIter {
    current: Option<Vec<usize>>,
    first: Option<usize>,
}

impl SymIter {
    /// The block of `S_m` whose one-line form starts with `first`. The blocks
    /// for `first = 1..=m` partition `S_m` into contiguous lexicographic ranges.
    pub fn with_first(m: usize, first: usize, cap: usize) -> Result<Self> {
        check_sym_size(m, cap)?;
        if first == 0 || first > m {
            return Err(Error::IndexOutOfRange {
                index: first,
                bound: m,
            });
        }
        let mut start = vec![first];
        start.extend((1..=m).filter(|&v| v != first));
        Ok(SymIter {
            current: Some(start),
            first: Some(first),
        })
    }
}

impl Iterator for SymIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let mut next = cur.clone();
        if next_permutation(&mut next) && self.first.is_none_or(|f| next[0] == f) {
            self.current = Some(next);
        }
        Some(Permutation { images: cur })
    }
}

/// Advances `v` to its lexicographic successor; false once `v` is the last.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn check_sym_size(m: usize, cap: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::EmptySize);
    }
    if m > cap {
        return Err(Error::CapExceeded {
            what: "symmetric group",
            requested: m,
            cap,
        });
    }
    Ok(())
}

/// All `m!` elements of `S_m` in lexicographic order of one-line notation.
pub fn enumerate_sym(m: usize, cap: usize) -> Result<SymIter> {
    check_sym_size(m, cap)?;
    Ok(SymIter {
        current: Some((1..=m).collect()),
        first: None,
    })
}

/// Rotation `k -> k+1 (mod m)` and reflection `1 -> 1, k -> m+2-k`.
pub fn dihedral_generators(m: usize) -> Result<(Permutation, Permutation)> {
    if m == 0 {
        return Err(Error::EmptySize);
    }
    if m % 2 != 0 {
        return Err(Error::OddSize(m));
    }
    let rotation = (1..=m).map(|k| if k < m { k + 1 } else { 1 }).collect();
    let reflection = (1..=m).map(|k| if k == 1 { 1 } else { m + 2 - k }).collect();
    Ok((
        Permutation { images: rotation },
        Permutation { images: reflection },
    ))
}

/// Closure of `{identity} ∪ gens` under composition, by breadth-first search.
pub fn generate_subgroup(m: usize, gens: &[Permutation]) -> Result<BTreeSet<Permutation>> {
    if let Some(bad) = gens.iter().find(|g| g.len() != m) {
        return Err(Error::SizeMismatch {
            left: m,
            right: bad.len(),
        });
    }
    let identity = Permutation::identity(m);
    let mut group = BTreeSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q = g.compose(&p)?;
            if group.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    Ok(group)
}

/// The concrete dihedral subgroup `<rotation, reflection>` of `S_m`.
pub fn dihedral_group(m: usize) -> Result<BTreeSet<Permutation>> {
    let (rotation, reflection) = dihedral_generators(m)?;
    generate_subgroup(m, &[rotation, reflection])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum RunType {
    OneUpRun,
    OneDownRun,
    /// `s, s+1, ..., m, 1, ..., s-1` with `1 < s <= m`.
    TwoUpRuns { split: usize },
    /// `s, s-1, ..., 1, m, ..., s+1` with `1 <= s < m`.
    TwoDownRuns { split: usize },
    NotDihedral,
}

impl RunType {
    pub fn is_dihedral(self) -> bool {
        self != RunType::NotDihedral
    }
}

/// Matches `p` against the four run shapes of dihedral permutations.
pub fn classify_runs(p: &Permutation) -> Result<RunType> {
    let m = p.len();
    if m == 0 {
        return Err(Error::EmptySize);
    }
    if m % 2 != 0 {
        return Err(Error::OddSize(m));
    }
    if p.is_identity() {
        return Ok(RunType::OneUpRun);
    }
    if p.images.iter().enumerate().all(|(i, &v)| v == m - i) {
        return Ok(RunType::OneDownRun);
    }
    let s = p.images[0];
    // Cyclic successor and predecessor on 1..=m.
    let up = |v: usize| if v == m { 1 } else { v + 1 };
    let down = |v: usize| if v == 1 { m } else { v - 1 };
    let ascending = p.images.windows(2).all(|w| w[1] == up(w[0]));
    if ascending && s > 1 {
        return Ok(RunType::TwoUpRuns { split: s });
    }
    let descending = p.images.windows(2).all(|w| w[1] == down(w[0]));
    if descending && s < m {
        return Ok(RunType::TwoDownRuns { split: s });
    }
    Ok(RunType::NotDihedral)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_images(v.to_vec()).unwrap()
    }

    #[test]
    fn compose_examples() {
        let p = perm(&[3, 1, 4, 2]);
        assert_eq!(Permutation::identity(4).compose(&p).unwrap(), p);
        assert_eq!(
            perm(&[2, 1]).compose(&perm(&[2, 1])).unwrap(),
            perm(&[1, 2])
        );
        assert_eq!(
            perm(&[2, 3, 1]).compose(&perm(&[2, 3, 1])).unwrap(),
            perm(&[3, 1, 2])
        );
    }

    #[test]
    fn compose_size_mismatch() {
        let err = perm(&[1, 2]).compose(&perm(&[1, 2, 3])).unwrap_err();
        assert_eq!(err, Error::SizeMismatch { left: 2, right: 3 });
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Permutation::identity(5).sign(), 1);
        assert_eq!(perm(&[2, 1, 3, 4]).sign(), -1);
        assert_eq!(perm(&[1, 4, 2, 3]).inversions(), 2);
        assert_eq!(perm(&[1, 4, 2, 3]).sign(), 1);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Permutation::identity(3).inverse(), Permutation::identity(3));
        assert_eq!(perm(&[2, 3, 1]).inverse(), perm(&[3, 1, 2]));
        assert_eq!(perm(&[1, 4, 3, 2]).inverse(), perm(&[1, 4, 3, 2]));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::from_images(vec![1, 1]).is_err());
        assert!(Permutation::from_images(vec![0, 1]).is_err());
        assert!(Permutation::from_images(vec![1, 3]).is_err());
        assert!(serde_json::from_str::<Permutation>("[2,2]").is_err());
    }

    #[test]
    fn json_is_a_plain_array() {
        let p = perm(&[1, 4, 3, 2]);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,4,3,2]");
        assert_eq!(serde_json::from_str::<Permutation>("[1,4,3,2]").unwrap(), p);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_sym(1, 9).unwrap().count(), 1);
        let s3: Vec<_> = enumerate_sym(3, 9).unwrap().collect();
        assert_eq!(s3.len(), 6);
        assert_eq!(s3[0], perm(&[1, 2, 3]));
        assert_eq!(s3[5], perm(&[3, 2, 1]));
        assert_eq!(enumerate_sym(4, 9).unwrap().count(), 24);
    }

    #[test]
    fn enumerate_respects_cap() {
        assert!(matches!(
            enumerate_sym(10, 9),
            Err(Error::CapExceeded { requested: 10, cap: 9, .. })
        ));
        assert_eq!(enumerate_sym(0, 9).unwrap_err(), Error::EmptySize);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let all: Vec<_> = enumerate_sym(5, 9).unwrap().collect();
        assert_eq!(all.len(), 120);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn first_blocks_partition_the_group() {
        let whole: Vec<_> = enumerate_sym(5, 9).unwrap().collect();
        let blocks: Vec<_> = (1..=5)
            .flat_map(|f| SymIter::with_first(5, f, 9).unwrap())
            .collect();
        assert_eq!(whole, blocks);
    }

    #[test]
    fn dihedral_generator_examples() {
        let (s, t) = dihedral_generators(4).unwrap();
        assert_eq!(s, perm(&[2, 3, 4, 1]));
        assert_eq!(t, perm(&[1, 4, 3, 2]));
        let (s, t) = dihedral_generators(2).unwrap();
        assert_eq!(s, perm(&[2, 1]));
        assert_eq!(t, perm(&[1, 2]));
        let (_, t) = dihedral_generators(6).unwrap();
        assert_eq!(t, perm(&[1, 6, 5, 4, 3, 2]));
        assert_eq!(dihedral_generators(5).unwrap_err(), Error::OddSize(5));
    }

    #[test]
    fn subgroup_examples() {
        let trivial = generate_subgroup(4, &[]).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial.contains(&Permutation::identity(4)));
        assert_eq!(dihedral_group(4).unwrap().len(), 8);
        let (rotation, _) = dihedral_generators(6).unwrap();
        assert_eq!(generate_subgroup(6, &[rotation]).unwrap().len(), 6);
        assert!(generate_subgroup(3, &[perm(&[2, 1])]).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_runs(&perm(&[1, 2, 3, 4])).unwrap(), RunType::OneUpRun);
        assert_eq!(classify_runs(&perm(&[4, 3, 2, 1])).unwrap(), RunType::OneDownRun);
        assert_eq!(
            classify_runs(&perm(&[3, 4, 1, 2])).unwrap(),
            RunType::TwoUpRuns { split: 3 }
        );
        assert_eq!(
            classify_runs(&perm(&[2, 1, 4, 3])).unwrap(),
            RunType::TwoDownRuns { split: 2 }
        );
        assert_eq!(classify_runs(&perm(&[1, 3, 2, 4])).unwrap(), RunType::NotDihedral);
        assert_eq!(classify_runs(&perm(&[2, 1, 3])).unwrap_err(), Error::OddSize(3));
    }

    #[test]
    fn one_run_cases_win_ties() {
        assert_eq!(classify_runs(&perm(&[2, 1])).unwrap(), RunType::OneDownRun);
        assert_eq!(classify_runs(&perm(&[1, 2])).unwrap(), RunType::OneUpRun);
    }
}
