//! Permutations in one-line form with the right-action composition, cycle and
//! inversion counts, the two classical metrics built from them, and
//! lexicographic ranking.
//!
//! Entries are stored 1-based (`231` is the vector `[2, 3, 1]`), matching the
//! rank-vector convention used for ordinal patterns: position `k` holds the
//! index of the `k`-th smallest window value. All internal indexing converts
//! to 0-based explicitly at the boundary.

use crate::error::{Error, Result};
use std::fmt;

/// Largest length whose factorial fits in `u64`/`usize` ranking arithmetic.
pub const MAX_RANKABLE_LEN: usize = 20;

/// A permutation of `{1, .., L}` in one-line form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    /// Builds a permutation from its one-line form, validating that the
    /// entries are a bijection on `{1, .., L}` with `L ≥ 1`.
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidPermutation {
                entries,
                reason: "length must be at least 1".into(),
            });
        }
        let len = entries.len();
        let mut seen = vec![false; len];
        for &v in &entries {
            if v < 1 || v > len {
                return Err(Error::InvalidPermutation {
                    entries: entries.clone(),
                    reason: format!("entry {v} outside 1..={len}"),
                });
            }
            if seen[v - 1] {
                return Err(Error::InvalidPermutation {
                    entries: entries.clone(),
                    reason: format!("entry {v} repeated"),
                });
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { entries })
    }

    /// The identity permutation `(1, 2, .., len)`.
    pub fn identity(len: usize) -> Self {
        Permutation {
            entries: (1..=len).collect(),
        }
    }

    /// Number of moved points plus fixed points, i.e. `L`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false: the empty permutation is rejected at construction.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// One-line form, 1-based.
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// True when this is the identity.
    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Right-action composition: `(r ∗ s)_k = s_{r_k}`.
    ///
    /// Reading ranks as "position `k` holds the index of the `k`-th smallest
    /// value", `r ∗ s` relabels `s` through `r`, so transcripts act on the
    /// left: `transcript(r, s) ∗ r = s`.
    pub fn compose_right(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        let entries = self
            .entries
            .iter()
            .map(|&r| other.entries[r - 1])
            .collect();
        Ok(Permutation { entries })
    }

    /// The inverse permutation: `inverse()[v] = k` wherever `self[k] = v`.
    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0usize; self.len()];
        for (k, &v) in self.entries.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Permutation { entries: inv }
    }

    /// Number of cycles, fixed points included. The identity on `L` points
    /// has `L` cycles; an `L`-cycle has exactly one.
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.len()];
        let mut cycles = 0;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.entries[k] - 1;
            }
        }
        cycles
    }

    /// Number of inversions: pairs `i < j` with `entry_i > entry_j`.
    /// Counted with a merge sort in `O(L log L)`.
    pub fn inversion_count(&self) -> usize {
        let mut work: Vec<usize> = self.entries.clone();
        let mut buf = vec![0usize; work.len()];
        merge_count(&mut work, &mut buf)
    }

    /// Multiplicative order: smallest `m ≥ 1` with the `m`-fold composition
    /// equal to the identity.
    pub fn order(&self) -> usize {
        let mut acc = self.clone();
        let mut m = 1;
        while !acc.is_identity() {
            acc = acc
                .compose_right(self)
                .expect("equal lengths by construction");
            m += 1;
        }
        m
    }

    /// Lexicographic rank among all permutations of the same length
    /// (identity ranks 0, the reversal ranks `L! − 1`), via the Lehmer code.
    ///
    /// Errors for `L >` [`MAX_RANKABLE_LEN`], where `L!` overflows.
    pub fn lex_rank(&self) -> Result<usize> {
        let len = self.len();
        if len > MAX_RANKABLE_LEN {
            return Err(Error::UnsupportedSize {
                value: len,
                reason: format!("factorial ranking supports length <= {MAX_RANKABLE_LEN}"),
            });
        }
        let mut rank = 0usize;
        for k in 0..len {
            let smaller_later = self.entries[k + 1..]
                .iter()
                .filter(|&&v| v < self.entries[k])
                .count();
            rank += smaller_later * factorial(len - 1 - k);
        }
        Ok(rank)
    }

    /// Inverse of [`Permutation::lex_rank`]: the permutation of length `len`
    /// with the given lexicographic rank.
    pub fn from_lex_rank(rank: usize, len: usize) -> Result<Permutation> {
        if len == 0 || len > MAX_RANKABLE_LEN {
            return Err(Error::UnsupportedSize {
                value: len,
                reason: format!("length must be in 1..={MAX_RANKABLE_LEN}"),
            });
        }
        let total = factorial(len);
        if rank >= total {
            return Err(Error::invalid_parameter(
                "rank",
                rank,
                format!("must be < {len}! = {total}"),
            ));
        }
        let mut remaining: Vec<usize> = (1..=len).collect();
        let mut entries = Vec::with_capacity(len);
        let mut r = rank;
        for k in 0..len {
            let f = factorial(len - 1 - k);
            let pick = r / f;
            r %= f;
            entries.push(remaining.remove(pick));
        }
        Ok(Permutation { entries })
    }

    /// Compact one-line rendering: digits concatenated for `L ≤ 9` (`"231"`),
    /// comma-separated otherwise (`"10,2,1,.."`).
    pub fn one_line_string(&self) -> String {
        if self.len() <= 9 {
            self.entries.iter().map(|v| v.to_string()).collect()
        } else {
            self.entries
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.one_line_string())
    }
}

/// The transcript from `source` to `target`: the unique permutation `T` with
/// `T ∗ source = target`, namely `target ∗ source⁻¹`.
pub fn transcript(source: &Permutation, target: &Permutation) -> Result<Permutation> {
    target.compose_right(&source.inverse())
}

/// The conjugate transcript `source⁻¹ ∗ target`; its partial applications are
/// the left translations that realize the regular (Cayley) embedding.
pub fn conjugate_transcript(source: &Permutation, target: &Permutation) -> Result<Permutation> {
    source.inverse().compose_right(target)
}

/// Cayley distance: minimum number of transpositions turning `r` into `s`,
/// computed as `L − cycle_count(transcript(r, s))`. Range `{0, .., L−1}`.
pub fn cayley_distance(r: &Permutation, s: &Permutation) -> Result<usize> {
    let t = transcript(r, s)?;
    Ok(t.len() - t.cycle_count())
}

/// Kendall distance: minimum number of adjacent transpositions turning `r`
/// into `s`, computed as the inversion count of `transcript(r, s)`.
/// Range `{0, .., L(L−1)/2}`.
pub fn kendall_distance(r: &Permutation, s: &Permutation) -> Result<usize> {
    Ok(transcript(r, s)?.inversion_count())
}

/// `n!` for `n ≤ 20`; callers guard the range.
pub(crate) fn factorial(n: usize) -> usize {
    (2..=n).product::<usize>().max(1)
}

/// Merge sort that returns the number of inversions removed.
fn merge_count(v: &mut [usize], buf: &mut [usize]) -> usize {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inversions = merge_count(&mut v[..mid], buf) + merge_count(&mut v[mid..], buf);
    let (mut i, mut j) = (0, mid);
    for slot in buf[..n].iter_mut() {
        if i < mid && (j >= n || v[i] <= v[j]) {
            *slot = v[i];
            i += 1;
        } else {
            // v[j] jumps over the mid − i entries still waiting on the left.
            inversions += mid - i;
            *slot = v[j];
            j += 1;
        }
    }
    v.copy_from_slice(&buf[..n]);
    inversions
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(digits: &[usize]) -> Permutation {
        Permutation::new(digits.to_vec()).unwrap()
    }

    /// Quadratic reference counter used as an oracle for the merge-sort one.
    fn naive_inversions(perm: &Permutation) -> usize {
        let e = perm.entries();
        let mut count = 0;
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                if e[i] > e[j] {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn construction_validates_bijection() {
        assert!(Permutation::new(vec![]).is_err());
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![0, 1, 2]).is_err());
        assert!(Permutation::new(vec![1, 2, 4]).is_err());
        assert!(Permutation::new(vec![1]).is_ok());
        assert!(Permutation::new(vec![3, 1, 2]).is_ok());
    }

    #[test]
    fn compose_right_examples() {
        // (r ∗ s)_k = s_{r_k}: 213 ∗ 231 picks entries 2, 1, 3 of 231.
        assert_eq!(p(&[2, 1, 3]).compose_right(&p(&[2, 3, 1])).unwrap(), p(&[3, 2, 1]));
        // Identity is neutral on both sides.
        let e = Permutation::identity(3);
        for entries in [[1, 2, 3], [2, 3, 1], [3, 2, 1]] {
            let r = p(&entries);
            assert_eq!(r.compose_right(&e).unwrap(), r);
            assert_eq!(e.compose_right(&r).unwrap(), r);
        }
        assert!(p(&[1, 2]).compose_right(&p(&[1, 2, 3])).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p(&[2, 3, 1]).inverse(), p(&[3, 1, 2]));
        assert_eq!(p(&[1, 3, 2]).inverse(), p(&[1, 3, 2]));
        for entries in [[2, 3, 1], [3, 1, 2], [3, 2, 1], [1, 2, 3]] {
            let r = p(&entries);
            assert!(r.compose_right(&r.inverse()).unwrap().is_identity());
            assert!(r.inverse().compose_right(&r).unwrap().is_identity());
        }
    }

    #[test]
    fn transcript_maps_source_to_target() {
        // Worked Sym(3) case: the transcript from 132 to 213 is 312.
        let t = transcript(&p(&[1, 3, 2]), &p(&[2, 1, 3])).unwrap();
        assert_eq!(t, p(&[3, 1, 2]));
        // Defining property T ∗ source = target, over all Sym(3) pairs.
        for a in 0..6 {
            for b in 0..6 {
                let r = Permutation::from_lex_rank(a, 3).unwrap();
                let s = Permutation::from_lex_rank(b, 3).unwrap();
                let t = transcript(&r, &s).unwrap();
                assert_eq!(t.compose_right(&r).unwrap(), s);
            }
        }
    }

    #[test]
    fn cycle_count_examples() {
        assert_eq!(Permutation::identity(3).cycle_count(), 3);
        assert_eq!(p(&[3, 2, 1]).cycle_count(), 2); // (1 3)(2)
        assert_eq!(p(&[2, 3, 1]).cycle_count(), 1); // one 3-cycle
        assert_eq!(p(&[2, 1, 4, 3]).cycle_count(), 2);
        assert_eq!(Permutation::identity(1).cycle_count(), 1);
    }

    #[test]
    fn inversion_count_examples() {
        assert_eq!(p(&[1, 2, 3]).inversion_count(), 0);
        assert_eq!(p(&[3, 2, 1]).inversion_count(), 3);
        assert_eq!(p(&[1, 4, 2, 3]).inversion_count(), 2);
        assert_eq!(p(&[2, 3, 4, 1]).inversion_count(), 3);
        assert_eq!(p(&[4, 3, 2, 1]).inversion_count(), 6);
    }

    #[test]
    fn merge_sort_inversions_match_naive_oracle() {
        for len in 1..=6 {
            for rank in 0..factorial(len) {
                let perm = Permutation::from_lex_rank(rank, len).unwrap();
                assert_eq!(perm.inversion_count(), naive_inversions(&perm), "{perm}");
            }
        }
    }

    #[test]
    fn distance_examples() {
        // Adjacent-transposition distance between 1423 and 2341 is 5.
        let r = p(&[1, 4, 2, 3]);
        let s = p(&[2, 3, 4, 1]);
        assert_eq!(kendall_distance(&r, &s).unwrap(), 5);
        assert_eq!(cayley_distance(&r, &s).unwrap(), 3);
        // Distance to self is zero; to the reversal it is maximal.
        assert_eq!(kendall_distance(&r, &r).unwrap(), 0);
        assert_eq!(
            kendall_distance(&p(&[1, 2, 3, 4]), &p(&[4, 3, 2, 1])).unwrap(),
            6
        );
        assert_eq!(
            cayley_distance(&p(&[1, 2, 3, 4]), &p(&[4, 3, 2, 1])).unwrap(),
            2
        );
    }

    #[test]
    fn cayley_never_exceeds_kendall() {
        for a in 0..24 {
            for b in 0..24 {
                let r = Permutation::from_lex_rank(a, 4).unwrap();
                let s = Permutation::from_lex_rank(b, 4).unwrap();
                assert!(cayley_distance(&r, &s).unwrap() <= kendall_distance(&r, &s).unwrap());
            }
        }
    }

    #[test]
    fn lex_rank_round_trip() {
        assert_eq!(p(&[1, 2, 3]).lex_rank().unwrap(), 0);
        assert_eq!(p(&[3, 2, 1]).lex_rank().unwrap(), 5);
        // Sym(3) in lexicographic order.
        let expected = [
            [1, 2, 3],
            [1, 3, 2],
            [2, 1, 3],
            [2, 3, 1],
            [3, 1, 2],
            [3, 2, 1],
        ];
        for (rank, entries) in expected.iter().enumerate() {
            assert_eq!(Permutation::from_lex_rank(rank, 3).unwrap(), p(entries));
            assert_eq!(p(entries).lex_rank().unwrap(), rank);
        }
        for len in 1..=5 {
            for rank in 0..factorial(len) {
                let perm = Permutation::from_lex_rank(rank, len).unwrap();
                assert_eq!(perm.lex_rank().unwrap(), rank);
            }
        }
        assert!(Permutation::from_lex_rank(6, 3).is_err());
        assert!(Permutation::from_lex_rank(0, 21).is_err());
    }

    #[test]
    fn order_examples() {
        assert_eq!(Permutation::identity(3).order(), 1);
        assert_eq!(p(&[1, 3, 2]).order(), 2);
        assert_eq!(p(&[2, 3, 1]).order(), 3);
        assert_eq!(p(&[2, 1, 4, 3]).order(), 2);
        assert_eq!(p(&[2, 3, 4, 1]).order(), 4);
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(&[2, 3, 1]).to_string(), "231");
        let long = Permutation::identity(10);
        assert_eq!(long.to_string(), "1,2,3,4,5,6,7,8,9,10");
    }
}
