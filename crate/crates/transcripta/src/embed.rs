//! Distance matrices on finite groups: native Cayley/Kendall metrics on
//! symmetric groups, and their transport to arbitrary finite groups through
//! the regular embedding.
//!
//! Both metrics are right-invariant — `d(r, s) = d(e, s∗r⁻¹) = ‖transcript‖`
//! — so a full matrix costs one norm per element plus table lookups. For a
//! general group, elements are first mapped to permutations by
//! [`FiniteGroup::cayley_embedding`] and measured there; the embedding is a
//! homomorphism, so right-invariance carries over, but not every integer in
//! the theoretical range stays realizable: the unrealized values are the
//! *gaps* of the transported distance.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{transcript, Permutation};
use std::collections::BTreeSet;

/// Which permutation metric to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// Minimum transpositions: `L − cycle_count`; range `{0, .., L−1}`.
    Cayley,
    /// Minimum adjacent transpositions: inversion count; range
    /// `{0, .., L(L−1)/2}`.
    Kendall,
}

impl Metric {
    /// Norm of a permutation: its distance from the identity.
    pub fn norm(&self, p: &Permutation) -> usize {
        match self {
            Metric::Cayley => p.len() - p.cycle_count(),
            Metric::Kendall => p.inversion_count(),
        }
    }

    /// Distance between two permutations of equal length.
    pub fn between(&self, r: &Permutation, s: &Permutation) -> Result<usize> {
        Ok(self.norm(&transcript(r, s)?))
    }

    /// Largest value attainable on permutations of the given length.
    pub fn max_for_len(&self, len: usize) -> usize {
        match self {
            Metric::Cayley => len.saturating_sub(1),
            Metric::Kendall => len * len.saturating_sub(1) / 2,
        }
    }

    /// Lower-case name used in CLI flags and CSV headers.
    pub fn name(&self) -> &'static str {
        match self {
            Metric::Cayley => "cayley",
            Metric::Kendall => "kendall",
        }
    }
}

impl std::str::FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cayley" => Ok(Metric::Cayley),
            "kendall" => Ok(Metric::Kendall),
            other => Err(Error::invalid_parameter(
                "metric",
                other,
                "expected \"cayley\" or \"kendall\"",
            )),
        }
    }
}

/// All pairwise distances on a group, recording which metric produced
/// them and whether they were measured through the embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    metric: Metric,
    /// True when distances were measured on embedding images rather than
    /// natively on permutations.
    transported: bool,
    labels: Vec<String>,
    values: Vec<usize>,
    identity_index: usize,
    max_possible: usize,
}

/// Distances realizable from the identity, and the unrealized integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleDistances {
    /// Values that occur as a distance between some pair of elements.
    pub admissible: BTreeSet<usize>,
    /// Integers in `0..=max_possible` that no pair realizes.
    pub gaps: BTreeSet<usize>,
}

impl DistanceMatrix {
    /// Number of elements (rows).
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Distance between elements `i` and `j`.
    pub fn value(&self, i: usize, j: usize) -> usize {
        self.values[i * self.size() + j]
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[usize] {
        &self.values[i * self.size()..(i + 1) * self.size()]
    }

    /// Element labels in index order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The metric that produced this matrix.
    pub fn metric(&self) -> Metric {
        self.metric
    }

    /// Whether the matrix was measured on regular-embedding images.
    pub fn transported(&self) -> bool {
        self.transported
    }

    /// Index of the group identity.
    pub fn identity_index(&self) -> usize {
        self.identity_index
    }

    /// Theoretical maximum of the underlying metric: for a native matrix on
    /// `Sym(L)` this is `L−1` (Cayley) or `L(L−1)/2` (Kendall); for a
    /// transported matrix, the same formulas at `L = |G|`.
    pub fn max_possible(&self) -> usize {
        self.max_possible
    }

    /// Splits `0..=max_possible` into realized distances and gaps.
    ///
    /// By right-invariance the identity row already realizes every
    /// admissible value: `d(a, b) = d(e, b·a⁻¹)`.
    pub fn admissible_distances(&self) -> AdmissibleDistances {
        let admissible: BTreeSet<usize> = self.row(self.identity_index).iter().copied().collect();
        let gaps = (0..=self.max_possible)
            .filter(|v| !admissible.contains(v))
            .collect();
        AdmissibleDistances { admissible, gaps }
    }

    /// Largest distance realized by any pair (the maximum admissible value).
    pub fn max_realized(&self) -> usize {
        self.row(self.identity_index)
            .iter()
            .copied()
            .max()
            .unwrap_or(0)
    }
}

/// Distance matrix for a group, measured natively on permutations when the
/// group is a lexicographically ordered `Sym(L)`, and on regular-embedding
/// images otherwise.
pub fn distance_matrix(group: &FiniteGroup, metric: Metric) -> DistanceMatrix {
    match group.sym_degree() {
        Some(degree) => native_sym_matrix(group, degree, metric),
        None => transported_distance_matrix(group, metric),
    }
}

/// Distance matrix measured on the regular-embedding images of *any* finite
/// group, including symmetric groups (where [`distance_matrix`] would pick
/// the native metric instead).
pub fn transported_distance_matrix(group: &FiniteGroup, metric: Metric) -> DistanceMatrix {
    let n = group.size();
    let images = group.cayley_embedding();
    // Right-invariance: D(aᵢ, aⱼ) = ‖Φ(aⱼ·aᵢ⁻¹)‖, so n norms suffice.
    let norms: Vec<usize> = images.iter().map(|p| metric.norm(p)).collect();
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            values.push(norms[group.transcript(i, j)]);
        }
    }
    DistanceMatrix {
        metric,
        transported: true,
        labels: group.labels().to_vec(),
        values,
        identity_index: group.identity(),
        max_possible: metric.max_for_len(n),
    }
}

fn native_sym_matrix(group: &FiniteGroup, degree: usize, metric: Metric) -> DistanceMatrix {
    let n = group.size();
    let norms: Vec<usize> = (0..n)
        .map(|r| {
            let p = Permutation::from_lex_rank(r, degree).expect("rank in range");
            metric.norm(&p)
        })
        .collect();
    let mut values = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            values.push(norms[group.transcript(i, j)]);
        }
    }
    DistanceMatrix {
        metric,
        transported: false,
        labels: group.labels().to_vec(),
        values,
        identity_index: group.identity(),
        max_possible: metric.max_for_len(degree),
    }
}
