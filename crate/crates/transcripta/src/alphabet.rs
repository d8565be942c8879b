//! The symbol alphabet of a symbolic series: either a symmetric group
//! addressed by lexicographic rank (no table materialized), or an explicit
//! finite group shared behind an [`Arc`].
//!
//! Symbols are plain `usize` indices; the alphabet supplies the group
//! structure (product, inverse, transcript, orders) behind them. For
//! `Sym(L)` the index *is* the lexicographic rank of the permutation, so
//! ordinal patterns of window length `L` symbolize directly into it.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::{factorial, Permutation, MAX_RANKABLE_LEN};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Alphabet of a symbolic series.
#[derive(Debug, Clone)]
pub enum Alphabet {
    /// `Sym(degree)` with elements addressed by lexicographic rank;
    /// index 0 is the identity.
    Sym { degree: usize },
    /// An arbitrary finite group given by its table.
    Table(Arc<FiniteGroup>),
}

impl Alphabet {
    /// Symmetric-group alphabet of the given degree (`1..=20`; beyond that,
    /// rank arithmetic overflows).
    pub fn sym(degree: usize) -> Result<Self> {
        if degree == 0 || degree > MAX_RANKABLE_LEN {
            return Err(Error::UnsupportedSize {
                value: degree,
                reason: format!("symmetric alphabet supports degree 1..={MAX_RANKABLE_LEN}"),
            });
        }
        Ok(Alphabet::Sym { degree })
    }

    /// Alphabet over an explicit group.
    pub fn table(group: Arc<FiniteGroup>) -> Self {
        Alphabet::Table(group)
    }

    /// Number of symbols (`degree!` for `Sym`).
    pub fn size(&self) -> usize {
        match self {
            Alphabet::Sym { degree } => factorial(*degree),
            Alphabet::Table(g) => g.size(),
        }
    }

    /// Index of the group identity (rank 0 for `Sym`: the ascending
    /// permutation is lexicographically first).
    pub fn identity(&self) -> usize {
        match self {
            Alphabet::Sym { .. } => 0,
            Alphabet::Table(g) => g.identity(),
        }
    }

    /// Group product of two symbols.
    pub fn op(&self, i: usize, j: usize) -> usize {
        match self {
            Alphabet::Sym { degree } => {
                let r = self.permutation(i);
                let s = self.permutation(j);
                let _ = degree;
                r.compose_right(&s)
                    .expect("same degree")
                    .lex_rank()
                    .expect("degree bounded at construction")
            }
            Alphabet::Table(g) => g.op(i, j),
        }
    }

    /// Inverse of a symbol.
    pub fn inverse(&self, i: usize) -> usize {
        match self {
            Alphabet::Sym { .. } => self
                .permutation(i)
                .inverse()
                .lex_rank()
                .expect("degree bounded at construction"),
            Alphabet::Table(g) => g.inverse_of(i),
        }
    }

    /// Transcript from symbol `a` to symbol `b`: index of `b·a⁻¹`.
    pub fn transcript(&self, a: usize, b: usize) -> usize {
        match self {
            Alphabet::Sym { .. } => {
                crate::perm::transcript(&self.permutation(a), &self.permutation(b))
                    .expect("same degree")
                    .lex_rank()
                    .expect("degree bounded at construction")
            }
            Alphabet::Table(g) => g.transcript(a, b),
        }
    }

    /// Conjugate transcript `a⁻¹·b`.
    pub fn conjugate_transcript(&self, a: usize, b: usize) -> usize {
        match self {
            Alphabet::Sym { .. } => {
                crate::perm::conjugate_transcript(&self.permutation(a), &self.permutation(b))
                    .expect("same degree")
                    .lex_rank()
                    .expect("degree bounded at construction")
            }
            Alphabet::Table(g) => g.conjugate_transcript(a, b),
        }
    }

    /// Multiplicative order of a symbol.
    pub fn element_order(&self, i: usize) -> usize {
        match self {
            Alphabet::Sym { .. } => self.permutation(i).order(),
            Alphabet::Table(g) => g.element_order(i),
        }
    }

    /// Partition of all symbols by multiplicative order (non-empty classes
    /// only). Materializes every symbol; intended for small alphabets.
    pub fn order_classes(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.size() {
            classes.entry(self.element_order(i)).or_default().push(i);
        }
        classes
    }

    /// Human-readable label of a symbol (one-line form for `Sym`).
    pub fn label(&self, i: usize) -> String {
        match self {
            Alphabet::Sym { .. } => self.permutation(i).one_line_string(),
            Alphabet::Table(g) => g.label(i).to_string(),
        }
    }

    /// The permutation behind a `Sym` symbol. Panics on `Table` alphabets;
    /// callers dispatch on the variant first.
    pub fn permutation(&self, i: usize) -> Permutation {
        match self {
            Alphabet::Sym { degree } => {
                Permutation::from_lex_rank(i, *degree).expect("symbol validated against size")
            }
            Alphabet::Table(_) => panic!("permutation() is only defined for Sym alphabets"),
        }
    }

    /// When the alphabet is a symmetric group indexed by lexicographic
    /// rank (either the `Sym` variant or a table built that way), its
    /// degree; permutation metrics then apply natively.
    pub fn sym_degree(&self) -> Option<usize> {
        match self {
            Alphabet::Sym { degree } => Some(*degree),
            Alphabet::Table(g) => g.sym_degree(),
        }
    }

    /// Whether two alphabets denote the same group with the same indexing,
    /// making their symbol streams combinable. `Sym` and `Table` never
    /// match, even if the table happens to be a symmetric group.
    pub fn compatible(&self, other: &Alphabet) -> bool {
        match (self, other) {
            (Alphabet::Sym { degree: a }, Alphabet::Sym { degree: b }) => a == b,
            (Alphabet::Table(a), Alphabet::Table(b)) => Arc::ptr_eq(a, b) || a == b,
            _ => false,
        }
    }
}
