//! Finite groups given by multiplication tables: validation of the group
//! axioms, built-in families (cyclic, Klein, symmetric), transcripts, element
//! orders and order classes, and JSON (de)serialization.
//!
//! Elements are addressed by their index in the element list; the table entry
//! `table[i][j]` is the index of `aᵢ·aⱼ`. Validation of untrusted tables is
//! eager and exhaustive — including the `O(n³)` associativity sweep — so that
//! every later operation can assume a genuine group.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Largest untrusted table accepted by [`FiniteGroup::from_table`]; keeps the
/// cubic associativity sweep comfortably fast.
pub const MAX_TABLE_ORDER: usize = 1000;

/// Largest degree for [`FiniteGroup::symmetric`] (6! = 720 elements; 7!
/// would need a 25-million-entry table).
pub const MAX_SYMMETRIC_DEGREE: usize = 6;

/// A finite group presented by its multiplication table.
#[derive(Debug)]
pub struct FiniteGroup {
    labels: Vec<String>,
    /// Row-major `n × n`: `table[i * n + j] = index of aᵢ·aⱼ`.
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    /// `Some(L)` when this is `Sym(L)` with lexicographically ordered
    /// elements, enabling native permutation shortcuts.
    sym_degree: Option<usize>,
    /// Regular-embedding images, computed on first use.
    embedding: OnceLock<Vec<Permutation>>,
}

/// On-disk description of a group: element labels plus index table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSpec {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            labels: self.labels.clone(),
            table: self.table.clone(),
            identity: self.identity,
            inverses: self.inverses.clone(),
            sym_degree: self.sym_degree,
            embedding: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.table == other.table
    }
}

impl FiniteGroup {
    /// Validates and wraps an untrusted multiplication table.
    ///
    /// Checks, in order: size limits, label distinctness, squareness, index
    /// range (closure), existence of a two-sided identity, a right inverse
    /// for every element, and full associativity. Error messages name the
    /// offending element or triple.
    pub fn from_table(labels: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyInput { what: "group element list" });
        }
        if n > MAX_TABLE_ORDER {
            return Err(Error::UnsupportedSize {
                value: n,
                reason: format!("table groups support at most {MAX_TABLE_ORDER} elements"),
            });
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(Error::InvalidGroupTable {
                    reason: format!("label {i} is empty"),
                });
            }
            if labels[..i].contains(l) {
                return Err(Error::InvalidGroupTable {
                    reason: format!("label {l:?} appears more than once"),
                });
            }
        }
        if rows.len() != n {
            return Err(Error::InvalidGroupTable {
                reason: format!("{} rows for {n} elements", rows.len()),
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroupTable {
                    reason: format!("row {i} has {} entries, expected {n}", row.len()),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::InvalidGroupTable {
                        reason: format!("entry ({i},{j}) = {v} out of range (closure fails)"),
                    });
                }
                table.push(v);
            }
        }
        let op = |i: usize, j: usize| table[i * n + j];
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| op(e, i) == i && op(i, e) == i))
            .ok_or_else(|| Error::InvalidGroupTable {
                reason: "no two-sided identity element".into(),
            })?;
        let mut inverses = Vec::with_capacity(n);
        for i in 0..n {
            let inv = (0..n).find(|&j| op(i, j) == identity).ok_or_else(|| {
                Error::InvalidGroupTable {
                    reason: format!("element {:?} has no inverse", labels[i]),
                }
            })?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = op(a, b);
                for c in 0..n {
                    if op(ab, c) != op(a, op(b, c)) {
                        return Err(Error::InvalidGroupTable {
                            reason: format!(
                                "associativity fails at ({:?}, {:?}, {:?})",
                                labels[a], labels[b], labels[c]
                            ),
                        });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            labels,
            table,
            identity,
            inverses,
            sym_degree: None,
            embedding: OnceLock::new(),
        })
    }

    /// Builds a group from a [`GroupSpec`], validating the table.
    pub fn from_spec(spec: GroupSpec) -> Result<Self> {
        FiniteGroup::from_table(spec.elements, spec.table)
    }

    /// Parses the JSON form `{"elements": [..], "table": [[..]]}`.
    pub fn from_json(json: &str) -> Result<Self> {
        let spec: GroupSpec = serde_json::from_str(json).map_err(|e| Error::InvalidGroupTable {
            reason: format!("malformed group JSON: {e}"),
        })?;
        FiniteGroup::from_spec(spec)
    }

    /// The [`GroupSpec`] describing this group.
    pub fn to_spec(&self) -> GroupSpec {
        let n = self.size();
        GroupSpec {
            elements: self.labels.clone(),
            table: (0..n)
                .map(|i| self.table[i * n..(i + 1) * n].to_vec())
                .collect(),
        }
    }

    /// Trusted constructor for tables correct by construction.
    fn from_valid_parts(labels: Vec<String>, table: Vec<usize>, sym_degree: Option<usize>) -> Self {
        let n = labels.len();
        let op = |i: usize, j: usize| table[i * n + j];
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| op(e, i) == i && op(i, e) == i))
            .expect("builtin table has identity");
        let inverses = (0..n)
            .map(|i| (0..n).find(|&j| op(i, j) == identity).expect("builtin inverse"))
            .collect();
        FiniteGroup {
            labels,
            table,
            identity,
            inverses,
            sym_degree,
            embedding: OnceLock::new(),
        }
    }

    /// The cyclic group `Z_n` with labels `"0", .., "n−1"` and addition
    /// modulo `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid_parameter("n", n, "cyclic group needs n >= 1"));
        }
        if n > MAX_TABLE_ORDER {
            return Err(Error::UnsupportedSize {
                value: n,
                reason: format!("cyclic groups support at most {MAX_TABLE_ORDER} elements"),
            });
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push((i + j) % n);
            }
        }
        Ok(FiniteGroup::from_valid_parts(labels, table, None))
    }

    /// The Klein four-group with elements `e, a, b, c`, every non-identity
    /// element an involution, and `a·b = c` cyclically.
    pub fn klein() -> Self {
        let labels = ["e", "a", "b", "c"].map(String::from).to_vec();
        #[rustfmt::skip]
        let table = vec![
            0, 1, 2, 3,
            1, 0, 3, 2,
            2, 3, 0, 1,
            3, 2, 1, 0,
        ];
        FiniteGroup::from_valid_parts(labels, table, None)
    }

    /// The symmetric group `Sym(L)` under the right-action composition, with
    /// elements in lexicographic order (index = lexicographic rank) and
    /// one-line labels. Supports `L ≤` [`MAX_SYMMETRIC_DEGREE`].
    pub fn symmetric(degree: usize) -> Result<Self> {
        if degree == 0 || degree > MAX_SYMMETRIC_DEGREE {
            return Err(Error::UnsupportedSize {
                value: degree,
                reason: format!(
                    "symmetric-group tables support degree 1..={MAX_SYMMETRIC_DEGREE}"
                ),
            });
        }
        let n = crate::perm::factorial(degree);
        let perms: Vec<Permutation> = (0..n)
            .map(|r| Permutation::from_lex_rank(r, degree).expect("rank in range"))
            .collect();
        let labels = perms.iter().map(|p| p.one_line_string()).collect();
        let mut table = Vec::with_capacity(n * n);
        for r in &perms {
            for s in &perms {
                let prod = r.compose_right(s).expect("equal degree");
                table.push(prod.lex_rank().expect("degree <= 6"));
            }
        }
        Ok(FiniteGroup::from_valid_parts(labels, table, Some(degree)))
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Index of the identity element.
    pub fn identity(&self) -> usize {
        self.identity
    }

    /// `Some(L)` when this group was built as `Sym(L)` in lexicographic
    /// order, `None` for all other constructions.
    pub fn sym_degree(&self) -> Option<usize> {
        self.sym_degree
    }

    /// Element labels in index order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Label of element `i`.
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Index of the element with the given label, if any.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Product `aᵢ·aⱼ` by table lookup.
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.size() + j]
    }

    /// Index of `aᵢ⁻¹`.
    pub fn inverse_of(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// The transcript from `a` to `b`: index of `b·a⁻¹`, the unique element
    /// `T` with `T·a = b`.
    pub fn transcript(&self, a: usize, b: usize) -> usize {
        self.op(b, self.inverses[a])
    }

    /// The conjugate transcript `a⁻¹·b`, equal to `transcript(b⁻¹, a⁻¹)`.
    pub fn conjugate_transcript(&self, a: usize, b: usize) -> usize {
        self.op(self.inverses[a], b)
    }

    /// Multiplicative order of element `i`: smallest `m ≥ 1` with
    /// `aᵢᵐ = e`. Always divides the group size.
    pub fn element_order(&self, i: usize) -> usize {
        let mut acc = i;
        let mut m = 1;
        while acc != self.identity {
            acc = self.op(acc, i);
            m += 1;
        }
        m
    }

    /// Partition of the elements by multiplicative order; only non-empty
    /// classes appear, keyed by the order, each class in index order.
    pub fn order_classes(&self) -> BTreeMap<usize, Vec<usize>> {
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.size() {
            classes.entry(self.element_order(i)).or_default().push(i);
        }
        classes
    }

    /// Regular-embedding image of every element: `Φ(aᵢ)` is the permutation
    /// whose `j`-th entry is `1 +` index of `aᵢ⁻¹·aⱼ` — the left translation
    /// by `aᵢ⁻¹` written on the element indices, i.e. the partial application
    /// of the conjugate transcript.
    ///
    /// `Φ` is injective and turns the group product into permutation
    /// composition: `Φ(aᵢ) ∗ Φ(aⱼ) = Φ(aᵢ·aⱼ)`, with `Φ(e)` the identity.
    /// Computed once and cached.
    pub fn cayley_embedding(&self) -> &[Permutation] {
        self.embedding.get_or_init(|| {
            let n = self.size();
            (0..n)
                .map(|i| {
                    let entries = (0..n)
                        .map(|j| self.conjugate_transcript(i, j) + 1)
                        .collect();
                    Permutation::new(entries).expect("left translation is a bijection")
                })
                .collect()
        })
    }

    /// Element handle carrying its group, for mismatch-checked arithmetic.
    pub fn element(&self, i: usize) -> Result<GroupElement<'_>> {
        if i >= self.size() {
            return Err(Error::SymbolOutOfRange {
                symbol: i,
                size: self.size(),
                position: 0,
            });
        }
        Ok(GroupElement { group: self, index: i })
    }
}

/// An element together with its group, enforcing same-group arithmetic.
#[derive(Debug, Clone, Copy)]
pub struct GroupElement<'g> {
    group: &'g FiniteGroup,
    index: usize,
}

impl<'g> GroupElement<'g> {
    /// Index of this element in its group.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Label of this element.
    pub fn label(&self) -> &'g str {
        self.group.label(self.index)
    }

    /// The group this element belongs to.
    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    fn check_same_group(&self, other: &GroupElement<'g>) -> Result<()> {
        if std::ptr::eq(self.group, other.group) {
            Ok(())
        } else {
            Err(Error::GroupMismatch {
                reason: "elements belong to different group instances".into(),
            })
        }
    }

    /// Group product `self · other`.
    pub fn mul(&self, other: &GroupElement<'g>) -> Result<GroupElement<'g>> {
        self.check_same_group(other)?;
        Ok(GroupElement {
            group: self.group,
            index: self.group.op(self.index, other.index),
        })
    }

    /// The inverse element.
    pub fn inverse(&self) -> GroupElement<'g> {
        GroupElement {
            group: self.group,
            index: self.group.inverse_of(self.index),
        }
    }

    /// Transcript from `self` to `target`: `target · self⁻¹`.
    pub fn transcript_to(&self, target: &GroupElement<'g>) -> Result<GroupElement<'g>> {
        self.check_same_group(target)?;
        Ok(GroupElement {
            group: self.group,
            index: self.group.transcript(self.index, target.index),
        })
    }

    /// Conjugate transcript `self⁻¹ · target`.
    pub fn conjugate_transcript_to(&self, target: &GroupElement<'g>) -> Result<GroupElement<'g>> {
        self.check_same_group(target)?;
        Ok(GroupElement {
            group: self.group,
            index: self.group.conjugate_transcript(self.index, target.index),
        })
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        self.group.element_order(self.index)
    }
}

impl PartialEq for GroupElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.group, other.group) && self.index == other.index
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym3() -> FiniteGroup {
        FiniteGroup::symmetric(3).unwrap()
    }

    /// Index-level multiplication table of Sym(3) in lexicographic order
    /// (123, 132, 213, 231, 312, 321), row = left factor.
    #[rustfmt::skip]
    const SYM3_PRODUCTS: [[usize; 6]; 6] = [
        [0, 1, 2, 3, 4, 5],
        [1, 0, 3, 2, 5, 4],
        [2, 4, 0, 5, 1, 3],
        [3, 5, 1, 4, 0, 2],
        [4, 2, 5, 0, 3, 1],
        [5, 3, 4, 1, 2, 0],
    ];

    /// Transcript table of Sym(3): entry (r, s) is the index of `s ∗ r⁻¹`.
    #[rustfmt::skip]
    const SYM3_TRANSCRIPTS: [[usize; 6]; 6] = [
        [0, 1, 2, 3, 4, 5],
        [1, 0, 4, 5, 2, 3],
        [2, 3, 0, 1, 5, 4],
        [4, 5, 1, 0, 3, 2],
        [3, 2, 5, 4, 0, 1],
        [5, 4, 3, 2, 1, 0],
    ];

    #[test]
    fn sym3_multiplication_table() {
        let g = sym3();
        assert_eq!(
            g.labels(),
            &["123", "132", "213", "231", "312", "321"]
        );
        for r in 0..6 {
            for s in 0..6 {
                assert_eq!(g.op(r, s), SYM3_PRODUCTS[r][s], "product at ({r},{s})");
            }
        }
    }

    #[test]
    fn sym3_transcript_table() {
        let g = sym3();
        for r in 0..6 {
            for s in 0..6 {
                assert_eq!(
                    g.transcript(r, s),
                    SYM3_TRANSCRIPTS[r][s],
                    "transcript at ({r},{s})"
                );
            }
        }
    }

    #[test]
    fn klein_structure() {
        let g = FiniteGroup::klein();
        assert_eq!(g.size(), 4);
        assert_eq!(g.identity(), 0);
        for i in 0..4 {
            assert_eq!(g.inverse_of(i), i, "every Klein element is an involution");
        }
        // a·b = c, b·c = a, c·a = b.
        assert_eq!(g.op(1, 2), 3);
        assert_eq!(g.op(2, 3), 1);
        assert_eq!(g.op(3, 1), 2);
        // With involutions, transcripts reduce to products: T(a, b) = b·a.
        assert_eq!(g.transcript(1, 2), g.op(2, 1));
    }

    #[test]
    fn transcript_identities_exhaustive() {
        for g in [FiniteGroup::klein(), FiniteGroup::cyclic(5).unwrap(), sym3()] {
            let n = g.size();
            // Reversal inverts: T(b, a) = T(a, b)⁻¹.
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(g.transcript(b, a), g.inverse_of(g.transcript(a, b)));
                }
            }
            // Chaining: T(b, c) · T(a, b) = T(a, c).
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assert_eq!(
                            g.op(g.transcript(b, c), g.transcript(a, b)),
                            g.transcript(a, c)
                        );
                    }
                }
            }
            // As a map G×G → G, each value is hit exactly |G| times.
            let mut hits = vec![0usize; n];
            for a in 0..n {
                for b in 0..n {
                    hits[g.transcript(a, b)] += 1;
                }
            }
            assert!(hits.iter().all(|&h| h == n));
            // Conjugate transcript relation: a⁻¹·b = T(b⁻¹, a⁻¹).
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(
                        g.conjugate_transcript(a, b),
                        g.transcript(g.inverse_of(b), g.inverse_of(a))
                    );
                }
            }
        }
    }

    #[test]
    fn element_orders_and_classes() {
        let g = sym3();
        let orders: Vec<usize> = (0..6).map(|i| g.element_order(i)).collect();
        assert_eq!(orders, [1, 2, 2, 3, 3, 2]);
        let classes = g.order_classes();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes[&1], vec![0]);
        assert_eq!(classes[&2], vec![1, 2, 5]);
        assert_eq!(classes[&3], vec![3, 4]);

        let k = FiniteGroup::klein();
        let kc = k.order_classes();
        assert_eq!(kc.len(), 2);
        assert_eq!(kc[&1], vec![0]);
        assert_eq!(kc[&2], vec![1, 2, 3]);

        let z4 = FiniteGroup::cyclic(4).unwrap();
        let zc = z4.order_classes();
        assert_eq!(zc[&1], vec![0]);
        assert_eq!(zc[&2], vec![2]);
        assert_eq!(zc[&4], vec![1, 3]);
        // Orders divide the group size.
        for g in [k, z4, FiniteGroup::cyclic(7).unwrap()] {
            for i in 0..g.size() {
                assert_eq!(g.size() % g.element_order(i), 0);
            }
        }
    }

    #[test]
    fn from_table_rejects_bad_tables() {
        let labels = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        // Closure violation.
        let err = FiniteGroup::from_table(labels(2), vec![vec![0, 1], vec![1, 7]]).unwrap_err();
        assert!(err.to_string().contains("closure"), "{err}");
        // No inverse for element 1.
        let err = FiniteGroup::from_table(labels(2), vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(err.to_string().contains("no inverse"), "{err}");
        // No identity.
        let err = FiniteGroup::from_table(labels(2), vec![vec![1, 0], vec![1, 0]]).unwrap_err();
        assert!(err.to_string().contains("identity"), "{err}");
        // Smallest non-associative loop (order 5): identity and inverses
        // exist, so only the associativity sweep can reject it.
        #[rustfmt::skip]
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 3, 4, 0, 1],
            vec![3, 4, 1, 2, 0],
            vec![4, 2, 0, 1, 3],
        ];
        let err = FiniteGroup::from_table(labels(5), loop5).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
        // Duplicate labels.
        let err = FiniteGroup::from_table(
            vec!["x".into(), "x".into()],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap_err();
        assert!(err.to_string().contains("more than once"), "{err}");
    }

    #[test]
    fn json_round_trip() {
        let g = FiniteGroup::klein();
        let json = serde_json::to_string(&g.to_spec()).unwrap();
        let back = FiniteGroup::from_json(&json).unwrap();
        assert_eq!(back, g);
        assert!(FiniteGroup::from_json("{\"elements\": []}").is_err());
    }

    #[test]
    fn element_handles_check_groups() {
        let g1 = FiniteGroup::klein();
        let g2 = FiniteGroup::klein();
        let a = g1.element(1).unwrap();
        let b = g1.element(2).unwrap();
        assert_eq!(a.mul(&b).unwrap().index(), 3);
        assert_eq!(a.transcript_to(&b).unwrap().index(), g1.transcript(1, 2));
        assert_eq!(a.order(), 2);
        let foreign = g2.element(1).unwrap();
        assert!(a.mul(&foreign).is_err());
        assert!(g1.element(9).is_err());
    }

    #[test]
    fn builtin_sizes_and_guards() {
        assert_eq!(FiniteGroup::symmetric(4).unwrap().size(), 24);
        assert!(FiniteGroup::symmetric(0).is_err());
        assert!(FiniteGroup::symmetric(7).is_err());
        assert!(FiniteGroup::cyclic(0).is_err());
        assert_eq!(FiniteGroup::cyclic(1).unwrap().size(), 1);
    }
}
