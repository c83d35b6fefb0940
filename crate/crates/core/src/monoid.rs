//! Finite monoids given by multiplication tables, morphisms between them,
//! and identity adjunction for semigroup inputs.

use thiserror::Error;

/// Errors raised while validating tables and morphisms.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("shape mismatch: {detail}")]
    ShapeMismatch { detail: String },
    #[error("table entry out of range: table[{row}][{col}] = {value}, size is {size}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("identity law violated at element {element}")]
    IdentityLawViolated { element: usize },
    #[error("not associative: (e{i}*e{j})*e{k} != e{i}*(e{j}*e{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("duplicate element label {label:?}")]
    DuplicateLabel { label: String },
    #[error("morphism does not preserve the identity")]
    IdentityNotPreserved,
    #[error("not a homomorphism at the pair (e{i}, e{j})")]
    NotHomomorphic { i: usize, j: usize },
}

/// A finite monoid as a validated multiplication table.
///
/// Elements are referenced by index; the labels exist for input and output
/// only and never affect multiplication.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteMonoid {
    labels: Vec<String>,
    // flattened size x size table, table[i * size + j] = index of e_i * e_j
    table: Vec<usize>,
    identity: usize,
}

fn check_square(table: &[Vec<usize>]) -> Result<usize, MonoidError> {
    let size = table.len();
    if size == 0 {
        return Err(MonoidError::ShapeMismatch {
            detail: "table is empty".into(),
        });
    }
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != size {
            return Err(MonoidError::ShapeMismatch {
                detail: format!("row {row} has {} entries, expected {size}", entries.len()),
            });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= size {
                return Err(MonoidError::EntryOutOfRange {
                    row,
                    col,
                    value,
                    size,
                });
            }
        }
    }
    Ok(size)
}

fn check_labels(labels: &[String], size: usize) -> Result<(), MonoidError> {
    if labels.len() != size {
        return Err(MonoidError::ShapeMismatch {
            detail: format!("{} labels for a table of size {size}", labels.len()),
        });
    }
    for (i, label) in labels.iter().enumerate() {
        if labels[..i].contains(label) {
            return Err(MonoidError::DuplicateLabel {
                label: label.clone(),
            });
        }
    }
    Ok(())
}

fn check_associative(table: &[Vec<usize>]) -> Result<(), MonoidError> {
    let size = table.len();
    for i in 0..size {
        for j in 0..size {
            for k in 0..size {
                if table[table[i][j]][k] != table[i][table[j][k]] {
                    return Err(MonoidError::NotAssociative { i, j, k });
                }
            }
        }
    }
    Ok(())
}

impl FiniteMonoid {
    /// Validates a raw multiplication table as a monoid.
    ///
    /// Every law is checked exhaustively: the identity law at
    /// `identity_index`, associativity over all triples, and label
    /// distinctness. The tables in play are small, so the O(n^3) scan is the
    /// point, not a cost.
    pub fn validate(
        raw_table: Vec<Vec<usize>>,
        identity_index: usize,
        labels: Vec<String>,
    ) -> Result<Self, MonoidError> {
        let size = check_square(&raw_table)?;
        if identity_index >= size {
            return Err(MonoidError::ShapeMismatch {
                detail: format!("identity index {identity_index} out of range for size {size}"),
            });
        }
        check_labels(&labels, size)?;
        #[allow(clippy::needless_range_loop)]
        for j in 0..size {
            if raw_table[identity_index][j] != j || raw_table[j][identity_index] != j {
                return Err(MonoidError::IdentityLawViolated { element: j });
            }
        }
        check_associative(&raw_table)?;
        Ok(FiniteMonoid {
            labels,
            table: raw_table.into_iter().flatten().collect(),
            identity: identity_index,
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_identity(&self, element: usize) -> bool {
        element == self.identity
    }

    /// Product of two elements by index.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.size() + j]
    }

    pub fn label(&self, element: usize) -> &str {
        &self.labels[element]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The table as rows of indices, for serialization.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.size())
            .map(|i| self.table[i * self.size()..(i + 1) * self.size()].to_vec())
            .collect()
    }

    /// Elements in index order, identity excluded.
    pub fn non_identity_elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size()).filter(|&e| e != self.identity)
    }
}

/// Adjoins a fresh identity to an associative semigroup table.
///
/// The result has size n+1 with the new identity at index n; products among
/// the original elements are unchanged. The fresh label is `"1"`, primed as
/// needed to stay distinct from the given labels.
pub fn adjoin_identity(
    semigroup_table: Vec<Vec<usize>>,
    labels: Vec<String>,
) -> Result<FiniteMonoid, MonoidError> {
    let size = check_square(&semigroup_table)?;
    check_labels(&labels, size)?;
    check_associative(&semigroup_table)?;
    let mut identity_label = String::from("1");
    while labels.contains(&identity_label) {
        identity_label.push('\'');
    }
    let mut table: Vec<Vec<usize>> = semigroup_table;
    for (i, row) in table.iter_mut().enumerate() {
        row.push(i);
    }
    table.push((0..=size).collect());
    let mut labels = labels;
    labels.push(identity_label);
    FiniteMonoid::validate(table, size, labels)
}

/// A validated morphism between two finite monoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMorphism {
    source: FiniteMonoid,
    target: FiniteMonoid,
    map: Vec<usize>,
}

impl VertexMorphism {
    /// Checks that `map` preserves the identity and every product.
    pub fn validate(
        source: FiniteMonoid,
        target: FiniteMonoid,
        map: Vec<usize>,
    ) -> Result<Self, MonoidError> {
        if map.len() != source.size() {
            return Err(MonoidError::ShapeMismatch {
                detail: format!(
                    "map has {} entries for a source of size {}",
                    map.len(),
                    source.size()
                ),
            });
        }
        if let Some((i, &value)) = map.iter().enumerate().find(|(_, &v)| v >= target.size()) {
            return Err(MonoidError::EntryOutOfRange {
                row: i,
                col: 0,
                value,
                size: target.size(),
            });
        }
        if map[source.identity()] != target.identity() {
            return Err(MonoidError::IdentityNotPreserved);
        }
        for i in 0..source.size() {
            for j in 0..source.size() {
                if map[source.mul(i, j)] != target.mul(map[i], map[j]) {
                    return Err(MonoidError::NotHomomorphic { i, j });
                }
            }
        }
        Ok(VertexMorphism {
            source,
            target,
            map,
        })
    }

    /// The identity morphism on a monoid.
    pub fn identity(monoid: &FiniteMonoid) -> Self {
        VertexMorphism {
            source: monoid.clone(),
            target: monoid.clone(),
            map: (0..monoid.size()).collect(),
        }
    }

    pub fn apply(&self, element: usize) -> usize {
        self.map[element]
    }

    pub fn source(&self) -> &FiniteMonoid {
        &self.source
    }

    pub fn target(&self) -> &FiniteMonoid {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn z2() -> FiniteMonoid {
        FiniteMonoid::validate(
            vec![vec![0, 1], vec![1, 0]],
            0,
            vec!["1".into(), "g".into()],
        )
        .unwrap()
    }

    pub(crate) fn semilattice() -> FiniteMonoid {
        FiniteMonoid::validate(
            vec![vec![0, 1], vec![1, 1]],
            0,
            vec!["1".into(), "a".into()],
        )
        .unwrap()
    }

    fn trivial() -> FiniteMonoid {
        FiniteMonoid::validate(vec![vec![0]], 0, vec!["1".into()]).unwrap()
    }

    #[test]
    fn trivial_monoid_validates() {
        let m = trivial();
        assert_eq!(m.size(), 1);
        assert_eq!(m.mul(0, 0), 0);
    }

    #[test]
    fn z2_validates() {
        let m = z2();
        assert_eq!(m.mul(1, 1), 0);
        assert_eq!(m.label(1), "g");
    }

    // A 3-element magma with identity that fails associativity. The expected
    // failing triple is frozen from an independent scan over all 27 triples
    // (see `first_non_associative_triple`).
    fn non_associative_table() -> Vec<Vec<usize>> {
        // 1 a b, with a*a=a, a*b=b, b*a=a, b*b=a
        vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 1, 1]]
    }

    fn first_non_associative_triple(table: &[Vec<usize>]) -> Option<(usize, usize, usize)> {
        let n = table.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if table[table[i][j]][k] != table[i][table[j][k]] {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    #[test]
    fn non_associative_table_is_rejected_with_triple() {
        let table = non_associative_table();
        let expected = first_non_associative_triple(&table).unwrap();
        assert_eq!(expected, (2, 1, 2));
        let err =
            FiniteMonoid::validate(table, 0, vec!["1".into(), "a".into(), "b".into()]).unwrap_err();
        assert_eq!(
            err,
            MonoidError::NotAssociative {
                i: expected.0,
                j: expected.1,
                k: expected.2
            }
        );
    }

    #[test]
    fn bad_identity_index_is_rejected() {
        let err = FiniteMonoid::validate(vec![vec![0]], 3, vec!["1".into()]).unwrap_err();
        assert!(matches!(err, MonoidError::ShapeMismatch { .. }));
    }

    #[test]
    fn identity_law_failures_are_reported() {
        // claim index 1 is the identity of the semilattice table
        let err = FiniteMonoid::validate(
            vec![vec![0, 1], vec![1, 1]],
            1,
            vec!["1".into(), "a".into()],
        )
        .unwrap_err();
        assert_eq!(err, MonoidError::IdentityLawViolated { element: 0 });
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        let err = FiniteMonoid::validate(
            vec![vec![0, 1], vec![1, 0]],
            0,
            vec!["x".into(), "x".into()],
        )
        .unwrap_err();
        assert_eq!(err, MonoidError::DuplicateLabel { label: "x".into() });
    }

    #[test]
    fn ragged_table_is_rejected() {
        let err =
            FiniteMonoid::validate(vec![vec![0, 1], vec![1]], 0, vec!["1".into(), "a".into()])
                .unwrap_err();
        assert!(matches!(err, MonoidError::ShapeMismatch { .. }));
    }

    #[test]
    fn identity_morphism_on_z2_validates() {
        let m = z2();
        let phi = VertexMorphism::validate(m.clone(), m.clone(), vec![0, 1]).unwrap();
        assert_eq!(phi.apply(1), 1);
        assert_eq!(&VertexMorphism::identity(&m), &phi);
    }

    #[test]
    fn collapse_to_trivial_is_a_morphism_for_groups() {
        let phi = VertexMorphism::validate(z2(), trivial(), vec![0, 0]).unwrap();
        assert_eq!(phi.apply(1), 0);
    }

    #[test]
    fn idempotent_to_involution_is_not_a_morphism() {
        // {1,a} with a*a=a into Z2 with a -> g: g*g = 1 != g
        let err = VertexMorphism::validate(semilattice(), z2(), vec![0, 1]).unwrap_err();
        assert_eq!(err, MonoidError::NotHomomorphic { i: 1, j: 1 });
    }

    #[test]
    fn morphism_must_preserve_identity() {
        // {1,a} a*a=a admits the constant-a self map on products but not on 1
        let m = semilattice();
        let err = VertexMorphism::validate(m.clone(), m, vec![1, 1]).unwrap_err();
        assert_eq!(err, MonoidError::IdentityNotPreserved);
    }

    #[test]
    fn adjoin_identity_to_one_element_semigroup() {
        let m = adjoin_identity(vec![vec![0]], vec!["a".into()]).unwrap();
        assert_eq!(m.size(), 2);
        assert_eq!(m.identity(), 1);
        assert_eq!(m.label(1), "1");
        assert_eq!(m.mul(0, 0), 0);
        assert_eq!(m.mul(1, 0), 0);
    }

    #[test]
    fn adjoin_identity_to_left_zero_semigroup() {
        // x*y = x on {a,b}
        let m =
            adjoin_identity(vec![vec![0, 0], vec![1, 1]], vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(m.size(), 3);
        assert_eq!(m.identity(), 2);
        assert_eq!(m.mul(0, 1), 0);
        assert_eq!(m.mul(1, 0), 1);
        assert_eq!(m.mul(2, 1), 1);
    }

    #[test]
    fn adjoin_identity_rejects_empty_input() {
        let err = adjoin_identity(vec![], vec![]).unwrap_err();
        assert!(matches!(err, MonoidError::ShapeMismatch { .. }));
    }

    #[test]
    fn adjoin_identity_picks_a_fresh_label() {
        let m = adjoin_identity(vec![vec![0]], vec!["1".into()]).unwrap();
        assert_eq!(m.label(1), "1'");
    }

    #[test]
    fn adjoin_identity_output_revalidates_with_old_table_intact() {
        let table = vec![vec![0, 0], vec![1, 1]];
        let m = adjoin_identity(table.clone(), vec!["a".into(), "b".into()]).unwrap();
        let rows = m.table_rows();
        let revalidated = FiniteMonoid::validate(rows.clone(), m.identity(), m.labels().to_vec());
        assert!(revalidated.is_ok());
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(rows[i][j], table[i][j]);
            }
        }
    }

    fn is_associative(table: &[Vec<usize>]) -> bool {
        first_non_associative_triple(table).is_none()
    }

    // Validation accepts exactly the associative tables (with the identity
    // law holding by construction of row/column 0).
    #[test]
    fn validation_accepts_exactly_associative_tables() {
        use proptest::prelude::*;
        use proptest::strategy::ValueTree;
        let mut runner = proptest::test_runner::TestRunner::deterministic();
        let strategy = (2usize..=4).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0..n, n), n).prop_map(
                move |mut t| {
                    // force the identity law so only associativity is at stake
                    #[allow(clippy::needless_range_loop)]
                    for j in 0..n {
                        t[0][j] = j;
                        t[j][0] = j;
                    }
                    t
                },
            )
        });
        for _ in 0..300 {
            let table = strategy.new_tree(&mut runner).unwrap().current();
            let labels: Vec<String> = (0..table.len()).map(|i| format!("e{i}")).collect();
            let accepted = FiniteMonoid::validate(table.clone(), 0, labels).is_ok();
            assert_eq!(accepted, is_associative(&table));
        }
    }
}
