//! Canonical test instances, embedded from the instance files shipped in
//! the repository's `fixtures/` directory.
//!
//! The vertex monoids are mostly two-element semilattices ({1,a} with
//! a*a = a): they exercise the merge path without cancellation, which the
//! group case never hits.

use thiserror::Error;

use crate::gp::GraphProductSpec;
use crate::instance::parse_instance;

/// The fixture names, in order:
/// - FIX-A: one vertex carrying the two-element group.
/// - FIX-B: two vertices, no edge (free product of two semilattices).
/// - FIX-C: the path 0-1-2 over three semilattices.
/// - FIX-D: two vertices joined by an edge.
/// - FIX-E: a triangle (the direct-product case).
pub const FIXTURE_NAMES: [&str; 5] = ["FIX-A", "FIX-B", "FIX-C", "FIX-D", "FIX-E"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("unknown fixture {name:?}")]
    UnknownFixture { name: String },
}

/// Loads one of the named fixtures as a validated graph product.
pub fn load_fixture(name: &str) -> Result<GraphProductSpec, FixtureError> {
    let text = match name {
        "FIX-A" => include_str!("../../../fixtures/FIX-A.json"),
        "FIX-B" => include_str!("../../../fixtures/FIX-B.json"),
        "FIX-C" => include_str!("../../../fixtures/FIX-C.json"),
        "FIX-D" => include_str!("../../../fixtures/FIX-D.json"),
        "FIX-E" => include_str!("../../../fixtures/FIX-E.json"),
        _ => {
            return Err(FixtureError::UnknownFixture {
                name: name.to_string(),
            })
        }
    };
    Ok(parse_instance(text).expect("shipped fixtures always validate"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{enumerate_fk, DEFAULT_STATE_LIMIT};
    use crate::word::{Letter, Word};

    #[test]
    fn every_fixture_parses_and_validates() {
        for name in FIXTURE_NAMES {
            let spec = load_fixture(name).unwrap();
            assert!(spec.vertex_count() >= 1);
        }
    }

    #[test]
    fn the_one_vertex_fixture_is_the_involution() {
        let spec = load_fixture("FIX-A").unwrap();
        assert_eq!(spec.vertex_count(), 1);
        assert_eq!(spec.monoid(0).mul(1, 1), 0);
    }

    #[test]
    fn the_triangle_fixture_is_a_direct_product_at_k1() {
        let spec = load_fixture("FIX-E").unwrap();
        let table = enumerate_fk(&spec, 1, DEFAULT_STATE_LIMIT).unwrap();
        assert_eq!(table.len(), 8);
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert_eq!(
            load_fixture("FIX-X").unwrap_err(),
            FixtureError::UnknownFixture {
                name: "FIX-X".into()
            }
        );
    }

    #[test]
    fn triangle_letters_commute_across_vertices() {
        let spec = load_fixture("FIX-E").unwrap();
        for a in 0..3 {
            for b in 0..3 {
                if a == b {
                    continue;
                }
                let ab = spec
                    .element_of(&Word::new(vec![Letter::new(a, 1), Letter::new(b, 1)]))
                    .unwrap();
                let ba = spec
                    .element_of(&Word::new(vec![Letter::new(b, 1), Letter::new(a, 1)]))
                    .unwrap();
                assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn free_product_letters_never_commute() {
        let spec = load_fixture("FIX-B").unwrap();
        let ab = spec
            .element_of(&Word::new(vec![Letter::new(0, 1), Letter::new(1, 1)]))
            .unwrap();
        let ba = spec
            .element_of(&Word::new(vec![Letter::new(1, 1), Letter::new(0, 1)]))
            .unwrap();
        assert_ne!(ab, ba);
    }
}
