//! Exact computation in graph products of finite monoids.
//!
//! A graph product glues a family of monoids, one per vertex of a simple
//! graph, into a single monoid in which two vertex monoids commute
//! elementwise exactly when their vertices share an edge. No edges gives the
//! free product, a complete graph the direct product, and anything between
//! interpolates — free monoids at the vertices recover trace monoids.
//!
//! This crate computes in such products when the graph and all vertex
//! monoids are finite tables:
//!
//! - canonical left Foata normal forms ([`normalform`]), giving a decision
//!   procedure for the word problem by structural equality;
//! - block lengths and their left/right agreement;
//! - the finite set of elements of bounded block length, the letter action
//!   on it, and the induced morphism into its transformation monoid
//!   ([`action`]);
//! - explicit, independently re-verifiable certificates that two distinct
//!   elements are separated by a morphism to a finite monoid
//!   ([`separation`]), including the quotient-then-retract pipeline for
//!   vertex monoids given through finite quotients;
//! - a deliberately naive congruence-closure oracle ([`oracle`]) used as
//!   ground truth in tests.
//!
//! ```
//! use gp_core::fixtures::load_fixture;
//! use gp_core::instance::parse_word;
//! use gp_core::separation::{separate_finite, verify_certificate};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let spec = load_fixture("FIX-B")?;
//! let u = spec.element_of(&parse_word(&spec, "0:a 1:b")?)?;
//! let v = spec.element_of(&parse_word(&spec, "1:b 0:a")?)?;
//! assert_ne!(u, v); // no edge, so the letters do not commute
//!
//! let cert = separate_finite(&spec, &u, &v)?;
//! assert_eq!(cert.witness_state(), 0);
//! assert!(verify_certificate(&spec, &cert));
//! # Ok(()) }
//! ```

pub mod action;
pub mod fixtures;
pub mod gp;
pub mod graph;
pub mod instance;
pub mod monoid;
pub mod normalform;
pub mod oracle;
pub mod separation;
pub mod word;

pub use gp::{GPElement, GraphProductSpec};
pub use normalform::NormalForm;
pub use word::{Letter, Word};
