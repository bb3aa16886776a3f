//! Constructions, decomposition families, subgraph containment and exact
//! extremal numbers for blow-ups of small graphs.
//!
//! Every graph is a [`Graph`] on vertices `0..n`. Families of forbidden
//! graphs are [`GraphFamily`] values, deduplicated up to isomorphism via
//! [`canon::canonical_form`].

pub mod bits;
pub mod canon;
pub mod constructions;
pub mod containment;
pub mod decomposition;
pub mod error;
pub mod extremal;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod invariants;
pub mod lab;
pub mod spec;
pub mod split;

pub use canon::{canonical_form, CanonicalForm};
pub use error::{Error, Result};
pub use family::GraphFamily;
pub use graph::Graph;
