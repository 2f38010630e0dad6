//! Combinatorics of Brauer G-sets and fractional Brauer graph algebras of
//! type MS: the walk calculus and its normal form, coverings and quotients,
//! band enumeration, representation-type classification, fundamental-group
//! invariants, quiver-with-relations presentations, and stable
//! Auslander-Reiten component data.

pub mod algebra;
pub mod artheory;
pub mod bands;
pub mod build;
pub mod classify;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod gset;
pub mod present_iso;
pub mod snf;
pub mod walk;

pub use error::Error;
pub use gset::{BrauerGSet, HalfEdge, RawGSet, ValidationReport};
pub use walk::{Letter, NormalForm, SpecialWalk, Walk};
