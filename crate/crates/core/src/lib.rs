//! Constructions of subspace-evasive point sets in finite projective spaces
//! built from the Desarguesian partial ovoid of PG(7, q), together with exact
//! verifiers for the combinatorial properties those sets are claimed to have.
//!
//! Everything is computed over finite fields: extension-field coordinates are
//! expanded over a fixed GF(q)-basis ("intrinsic coordinates") so that every
//! incidence question becomes a small dense rank computation over GF(q).

pub mod bounds;
pub mod codes;
pub mod constructions;
mod error;
pub mod field;
pub mod geometry;
pub mod verify;

pub use error::{Error, Result};
pub use field::{FieldContext, FieldElement, FieldTower, SmallField};
pub use geometry::{Flat, Hyperplane, Matrix, PointSet, ProjectivePoint};
pub use verify::{Reduction, VerificationReport, VerifyOptions};
