//! SLOCC-invariant entanglement monotones for three- and four-qubit pure
//! states, and convex roofs of rank-2 mixtures via characteristic curves.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod invariants;
pub mod linalg;
pub mod qstate;
pub mod roof;
pub mod tables;

pub use error::{Error, Result};
pub use invariants::{measure, InvariantKind};
pub use qstate::{DensityMatrix, FamilyId, PureState, RankTwoFamily};
