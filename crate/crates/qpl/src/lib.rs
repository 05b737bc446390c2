//! Exact-arithmetic library for q-polymatroids over prime finite fields:
//! rank-metric codes and the q-polymatroids they induce, exhaustive subspace
//! lattice enumeration, the independence apparatus (circuits, loops, bases,
//! spanning and strongly independent spaces, the auxiliary q-matroid), and
//! the independent-space cryptomorphism.
//!
//! All rank values are carried as integer tables against an explicit common
//! denominator, so every comparison in the crate is an exact integer
//! comparison.

pub mod codes;
pub mod cryptomorphism;
pub mod error;
pub mod indep;
pub mod lattice;
pub mod linalg;
pub mod qpm;

pub use codes::{CodeReport, RankMetricCode};
pub use cryptomorphism::CandidateCollection;
pub use error::{Error, Result};
pub use indep::IndependenceAtlas;
pub use lattice::{gaussian_binomial, LatticeIndex, SubspaceId};
pub use linalg::{FqMatrix, PrimeField, Subspace};
pub use qpm::{AxiomReport, Equivalence, QPolymatroid};
