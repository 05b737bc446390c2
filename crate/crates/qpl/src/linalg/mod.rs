//! Exact linear algebra over prime fields: matrices, row reduction, kernels,
//! and canonical subspace objects with lattice operations.
//!
//! Everything is immutable after construction and uses exact residue
//! arithmetic; there is no floating point anywhere in this crate.

mod field;
mod matrix;
mod subspace;
pub(crate) mod text;

pub use field::PrimeField;
pub use matrix::FqMatrix;
pub use subspace::{kernel, Subspace};
pub use text::parse_ratio;
