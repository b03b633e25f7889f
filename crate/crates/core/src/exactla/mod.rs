//! Exact rational linear algebra: scalars, sparse matrices, subspaces.
//!
//! Everything downstream is computed over `Q` with no rounding anywhere.

mod rat;
mod sparse;
mod subspace;

pub use rat::{ParseRatError, Rat};
pub use sparse::{SparseMat, SparseVec};
pub use subspace::{exp_nilpotent, kernel, rank, restrict_images, restrict_operator, Subspace};

pub(crate) use sparse::Accumulator;
