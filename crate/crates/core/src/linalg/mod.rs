//! Exact linear algebra over F_p.

mod enumerate;
mod matrix;
mod subspace;

pub use enumerate::{enumerate_subspaces, gaussian_binomial, random_subspace, subspace_count, SubspaceIter};
pub use matrix::{image, kernel, rref, Matrix};
pub use subspace::Subspace;
