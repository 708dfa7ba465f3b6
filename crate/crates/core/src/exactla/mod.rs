//! Exact linear algebra over GF(q): echelon forms, kernels, canonical
//! subspaces and projective points, plus a packed GF(2) row type for the
//! codeword scans.

mod bits;
mod matrix;
mod subspace;
pub mod text;

pub use bits::BitRow;
pub use matrix::{canonical_point, determinant, row_space_contains, MatrixGF, Rref};
pub use subspace::{for_each_subspace, SubspaceRREF, SubspaceVectors};

