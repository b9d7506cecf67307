//! Dense complex linear algebra for bipartite operators.
//!
//! Basis ordering is row-major with the first subsystem major: `|a>⊗|b>` has index
//! `a * d2 + b`. Partial transposition acts on the second subsystem.

mod eig;
pub(crate) mod factor;
mod hermitian;
pub(crate) mod hessian;
mod matrix;

pub(crate) use eig::jacobi;
pub use eig::{Spectrum, MAX_SWEEPS};
pub use factor::{HermitianCholesky, RealCholesky, SymMatrix};
pub use hermitian::{
    eig_hermitian, is_psd, min_eigenvalue, partial_transpose, trace_inner, trace_norm, HermitianOperator, HERMITIAN_TOL,
};
pub use matrix::{kron, kron_vec, CMatrix, MAX_DIM};
