//! Optimal minimum-error discrimination of bipartite quantum state ensembles.
//!
//! Three optima are computed with explicit duality-gap certificates:
//!
//! * the guessing probability `p_G`, maximized over all POVMs;
//! * `p_PPT`, maximized over POVMs whose elements have positive partial transpose;
//! * `q_G`, the guessing probability of the partially transposed ensemble, which
//!   upper-bounds both `p_PPT` and every LOCC strategy.
//!
//! The [`certify`] module checks the optimality conditions for a given measurement and
//! recognizes computational-basis local measurements, for which `p_L = q_G` follows.
//! The [`ensembles`] module generates the two-qudit family whose optima are known in
//! closed form.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the `*64` aliases below fix
//! the double-precision instantiation used by the command-line tool.

pub mod certify;
pub mod ensembles;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod solver;

pub use error::{Error, Result};
pub use scalar::{Real, C};

pub type Matrix64 = linalg::CMatrix<f64>;
pub type Operator64 = linalg::HermitianOperator<f64>;
pub type Operator32 = linalg::HermitianOperator<f32>;
pub type Ensemble64 = ensembles::StateEnsemble<f64>;
pub type Povm64 = ensembles::Povm<f64>;
pub type SolverConfig64 = solver::SolverConfig<f64>;
pub type SolveResult64 = solver::SolveResult<f64>;
pub type CertificateReport64 = certify::CertificateReport<f64>;
