use thiserror::Error;

/// Errors raised by validation, linear algebra and the solvers.
///
/// Residuals are carried as `f64` regardless of the scalar type so the error type stays
/// non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    Capacity { dim: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("operator is not Hermitian: max |A - A^H| = {residual:e} exceeds {tol:e}")]
    NotHermitian { residual: f64, tol: f64 },

    #[error("numerical failure: {what} (residual {residual:e})")]
    Numerical { what: &'static str, residual: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    EigenNonConvergence { sweeps: usize, residual: f64 },

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("priors sum to {sum}, expected 1")]
    PriorSum { sum: f64 },

    #[error("prior {index} = {value} lies outside (0, 1]")]
    PriorRange { index: usize, value: f64 },

    #[error("state {index} is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NonPsdState { index: usize, min_eigenvalue: f64 },

    #[error("state {index} has trace {trace}, expected 1")]
    TraceViolation { index: usize, trace: f64 },

    #[error("ensemble is empty")]
    EmptyEnsemble,

    #[error("POVM element {index} is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NonPsdElement { index: usize, min_eigenvalue: f64 },

    #[error("POVM elements do not sum to the identity (max deviation {residual:e})")]
    Incomplete { residual: f64 },

    #[error("POVM has {povm} elements but the ensemble has {ensemble} states")]
    CountMismatch { ensemble: usize, povm: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("Newton iteration did not converge at mu = {mu:e} after {iterations} steps (decrement {decrement:e})")]
    NewtonFailure { mu: f64, iterations: usize, decrement: f64, trace_log: Vec<(f64, f64, f64)> },

    #[error("step-size backtracking lost strict feasibility at mu = {mu:e}")]
    LineSearchFailure { mu: f64, trace_log: Vec<(f64, f64, f64)> },

    #[error("outer iteration cap reached with certified gap {gap:e}")]
    GapNotReached { gap: f64, trace_log: Vec<(f64, f64, f64)> },
}

impl Error {
    /// True for failures of the numerical machinery, as opposed to invalid input.
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            Error::NewtonFailure { .. }
                | Error::LineSearchFailure { .. }
                | Error::GapNotReached { .. }
                | Error::EigenNonConvergence { .. }
                | Error::Numerical { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
