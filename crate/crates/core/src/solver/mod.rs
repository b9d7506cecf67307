//! Certified barrier solvers for `p_G`, `q_G` and `p_PPT`.
//!
//! Every solve returns the primal measurement together with a dual point; the reported
//! `certified_gap` is the difference of their objective values, so the true optimum lies
//! in `[value, value + certified_gap]`.

mod dual;
mod newton;
mod ppt;

pub use dual::solve_hermitian_guessing;
pub use ppt::solve_ppt;

use std::fmt;

use crate::ensembles::{Povm, StateEnsemble};
use crate::error::{Error, Result};
use crate::linalg::HermitianOperator;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    /// Guessing probability over all POVMs.
    PG,
    /// Guessing probability of the partially transposed ensemble.
    QG,
    /// Optimum over PPT measurements.
    PPT,
}

impl ProblemKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProblemKind::PG => "pg",
            ProblemKind::QG => "qg",
            ProblemKind::PPT => "ppt",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ProblemKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pg" => Ok(ProblemKind::PG),
            "qg" => Ok(ProblemKind::QG),
            "ppt" => Ok(ProblemKind::PPT),
            other => Err(Error::InvalidParameter(format!("unknown problem kind {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig<T> {
    /// Stop once the certified duality gap is at most this.
    pub target_gap: T,
    pub mu_initial: T,
    /// Barrier parameter reduction factor per outer iteration, in `(0, 1)`.
    pub mu_shrink: T,
    /// Threshold on half the squared Newton decrement of the scaled barrier function.
    pub newton_tol: T,
    pub max_newton_iters: usize,
    pub max_outer_iters: usize,
}

impl<T: Real> Default for SolverConfig<T> {
    fn default() -> Self {
        Self {
            target_gap: T::lit(1e-8),
            mu_initial: T::one(),
            mu_shrink: T::lit(0.2),
            newton_tol: T::lit(1e-10),
            max_newton_iters: 50,
            max_outer_iters: 200,
        }
    }
}

impl<T: Real> SolverConfig<T> {
    pub fn with_target_gap(mut self, gap: T) -> Self {
        self.target_gap = gap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |x: T| x > T::zero() && x.is_finite();
        if !(positive(self.target_gap) && positive(self.mu_initial) && positive(self.newton_tol)) {
            return Err(Error::InvalidParameter("solver tolerances must be positive and finite".into()));
        }
        if !(self.mu_shrink > T::zero() && self.mu_shrink < T::one()) {
            return Err(Error::InvalidParameter("mu_shrink must lie in (0, 1)".into()));
        }
        if self.max_newton_iters == 0 || self.max_outer_iters == 0 {
            return Err(Error::InvalidParameter("iteration caps must be positive".into()));
        }
        Ok(())
    }
}

/// One central point of the barrier path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceEntry<T> {
    pub mu: T,
    /// Objective of the measurement recovered at this point.
    pub primal: T,
    /// Objective of the dual point.
    pub dual: T,
}

#[derive(Clone, Debug)]
pub struct SolveResult<T: Real> {
    /// Primal objective of `povm`.
    pub value: T,
    pub povm: Povm<T>,
    /// Dual certificate `K` with `Tr K = value + certified_gap`.
    pub dual_k: HermitianOperator<T>,
    pub certified_gap: T,
    pub problem_kind: ProblemKind,
    /// Total Newton steps.
    pub iterations: usize,
    pub trace_log: Vec<TraceEntry<T>>,
    /// For PPT solves, the PSD operators `Y_i` with `K - η_i ρ_i - Y_i^PT ⪰ 0`. Empty otherwise.
    pub ppt_slacks: Vec<HermitianOperator<T>>,
    /// Identity shift added to the raw dual point to restore exact feasibility (zero when
    /// the raw point was already feasible).
    pub dual_shift: T,
}

impl<T: Real> SolveResult<T> {
    pub fn dual_value(&self) -> T {
        self.dual_k.trace()
    }
}

fn log_f64<T: Real>(log: &[TraceEntry<T>]) -> Vec<(f64, f64, f64)> {
    let f = |x: T| x.to_f64().unwrap_or(f64::NAN);
    log.iter().map(|e| (f(e.mu), f(e.primal), f(e.dual))).collect()
}

fn center_failure<T: Real>(err: newton::CenterError<T>, mu: T, log: &[TraceEntry<T>]) -> Error {
    let mu = mu.to_f64().unwrap_or(f64::NAN);
    let trace_log = log_f64(log);
    match err {
        newton::CenterError::Singular => Error::NewtonFailure { mu, iterations: 0, decrement: f64::NAN, trace_log },
        newton::CenterError::LineSearch => Error::LineSearchFailure { mu, trace_log },
        newton::CenterError::Cap { steps, decrement } => {
            Error::NewtonFailure { mu, iterations: steps, decrement: decrement.to_f64().unwrap_or(f64::NAN), trace_log }
        }
    }
}

/// Guessing probability `max Σ η_i Tr(ρ_i M_i)` over all POVMs.
pub fn solve_pg<T: Real>(e: &StateEnsemble<T>, cfg: &SolverConfig<T>) -> Result<SolveResult<T>> {
    dual::solve_dual(&e.to_hermitian(), cfg, ProblemKind::PG)
}

/// `q_G = max Σ η_i Tr(ρ_i^PT M_i)` over all POVMs.
pub fn solve_qg<T: Real>(e: &StateEnsemble<T>, cfg: &SolverConfig<T>) -> Result<SolveResult<T>> {
    dual::solve_dual(&e.partial_transpose(), cfg, ProblemKind::QG)
}

/// Closed-form two-state guessing probability `(1 + ||η1 ρ1 - η2 ρ2||_1) / 2`.
pub fn helstrom_two_state<T: Real>(
    eta1: T,
    rho1: &HermitianOperator<T>,
    eta2: T,
    rho2: &HermitianOperator<T>,
) -> Result<T> {
    let diff = rho1.scale(eta1).sub(&rho2.scale(eta2))?;
    Ok((T::one() + diff.trace_norm()?) * T::lit(0.5))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundsReport<T> {
    pub p_g: T,
    pub q_g: T,
    pub p_ppt: T,
    /// `p_PPT <= min(p_G, q_G) + 2 * target_gap`
    pub ordering_ok: bool,
    /// Separability was asserted and `q_G < p_G - 2 * target_gap`, so LOCC cannot reach `p_G`.
    pub nlwe_flag: bool,
}

pub fn bounds_report<T: Real>(e: &StateEnsemble<T>, cfg: &SolverConfig<T>) -> Result<BoundsReport<T>> {
    let p_g = solve_pg(e, cfg)?.value;
    let q_g = solve_qg(e, cfg)?.value;
    let p_ppt = solve_ppt(e, cfg)?.value;
    let slack = cfg.target_gap + cfg.target_gap;
    Ok(BoundsReport {
        p_g,
        q_g,
        p_ppt,
        ordering_ok: p_ppt <= p_g.min(q_g) + slack,
        nlwe_flag: e.separable_asserted() && q_g < p_g - slack,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;
    use crate::scalar::C;

    #[test]
    fn config_validation() {
        assert!(SolverConfig::<f64>::default().validate().is_ok());
        let c = SolverConfig::<f64> { mu_shrink: 1.0, ..Default::default() };
        assert!(c.validate().is_err());
        let c = SolverConfig::<f64>::default().with_target_gap(-1.0);
        assert!(c.validate().is_err());
    }

    #[test]
    fn problem_kind_parses() {
        for k in [ProblemKind::PG, ProblemKind::QG, ProblemKind::PPT] {
            assert_eq!(k.as_str().parse::<ProblemKind>().unwrap(), k);
        }
        assert!("xx".parse::<ProblemKind>().is_err());
    }

    fn pure(v: [f64; 4]) -> HermitianOperator<f64> {
        let v: Vec<C<f64>> = v.iter().map(|&x| C::new(x, 0.0)).collect();
        HermitianOperator::new(2, 2, CMatrix::projector(&v)).unwrap()
    }

    #[test]
    fn helstrom_examples() {
        let a = pure([1.0, 0.0, 0.0, 0.0]);
        let b = pure([0.0, 1.0, 0.0, 0.0]);
        assert!((helstrom_two_state(0.5, &a, 0.5, &b).unwrap() - 1.0).abs() < 1e-15);
        assert!((helstrom_two_state(0.3, &a, 0.7, &a).unwrap() - 0.7).abs() < 1e-15);
        let pp = pure([0.5, 0.5, 0.5, 0.5]);
        let want = (1.0 + 3f64.sqrt() / 2.0) / 2.0;
        assert!((helstrom_two_state(0.5, &a, 0.5, &pp).unwrap() - want).abs() < 1e-14);
    }
}
