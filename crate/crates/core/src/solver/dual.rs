//! Dual log-det barrier for `max Σ η_i Tr(C_i M_i)` over POVMs with Hermitian costs `C_i`.
//!
//! The dual is `min Tr K` subject to `K ⪰ η_i C_i`. For barrier weight `mu` the centering
//! problem is `min Tr K - mu Σ log det(K - η_i C_i)`; its stationarity condition
//! `I = mu Σ (K - η_i C_i)^{-1}` makes `M_i = mu (K - η_i C_i)^{-1}` a POVM whose objective
//! falls short of `Tr K` by exactly `mu n D`.

use crate::ensembles::{HermitianEnsemble, Povm};
use crate::error::{Error, Result};
use crate::linalg::factor::{RealCholesky, SymMatrix};
use crate::linalg::hessian::HermitianBasis;
use crate::linalg::{CMatrix, HermitianCholesky, HermitianOperator};
use crate::scalar::Real;
use crate::solver::newton::{center, Barrier};
use crate::solver::{center_failure, ProblemKind, SolveResult, SolverConfig, TraceEntry};

struct DualBarrier<T: Real> {
    weighted: Vec<CMatrix<T>>,
    basis: HermitianBasis<T>,
    dim: usize,
}

struct DualPoint<T: Real> {
    k: CMatrix<T>,
    logdet: T,
}

impl<T: Real> DualBarrier<T> {
    fn slack_factors(&self, k: &CMatrix<T>) -> Option<Vec<HermitianCholesky<T>>> {
        self.weighted.iter().map(|w| HermitianCholesky::new(&k.sub(w)).ok()).collect()
    }

    fn point(&self, k: CMatrix<T>) -> Option<DualPoint<T>> {
        let logdet = self.slack_factors(&k)?.iter().map(|f| f.log_det()).sum();
        Some(DualPoint { k, logdet })
    }

    fn inverses(&self, k: &CMatrix<T>) -> Option<Vec<CMatrix<T>>> {
        Some(self.slack_factors(k)?.iter().map(|f| f.inverse()).collect())
    }
}

impl<T: Real> Barrier<T> for DualBarrier<T> {
    type Point = DualPoint<T>;
    type Dir = CMatrix<T>;

    fn direction(&self, x: &DualPoint<T>, mu: T) -> Option<(CMatrix<T>, T)> {
        let inv = self.inverses(&x.k)?;
        let mut grad = CMatrix::identity(self.dim);
        for xi in &inv {
            grad.axpy(-mu, xi);
        }
        let g = self.basis.coords(&grad);
        let mut h = SymMatrix::zeros(self.basis.len());
        for xi in &inv {
            self.basis.add_congruence_hessian(&mut h, xi, mu);
        }
        let rhs: Vec<T> = g.iter().map(|v| -*v).collect();
        let dx = RealCholesky::new_modified(&h).ok()?.solve(&rhs);
        let lam2 = dx.iter().zip(&rhs).map(|(a, b)| *a * *b).sum();
        Some((self.basis.matrix(&dx), lam2))
    }

    fn trial(&self, x: &DualPoint<T>, dir: &CMatrix<T>, t: T, mu: T) -> Option<(DualPoint<T>, T)> {
        let mut k = x.k.clone();
        k.axpy(t, dir);
        let next = self.point(k)?;
        let df = t * dir.trace().re - mu * (next.logdet - x.logdet);
        Some((next, df))
    }
}

/// `max Σ η_i Tr(C_i M_i)` over all POVMs for Hermitian (not necessarily positive) `C_i`.
pub fn solve_hermitian_guessing<T: Real>(e: &HermitianEnsemble<T>, cfg: &SolverConfig<T>) -> Result<SolveResult<T>> {
    solve_dual(e, cfg, ProblemKind::PG)
}

pub(super) fn solve_dual<T: Real>(
    e: &HermitianEnsemble<T>,
    cfg: &SolverConfig<T>,
    kind: ProblemKind,
) -> Result<SolveResult<T>> {
    cfg.validate()?;
    let (d1, d2, dim, n) = (e.d1(), e.d2(), e.dim(), e.len());
    let weighted: Vec<CMatrix<T>> = e.items().iter().map(|(p, c)| c.matrix().scale(*p)).collect();

    // Frobenius norm bounds the spectral norm, so this K is strictly feasible.
    let shift = T::one() + weighted.iter().map(|w| w.frobenius()).fold(T::zero(), T::max);
    let problem = DualBarrier { weighted, basis: HermitianBasis::new(dim), dim };
    let mut x = problem
        .point(CMatrix::identity(dim).scale(shift))
        .ok_or(Error::Numerical { what: "initial dual point infeasible", residual: 0.0 })?;

    let nu = T::from_count(n * dim);
    let mut mu = cfg.mu_initial;
    let mut log = Vec::new();
    let mut iterations = 0;
    for _ in 0..cfg.max_outer_iters {
        iterations += center(&problem, &mut x, mu, cfg.newton_tol, cfg.max_newton_iters)
            .map_err(|err| center_failure(err, mu, &log))?;

        let inv =
            problem.inverses(&x.k).ok_or(Error::Numerical { what: "dual point left the domain", residual: 0.0 })?;
        let raw: Vec<CMatrix<T>> = inv.iter().map(|xi| xi.scale(mu)).collect();
        let primal = objective(&problem.weighted, &raw);
        let dual = x.k.trace().re;
        log.push(TraceEntry { mu, primal, dual });

        if mu * nu <= cfg.target_gap {
            let povm = normalize(d1, d2, &raw)?;
            let elements: Vec<CMatrix<T>> = povm.elements().iter().map(|m| m.matrix().clone()).collect();
            let value = objective(&problem.weighted, &elements);
            let gap = dual - value;
            if gap <= cfg.target_gap {
                return Ok(SolveResult {
                    value,
                    povm,
                    dual_k: HermitianOperator::from_hermitian_unchecked(d1, d2, x.k),
                    certified_gap: gap.max(T::zero()),
                    problem_kind: kind,
                    iterations,
                    trace_log: log,
                    ppt_slacks: Vec::new(),
                    dual_shift: T::zero(),
                });
            }
        }
        mu *= cfg.mu_shrink;
    }
    Err(Error::GapNotReached {
        gap: log.last().map(|e| (e.dual - e.primal).to_f64().unwrap_or(f64::NAN)).unwrap_or(f64::NAN),
        trace_log: super::log_f64(&log),
    })
}

fn objective<T: Real>(weighted: &[CMatrix<T>], elements: &[CMatrix<T>]) -> T {
    weighted.iter().zip(elements).map(|(w, m)| w.trace_product(m).re).sum()
}

/// Congruence by `G^{-1/2}`, `G = Σ M_i`, so the elements sum to the identity exactly up to
/// rounding.
fn normalize<T: Real>(d1: usize, d2: usize, raw: &[CMatrix<T>]) -> Result<Povm<T>> {
    let dim = d1 * d2;
    let mut sum = CMatrix::zeros(dim);
    for m in raw {
        sum.axpy(T::one(), m);
    }
    let spectrum = crate::linalg::jacobi(&sum)?;
    if spectrum.min() <= T::zero() {
        return Err(Error::Numerical {
            what: "recovered measurement is singular",
            residual: spectrum.min().to_f64().unwrap_or(f64::NAN),
        });
    }
    let r = spectrum.map(|l| T::one() / l.sqrt());
    let elements =
        raw.iter().map(|m| HermitianOperator::from_hermitian_unchecked(d1, d2, r.matmul(m).matmul(&r))).collect();
    Povm::new(d1, d2, elements)
}
