//! Primal log-det barrier for the optimum over PPT measurements.
//!
//! The last element is eliminated as `M_n = I - Σ_{i<n} M_i`, and the centering problem
//!
//! ```text
//! min  -Σ_i η_i Tr(ρ_i M_i) - mu Σ_i [log det M_i + log det M_i^PT]
//! ```
//!
//! is solved over the free Hermitian coordinates of `M_1 .. M_{n-1}`. Its Hessian is
//! block-diagonal plus the same block `B_n` coupling every pair, which a block Cholesky
//! factors in `n` dense `D² x D²` steps.
//!
//! At a central point `Z_i = η_i ρ_i + mu (M_i^{-1} + (M_i^PT)^{-1 PT})` is the same for every
//! `i`; `K = Z_i`, `X_i = mu M_i^{-1}` and `Y_i = mu (M_i^PT)^{-1}` then satisfy
//! `K - η_i ρ_i = X_i + Y_i^PT` with `X_i, Y_i ⪰ 0`, a dual feasible point with gap `2 mu n D`.
//! Away from exact centrality two candidates are built, the average of the `Z_i` and a dual
//! estimate one Newton step ahead, each shifted by a multiple of the identity until feasible;
//! the cheaper one is reported together with its shift.

use crate::ensembles::{Povm, StateEnsemble};
use crate::error::{Error, Result};
use crate::linalg::factor::{RealCholesky, SymMatrix};
use crate::linalg::hessian::HermitianBasis;
use crate::linalg::{jacobi, CMatrix, HermitianCholesky, HermitianOperator};
use crate::scalar::Real;
use crate::solver::newton::{center, Barrier};
use crate::solver::{center_failure, log_f64, ProblemKind, SolveResult, SolverConfig, TraceEntry};

struct PptBarrier<T: Real> {
    d1: usize,
    d2: usize,
    weighted: Vec<CMatrix<T>>,
    basis: HermitianBasis<T>,
    pt_basis: HermitianBasis<T>,
}

#[derive(Clone)]
struct PptPoint<T: Real> {
    /// All `n` elements, the last one implied by completeness.
    elements: Vec<CMatrix<T>>,
    logdet: T,
}

/// Inverses of `M_i` and of `M_i^PT`.
struct Inverses<T: Real> {
    direct: Vec<CMatrix<T>>,
    transposed: Vec<CMatrix<T>>,
}

impl<T: Real> PptBarrier<T> {
    fn dim(&self) -> usize {
        self.d1 * self.d2
    }

    fn pt(&self, m: &CMatrix<T>) -> CMatrix<T> {
        m.partial_transpose(self.d1, self.d2)
    }

    fn point(&self, free: Vec<CMatrix<T>>) -> Option<PptPoint<T>> {
        let mut last = CMatrix::identity(self.dim());
        for m in &free {
            last.axpy(-T::one(), m);
        }
        let mut elements = free;
        elements.push(last);
        let mut logdet = T::zero();
        for m in &elements {
            logdet += HermitianCholesky::new(m).ok()?.log_det();
            logdet += HermitianCholesky::new(&self.pt(m)).ok()?.log_det();
        }
        Some(PptPoint { elements, logdet })
    }

    fn inverses(&self, x: &PptPoint<T>) -> Option<Inverses<T>> {
        let mut direct = Vec::with_capacity(x.elements.len());
        let mut transposed = Vec::with_capacity(x.elements.len());
        for m in &x.elements {
            direct.push(HermitianCholesky::new(m).ok()?.inverse());
            transposed.push(HermitianCholesky::new(&self.pt(m)).ok()?.inverse());
        }
        Some(Inverses { direct, transposed })
    }

    /// `Z_i = η_i ρ_i + mu (M_i^{-1} + ((M_i^PT)^{-1})^PT)`
    fn stationarity_ops(&self, inv: &Inverses<T>, mu: T) -> Vec<CMatrix<T>> {
        self.weighted
            .iter()
            .zip(inv.direct.iter().zip(&inv.transposed))
            .map(|(w, (x, y))| {
                let mut z = w.clone();
                z.axpy(mu, x);
                z.axpy(mu, &self.pt(y));
                z
            })
            .collect()
    }
}

impl<T: Real> Barrier<T> for PptBarrier<T> {
    type Point = PptPoint<T>;
    type Dir = Vec<CMatrix<T>>;

    fn direction(&self, x: &PptPoint<T>, mu: T) -> Option<(Vec<CMatrix<T>>, T)> {
        let n = x.elements.len();
        let inv = self.inverses(x)?;
        let z = self.stationarity_ops(&inv, mu);
        let m = self.basis.len();

        let mut blocks = Vec::with_capacity(n);
        for i in 0..n {
            let mut b = SymMatrix::zeros(m);
            self.basis.add_congruence_hessian(&mut b, &inv.direct[i], mu);
            self.pt_basis.add_congruence_hessian(&mut b, &inv.transposed[i], mu);
            blocks.push(b);
        }
        // right-hand side r_i = -grad_i = Z_i - Z_n
        let rhs: Vec<Vec<T>> = (0..n - 1).map(|i| self.basis.coords(&z[i].sub(&z[n - 1]))).collect();
        let coupling = blocks.pop()?;

        // Block Cholesky of diag(B_1..B_{n-1}) + 11^T ⊗ B_n. Eliminating block k leaves the
        // same shape with the shared block C_{k+1} = C_k - F_k^T F_k, F_k = L_k^{-1} C_k,
        // and every sub-diagonal factor block in column k equal to F_k^T.
        let mut shared = coupling;
        let mut factors = Vec::with_capacity(n - 1);
        let mut below = Vec::with_capacity(n - 1);
        let base: Vec<T> = (0..m).map(|a| shared.get(a, a)).collect();
        for (k, mut pivot) in blocks.into_iter().enumerate() {
            let scale: Vec<T> = (0..m).map(|a| pivot.get(a, a) + base[a]).collect();
            pivot.add_assign(&shared);
            let l = RealCholesky::new_modified_scaled(&pivot, &scale).ok()?;
            let f = l.solve_lower_matrix(&shared);
            if k + 2 < n {
                shared.sub_gram(&f);
            }
            factors.push(l);
            below.push(f);
        }

        let mut acc = vec![T::zero(); m];
        let mut y = Vec::with_capacity(n - 1);
        for k in 0..n - 1 {
            let r: Vec<T> = rhs[k].iter().zip(&acc).map(|(a, b)| *a - *b).collect();
            let yk = factors[k].solve_lower(&r);
            // acc += F_k^T y_k
            for (row, &v) in below[k].chunks_exact(m).zip(&yk) {
                for (a, &fb) in acc.iter_mut().zip(row) {
                    *a += v * fb;
                }
            }
            y.push(yk);
        }
        let mut tail = vec![T::zero(); m];
        let mut steps = vec![Vec::new(); n - 1];
        for k in (0..n - 1).rev() {
            let ft: Vec<T> =
                below[k].chunks_exact(m).map(|row| row.iter().zip(&tail).map(|(a, b)| *a * *b).sum()).collect();
            let r: Vec<T> = y[k].iter().zip(&ft).map(|(a, b)| *a - *b).collect();
            let xk = factors[k].solve_upper(&r);
            for (t, v) in tail.iter_mut().zip(&xk) {
                *t += *v;
            }
            steps[k] = xk;
        }

        let lam2 = steps.iter().zip(&rhs).map(|(x, r)| x.iter().zip(r).map(|(a, b)| *a * *b).sum::<T>()).sum();
        let dirs = steps.iter().map(|x| self.basis.matrix(x)).collect();
        Some((dirs, lam2))
    }

    fn trial(&self, x: &PptPoint<T>, dir: &Vec<CMatrix<T>>, t: T, mu: T) -> Option<(PptPoint<T>, T)> {
        let n = x.elements.len();
        let free: Vec<CMatrix<T>> = x.elements[..n - 1]
            .iter()
            .zip(dir)
            .map(|(m, d)| {
                let mut m = m.clone();
                m.axpy(t, d);
                m
            })
            .collect();
        let next = self.point(free)?;
        let w_last = &self.weighted[n - 1];
        let lin: T = dir.iter().zip(&self.weighted).map(|(d, w)| w.sub(w_last).trace_product(d).re).sum();
        let df = -t * lin - mu * (next.logdet - x.logdet);
        Some((next, df))
    }
}

struct Certificate<T: Real> {
    k: CMatrix<T>,
    slacks: Vec<CMatrix<T>>,
    shift: T,
    primal: T,
}

impl<T: Real> Certificate<T> {
    fn dual(&self) -> T {
        self.k.trace().re
    }
}

fn certificate<T: Real>(problem: &PptBarrier<T>, x: &PptPoint<T>, mu: T) -> Result<Certificate<T>> {
    let inv = problem.inverses(x).ok_or(Error::Numerical { what: "PPT iterate left the domain", residual: 0.0 })?;
    let primal = problem.weighted.iter().zip(&x.elements).map(|(w, m)| w.trace_product(m).re).sum();
    let averaged = averaged_certificate(problem, &inv, mu, primal)?;
    let projected = match problem.direction(x, mu) {
        Some((dirs, _)) => Some(projected_certificate(problem, &inv, &dirs, mu, primal)?),
        None => None,
    };
    Ok(match projected {
        Some(p) if p.dual() < averaged.dual() => p,
        _ => averaged,
    })
}

/// Raw dual point `K = mean_i Z_i`, shifted until every `K - η_i ρ_i - Y_i^PT ⪰ 0`.
fn averaged_certificate<T: Real>(
    problem: &PptBarrier<T>,
    inv: &Inverses<T>,
    mu: T,
    primal: T,
) -> Result<Certificate<T>> {
    let n = inv.direct.len();
    let z = problem.stationarity_ops(inv, mu);
    let mut k = CMatrix::zeros(problem.dim());
    for zi in &z {
        k.axpy(T::one() / T::from_count(n), zi);
    }
    let k = k.hermitian_part();
    let mut shift = T::zero();
    for (zi, xi) in z.iter().zip(&inv.direct) {
        // K - η_i ρ_i - Y_i^PT = mu M_i^{-1} + K - Z_i
        let mut slack = k.sub(zi);
        slack.axpy(mu, xi);
        shift = shift.max(-jacobi(&slack)?.min());
    }
    let k = k.add(&CMatrix::identity(problem.dim()).scale(shift));
    let slacks = inv.transposed.iter().map(|y| y.scale(mu)).collect();
    Ok(Certificate { k, slacks, shift, primal })
}

/// Dual estimate one Newton step ahead: `X_i = mu (M^{-1} - M^{-1} Δ_i M^{-1})` and the same
/// for `Y_i` on the transposed side. These stay PSD whenever the step is short in the local
/// norm, which holds near the central path even when the gradient itself is not small.
fn projected_certificate<T: Real>(
    problem: &PptBarrier<T>,
    inv: &Inverses<T>,
    dirs: &[CMatrix<T>],
    mu: T,
    primal: T,
) -> Result<Certificate<T>> {
    let n = inv.direct.len();
    let dim = problem.dim();
    let mut last = CMatrix::zeros(dim);
    for d in dirs {
        last.axpy(-T::one(), d);
    }
    let step = |i: usize| if i + 1 < n { &dirs[i] } else { &last };
    let ahead = |inverse: &CMatrix<T>, delta: &CMatrix<T>| {
        let mut out = inverse.sub(&inverse.matmul(delta).matmul(inverse));
        out = out.scale(mu);
        out.hermitian_part()
    };

    let mut slacks = Vec::with_capacity(n);
    let mut ks = Vec::with_capacity(n);
    let mut k = CMatrix::zeros(dim);
    for i in 0..n {
        let delta = step(i);
        let xi = ahead(&inv.direct[i], delta);
        let mut yi = ahead(&inv.transposed[i], &problem.pt(delta));
        let lift = (-jacobi(&yi)?.min()).max(T::zero());
        if lift > T::zero() {
            yi = yi.add(&CMatrix::identity(dim).scale(lift));
        }
        // K_i - η_i ρ_i - Y_i^PT = X_i
        let mut ki = problem.weighted[i].add(&xi);
        ki.axpy(T::one(), &problem.pt(&yi));
        k.axpy(T::one() / T::from_count(n), &ki);
        ks.push((ki, xi));
        slacks.push(yi);
    }
    let k = k.hermitian_part();
    let mut shift = T::zero();
    for (ki, xi) in &ks {
        let slack = xi.add(&k.sub(ki));
        shift = shift.max(-jacobi(&slack)?.min());
    }
    let k = k.add(&CMatrix::identity(dim).scale(shift));
    Ok(Certificate { k, slacks, shift, primal })
}

/// `p_PPT`: `max Σ η_i Tr(ρ_i M_i)` over POVMs with `M_i ⪰ 0` and `M_i^PT ⪰ 0`.
pub fn solve_ppt<T: Real>(e: &StateEnsemble<T>, cfg: &SolverConfig<T>) -> Result<SolveResult<T>> {
    cfg.validate()?;
    let (d1, d2, dim, n) = (e.d1(), e.d2(), e.dim(), e.len());
    let weighted: Vec<CMatrix<T>> = e.items().iter().map(|(p, r)| r.matrix().scale(*p)).collect();

    if n == 1 {
        let value = weighted[0].trace().re;
        return Ok(SolveResult {
            value,
            povm: Povm::trivial(d1, d2),
            dual_k: HermitianOperator::from_hermitian_unchecked(d1, d2, weighted[0].clone()),
            certified_gap: T::zero(),
            problem_kind: ProblemKind::PPT,
            iterations: 0,
            trace_log: Vec::new(),
            ppt_slacks: vec![HermitianOperator::zeros(d1, d2)],
            dual_shift: T::zero(),
        });
    }

    let basis = HermitianBasis::new(dim);
    let pt_basis = basis.partial_transposed(d2);
    let problem = PptBarrier { d1, d2, weighted, basis, pt_basis };
    let start = CMatrix::identity(dim).scale(T::one() / T::from_count(n));
    let mut x = problem
        .point(vec![start; n - 1])
        .ok_or(Error::Numerical { what: "initial PPT point infeasible", residual: 0.0 })?;

    let nu = T::from_count(2 * n * dim);
    let mut mu = cfg.mu_initial;
    let mut log = Vec::new();
    let mut iterations = 0;
    for _ in 0..cfg.max_outer_iters {
        iterations += center(&problem, &mut x, mu, cfg.newton_tol, cfg.max_newton_iters)
            .map_err(|err| center_failure(err, mu, &log))?;
        let cert = certificate(&problem, &x, mu)?;
        log.push(TraceEntry { mu, primal: cert.primal, dual: cert.dual() });

        let gap = cert.dual() - cert.primal;
        if mu * nu <= cfg.target_gap && gap <= cfg.target_gap {
            let elements =
                x.elements.iter().map(|m| HermitianOperator::from_hermitian_unchecked(d1, d2, m.clone())).collect();
            let povm = Povm::new(d1, d2, elements)?;
            return Ok(SolveResult {
                value: cert.primal,
                povm,
                dual_k: HermitianOperator::from_hermitian_unchecked(d1, d2, cert.k),
                certified_gap: gap.max(T::zero()),
                problem_kind: ProblemKind::PPT,
                iterations,
                trace_log: log,
                ppt_slacks: cert
                    .slacks
                    .into_iter()
                    .map(|y| HermitianOperator::from_hermitian_unchecked(d1, d2, y))
                    .collect(),
                dual_shift: cert.shift,
            });
        }
        mu *= cfg.mu_shrink;
    }
    Err(Error::GapNotReached {
        gap: log.last().map(|e| (e.dual - e.primal).to_f64().unwrap_or(f64::NAN)).unwrap_or(f64::NAN),
        trace_log: log_f64(&log),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensembles::example_ensemble;
    use crate::scalar::C;

    fn residual(problem: &PptBarrier<f64>, x: &PptPoint<f64>, mu: f64) -> Vec<f64> {
        let z = problem.stationarity_ops(&problem.inverses(x).unwrap(), mu);
        let n = z.len();
        (0..n - 1).flat_map(|i| problem.basis.coords(&z[i].sub(&z[n - 1]))).collect()
    }

    #[test]
    fn newton_direction_solves_the_block_system() {
        // r(x + tΔ) ≈ (1 - t) r(x) for the Newton direction Δ, r = -gradient
        let e = example_ensemble::<f64>(2, 0.7, None).unwrap();
        let weighted: Vec<CMatrix<f64>> = e.items()[..3].iter().map(|(p, r)| r.matrix().scale(*p)).collect();
        let basis = HermitianBasis::new(4);
        let pt_basis = basis.partial_transposed(2);
        let problem = PptBarrier { d1: 2, d2: 2, weighted, basis, pt_basis };
        let mut a = CMatrix::identity(4).scale(0.3);
        a[(0, 1)] = C::new(0.02, 0.01);
        a[(1, 0)] = C::new(0.02, -0.01);
        let x = problem.point(vec![a, CMatrix::identity(4).scale(0.25)]).unwrap();

        let mu = 0.05;
        let (dir, lam2) = problem.direction(&x, mu).unwrap();
        let r0 = residual(&problem, &x, mu);
        assert!(lam2 > 0.0);
        let t = 1e-6;
        let (next, _) = problem.trial(&x, &dir, t, mu).unwrap();
        let r1 = residual(&problem, &next, mu);
        let scale = r0.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (a, b) in r0.iter().zip(&r1) {
            assert!(((b - a) / t + a).abs() < 1e-4 * scale, "{a} {b}");
        }
    }

    #[test]
    fn single_state_is_trivial() {
        let e = example_ensemble::<f64>(2, 0.5, None).unwrap();
        let one = StateEnsemble::new(2, 2, vec![(1.0, e.items()[0].1.clone())]).unwrap();
        let r = solve_ppt(&one, &SolverConfig::default()).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.certified_gap, 0.0);
    }
}
