//! Optimality conditions for a given measurement, and recognition of local measurements.
//!
//! For cost operators `C_i` (the states for `p_G`, their partial transposes for `q_G`) a
//! POVM is optimal iff `Σ_j η_j C_j M_j - η_i C_i ⪰ 0` for every `i`. Optimal POVMs also
//! satisfy `M_i (η_i C_i - η_j C_j) M_j = 0` for every pair.

use std::fmt;

use crate::ensembles::{Povm, StateEnsemble};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, HermitianOperator};
use crate::scalar::Real;

/// Tolerance used when callers have no reason to pick another.
pub const DEFAULT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CertificateKind {
    GlobalOpt,
    QgOpt,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::GlobalOpt => "GLOBAL_OPT",
            CertificateKind::QgOpt => "QG_OPT",
        }
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificateReport<T> {
    pub kind: CertificateKind,
    /// Minimum eigenvalue of the symmetrized `Σ_j η_j C_j M_j - η_i C_i`, per `i`.
    pub lagrangian_residuals: Vec<T>,
    /// Max-entry norm of `M_i (η_i C_i - η_j C_j) M_j`, row `i`, column `j`.
    pub slackness_residuals: Vec<Vec<T>>,
    /// Max-entry norm of `G - G^H` for `G = Σ_j η_j C_j M_j`.
    pub hermiticity_residual: T,
    pub passed: bool,
    pub tolerance: T,
}

impl<T: Real> CertificateReport<T> {
    pub fn min_lagrangian_residual(&self) -> T {
        self.lagrangian_residuals.iter().fold(T::infinity(), |a, &b| a.min(b))
    }

    pub fn max_slackness_residual(&self) -> T {
        self.slackness_residuals.iter().flatten().fold(T::zero(), |a, &b| a.max(b))
    }
}

fn check_pair<T: Real>(e: &StateEnsemble<T>, m: &Povm<T>) -> Result<()> {
    if e.d1() != m.d1() || e.d2() != m.d2() {
        return Err(Error::DimensionMismatch { expected: e.dim(), found: m.d1() * m.d2() });
    }
    if e.len() != m.len() {
        return Err(Error::CountMismatch { ensemble: e.len(), povm: m.len() });
    }
    Ok(())
}

fn check_tol<T: Real>(tol: T) -> Result<()> {
    if !(tol >= T::zero() && tol.is_finite()) {
        return Err(Error::InvalidParameter(format!("tolerance must be finite and non-negative, got {tol}")));
    }
    Ok(())
}

fn report<T: Real>(kind: CertificateKind, costs: &[CMatrix<T>], m: &Povm<T>, tol: T) -> Result<CertificateReport<T>> {
    let dim = m.d1() * m.d2();
    let elements: Vec<&CMatrix<T>> = m.elements().iter().map(|x| x.matrix()).collect();

    let mut g = CMatrix::zeros(dim);
    for (c, mi) in costs.iter().zip(&elements) {
        g = g.add(&c.matmul(mi));
    }
    let hermiticity_residual = g.hermiticity_residual();
    let g = g.hermitian_part();

    let mut lagrangian_residuals = Vec::with_capacity(costs.len());
    for c in costs {
        let h = HermitianOperator::from_hermitian_unchecked(m.d1(), m.d2(), g.sub(c).hermitian_part());
        lagrangian_residuals.push(h.min_eigenvalue()?);
    }

    let n = costs.len();
    let mut slackness_residuals = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let diff = costs[i].sub(&costs[j]);
                slackness_residuals[i][j] = elements[i].matmul(&diff).matmul(elements[j]).max_abs();
            }
        }
    }

    let passed =
        lagrangian_residuals.iter().all(|&r| r >= -tol) && slackness_residuals.iter().flatten().all(|&r| r <= tol);
    Ok(CertificateReport {
        kind,
        lagrangian_residuals,
        slackness_residuals,
        hermiticity_residual,
        passed,
        tolerance: tol,
    })
}

/// Checks that `m` attains `p_G` for `e`.
pub fn check_global_optimality<T: Real>(e: &StateEnsemble<T>, m: &Povm<T>, tol: T) -> Result<CertificateReport<T>> {
    check_pair(e, m)?;
    check_tol(tol)?;
    let costs: Vec<CMatrix<T>> = e.items().iter().map(|(p, r)| r.matrix().scale(*p)).collect();
    report(CertificateKind::GlobalOpt, &costs, m, tol)
}

/// Checks that `m` attains `q_G` for `e`. The positivity test is necessary and sufficient.
pub fn check_qg_optimality<T: Real>(e: &StateEnsemble<T>, m: &Povm<T>, tol: T) -> Result<CertificateReport<T>> {
    check_pair(e, m)?;
    check_tol(tol)?;
    let costs: Vec<CMatrix<T>> =
        e.items().iter().map(|(p, r)| r.matrix().partial_transpose(e.d1(), e.d2()).scale(*p)).collect();
    report(CertificateKind::QgOpt, &costs, m, tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PptReport<T> {
    pub is_ppt: bool,
    /// Minimum eigenvalue of each `M_i^PT`.
    pub min_eigenvalues: Vec<T>,
}

/// Whether every element of `m` has a positive partial transpose (within `tol`).
pub fn check_povm_ppt<T: Real>(m: &Povm<T>, tol: T) -> Result<PptReport<T>> {
    check_tol(tol)?;
    let min_eigenvalues =
        m.elements().iter().map(|x| x.partial_transpose().min_eigenvalue()).collect::<Result<Vec<T>>>()?;
    let is_ppt = min_eigenvalues.iter().all(|&v| v >= -tol);
    Ok(PptReport { is_ppt, min_eigenvalues })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LocalRealizationReport<T> {
    /// Every `M_i^PT` is `c (P ⊗ Q)` with `c >= 0` and `P`, `Q` projectors diagonal in the
    /// computational basis.
    pub is_product_projective: bool,
    /// Product projective and `m` satisfies the `q_G` optimality condition, so
    /// `p_L = q_G = achieved_value`.
    pub pl_established: bool,
    /// `Σ η_i Tr(ρ_i^PT M_i)`
    pub achieved_value: T,
}

/// Whether `a` equals `c (P ⊗ Q)` with `c >= 0` and `P`, `Q` diagonal 0/1 projectors, i.e. it
/// is diagonal and its support is a rectangle `A x B` carrying a single value.
fn is_diagonal_product_projector<T: Real>(a: &CMatrix<T>, d2: usize, tol: T) -> bool {
    let n = a.dim();
    let mut support = Vec::new();
    for r in 0..n {
        for c in 0..n {
            let v = a[(r, c)];
            if r != c {
                if v.norm() > tol {
                    return false;
                }
            } else if v.re < -tol {
                return false;
            } else if v.re > tol {
                support.push((r / d2, r % d2, v.re));
            }
        }
    }
    let Some(&(_, _, first)) = support.first() else {
        return true;
    };
    let mut rows: Vec<usize> = support.iter().map(|s| s.0).collect();
    let mut cols: Vec<usize> = support.iter().map(|s| s.1).collect();
    rows.dedup();
    cols.sort_unstable();
    cols.dedup();
    rows.len() * cols.len() == support.len() && support.iter().all(|s| (s.2 - first).abs() <= tol)
}

/// Recognizes measurements in which both parties measure in the computational basis.
///
/// Only that family is recognized; a `false` here says nothing about whether `m^PT` is LOCC.
/// Diagonal operators are their own partial transpose, so the test applies equally to `m`
/// and to `m^PT`.
pub fn check_local_realization<T: Real>(
    e: &StateEnsemble<T>,
    m: &Povm<T>,
    tol: T,
) -> Result<LocalRealizationReport<T>> {
    check_pair(e, m)?;
    check_tol(tol)?;
    let is_product_projective =
        m.elements().iter().all(|x| is_diagonal_product_projector(x.partial_transpose().matrix(), e.d2(), tol));
    let costs: Vec<(T, HermitianOperator<T>)> = e.items().iter().map(|(p, r)| (*p, r.partial_transpose())).collect();
    let achieved_value = m.success_probability(&costs)?;
    let pl_established = is_product_projective && check_qg_optimality(e, m, tol)?.passed;
    Ok(LocalRealizationReport { is_product_projective, pl_established, achieved_value })
}
