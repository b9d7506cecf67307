use crate::error::{Error, Result};
use crate::linalg::eig::{jacobi, Spectrum};
use crate::linalg::matrix::{CMatrix, MAX_DIM};
use crate::scalar::{Real, C};

/// Default tolerance under which Hermiticity is validated.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Dense Hermitian operator on `C^{d1} ⊗ C^{d2}`.
///
/// The stored matrix is the exact Hermitian part of the validated input, so later
/// arithmetic never accumulates an anti-Hermitian component from the source data.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator<T: Real> {
    d1: usize,
    d2: usize,
    matrix: CMatrix<T>,
    herm_tol: T,
}

impl<T: Real> HermitianOperator<T> {
    /// Validates `matrix` with the default Hermiticity tolerance.
    pub fn new(d1: usize, d2: usize, matrix: CMatrix<T>) -> Result<Self> {
        Self::with_tol(d1, d2, matrix, T::tol(HERMITIAN_TOL))
    }

    pub fn with_tol(d1: usize, d2: usize, matrix: CMatrix<T>, herm_tol: T) -> Result<Self> {
        if d1 == 0 || d2 == 0 {
            return Err(Error::InvalidParameter("subsystem dimensions must be positive".into()));
        }
        let dim = d1.saturating_mul(d2);
        if dim > MAX_DIM {
            return Err(Error::Capacity { dim, max: MAX_DIM });
        }
        if matrix.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: matrix.dim() });
        }
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let residual = matrix.hermiticity_residual();
        if residual > herm_tol {
            return Err(Error::NotHermitian {
                residual: residual.to_f64().unwrap_or(f64::NAN),
                tol: herm_tol.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { d1, d2, matrix: matrix.hermitian_part(), herm_tol })
    }

    /// Wraps a matrix that is Hermitian by construction (symmetrizes, skips validation).
    pub(crate) fn from_hermitian_unchecked(d1: usize, d2: usize, matrix: CMatrix<T>) -> Self {
        debug_assert_eq!(d1 * d2, matrix.dim());
        Self { d1, d2, matrix: matrix.hermitian_part(), herm_tol: T::tol(HERMITIAN_TOL) }
    }

    pub fn identity(d1: usize, d2: usize) -> Self {
        Self::from_hermitian_unchecked(d1, d2, CMatrix::identity(d1 * d2))
    }

    pub fn zeros(d1: usize, d2: usize) -> Self {
        Self::from_hermitian_unchecked(d1, d2, CMatrix::zeros(d1 * d2))
    }

    /// `|v><v|` for a vector on the bipartite space.
    pub fn projector(d1: usize, d2: usize, v: &[C<T>]) -> Result<Self> {
        if v.len() != d1 * d2 {
            return Err(Error::DimensionMismatch { expected: d1 * d2, found: v.len() });
        }
        Self::new(d1, d2, CMatrix::projector(v))
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    /// Total dimension `d1 * d2`.
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn herm_tol(&self) -> T {
        self.herm_tol
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.d1 == other.d1 && self.d2 == other.d2
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.dim(), found: other.dim() })
        }
    }

    pub fn trace(&self) -> T {
        self.matrix.trace().re
    }

    pub fn scale(&self, s: T) -> Self {
        Self { matrix: self.matrix.scale(s), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self { matrix: self.matrix.add(&other.matrix), ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(Self { matrix: self.matrix.sub(&other.matrix), ..self.clone() })
    }

    /// Transposes the second subsystem in the computational product basis.
    pub fn partial_transpose(&self) -> Self {
        Self { matrix: self.matrix.partial_transpose(self.d1, self.d2), ..self.clone() }
    }

    pub fn eig(&self) -> Result<Spectrum<T>> {
        jacobi(&self.matrix)
    }

    pub fn min_eigenvalue(&self) -> Result<T> {
        Ok(self.eig()?.min())
    }

    pub fn is_psd(&self, tol: T) -> Result<bool> {
        Ok(self.min_eigenvalue()? >= -tol)
    }

    /// `Tr(self * other)`; the imaginary part must vanish to `1e-10`.
    pub fn trace_inner(&self, other: &Self) -> Result<T> {
        self.check_shape(other)?;
        let z = self.matrix.trace_product(&other.matrix);
        let limit = T::tol(1e-10) * (T::one() + z.re.abs());
        if z.im.abs() > limit {
            return Err(Error::Numerical {
                what: "imaginary residual in trace of Hermitian product",
                residual: z.im.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(z.re)
    }

    /// Sum of absolute eigenvalues.
    pub fn trace_norm(&self) -> Result<T> {
        Ok(self.eig()?.eigenvalues.iter().map(|l| l.abs()).sum())
    }
}

/// Spectral decomposition of a Hermitian operator.
pub fn eig_hermitian<T: Real>(e: &HermitianOperator<T>) -> Result<Spectrum<T>> {
    e.eig()
}

pub fn partial_transpose<T: Real>(e: &HermitianOperator<T>) -> HermitianOperator<T> {
    e.partial_transpose()
}

pub fn min_eigenvalue<T: Real>(e: &HermitianOperator<T>) -> Result<T> {
    e.min_eigenvalue()
}

pub fn is_psd<T: Real>(e: &HermitianOperator<T>, tol: T) -> Result<bool> {
    e.is_psd(tol)
}

pub fn trace_inner<T: Real>(a: &HermitianOperator<T>, b: &HermitianOperator<T>) -> Result<T> {
    a.trace_inner(b)
}

pub fn trace_norm<T: Real>(e: &HermitianOperator<T>) -> Result<T> {
    e.trace_norm()
}
