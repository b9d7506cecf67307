use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{czero, Real, C};

/// Largest total dimension accepted by any constructor.
pub const MAX_DIM: usize = 256;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T: Real> {
    n: usize,
    data: Vec<C<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![czero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |r, c| if r == c { C::new(T::one(), T::zero()) } else { czero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C<T>) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Self { n, data }
    }

    /// Builds a matrix from row-major data, checking the length is a perfect square.
    pub fn from_vec(n: usize, data: Vec<C<T>>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: data.len() });
        }
        Ok(Self { n, data })
    }

    pub fn from_real_diag(diag: &[T]) -> Self {
        let n = diag.len();
        Self::from_fn(n, |r, c| if r == c { C::new(diag[r], T::zero()) } else { czero() })
    }

    /// Rank-one `|v><v|`.
    pub fn projector(v: &[C<T>]) -> Self {
        let n = v.len();
        Self::from_fn(n, |r, c| v[r] * v[c].conj())
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn as_slice(&self) -> &[C<T>] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [C<T>] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<C<T>> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)])
    }

    pub fn trace(&self) -> C<T> {
        (0..self.n).fold(czero(), |acc, i| acc + self[(i, i)])
    }

    pub fn scale(&self, s: T) -> Self {
        Self { n: self.n, data: self.data.iter().map(|z| z * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    /// `self += s * other`
    pub fn axpy(&mut self, s: T, other: &Self) {
        assert_eq!(self.n, other.n, "axpy dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * s;
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(C<T>, C<T>) -> C<T>) -> Self {
        assert_eq!(self.n, other.n, "matrix dimension mismatch");
        Self { n: self.n, data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "matmul dimension mismatch");
        let n = self.n;
        let mut out = vec![czero(); n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (o, b) in row.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Self { n, data: out }
    }

    pub fn matvec(&self, v: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(self.n, v.len(), "matvec dimension mismatch");
        (0..self.n)
            .map(|r| self.data[r * self.n..(r + 1) * self.n].iter().zip(v).fold(czero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// `Tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> C<T> {
        assert_eq!(self.n, other.n, "trace_product dimension mismatch");
        let n = self.n;
        let mut acc = czero();
        for i in 0..n {
            for k in 0..n {
                acc += self.data[i * n + k] * other.data[k * n + i];
            }
        }
        acc
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn frobenius(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Max-entry norm of `A - A^H`.
    pub fn hermiticity_residual(&self) -> T {
        let n = self.n;
        let mut worst = T::zero();
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// `(A + A^H) / 2`
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.n, |r, c| (self[(r, c)] + self[(c, r)].conj()) * half)
    }

    /// Transposes the second tensor factor of a `d1 x d2` bipartite matrix:
    /// entry `((a,b),(c,d))` moves to `((a,d),(c,b))`.
    pub fn partial_transpose(&self, d1: usize, d2: usize) -> Self {
        assert_eq!(d1 * d2, self.n, "partial transpose dimension mismatch");
        let mut out = Self::zeros(self.n);
        for a in 0..d1 {
            for b in 0..d2 {
                for c in 0..d1 {
                    for d in 0..d2 {
                        out[(a * d2 + d, c * d2 + b)] = self[(a * d2 + b, c * d2 + d)];
                    }
                }
            }
        }
        out
    }
}

/// Position an entry `(row, col)` of a `d1 x d2` bipartite matrix moves to under
/// [`CMatrix::partial_transpose`].
#[inline]
pub(crate) fn pt_index(row: usize, col: usize, d2: usize) -> (usize, usize) {
    let (a, b) = (row / d2, row % d2);
    let (c, d) = (col / d2, col % d2);
    (a * d2 + d, c * d2 + b)
}

/// Kronecker product `a ⊗ b`; the first factor indexes the coarse blocks.
pub fn kron<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> Result<CMatrix<T>> {
    let (na, nb) = (a.dim(), b.dim());
    let n = na.checked_mul(nb).ok_or(Error::Capacity { dim: usize::MAX, max: MAX_DIM })?;
    if n > MAX_DIM {
        return Err(Error::Capacity { dim: n, max: MAX_DIM });
    }
    Ok(CMatrix::from_fn(n, |r, c| a[(r / nb, c / nb)] * b[(r % nb, c % nb)]))
}

/// Kronecker product of two vectors.
pub fn kron_vec<T: Real>(a: &[C<T>], b: &[C<T>]) -> Vec<C<T>> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

impl<T: Real> Index<(usize, usize)> for CMatrix<T> {
    type Output = C<T>;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &C<T> {
        &self.data[r * self.n + c]
    }
}

impl<T: Real> IndexMut<(usize, usize)> for CMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C<T> {
        &mut self.data[r * self.n + c]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma_x() -> CMatrix<f64> {
        CMatrix::from_fn(2, |r, c| if r != c { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) })
    }

    #[test]
    fn kron_identities() {
        let i2 = CMatrix::<f64>::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), CMatrix::identity(4));
    }

    #[test]
    fn kron_basis_projectors() {
        let p0 = CMatrix::<f64>::from_real_diag(&[1.0, 0.0]);
        let p1 = CMatrix::<f64>::from_real_diag(&[0.0, 1.0]);
        let k = kron(&p0, &p1).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let want = if r == 1 && c == 1 { 1.0 } else { 0.0 };
                assert_eq!(k[(r, c)], C::new(want, 0.0));
            }
        }
    }

    #[test]
    fn kron_sigma_x_flips_both() {
        let xx = kron(&sigma_x(), &sigma_x()).unwrap();
        let mut e00 = vec![C::new(0.0, 0.0); 4];
        e00[0] = C::new(1.0, 0.0);
        let out = xx.matvec(&e00);
        let want = [0.0, 0.0, 0.0, 1.0];
        for (o, w) in out.iter().zip(want) {
            assert_eq!(*o, C::new(w, 0.0));
        }
    }

    #[test]
    fn kron_capacity() {
        let a = CMatrix::<f64>::identity(17);
        assert!(matches!(kron(&a, &a), Err(Error::Capacity { dim: 289, .. })));
    }

    #[test]
    fn pt_index_matches_dense_partial_transpose() {
        let m = CMatrix::<f64>::from_fn(6, |r, c| C::new((r * 6 + c) as f64, (r as f64) - (c as f64)));
        let pt = m.partial_transpose(2, 3);
        for r in 0..6 {
            for c in 0..6 {
                assert_eq!(pt[pt_index(r, c, 3)], m[(r, c)]);
            }
        }
    }
}
