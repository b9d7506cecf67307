//! Cholesky factorizations: complex Hermitian for barrier evaluations, real symmetric for
//! Newton systems.

// negated comparisons below deliberately treat NaN as failure
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use crate::error::{Error, Result};
use crate::linalg::matrix::CMatrix;
use crate::scalar::{czero, Real, C};

/// Lower-triangular `L` with `A = L L^H`.
#[derive(Clone, Debug)]
pub struct HermitianCholesky<T: Real> {
    n: usize,
    l: Vec<C<T>>,
}

impl<T: Real> HermitianCholesky<T> {
    /// Factors the Hermitian part of `a`; fails unless it is numerically positive definite.
    pub fn new(a: &CMatrix<T>) -> Result<Self> {
        let n = a.dim();
        let mut l = vec![czero::<T>(); n * n];
        for j in 0..n {
            let mut d = a[(j, j)].re;
            for k in 0..j {
                d -= l[j * n + k].norm_sqr();
            }
            if !(d > T::zero()) || !d.is_finite() {
                return Err(Error::NotPositiveDefinite);
            }
            let djj = d.sqrt();
            l[j * n + j] = C::new(djj, T::zero());
            for i in (j + 1)..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[i * n + k] * l[j * n + k].conj();
                }
                l[i * n + j] = s / djj;
            }
        }
        Ok(Self { n, l })
    }

    pub fn log_det(&self) -> T {
        let two = T::lit(2.0);
        (0..self.n).map(|i| two * self.l[i * self.n + i].re.ln()).sum()
    }

    /// `A^{-1}`, Hermitian by construction.
    pub fn inverse(&self) -> CMatrix<T> {
        let n = self.n;
        // W = L^{-1}, lower triangular
        let mut w = vec![czero::<T>(); n * n];
        for j in 0..n {
            w[j * n + j] = C::new(T::one() / self.l[j * n + j].re, T::zero());
            for i in (j + 1)..n {
                let mut s = czero::<T>();
                for k in j..i {
                    s += self.l[i * n + k] * w[k * n + j];
                }
                w[i * n + j] = -s / self.l[i * n + i].re;
            }
        }
        // A^{-1} = W^H W
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for c in r..n {
                let mut s = czero::<T>();
                for k in c..n {
                    s += w[k * n + r].conj() * w[k * n + c];
                }
                out[(r, c)] = s;
                out[(c, r)] = s.conj();
            }
            out[(r, r)] = C::new(out[(r, r)].re, T::zero());
        }
        out
    }
}

/// Dense real symmetric matrix, row-major, both triangles stored.
#[derive(Clone, Debug)]
pub struct SymMatrix<T: Real> {
    pub n: usize,
    pub data: Vec<T>,
}

impl<T: Real> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.n + c]
    }

    #[inline]
    pub fn set_sym(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.n + c] = v;
        self.data[c * self.n + r] = v;
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += *b;
        }
    }

    /// `self -= F^T F` for a square row-major `F`.
    pub fn sub_gram(&mut self, f: &[T]) {
        let n = self.n;
        // lower triangle only, mirrored afterwards
        for row in f.chunks_exact(n) {
            for (a, &fa) in row.iter().enumerate() {
                if fa == T::zero() {
                    continue;
                }
                for (d, &fb) in self.data[a * n..a * n + a + 1].iter_mut().zip(row) {
                    *d -= fa * fb;
                }
            }
        }
        for r in 0..n {
            for c in 0..r {
                self.data[c * n + r] = self.data[r * n + c];
            }
        }
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        (0..self.n).map(|r| self.data[r * self.n..(r + 1) * self.n].iter().zip(x).map(|(a, b)| *a * *b).sum()).collect()
    }
}

/// Real Cholesky factor `A = L L^T`, stored lower-triangular row-major.
#[derive(Clone, Debug)]
pub struct RealCholesky<T: Real> {
    n: usize,
    l: Vec<T>,
}

impl<T: Real> RealCholesky<T> {
    pub fn new(a: &SymMatrix<T>) -> Result<Self> {
        Self::factor(a, None)
    }

    /// Cholesky for barrier Newton systems: a pivot that has lost all significant digits
    /// relative to its original diagonal entry is replaced by a huge value, which freezes the
    /// corresponding coordinate instead of failing. Only negative or non-finite input
    /// diagonals are rejected.
    pub fn new_modified(a: &SymMatrix<T>) -> Result<Self> {
        let scale: Vec<T> = (0..a.n).map(|i| a.get(i, i)).collect();
        Self::factor(a, Some(&scale))
    }

    /// As [`new_modified`](Self::new_modified), judging pivots against `scale` instead of the
    /// diagonal of `a`. Used when `a` is itself a Schur complement of a larger matrix whose
    /// diagonal is `scale`.
    pub fn new_modified_scaled(a: &SymMatrix<T>, scale: &[T]) -> Result<Self> {
        Self::factor(a, Some(scale))
    }

    fn factor(a: &SymMatrix<T>, scale: Option<&[T]>) -> Result<Self> {
        let n = a.n;
        let rel = T::epsilon() * T::lit(64.0);
        let huge = T::max_value().sqrt().sqrt();
        let mut l = vec![T::zero(); n * n];
        for i in 0..n {
            let (done, rest) = l.split_at_mut(i * n);
            let row_i = &mut rest[..n];
            for j in 0..i {
                let row_j = &done[j * n..j * n + j + 1];
                let s: T = row_i[..j].iter().zip(&row_j[..j]).map(|(x, y)| *x * *y).sum();
                row_i[j] = (a.get(i, j) - s) / row_j[j];
            }
            let d = a.get(i, i) - row_i[..i].iter().map(|x| *x * *x).sum::<T>();
            if let Some(scale) = scale {
                let si = scale[i];
                if si >= T::zero() && si.is_finite() && !(d > rel * si) {
                    row_i[i] = huge;
                    continue;
                }
            }
            if !(d > T::zero()) || !d.is_finite() {
                return Err(Error::NotPositiveDefinite);
            }
            row_i[i] = d.sqrt();
        }
        Ok(Self { n, l })
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        self.solve_upper(&self.solve_lower(b))
    }

    /// `L^{-1} b`
    pub fn solve_lower(&self, b: &[T]) -> Vec<T> {
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            let row = &self.l[i * n..i * n + i];
            let s: T = row.iter().zip(&y[..i]).map(|(a, b)| *a * *b).sum();
            y[i] = (y[i] - s) / self.l[i * n + i];
        }
        y
    }

    /// `L^{-T} b`
    pub fn solve_upper(&self, b: &[T]) -> Vec<T> {
        let n = self.n;
        let mut y = b.to_vec();
        for i in (0..n).rev() {
            y[i] /= self.l[i * n + i];
            let yi = y[i];
            // subtract column i of L^T, i.e. row i of L, from the unknowns above
            for (yk, lk) in y[..i].iter_mut().zip(&self.l[i * n..i * n + i]) {
                *yk -= *lk * yi;
            }
        }
        y
    }

    /// `L^{-1} C` for a square `C`, row-major.
    pub fn solve_lower_matrix(&self, c: &SymMatrix<T>) -> Vec<T> {
        let n = self.n;
        let mut f = c.data.clone();
        for i in 0..n {
            let (done, rest) = f.split_at_mut(i * n);
            let row_i = &mut rest[..n];
            for k in 0..i {
                let lik = self.l[i * n + k];
                if lik == T::zero() {
                    continue;
                }
                for (a, b) in row_i.iter_mut().zip(&done[k * n..(k + 1) * n]) {
                    *a -= lik * *b;
                }
            }
            let inv = T::one() / self.l[i * n + i];
            for a in row_i.iter_mut() {
                *a *= inv;
            }
        }
        f
    }

    pub fn inverse(&self) -> SymMatrix<T> {
        let n = self.n;
        // W = L^{-1}
        let mut w = vec![T::zero(); n * n];
        for j in 0..n {
            w[j * n + j] = T::one() / self.l[j * n + j];
            for i in (j + 1)..n {
                let mut s = T::zero();
                for k in j..i {
                    s += self.l[i * n + k] * w[k * n + j];
                }
                w[i * n + j] = -s / self.l[i * n + i];
            }
        }
        // A^{-1} = W^T W; accumulate row by row of W to stay cache friendly
        let mut out = SymMatrix::zeros(n);
        for k in 0..n {
            let row = &w[k * n..k * n + k + 1];
            for r in 0..=k {
                let wr = row[r];
                if wr == T::zero() {
                    continue;
                }
                let dst = &mut out.data[r * n..r * n + k + 1];
                for (c, d) in dst.iter_mut().enumerate().take(r + 1) {
                    *d += wr * row[c];
                }
            }
        }
        for r in 0..n {
            for c in 0..r {
                let v = out.data[r * n + c];
                out.data[c * n + r] = v;
            }
        }
        out
    }
}
