//! Real coordinates for Hermitian matrices and Hessians of log-det barriers in them.
//!
//! A Hermitian `D x D` matrix has `D²` real coordinates in the Frobenius-orthonormal basis
//! `{e_pp} ∪ {(e_pq + e_qp)/√2} ∪ {i(e_pq - e_qp)/√2}`, so the Euclidean inner product of
//! coordinates equals `Re Tr(A B)`.

use num_complex::Complex;

use crate::linalg::factor::SymMatrix;
use crate::linalg::matrix::{pt_index, CMatrix};
use crate::scalar::{czero, Real, C};

/// One basis matrix as at most two nonzero entries.
#[derive(Clone, Copy, Debug)]
pub(crate) struct BasisElem<T: Real> {
    entries: [(usize, usize, C<T>); 2],
    len: usize,
}

impl<T: Real> BasisElem<T> {
    fn entries(&self) -> &[(usize, usize, C<T>)] {
        &self.entries[..self.len]
    }
}

/// Orthonormal Hermitian basis of a fixed dimension, optionally viewed through the
/// partial transpose (each element replaced by its partial transpose).
#[derive(Clone, Debug)]
pub(crate) struct HermitianBasis<T: Real> {
    dim: usize,
    elems: Vec<BasisElem<T>>,
}

impl<T: Real> HermitianBasis<T> {
    pub fn new(dim: usize) -> Self {
        let h = T::FRAC_1_SQRT_2();
        let z = czero::<T>();
        let mut elems = Vec::with_capacity(dim * dim);
        for p in 0..dim {
            elems.push(BasisElem { entries: [(p, p, C::new(T::one(), T::zero())), (0, 0, z)], len: 1 });
        }
        for p in 0..dim {
            for q in (p + 1)..dim {
                elems.push(BasisElem { entries: [(p, q, C::new(h, T::zero())), (q, p, C::new(h, T::zero()))], len: 2 });
                elems
                    .push(BasisElem { entries: [(p, q, C::new(T::zero(), h)), (q, p, C::new(T::zero(), -h))], len: 2 });
            }
        }
        Self { dim, elems }
    }

    /// The same basis with every element partially transposed (second factor of `d2`).
    pub fn partial_transposed(&self, d2: usize) -> Self {
        let elems = self
            .elems
            .iter()
            .map(|e| {
                let mut out = *e;
                for k in 0..e.len {
                    let (r, c, v) = e.entries[k];
                    let (r2, c2) = pt_index(r, c, d2);
                    out.entries[k] = (r2, c2, v);
                }
                out
            })
            .collect();
        Self { dim: self.dim, elems }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    /// Coordinates `Re Tr(E_a A)` of a Hermitian matrix.
    pub fn coords(&self, a: &CMatrix<T>) -> Vec<T> {
        self.elems.iter().map(|e| e.entries().iter().map(|&(r, c, v)| (v * a[(c, r)]).re).sum()).collect()
    }

    /// `Σ x_a E_a`
    pub fn matrix(&self, x: &[T]) -> CMatrix<T> {
        let mut out = CMatrix::zeros(self.dim);
        for (e, &xa) in self.elems.iter().zip(x) {
            for &(r, c, v) in e.entries() {
                out[(r, c)] += v * xa;
            }
        }
        out
    }

    /// Adds `weight * Re Tr(E_a X E_b X)` to `h[a][b]` for all `a, b`, i.e. the Hessian of
    /// `-weight * log det(Y)` at `Y = X^{-1}` in this basis.
    pub fn add_congruence_hessian(&self, h: &mut SymMatrix<T>, x: &CMatrix<T>, weight: T) {
        let m = self.elems.len();
        debug_assert_eq!(h.n, m);
        for a in 0..m {
            let ea = self.elems[a].entries();
            for b in a..m {
                let mut acc: C<T> = Complex::new(T::zero(), T::zero());
                for &(p, q, v) in ea {
                    for &(r, s, u) in self.elems[b].entries() {
                        acc += v * u * x[(q, r)] * x[(s, p)];
                    }
                }
                let val = h.data[a * m + b] + weight * acc.re;
                h.set_sym(a, b, val);
            }
        }
    }
}
