use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::matrix::CMatrix;
use crate::scalar::{creal, Real};

/// Sweep cap for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with the matching unitary eigenvector matrix
/// (column `k` pairs with `eigenvalues[k]`).
#[derive(Clone, Debug)]
pub struct Spectrum<T: Real> {
    pub eigenvalues: Vec<T>,
    pub eigenvectors: CMatrix<T>,
}

impl<T: Real> Spectrum<T> {
    pub fn min(&self) -> T {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> T {
        self.eigenvalues[self.eigenvalues.len() - 1]
    }

    /// `V diag(f(λ)) V^H`
    pub fn map(&self, f: impl Fn(T) -> T) -> CMatrix<T> {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let w: Vec<T> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        CMatrix::from_fn(n, |r, c| (0..n).fold(creal(T::zero()), |acc, k| acc + v[(r, k)] * v[(c, k)].conj() * w[k]))
    }

    pub fn reconstruct(&self) -> CMatrix<T> {
        self.map(|l| l)
    }
}

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Only the Hermitian part of the input is read. Converges once the off-diagonal
/// Frobenius norm drops below `1e-13 * n * max(1, ||A||_F)`.
pub(crate) fn jacobi<T: Real>(input: &CMatrix<T>) -> Result<Spectrum<T>> {
    let n = input.dim();
    let mut a = input.hermitian_part();
    let mut v = CMatrix::<T>::identity(n);
    if n <= 1 {
        let eigenvalues = (0..n).map(|i| a[(i, i)].re).collect();
        return Ok(Spectrum { eigenvalues, eigenvectors: v });
    }

    let scale = a.frobenius().max(T::one());
    let threshold = T::tol(1e-13) * T::from_count(n) * scale;
    let tiny = T::min_positive_value().sqrt();

    let off_norm = |a: &CMatrix<T>| -> T {
        let mut s = T::zero();
        for r in 0..n {
            for c in (r + 1)..n {
                s += a[(r, c)].norm_sqr();
            }
        }
        (s + s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&a);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::EigenNonConvergence { sweeps, residual: off.to_f64().unwrap_or(f64::NAN) });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q, tiny);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).unwrap_or(std::cmp::Ordering::Equal));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = CMatrix::from_fn(n, |r, c| v[(r, order[c])]);
    Ok(Spectrum { eigenvalues, eigenvectors })
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate<T: Real>(a: &mut CMatrix<T>, v: &mut CMatrix<T>, p: usize, q: usize, tiny: T) {
    let n = a.dim();
    let b = a[(p, q)];
    let babs = b.norm();
    if babs <= tiny {
        return;
    }
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    // e^{-i phi} where b = |b| e^{i phi}
    let phase = b.conj() / babs;

    let theta = (aqq - app) / (babs + babs);
    let t = if theta.is_infinite() {
        T::zero()
    } else {
        let sgn = if theta < T::zero() { -T::one() } else { T::one() };
        sgn / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    // U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on the (p, q) plane
    let u_qp = -phase * s;
    let u_qq = phase * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * u_qp;
        a[(k, q)] = akp * s + akq * u_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * u_qp.conj();
        a[(q, k)] = apk * s + aqk * u_qq.conj();
    }
    a[(p, p)] = Complex::new(app - t * babs, T::zero());
    a[(q, q)] = Complex::new(aqq + t * babs, T::zero());
    a[(p, q)] = creal(T::zero());
    a[(q, p)] = creal(T::zero());

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * u_qp;
        v[(k, q)] = vkp * s + vkq * u_qq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::C;

    #[test]
    fn diagonal_input_is_sorted() {
        let m = CMatrix::<f64>::from_real_diag(&[3.0, -1.0]);
        let s = jacobi(&m).unwrap();
        assert_eq!(s.eigenvalues, vec![-1.0, 3.0]);
    }

    #[test]
    fn two_by_two_complex() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let m =
            CMatrix::<f64>::from_vec(2, vec![C::new(2.0, 0.0), C::new(0.0, 1.0), C::new(0.0, -1.0), C::new(2.0, 0.0)])
                .unwrap();
        let s = jacobi(&m).unwrap();
        assert!((s.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - 3.0).abs() < 1e-14);
        assert!(s.reconstruct().sub(&m).max_abs() < 1e-14);
    }

    #[test]
    fn single_entry() {
        let m = CMatrix::<f64>::from_real_diag(&[-4.5]);
        assert_eq!(jacobi(&m).unwrap().eigenvalues, vec![-4.5]);
    }

    #[test]
    fn works_in_f32() {
        let m =
            CMatrix::<f32>::from_vec(2, vec![C::new(1.0, 0.0), C::new(0.5, 0.5), C::new(0.5, -0.5), C::new(-1.0, 0.0)])
                .unwrap();
        let s = jacobi(&m).unwrap();
        let want = (1.0f32 + 0.5).sqrt();
        assert!((s.eigenvalues[1] - want).abs() < 1e-5);
        assert!(s.reconstruct().sub(&m).max_abs() < 1e-5);
    }
}
