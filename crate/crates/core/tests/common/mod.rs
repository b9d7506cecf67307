#![allow(dead_code)]

use num_complex::Complex;
use qdisc_core::ensembles::StateEnsemble;
use qdisc_core::linalg::{CMatrix, HermitianOperator};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G G^H / Tr(G G^H)` for a `dim x rank` complex Gaussian `G`.
pub fn random_state(rng: &mut ChaCha8Rng, dim: usize, rank: usize) -> CMatrix<f64> {
    let g: Vec<Complex<f64>> =
        (0..dim * rank).map(|_| Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    let mut m = CMatrix::from_fn(dim, |r, c| (0..rank).map(|k| g[r * rank + k] * g[c * rank + k].conj()).sum());
    let tr = m.trace().re;
    m = m.scale(1.0 / tr);
    m.hermitian_part()
}

/// Priors bounded away from zero, summing to one.
pub fn random_priors(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.iter().map(|x| x / total).collect()
}

/// `n` random states on `d1 ⊗ d2`, each of random rank.
pub fn random_ensemble(rng: &mut ChaCha8Rng, d1: usize, d2: usize, n: usize) -> StateEnsemble<f64> {
    let dim = d1 * d2;
    let priors = random_priors(rng, n);
    let items = priors
        .into_iter()
        .map(|p| {
            let rank = rng.gen_range(1..=dim);
            (p, HermitianOperator::new(d1, d2, random_state(rng, dim, rank)).unwrap())
        })
        .collect();
    StateEnsemble::new(d1, d2, items).unwrap()
}

/// Full-rank, non-uniform diagonal noise state on `d ⊗ d`.
pub fn skewed_sigma(d: usize) -> HermitianOperator<f64> {
    let dim = d * d;
    let raw: Vec<f64> = (0..dim).map(|k| 1.0 + k as f64).collect();
    let total: f64 = raw.iter().sum();
    let diag: Vec<f64> = raw.iter().map(|x| x / total).collect();
    HermitianOperator::new(d, d, CMatrix::from_real_diag(&diag)).unwrap()
}
