//! Two-qudit family of `2d(d-1)` equiprobable noisy maximally entangled states.
//!
//! For each pair `i < j` and `k ∈ {1,2,3,4}` the state is `λ|Ψ⟩⟨Ψ| + (1-λ)σ`, with `|Ψ⟩` one
//! of the four Bell-type vectors on `span{|i>,|j>}⊗²`. The global and local reference
//! measurements attain `p_G` and `q_G` respectively, both known in closed form.

use crate::ensembles::{Povm, StateEnsemble};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, HermitianOperator, MAX_DIM};
use crate::scalar::{czero, Real, C};

/// Index `(i, j, k)` of a state in the example family, `0 <= i < j < d`, `k ∈ 1..=4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExampleLabel {
    pub i: usize,
    pub j: usize,
    pub k: u8,
}

impl ExampleLabel {
    pub fn new(i: usize, j: usize, k: u8, d: usize) -> Result<Self> {
        if !(i < j && j < d && (1..=4).contains(&k)) {
            return Err(Error::InvalidParameter(format!("invalid label (i={i}, j={j}, k={k}) for d={d}")));
        }
        Ok(Self { i, j, k })
    }

    /// Label with `k` replaced by `5 - k`.
    pub fn partner(self) -> Self {
        Self { k: 5 - self.k, ..self }
    }
}

fn check_d(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d must be at least 2, got {d}")));
    }
    if d * d > MAX_DIM {
        return Err(Error::Capacity { dim: d * d, max: MAX_DIM });
    }
    Ok(())
}

/// All `2d(d-1)` labels, pairs `(i, j)` in lexicographic order with `k` innermost.
pub fn example_labels(d: usize) -> Vec<ExampleLabel> {
    let mut out = Vec::with_capacity(2 * d * d.saturating_sub(1));
    for i in 0..d {
        for j in (i + 1)..d {
            for k in 1..=4 {
                out.push(ExampleLabel { i, j, k });
            }
        }
    }
    out
}

/// `|Ψ_{i,j}^{(k)}⟩` as a vector on `C^d ⊗ C^d`:
///
/// ```text
/// k=1: (|ii> + |jj>)/√2    k=2: (|ii> - |jj>)/√2
/// k=3: (|ij> + |ji>)/√2    k=4: (|ij> - |ji>)/√2
/// ```
pub fn psi_state<T: Real>(label: ExampleLabel, d: usize) -> Vec<C<T>> {
    let ExampleLabel { i, j, k } = label;
    let h = T::FRAC_1_SQRT_2();
    let mut v = vec![czero::<T>(); d * d];
    let (first, second, sign) = match k {
        1 => ((i, i), (j, j), T::one()),
        2 => ((i, i), (j, j), -T::one()),
        3 => ((i, j), (j, i), T::one()),
        4 => ((i, j), (j, i), -T::one()),
        _ => unreachable!("label k validated to 1..=4"),
    };
    v[first.0 * d + first.1] = C::new(h, T::zero());
    v[second.0 * d + second.1] = C::new(sign * h, T::zero());
    v
}

/// The example ensemble; `sigma = None` uses the maximally mixed state `I/d²`.
pub fn example_ensemble<T: Real>(
    d: usize,
    lambda: T,
    sigma: Option<&HermitianOperator<T>>,
) -> Result<StateEnsemble<T>> {
    check_d(d)?;
    if !(lambda > T::zero() && lambda <= T::one()) {
        return Err(Error::InvalidParameter(format!("lambda must lie in (0, 1], got {lambda}")));
    }
    let mixed;
    let sigma = match sigma {
        Some(s) => {
            // validate as a one-state ensemble
            StateEnsemble::new(d, d, vec![(T::one(), s.clone())])?;
            s
        }
        None => {
            mixed = HermitianOperator::identity(d, d).scale(T::one() / T::from_count(d * d));
            &mixed
        }
    };
    let labels = example_labels(d);
    let prior = T::one() / T::from_count(labels.len());
    let noise = sigma.matrix().scale(T::one() - lambda);
    let items = labels
        .into_iter()
        .map(|label| {
            let mut m = CMatrix::projector(&psi_state::<T>(label, d)).scale(lambda);
            m.axpy(T::one(), &noise);
            (prior, HermitianOperator::from_hermitian_unchecked(d, d, m))
        })
        .collect();
    StateEnsemble::new(d, d, items)
}

/// Global measurement attaining `p_G`: weight `1/(d-1)` on `Ψ^(1)`, `Ψ^(2)` projectors and
/// weight 1 on `Ψ^(3)`, `Ψ^(4)` projectors.
pub fn example_global_povm<T: Real>(d: usize) -> Result<Povm<T>> {
    check_d(d)?;
    let w = T::one() / T::from_count(d - 1);
    let elements = example_labels(d)
        .into_iter()
        .map(|label| {
            let weight = if label.k <= 2 { w } else { T::one() };
            let m = CMatrix::projector(&psi_state::<T>(label, d)).scale(weight);
            HermitianOperator::from_hermitian_unchecked(d, d, m)
        })
        .collect();
    Povm::new(d, d, elements)
}

/// Local measurement attaining `q_G`: both parties measure in the computational basis.
///
/// ```text
/// M^(1) = |ii><ii|/(d-1)   M^(2) = |jj><jj|/(d-1)   M^(3) = |ij><ij|   M^(4) = |ji><ji|
/// ```
pub fn example_local_povm<T: Real>(d: usize) -> Result<Povm<T>> {
    check_d(d)?;
    let w = T::one() / T::from_count(d - 1);
    let elements = example_labels(d)
        .into_iter()
        .map(|ExampleLabel { i, j, k }| {
            let (a, b, weight) = match k {
                1 => (i, i, w),
                2 => (j, j, w),
                3 => (i, j, T::one()),
                _ => (j, i, T::one()),
            };
            let mut diag = vec![T::zero(); d * d];
            diag[a * d + b] = weight;
            HermitianOperator::from_hermitian_unchecked(d, d, CMatrix::from_real_diag(&diag))
        })
        .collect();
    Povm::new(d, d, elements)
}

/// Closed-form optima of the example family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClosedForms<T> {
    /// `(1 + λ(d²-1)) / (2d(d-1))`
    pub p_g: T,
    /// `(2 + λ(d²-2)) / (4d(d-1))`
    pub q_g: T,
    /// `λd / (4(d-1))`
    pub gap: T,
}

pub fn example_closed_forms<T: Real>(d: usize, lambda: T) -> Result<ClosedForms<T>> {
    check_d(d)?;
    if !(lambda > T::zero() && lambda <= T::one()) {
        return Err(Error::InvalidParameter(format!("lambda must lie in (0, 1], got {lambda}")));
    }
    let df = T::from_count(d);
    let one = T::one();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let p_g = (one + lambda * (df * df - one)) / (two * df * (df - one));
    let q_g = (two + lambda * (df * df - two)) / (four * df * (df - one));
    let gap = lambda * df / (four * (df - one));
    Ok(ClosedForms { p_g, q_g, gap })
}
