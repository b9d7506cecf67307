//! Ensemble and measurement value types, plus the two-qudit example family.

mod example;

pub use example::{
    example_closed_forms, example_ensemble, example_global_povm, example_labels, example_local_povm, psi_state,
    ClosedForms, ExampleLabel,
};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, HermitianOperator};
use crate::scalar::Real;

/// Tolerance on the sum of priors.
pub const PRIOR_SUM_TOL: f64 = 1e-12;
/// Tolerance on state positivity and unit trace.
pub const STATE_TOL: f64 = 1e-10;
/// Tolerance on POVM positivity and completeness.
pub const POVM_TOL: f64 = 1e-9;

fn f64_of<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn check_priors<T: Real>(priors: impl Iterator<Item = T>) -> Result<()> {
    let mut sum = T::zero();
    let mut count = 0;
    for (index, p) in priors.enumerate() {
        if !(p > T::zero() && p <= T::one()) {
            return Err(Error::PriorRange { index, value: f64_of(p) });
        }
        sum += p;
        count += 1;
    }
    if count == 0 {
        return Err(Error::EmptyEnsemble);
    }
    if (sum - T::one()).abs() > T::tol(PRIOR_SUM_TOL) {
        return Err(Error::PriorSum { sum: f64_of(sum) });
    }
    Ok(())
}

fn check_shape<T: Real>(d1: usize, d2: usize, op: &HermitianOperator<T>) -> Result<()> {
    if op.d1() != d1 || op.d2() != d2 {
        return Err(Error::DimensionMismatch { expected: d1 * d2, found: op.dim() });
    }
    Ok(())
}

/// Prior probabilities paired with density operators on `C^{d1} ⊗ C^{d2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateEnsemble<T: Real> {
    d1: usize,
    d2: usize,
    items: Vec<(T, HermitianOperator<T>)>,
    separable_asserted: bool,
}

impl<T: Real> StateEnsemble<T> {
    pub fn new(d1: usize, d2: usize, items: Vec<(T, HermitianOperator<T>)>) -> Result<Self> {
        check_priors(items.iter().map(|(p, _)| *p))?;
        let tol = T::tol(STATE_TOL);
        for (index, (_, rho)) in items.iter().enumerate() {
            check_shape(d1, d2, rho)?;
            let min_eigenvalue = rho.min_eigenvalue()?;
            if min_eigenvalue < -tol {
                return Err(Error::NonPsdState { index, min_eigenvalue: f64_of(min_eigenvalue) });
            }
            let trace = rho.trace();
            if (trace - T::one()).abs() > tol {
                return Err(Error::TraceViolation { index, trace: f64_of(trace) });
            }
        }
        Ok(Self { d1, d2, items, separable_asserted: false })
    }

    /// Records the caller's claim that every state is separable. Never inferred.
    pub fn with_separable_asserted(mut self, separable: bool) -> Self {
        self.separable_asserted = separable;
        self
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn dim(&self) -> usize {
        self.d1 * self.d2
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn separable_asserted(&self) -> bool {
        self.separable_asserted
    }

    pub fn items(&self) -> &[(T, HermitianOperator<T>)] {
        &self.items
    }

    pub fn priors(&self) -> impl Iterator<Item = T> + '_ {
        self.items.iter().map(|(p, _)| *p)
    }

    pub fn states(&self) -> impl Iterator<Item = &HermitianOperator<T>> + '_ {
        self.items.iter().map(|(_, s)| s)
    }

    /// The same priors and states viewed as Hermitian cost operators.
    pub fn to_hermitian(&self) -> HermitianEnsemble<T> {
        HermitianEnsemble { d1: self.d1, d2: self.d2, items: self.items.clone() }
    }

    /// Same priors with every state replaced by its partial transpose.
    pub fn partial_transpose(&self) -> HermitianEnsemble<T> {
        HermitianEnsemble {
            d1: self.d1,
            d2: self.d2,
            items: self.items.iter().map(|(p, s)| (*p, s.partial_transpose())).collect(),
        }
    }
}

/// Validates raw priors and matrices into a [`StateEnsemble`].
pub fn validate_ensemble<T: Real>(d1: usize, d2: usize, raw: Vec<(T, CMatrix<T>)>) -> Result<StateEnsemble<T>> {
    let items =
        raw.into_iter().map(|(p, m)| Ok((p, HermitianOperator::new(d1, d2, m)?))).collect::<Result<Vec<_>>>()?;
    StateEnsemble::new(d1, d2, items)
}

/// `{η_i, ρ_i^PT}` of a state ensemble.
pub fn pt_ensemble<T: Real>(e: &StateEnsemble<T>) -> HermitianEnsemble<T> {
    e.partial_transpose()
}

/// Priors paired with Hermitian operators that need not be states.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianEnsemble<T: Real> {
    d1: usize,
    d2: usize,
    items: Vec<(T, HermitianOperator<T>)>,
}

impl<T: Real> HermitianEnsemble<T> {
    pub fn new(d1: usize, d2: usize, items: Vec<(T, HermitianOperator<T>)>) -> Result<Self> {
        check_priors(items.iter().map(|(p, _)| *p))?;
        for (_, op) in &items {
            check_shape(d1, d2, op)?;
        }
        Ok(Self { d1, d2, items })
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn dim(&self) -> usize {
        self.d1 * self.d2
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[(T, HermitianOperator<T>)] {
        &self.items
    }

    pub fn partial_transpose(&self) -> Self {
        Self { d1: self.d1, d2: self.d2, items: self.items.iter().map(|(p, s)| (*p, s.partial_transpose())).collect() }
    }
}

/// Positive operators summing to the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Povm<T: Real> {
    d1: usize,
    d2: usize,
    elements: Vec<HermitianOperator<T>>,
}

impl<T: Real> Povm<T> {
    pub fn new(d1: usize, d2: usize, elements: Vec<HermitianOperator<T>>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidParameter("a POVM needs at least one element".into()));
        }
        let tol = T::tol(POVM_TOL);
        let dim = d1 * d2;
        let mut sum = CMatrix::<T>::zeros(dim);
        for (index, m) in elements.iter().enumerate() {
            check_shape(d1, d2, m)?;
            let min_eigenvalue = m.min_eigenvalue()?;
            if min_eigenvalue < -tol {
                return Err(Error::NonPsdElement { index, min_eigenvalue: f64_of(min_eigenvalue) });
            }
            sum.axpy(T::one(), m.matrix());
        }
        let residual = sum.sub(&CMatrix::identity(dim)).max_abs();
        if residual > tol {
            return Err(Error::Incomplete { residual: f64_of(residual) });
        }
        Ok(Self { d1, d2, elements })
    }

    /// The trivial one-outcome measurement `{I}`.
    pub fn trivial(d1: usize, d2: usize) -> Self {
        Self { d1, d2, elements: vec![HermitianOperator::identity(d1, d2)] }
    }

    pub fn d1(&self) -> usize {
        self.d1
    }

    pub fn d2(&self) -> usize {
        self.d2
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HermitianOperator<T>] {
        &self.elements
    }

    /// Max-entry deviation of `Σ M_i` from the identity.
    pub fn completeness_residual(&self) -> T {
        let dim = self.d1 * self.d2;
        let mut sum = CMatrix::<T>::zeros(dim);
        for m in &self.elements {
            sum.axpy(T::one(), m.matrix());
        }
        sum.sub(&CMatrix::identity(dim)).max_abs()
    }

    /// `Σ η_i Tr(C_i M_i)` against a list of weighted cost operators.
    pub fn success_probability(&self, costs: &[(T, HermitianOperator<T>)]) -> Result<T> {
        if costs.len() != self.elements.len() {
            return Err(Error::CountMismatch { ensemble: costs.len(), povm: self.elements.len() });
        }
        let mut total = T::zero();
        for ((eta, c), m) in costs.iter().zip(&self.elements) {
            total += *eta * c.trace_inner(m)?;
        }
        Ok(total)
    }
}
