//! Damped Newton centering shared by the barrier solvers.

use crate::scalar::Real;

/// A barrier subproblem `f_mu(x) = <c, x> - mu * Σ log det(...)` restricted to its domain.
pub(super) trait Barrier<T: Real> {
    type Point;
    type Dir;

    /// Newton direction at `x` and the squared decrement `-<∇f, Δ>` of the unscaled `f_mu`.
    fn direction(&self, x: &Self::Point, mu: T) -> Option<(Self::Dir, T)>;

    /// `x + tΔ` with the change `f_mu(x + tΔ) - f_mu(x)`, or `None` outside the domain.
    fn trial(&self, x: &Self::Point, dir: &Self::Dir, t: T, mu: T) -> Option<(Self::Point, T)>;
}

pub(super) enum CenterError<T> {
    /// Newton system could not be factored.
    Singular,
    /// Backtracking shrank the step to nothing.
    LineSearch,
    /// Iteration cap hit with the given scaled decrement.
    Cap { steps: usize, decrement: T },
}

/// Recenters `x` for barrier weight `mu`. Returns the number of Newton steps taken.
///
/// Steps with scaled decrement above 1/4 use Armijo backtracking; inside the quadratic
/// convergence region full steps are taken whenever they stay feasible.
pub(super) fn center<T: Real, B: Barrier<T>>(
    problem: &B,
    x: &mut B::Point,
    mu: T,
    newton_tol: T,
    max_steps: usize,
) -> Result<usize, CenterError<T>> {
    let quarter = T::lit(0.25);
    let armijo = T::lit(0.01);
    let min_step = T::lit(1e-12);
    // a tolerance below the working precision can never be met
    let newton_tol = newton_tol.max(T::epsilon() * T::lit(64.0));
    let mut last = T::infinity();
    for step in 0..max_steps {
        let (dir, lam2) = problem.direction(x, mu).ok_or(CenterError::Singular)?;
        let lam2 = lam2.max(T::zero());
        let scaled = lam2 / mu;
        last = scaled;
        let converged = scaled * T::lit(0.5) <= newton_tol;
        let mut t = T::one();
        loop {
            if let Some((next, df)) = problem.trial(x, &dir, t, mu) {
                if scaled.sqrt() <= quarter || df <= -armijo * t * lam2 {
                    *x = next;
                    break;
                }
            }
            t *= T::lit(0.5);
            if t < min_step {
                if converged {
                    return Ok(step);
                }
                return Err(CenterError::LineSearch);
            }
        }
        if converged {
            return Ok(step + 1);
        }
    }
    Err(CenterError::Cap { steps: max_steps, decrement: last })
}
