use nalgebra::Complex;

use crate::bregman::{bregman, rank_two_constant};
use crate::error::{Error, Result};
use crate::generators::{NormalizedGenerator, ZeroDerivative};
use crate::hermitian::{DensityState, RankOneProjection};
use crate::jensen::{jensen_max_constant, jensen_rank_one};
use crate::random::{gaussian_matrix, random_unit_vector, rng_from_seed};
use crate::scalar::{lit, to_f64, CVector, Real};
use crate::tolerance::Tolerances;

/// Root of a strictly decreasing `g` on `[lo, hi]` with `g(x) = target`,
/// located to within `tol` in the parameter. Assumes `g(lo) ≥ target ≥ g(hi)`.
fn bisect_decreasing<T: Real>(g: impl Fn(T) -> T, target: T, mut lo: T, mut hi: T, tol: T) -> T {
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = (lo + hi) * super::half();
        if g(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * super::half()
}

/// Inverts `h = (1 - p)(f'(1) - f'(0))` for finite-derivative generators.
pub fn transition_from_bregman<T: Real>(f: &NormalizedGenerator<T>, h: T, tol: &Tolerances<T>) -> Result<T> {
    let span = f.derivative_span().ok_or_else(|| {
        Error::Unsupported(
            "f'(0+) = -inf: distinct pure states are infinitely far apart; probe against a rank-two state instead"
                .into(),
        )
    })?;
    if h < -tol.num || h > span + tol.num || !h.is_finite() {
        return Err(Error::Range {
            value: to_f64(h),
            lo: 0.0,
            hi: to_f64(span),
        });
    }
    Ok((T::one() - h / span).max(T::zero()).min(T::one()))
}

/// Inverts the rank-one Jensen law `j = J(p)` by bisection; `J` is strictly
/// decreasing on `[0, 1]` from `M_f` to 0.
pub fn transition_from_jensen<T: Real>(f: &NormalizedGenerator<T>, j: T, tol: &Tolerances<T>) -> Result<T> {
    let max = jensen_max_constant(f);
    if j < -tol.num || j > max + tol.num || !j.is_finite() {
        return Err(Error::Range {
            value: to_f64(j),
            lo: 0.0,
            hi: to_f64(max),
        });
    }
    if j <= T::zero() {
        return Ok(T::one());
    }
    if j >= max {
        return Ok(T::zero());
    }
    let g = |p: T| jensen_rank_one(f, p, tol).expect("p within [0, 1]");
    Ok(bisect_decreasing(g, j, T::zero(), T::one(), tol.bisect))
}

/// Reads `p = tr RP` off `h = H_f(R, λP + (1-λ)Q)` for `R` in `span(P, Q)`,
/// by inverting `h = -f'(λ)p - f'(1-λ)(1-p) + C_{f,λ,1-λ}`.
///
/// The result is not clamped, so inconsistent data shows up outside `[0, 1]`.
pub fn transition_from_rank_two<T: Real>(f: &NormalizedGenerator<T>, h: T, lambda: T) -> Result<T> {
    let mu = T::one() - lambda;
    if !(lambda > T::zero() && lambda < mu) {
        return Err(Error::Range {
            value: to_f64(lambda),
            lo: 0.0,
            hi: 0.5,
        });
    }
    let (dl, dm) = (f.deriv(lambda), f.deriv(mu));
    Ok((h - rank_two_constant(f, lambda) + dm) / (dm - dl))
}

/// Recovers the smaller eigenvalue `λ ∈ (0, ½)` of a rank-two state from
/// `delta = f'(1-λ) - f'(λ)`, the spread between the extreme values of
/// `H_f(R, S)` over pure `R` in the support of `S`.
pub fn recover_rank_two_spectrum<T: Real>(f: &NormalizedGenerator<T>, delta: T, tol: &Tolerances<T>) -> Result<T> {
    let g = |l: T| f.deriv(T::one() - l) - f.deriv(l);
    let lo = tol.bisect;
    let hi = super::half::<T>() - tol.bisect;
    let upper = match f.zero_derivative() {
        ZeroDerivative::FiniteLimit(v) => f.deriv(T::one()) - v,
        ZeroDerivative::NegativeInfinity => g(lo),
    };
    if !(delta > T::zero()) || delta >= upper || !delta.is_finite() {
        return Err(Error::Range {
            value: to_f64(delta),
            lo: 0.0,
            hi: to_f64(upper),
        });
    }
    if delta >= g(lo) {
        return Ok(lo);
    }
    if delta <= g(hi) {
        return Ok(hi);
    }
    Ok(bisect_decreasing(g, delta, lo, hi, tol.bisect))
}

/// Search effort for [`max_divergence_functional`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub random_candidates: usize,
    pub refine_steps: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            random_candidates: 512,
            refine_steps: 50,
            seed: 0,
        }
    }
}

fn value_at_pure<T: Real>(
    f: &NormalizedGenerator<T>,
    x: &DensityState<T>,
    v: &CVector<T>,
    tol: &Tolerances<T>,
) -> Result<T> {
    let d = RankOneProjection::from_unnormalized(v.clone())?.to_state(tol)?;
    bregman(f, x, &d, tol)?
        .as_finite()
        .ok_or_else(|| Error::Unsupported("infinite divergence in the finite-derivative case".into()))
}

/// Lower bound on `M(X) = max_D H_f(X, D)` over states `D`.
///
/// Candidates are the pure states on eigenvectors of `X`, then
/// `budget.random_candidates` seeded random pure states, then
/// `budget.refine_steps` rounds of random local perturbation of the best
/// vector with a shrinking step. The result is at least `H_f(X, D)` for every
/// candidate `D` that was evaluated.
pub fn max_divergence_functional<T: Real>(
    f: &NormalizedGenerator<T>,
    x: &DensityState<T>,
    budget: &SearchBudget,
    tol: &Tolerances<T>,
) -> Result<T> {
    if !f.zero_derivative().is_finite() {
        return Err(Error::Unsupported(
            "the maximal divergence functional needs a finite f'(0+)".into(),
        ));
    }
    let dim = x.dim();
    let mut rng = rng_from_seed(budget.seed);
    let mut best_val = T::zero();
    let mut best_vec: Option<CVector<T>> = None;
    let consider = |v: CVector<T>, best_val: &mut T, best_vec: &mut Option<CVector<T>>| -> Result<()> {
        let h = value_at_pure(f, x, &v, tol)?;
        if best_vec.is_none() || h > *best_val {
            *best_val = h;
            *best_vec = Some(v);
        }
        Ok(())
    };

    for c in x.spectral().clusters() {
        for j in 0..c.basis.ncols() {
            consider(c.basis.column(j).into_owned(), &mut best_val, &mut best_vec)?;
        }
    }
    for _ in 0..budget.random_candidates {
        consider(random_unit_vector(dim, &mut rng), &mut best_val, &mut best_vec)?;
    }

    let mut step = lit::<T>(0.5);
    for _ in 0..budget.refine_steps {
        let base = best_vec.clone().expect("at least one candidate");
        let kick = gaussian_matrix::<T, _>(dim, 1, &mut rng).column(0).into_owned();
        let trial = base + kick * Complex::new(step, T::zero());
        if trial.norm() == T::zero() {
            continue;
        }
        let h = value_at_pure(f, x, &trial, tol)?;
        if h > best_val {
            best_val = h;
            best_vec = Some(trial.unscale(trial.norm()));
        } else {
            step *= lit(0.7);
        }
    }
    Ok(best_val)
}

/// Outcome of [`is_pure_by_max`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PurityCheck<T> {
    pub pure: bool,
    /// Estimated `M(X)`.
    pub value: T,
    /// `M(P)` for a pure `P`.
    pub reference: T,
    /// `reference - value`.
    pub gap: T,
}

/// Pure iff `M(X)` reaches the pure-state value within `tol.pure_margin`.
pub fn is_pure_by_max<T: Real>(
    f: &NormalizedGenerator<T>,
    x: &DensityState<T>,
    reference_pure_value: T,
    budget: &SearchBudget,
    tol: &Tolerances<T>,
) -> Result<PurityCheck<T>> {
    let value = max_divergence_functional(f, x, budget, tol)?;
    let gap = reference_pure_value - value;
    Ok(PurityCheck {
        pure: gap.abs() < tol.pure_margin,
        value,
        reference: reference_pure_value,
        gap,
    })
}
