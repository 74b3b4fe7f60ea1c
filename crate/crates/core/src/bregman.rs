//! Bregman f-divergence on density states with exact `+∞` semantics.
//!
//! For states `X = Σ x P_x` and `Y = Σ y Q_y` the divergence is the spectral
//! double sum `Σ (f(x) - f(y) - f'(y)(x - y)) tr P_x Q_y`. When `f'(0⁺) = -∞`
//! the kernel terms `y = 0` are dropped and the value is `+∞` unless
//! `supp X ⊆ supp Y`; when `f'(0⁺)` is finite every term is kept, with `f'(0)`
//! taken from the declared limit.

use std::fmt;

use crate::error::{Error, Result};
use crate::generators::{NormalizedGenerator, ZeroDerivative};
use crate::hermitian::{check_dims, trace_product, transition_probability, DensityState, RankOneProjection};
use crate::scalar::{to_f64, Real};
use crate::tolerance::Tolerances;

/// A divergence value: a nonnegative real or `+∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal<T> {
    Finite(T),
    PositiveInfinity,
}

impl<T: Real> ExtendedReal<T> {
    /// Clamps values in `[-tol, 0)` to zero; more negative input is an error.
    pub fn finite(value: T, tol: T) -> Result<Self> {
        if value >= T::zero() {
            Ok(Self::Finite(value))
        } else if value >= -tol {
            Ok(Self::Finite(T::zero()))
        } else {
            Err(Error::NegativeDivergence { value: to_f64(value) })
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::PositiveInfinity)
    }

    pub fn as_finite(&self) -> Option<T> {
        match self {
            Self::Finite(v) => Some(*v),
            Self::PositiveInfinity => None,
        }
    }

    /// `|a - b|`, with `∞ - ∞ = 0` and `∞ - finite = ∞`.
    pub fn distance(&self, other: &Self) -> Option<T> {
        match (self, other) {
            (Self::Finite(a), Self::Finite(b)) => Some((*a - *b).abs()),
            (Self::PositiveInfinity, Self::PositiveInfinity) => Some(T::zero()),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Finite(v) => to_f64(*v),
            Self::PositiveInfinity => f64::INFINITY,
        }
    }
}

impl<T: Real> fmt::Display for ExtendedReal<T> {
    /// Twelve decimals, or the literal `inf`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(v) => write!(f, "{:.12}", to_f64(*v)),
            Self::PositiveInfinity => f.write_str("inf"),
        }
    }
}

/// `supp X ⊆ supp Y`, decided by `tr((I - supp Y) X) < eps_supp`.
pub fn support_included<T: Real>(x: &DensityState<T>, y: &DensityState<T>, tol: &Tolerances<T>) -> bool {
    let outside = T::one() - trace_product(y.support(), x.matrix());
    outside < tol.supp
}

/// Bregman f-divergence `H_f(X, Y)`.
pub fn bregman<T: Real>(
    f: &NormalizedGenerator<T>,
    x: &DensityState<T>,
    y: &DensityState<T>,
    tol: &Tolerances<T>,
) -> Result<ExtendedReal<T>> {
    check_dims(x.dim(), y.dim())?;
    let zero_deriv = f.zero_derivative();
    if !zero_deriv.is_finite() && !support_included(x, y, tol) {
        return Ok(ExtendedReal::PositiveInfinity);
    }

    let mut total = T::zero();
    for qy in y.spectral().clusters() {
        let yv = qy.value;
        let dy = if yv == T::zero() {
            match zero_deriv {
                ZeroDerivative::FiniteLimit(v) => v,
                // kernel of Y is excluded from the sum in the -∞ branch
                ZeroDerivative::NegativeInfinity => continue,
            }
        } else {
            f.deriv(yv)
        };
        let fy = f.eval(yv);
        for px in x.spectral().clusters() {
            let overlap = trace_product(&px.projection, &qy.projection);
            if overlap < tol.skip {
                continue;
            }
            let xv = px.value;
            total += (f.eval(xv) - fy - dy * (xv - yv)) * overlap;
        }
    }
    check_finite(total)?;
    ExtendedReal::finite(total, tol.num)
}

fn check_finite<T: Real>(v: T) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain { value: to_f64(v) })
    }
}

/// Closed form `H_f(P, Q) = (1 - tr PQ)(f'(1) - f'(0))` for rank-one arguments.
///
/// For generators with `f'(0⁺) = -∞` the value is 0 when `P = Q` and `+∞`
/// otherwise.
pub fn bregman_rank_one_pair<T: Real>(
    f: &NormalizedGenerator<T>,
    p: &RankOneProjection<T>,
    q: &RankOneProjection<T>,
    tol: &Tolerances<T>,
) -> Result<ExtendedReal<T>> {
    let tp = transition_probability(p, q)?;
    match f.derivative_span() {
        Some(span) => ExtendedReal::finite((T::one() - tp) * span, tol.num),
        None => {
            if T::one() - tp < tol.supp {
                Ok(ExtendedReal::Finite(T::zero()))
            } else {
                Ok(ExtendedReal::PositiveInfinity)
            }
        }
    }
}

/// `C_{f,λ,μ} = λf'(λ) - f(λ) + μf'(μ) - f(μ)`.
pub fn rank_two_constant<T: Real>(f: &NormalizedGenerator<T>, lambda: T) -> T {
    let mu = T::one() - lambda;
    lambda * f.deriv(lambda) - f.eval(lambda) + mu * f.deriv(mu) - f.eval(mu)
}

/// Closed form of `H_f(R, λP + μQ)` for a rank-one `R` and orthogonal rank-one
/// `P`, `Q` with `μ = 1 - λ`:
/// `-f'(λ) tr RP - f'(μ) tr RQ + C_{f,λ,μ}`.
pub fn bregman_rank_one_vs_rank_two<T: Real>(
    f: &NormalizedGenerator<T>,
    r: &RankOneProjection<T>,
    lambda: T,
    p: &RankOneProjection<T>,
    q: &RankOneProjection<T>,
    tol: &Tolerances<T>,
) -> Result<ExtendedReal<T>> {
    if !(lambda > T::zero() && lambda < T::one()) {
        return Err(Error::Range {
            value: to_f64(lambda),
            lo: 0.0,
            hi: 1.0,
        });
    }
    let pq = transition_probability(p, q)?;
    if pq >= tol.num {
        return Err(Error::Precondition(format!(
            "P and Q must be orthogonal (tr PQ = {:e})",
            to_f64(pq)
        )));
    }
    let rp = transition_probability(r, p)?;
    let rq = transition_probability(r, q)?;
    if T::one() - rp - rq >= tol.supp {
        return match f.zero_derivative() {
            ZeroDerivative::NegativeInfinity => Ok(ExtendedReal::PositiveInfinity),
            ZeroDerivative::FiniteLimit(_) => Err(Error::Precondition("R is not supported in span(P, Q)".into())),
        };
    }
    let mu = T::one() - lambda;
    let value = -f.deriv(lambda) * rp - f.deriv(mu) * rq + rank_two_constant(f, lambda);
    ExtendedReal::finite(value, tol.num)
}
