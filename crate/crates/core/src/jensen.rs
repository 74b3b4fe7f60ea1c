//! Jensen f-divergence `J_f(A, B) = tr(½(f(A) + f(B)) - f(½(A + B)))`.
//!
//! Only `f(0)` needs to be finite here, so the declared derivative limit is
//! never consulted.

use crate::bregman::bregman;
use crate::error::{Error, Result};
use crate::generators::NormalizedGenerator;
use crate::hermitian::{check_dims, DensityState, Domain};
use crate::scalar::{lit, to_f64, Real};
use crate::tolerance::Tolerances;

fn trace_f<T: Real>(f: &NormalizedGenerator<T>, s: &DensityState<T>, tol: &Tolerances<T>) -> Result<T> {
    s.spectral()
        .trace_of(|x| f.eval(x), Domain::NonNegative { slack: tol.psd })
}

/// `(A + B)/2`.
pub fn midpoint<T: Real>(a: &DensityState<T>, b: &DensityState<T>, tol: &Tolerances<T>) -> Result<DensityState<T>> {
    a.mix(b, lit(0.5), tol)
}

/// Jensen f-divergence, clamped at zero.
pub fn jensen<T: Real>(
    f: &NormalizedGenerator<T>,
    a: &DensityState<T>,
    b: &DensityState<T>,
    tol: &Tolerances<T>,
) -> Result<T> {
    check_dims(a.dim(), b.dim())?;
    let m = midpoint(a, b, tol)?;
    let half = lit::<T>(0.5);
    let value = half * (trace_f(f, a, tol)? + trace_f(f, b, tol)?) - trace_f(f, &m, tol)?;
    clamp(value, tol)
}

fn clamp<T: Real>(value: T, tol: &Tolerances<T>) -> Result<T> {
    if value >= T::zero() {
        Ok(value)
    } else if value >= -tol.num {
        Ok(T::zero())
    } else {
        Err(Error::NegativeDivergence { value: to_f64(value) })
    }
}

/// `J_f(P, Q) = -(f(½(1 + √p)) + f(½(1 - √p)))` for rank-one `P`, `Q` with
/// `p = tr PQ`.
pub fn jensen_rank_one<T: Real>(f: &NormalizedGenerator<T>, p: T, tol: &Tolerances<T>) -> Result<T> {
    if p < -tol.num || p > T::one() + tol.num || !p.is_finite() {
        return Err(Error::Range {
            value: to_f64(p),
            lo: 0.0,
            hi: 1.0,
        });
    }
    let s = p.max(T::zero()).min(T::one()).sqrt();
    let half = lit::<T>(0.5);
    Ok(-(f.eval(half * (T::one() + s)) + f.eval(half * (T::one() - s))))
}

/// `M_f = -2 f(½)`, the maximum of the Jensen divergence over state pairs.
pub fn jensen_max_constant<T: Real>(f: &NormalizedGenerator<T>) -> T {
    -lit::<T>(2.0) * f.eval(lit(0.5))
}

/// `J_f(A, B) = ½(H_f(A, (A+B)/2) + H_f(B, (A+B)/2))`.
pub fn jensen_via_bregman<T: Real>(
    f: &NormalizedGenerator<T>,
    a: &DensityState<T>,
    b: &DensityState<T>,
    tol: &Tolerances<T>,
) -> Result<T> {
    check_dims(a.dim(), b.dim())?;
    let m = midpoint(a, b, tol)?;
    let ha = bregman(f, a, &m, tol)?;
    let hb = bregman(f, b, &m, tol)?;
    match (ha.as_finite(), hb.as_finite()) {
        (Some(x), Some(y)) => clamp(lit::<T>(0.5) * (x + y), tol),
        _ => Err(Error::Precondition(
            "midpoint support does not contain an argument; eps_supp is too coarse for these states".into(),
        )),
    }
}
