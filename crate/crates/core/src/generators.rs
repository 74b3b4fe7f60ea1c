//! Strictly convex generating functions `f` on `(0, ∞)` and their catalog.
//!
//! A generator carries its derivative and two pieces of declared metadata that
//! are never probed numerically: the limit `f'(0⁺)` (finite or `-∞`), which
//! selects the finite or infinite branch of the Bregman divergence, and
//! membership of the Matrix Entropy Class.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{lit, to_f64, Real};

pub type ScalarFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Behavior of `f'(x)` as `x → 0⁺`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroDerivative<T> {
    FiniteLimit(T),
    NegativeInfinity,
}

impl<T: Real> ZeroDerivative<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ZeroDerivative::FiniteLimit(_))
    }

    fn shifted(self, slope: T) -> Self {
        match self {
            ZeroDerivative::FiniteLimit(v) => ZeroDerivative::FiniteLimit(v - slope),
            ZeroDerivative::NegativeInfinity => ZeroDerivative::NegativeInfinity,
        }
    }
}

#[derive(Clone)]
enum Shape<T> {
    /// `x log x`
    StdEntropy,
    /// `(x^q - x)/(q - 1)`
    Power(T),
    Custom {
        eval: ScalarFn<T>,
        deriv: ScalarFn<T>,
    },
}

/// A differentiable strictly convex function with declared limits at 0.
///
/// The stored affine correction `offset + slope·x` is subtracted from the
/// underlying shape; it is zero unless the generator came out of
/// [`normalize`].
#[derive(Clone)]
pub struct GeneratorFunction<T: Real> {
    name: String,
    shape: Shape<T>,
    f_zero: T,
    zero_derivative: ZeroDerivative<T>,
    matrix_entropy_member: bool,
    offset: T,
    slope: T,
}

impl<T: Real> fmt::Debug for GeneratorFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorFunction")
            .field("name", &self.name)
            .field("f_zero", &self.f_zero)
            .field("zero_derivative", &self.zero_derivative)
            .field("matrix_entropy_member", &self.matrix_entropy_member)
            .field("offset", &self.offset)
            .field("slope", &self.slope)
            .finish()
    }
}

impl<T: Real> GeneratorFunction<T> {
    /// `f(x) = x log x`: `f(0) = 0`, `f'(0⁺) = -∞`, Matrix Entropy Class member.
    pub fn std_entropy() -> Self {
        Self {
            name: "xlogx".into(),
            shape: Shape::StdEntropy,
            f_zero: T::zero(),
            zero_derivative: ZeroDerivative::NegativeInfinity,
            matrix_entropy_member: true,
            offset: T::zero(),
            slope: T::zero(),
        }
    }

    /// `f_q(x) = (x^q - x)/(q - 1)` for `q > 1`, with `f'(0) = -1/(q-1)`.
    /// Matrix Entropy Class membership is declared for `q ≤ 2`.
    pub fn power(q: T) -> Result<Self> {
        if !(q > T::one()) || !q.is_finite() {
            return Err(Error::Parameter(format!(
                "power generator needs q > 1, got {}",
                to_f64(q)
            )));
        }
        let name = if q == lit(2.0) {
            "quadratic".to_string()
        } else {
            format!("power:q={}", to_f64(q))
        };
        Ok(Self {
            name,
            shape: Shape::Power(q),
            f_zero: T::zero(),
            zero_derivative: ZeroDerivative::FiniteLimit(-T::one() / (q - T::one())),
            matrix_entropy_member: q <= lit(2.0),
            offset: T::zero(),
            slope: T::zero(),
        })
    }

    /// `x² - x`, the member of the power family at `q = 2`.
    pub fn quadratic() -> Self {
        Self::power(lit(2.0)).expect("q = 2 is admissible")
    }

    /// A user-supplied `(f, f', f(0), f'(0⁺))` quadruple.
    pub fn custom(
        name: impl Into<String>,
        eval: ScalarFn<T>,
        deriv: ScalarFn<T>,
        f_zero: T,
        zero_derivative: ZeroDerivative<T>,
        matrix_entropy_member: bool,
    ) -> Result<Self> {
        if !f_zero.is_finite() {
            return Err(Error::Parameter("declared f(0) must be finite".into()));
        }
        Ok(Self {
            name: name.into(),
            shape: Shape::Custom { eval, deriv },
            f_zero,
            zero_derivative,
            matrix_entropy_member,
            offset: T::zero(),
            slope: T::zero(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn zero_derivative(&self) -> ZeroDerivative<T> {
        self.zero_derivative.shifted(self.slope)
    }

    pub fn matrix_entropy_member(&self) -> bool {
        self.matrix_entropy_member
    }

    fn raw_eval(&self, x: T) -> T {
        if x == T::zero() {
            return self.f_zero;
        }
        match &self.shape {
            Shape::StdEntropy => x * x.ln(),
            Shape::Power(q) => {
                if *q == lit(2.0) {
                    x * x - x
                } else {
                    (x.powf(*q) - x) / (*q - T::one())
                }
            }
            Shape::Custom { eval, .. } => eval(x),
        }
    }

    fn raw_deriv(&self, x: T) -> T {
        if x == T::zero() {
            if let ZeroDerivative::FiniteLimit(v) = self.zero_derivative {
                return v;
            }
        }
        match &self.shape {
            Shape::StdEntropy => x.ln() + T::one(),
            Shape::Power(q) => {
                if *q == lit(2.0) {
                    x + x - T::one()
                } else {
                    (*q * x.powf(*q - T::one()) - T::one()) / (*q - T::one())
                }
            }
            Shape::Custom { deriv, .. } => deriv(x),
        }
    }

    /// `f(x)` for `x ≥ 0`; at 0 the declared limit is returned.
    pub fn eval(&self, x: T) -> T {
        (self.raw_eval(x) - self.offset) - self.slope * x
    }

    /// `f'(x)` for `x > 0`; at 0 the declared finite limit when there is one.
    pub fn deriv(&self, x: T) -> T {
        self.raw_deriv(x) - self.slope
    }
}

/// A generator shifted by an affine function so that `f(0) = f(1) = 0`.
///
/// Affine shifts leave both Bregman and Jensen divergences unchanged, so every
/// divergence routine consumes this normalized form.
#[derive(Debug, Clone)]
pub struct NormalizedGenerator<T: Real>(GeneratorFunction<T>);

/// Subtracts the affine interpolant through `(0, f(0))` and `(1, f(1))`.
pub fn normalize<T: Real>(f: &GeneratorFunction<T>) -> NormalizedGenerator<T> {
    let mut g = f.clone();
    let f0 = f.eval(T::zero());
    let f1 = f.eval(T::one());
    g.offset += f0;
    g.slope += f1 - f0;
    NormalizedGenerator(g)
}

impl<T: Real> NormalizedGenerator<T> {
    pub fn generator(&self) -> &GeneratorFunction<T> {
        &self.0
    }

    pub fn name(&self) -> &str {
        self.0.name()
    }

    pub fn eval(&self, x: T) -> T {
        self.0.eval(x)
    }

    pub fn deriv(&self, x: T) -> T {
        self.0.deriv(x)
    }

    pub fn zero_derivative(&self) -> ZeroDerivative<T> {
        self.0.zero_derivative()
    }

    pub fn matrix_entropy_member(&self) -> bool {
        self.0.matrix_entropy_member()
    }

    /// `f'(1) - f'(0)` for finite-derivative generators.
    pub fn derivative_span(&self) -> Option<T> {
        match self.zero_derivative() {
            ZeroDerivative::FiniteLimit(v) => Some(self.deriv(T::one()) - v),
            ZeroDerivative::NegativeInfinity => None,
        }
    }
}

/// Parses a CLI generator name: `xlogx`, `quadratic` or `power:q=<rational>`.
///
/// The exponent accepts decimals (`1.5`) and fractions (`3/2`).
pub fn catalog<T: Real>(spec: &str) -> Result<GeneratorFunction<T>> {
    let spec = spec.trim();
    match spec {
        "xlogx" | "std_entropy" => return Ok(GeneratorFunction::std_entropy()),
        "quadratic" => return Ok(GeneratorFunction::quadratic()),
        _ => {}
    }
    let q = spec
        .strip_prefix("power:q=")
        .or_else(|| spec.strip_prefix("power(").and_then(|s| s.strip_suffix(')')))
        .ok_or_else(|| Error::Parameter(format!("unknown generator `{spec}`")))?;
    GeneratorFunction::power(lit(parse_rational(q)?))
}

fn parse_rational(s: &str) -> Result<f64> {
    let bad = || Error::Parameter(format!("cannot parse exponent `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| bad())?;
            let d: f64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0.0 {
                return Err(bad());
            }
            Ok(n / d)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

/// A hypothesis failure found by [`validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// `f((a+b)/2) ≥ (f(a)+f(b))/2`; `gap` is the (non-positive) convexity gap.
    NotConvex { a: f64, b: f64, gap: f64 },
    /// `f'(a) ≥ f'(b)` for `a < b`.
    DerivativeNotIncreasing { a: f64, b: f64 },
    /// Declared derivative disagrees with a centered finite difference.
    DerivativeMismatch {
        x: f64,
        declared: f64,
        finite_difference: f64,
    },
    /// `f'(x)` falls below its declared limit at 0.
    ZeroLimitMismatch { x: f64, deriv: f64, declared: f64 },
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub grid_points: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// 200 log-spaced points in `[1e-6, 1e2]`.
pub fn default_grid<T: Real>() -> Vec<T> {
    log_grid(1e-6, 1e2, 200)
}

pub fn log_grid<T: Real>(lo: f64, hi: f64, n: usize) -> Vec<T> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| lit((a + (b - a) * i as f64 / (n - 1).max(1) as f64).exp()))
        .collect()
}

/// Relative finite-difference tolerance used by [`validate`].
pub const FD_TOL: f64 = 1e-6;

/// Checks strict convexity, monotone derivative, derivative consistency and
/// the declared zero limit on a sorted positive grid.
pub fn validate<T: Real>(f: &GeneratorFunction<T>, grid: &[T]) -> ValidationReport {
    let mut violations = Vec::new();
    let two = lit::<T>(2.0);
    for w in grid.windows(2) {
        let (a, b) = (w[0], w[1]);
        let c = (a + b) / two;
        let gap = (f.eval(a) + f.eval(b)) / two - f.eval(c);
        if !(gap > T::zero()) {
            violations.push(Violation::NotConvex {
                a: to_f64(a),
                b: to_f64(b),
                gap: to_f64(gap),
            });
        }
        if !(f.deriv(a) < f.deriv(b)) {
            violations.push(Violation::DerivativeNotIncreasing {
                a: to_f64(a),
                b: to_f64(b),
            });
        }
    }

    let fd_tol = lit::<T>(FD_TOL);
    for &x in grid {
        let h = lit::<T>(1e-6) * x;
        let fd = (f.eval(x + h) - f.eval(x - h)) / (two * h);
        let d = f.deriv(x);
        if !((fd - d).abs() <= fd_tol * d.abs().max(T::one())) {
            violations.push(Violation::DerivativeMismatch {
                x: to_f64(x),
                declared: to_f64(d),
                finite_difference: to_f64(fd),
            });
        }
    }

    if let ZeroDerivative::FiniteLimit(v) = f.zero_derivative() {
        let slack = lit::<T>(1e-9) * v.abs().max(T::one());
        for &x in grid {
            let d = f.deriv(x);
            if d < v - slack {
                violations.push(Violation::ZeroLimitMismatch {
                    x: to_f64(x),
                    deriv: to_f64(d),
                    declared: to_f64(v),
                });
            }
        }
    }

    ValidationReport {
        grid_points: grid.len(),
        violations,
    }
}

/// `h(a, b) = (f(a) - f(b))/(a - b)`.
pub fn difference_quotient<T: Real>(f: &NormalizedGenerator<T>, a: T, b: T) -> T {
    (f.eval(a) - f.eval(b)) / (a - b)
}

/// `g(a) = f(a/2 + 1/2) - f(a/2)`, strictly increasing for strictly convex `f`.
pub fn half_shift_gap<T: Real>(f: &NormalizedGenerator<T>, a: T) -> T {
    let half = lit::<T>(0.5);
    f.eval(a * half + half) - f.eval(a * half)
}
