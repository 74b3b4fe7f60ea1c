use crate::scalar::{lit, Real};

/// Numerical thresholds used across the crate.
///
/// Every routine that makes a zero/nonzero or equal/unequal decision reads it
/// from here, so a single value can be tightened or relaxed in one place.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    /// Allowed `max |M - M*|` before a matrix is rejected as non-Hermitian.
    pub herm: T,
    /// Allowed negative eigenvalue magnitude for a state.
    pub psd: T,
    /// Allowed deviation of a state's trace from 1.
    pub trace: T,
    /// General numerical slack (idempotency, unit norms, clamping).
    pub num: T,
    /// Consecutive sorted eigenvalues closer than this are merged into one cluster.
    pub cluster: T,
    /// Eigenvalues of a state below this are exactly zero for support purposes.
    pub supp: T,
    /// Terms of a spectral double sum whose overlap `tr P_x Q_y` is below this are dropped.
    pub skip: T,
    /// Parameter tolerance of the monotone bisections in the preserver engine.
    pub bisect: T,
    /// Allowed transition-probability mismatch of probe images.
    pub wigner: T,
    /// Allowed residual of a reconstructed symmetry on the probe set.
    pub reconstruct: T,
    /// Distance to the pure-state maximum below which a state is classified pure.
    pub pure_margin: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        let s = T::tolerance_scale();
        let t = |x: f64| lit::<T>((x * s).min(1e-3));
        Self {
            herm: t(1e-9),
            psd: t(1e-9),
            trace: t(1e-9),
            num: t(1e-9),
            cluster: t(1e-8),
            supp: t(1e-10),
            skip: t(1e-14),
            bisect: t(1e-10),
            wigner: t(1e-7),
            reconstruct: t(1e-8),
            pure_margin: lit(1e-3),
        }
    }
}
