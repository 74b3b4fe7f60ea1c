//! # qdiv
//!
//! Bregman and Jensen f-divergences between finite-dimensional quantum
//! states, and the machinery for recognizing the maps that preserve them.
//!
//! | Item | Computes |
//! |------|----------|
//! | [`bregman()`] | `H_f(X,Y) = tr(f(X) - f(Y) - f'(Y)(X - Y))`, possibly `+∞` |
//! | [`jensen()`] | `J_f(A,B) = tr(½(f(A) + f(B)) - f(½(A + B)))` |
//! | [`preserver::wigner_reconstruct`] | the unitary/antiunitary `U` behind a transition-preserving map |
//! | [`preserver::verify_preserver`] | divergence deviation, reconstruction and residual for a map |
//!
//! Generators are strictly convex functions on `(0, ∞)` with a declared limit
//! `f(0)` and a declared class for `f'(0⁺)` (finite or `-∞`). The class decides
//! whether a Bregman divergence between states with non-nested supports is
//! `+∞`. Every divergence routine takes a [`NormalizedGenerator`], shifted so
//! that `f(0) = f(1) = 0`.
//!
//! ```
//! use qdiv::{bregman, catalog, normalize, DensityState, Tolerances};
//!
//! let tol = Tolerances::<f64>::default();
//! let f = normalize(&catalog("xlogx").unwrap());
//! let a = DensityState::diag(&[0.5, 0.5], &tol).unwrap();
//! let b = DensityState::diag(&[0.25, 0.75], &tol).unwrap();
//! let h = bregman(&f, &a, &b, &tol).unwrap();
//! assert!((h.as_finite().unwrap() - 0.5 * (4.0f64 / 3.0).ln()).abs() < 1e-12);
//! ```
//!
//! All numeric types are generic over [`Real`] (`f32` or `f64`); the `*64`
//! and `*32` aliases below name the concrete instantiations.

#![forbid(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bregman;
pub mod error;
pub mod generators;
pub mod hermitian;
pub mod jensen;
pub mod preserver;
pub mod random;
pub mod scalar;
pub mod tolerance;

pub use bregman::{bregman, bregman_rank_one_pair, bregman_rank_one_vs_rank_two, support_included, ExtendedReal};
pub use error::{Error, Result};
pub use generators::{catalog, normalize, validate, GeneratorFunction, NormalizedGenerator, ZeroDerivative};
pub use hermitian::{
    apply_function, trace_on_support, transition_probability, DensityState, Domain, HermitianMatrix, RankOneProjection,
    SpectralDecomposition,
};
pub use jensen::{jensen, jensen_max_constant, jensen_rank_one, jensen_via_bregman};
pub use preserver::{SymmetryOp, TransitionTable};
pub use scalar::{CMatrix, CVector, Real};
pub use tolerance::Tolerances;

pub type DensityState64 = DensityState<f64>;
pub type DensityState32 = DensityState<f32>;
pub type HermitianMatrix64 = HermitianMatrix<f64>;
pub type HermitianMatrix32 = HermitianMatrix<f32>;
pub type RankOneProjection64 = RankOneProjection<f64>;
pub type RankOneProjection32 = RankOneProjection<f32>;
pub type Generator64 = NormalizedGenerator<f64>;
pub type Generator32 = NormalizedGenerator<f32>;
pub type SymmetryOp64 = SymmetryOp<f64>;
pub type SymmetryOp32 = SymmetryOp<f32>;
pub type Tolerances64 = Tolerances<f64>;
pub type Tolerances32 = Tolerances<f32>;
pub type ExtendedReal64 = ExtendedReal<f64>;
