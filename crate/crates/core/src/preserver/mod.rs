//! Recovering the structure of divergence preservers from divergence data.
//!
//! A bijection of the state space that preserves a Bregman or Jensen
//! divergence is a unitary or antiunitary conjugation. This module turns
//! that into computation: transition probabilities and rank-two spectra are
//! read back off divergence values, pure states are detected through the
//! maximal-divergence functional, and the implementing operator is rebuilt
//! from the images of a finite probe set.

mod recover;
mod verify;
mod wigner;

pub use recover::{
    is_pure_by_max, max_divergence_functional, recover_rank_two_spectrum, transition_from_bregman,
    transition_from_jensen, transition_from_rank_two, PurityCheck, SearchBudget,
};
pub use verify::{verify_preserver, DivergenceKind, VerificationReport};
pub use wigner::{probe_set, wigner_reconstruct, ProbeImages, ProbeLabel, Reconstruction};

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::hermitian::{check_dims, DensityState, HermitianMatrix, RankOneProjection};
use crate::random::random_unitary;
use crate::scalar::{lit, max_abs, to_f64, CMatrix, Real};
use crate::tolerance::Tolerances;

/// A unitary matrix with an antiunitary flag.
///
/// Acts on states by `A ↦ U A U*`, or `A ↦ U Ā U*` (entrywise conjugate
/// first) when `antiunitary` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryOp<T: Real> {
    matrix: CMatrix<T>,
    antiunitary: bool,
}

impl<T: Real> SymmetryOp<T> {
    pub fn new(matrix: CMatrix<T>, antiunitary: bool, tol_num: T) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let n = matrix.nrows();
        let defect = max_abs(&(&matrix * matrix.adjoint() - CMatrix::identity(n, n)));
        if defect > tol_num {
            return Err(Error::Parameter(format!(
                "matrix is not unitary (max |UU* - I| = {:e})",
                to_f64(defect)
            )));
        }
        Ok(Self { matrix, antiunitary })
    }

    pub fn identity(dim: usize, antiunitary: bool) -> Self {
        Self {
            matrix: CMatrix::identity(dim, dim),
            antiunitary,
        }
    }

    /// Seeded random unitary part.
    pub fn random<R: rand::Rng + ?Sized>(dim: usize, antiunitary: bool, rng: &mut R) -> Self {
        Self {
            matrix: random_unitary(dim, rng),
            antiunitary,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn is_antiunitary(&self) -> bool {
        self.antiunitary
    }

    pub fn apply_matrix(&self, a: &HermitianMatrix<T>) -> HermitianMatrix<T> {
        if self.antiunitary {
            a.conj().conjugate_by(&self.matrix)
        } else {
            a.conjugate_by(&self.matrix)
        }
    }

    pub fn apply_state(&self, a: &DensityState<T>, tol: &Tolerances<T>) -> Result<DensityState<T>> {
        check_dims(self.dim(), a.dim())?;
        DensityState::from_hermitian(self.apply_matrix(a.matrix()), tol)
    }

    /// `U v` or `U v̄`.
    pub fn apply_projection(&self, p: &RankOneProjection<T>) -> Result<RankOneProjection<T>> {
        check_dims(self.dim(), p.dim())?;
        let v = if self.antiunitary {
            p.vector().map(|z| z.conj())
        } else {
            p.vector().clone()
        };
        RankOneProjection::from_unnormalized(&self.matrix * v)
    }
}

/// A map on states whose divergence-preservation is under test.
pub trait PreserverOracle<T: Real> {
    fn dim(&self) -> usize;
    fn apply(&self, state: &DensityState<T>, tol: &Tolerances<T>) -> Result<DensityState<T>>;
}

impl<T: Real> PreserverOracle<T> for SymmetryOp<T> {
    fn dim(&self) -> usize {
        SymmetryOp::dim(self)
    }

    fn apply(&self, state: &DensityState<T>, tol: &Tolerances<T>) -> Result<DensityState<T>> {
        self.apply_state(state, tol)
    }
}

/// `A ↦ Aᵀ`.
#[derive(Debug, Clone, Copy)]
pub struct Transpose {
    pub dim: usize,
}

impl<T: Real> PreserverOracle<T> for Transpose {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, state: &DensityState<T>, tol: &Tolerances<T>) -> Result<DensityState<T>> {
        check_dims(self.dim, state.dim())?;
        DensityState::from_hermitian(HermitianMatrix::from_raw(state.matrix().as_matrix().transpose()), tol)
    }
}

/// `A ↦ keep·A + (1 - keep)·I/d`.
#[derive(Debug, Clone, Copy)]
pub struct Depolarizing<T> {
    pub dim: usize,
    pub keep: T,
}

impl<T: Real> PreserverOracle<T> for Depolarizing<T> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, state: &DensityState<T>, tol: &Tolerances<T>) -> Result<DensityState<T>> {
        check_dims(self.dim, state.dim())?;
        let mixed = HermitianMatrix::identity(self.dim).scale(T::one() / T::from_usize(self.dim).unwrap());
        let m = state.matrix().scale(self.keep).add(&mixed.scale(T::one() - self.keep));
        DensityState::from_hermitian(m, tol)
    }
}

/// `A ↦ diag(A)`, the projection onto diagonal matrices.
#[derive(Debug, Clone, Copy)]
pub struct Dephasing {
    pub dim: usize,
}

impl<T: Real> PreserverOracle<T> for Dephasing {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, state: &DensityState<T>, tol: &Tolerances<T>) -> Result<DensityState<T>> {
        check_dims(self.dim, state.dim())?;
        let d: Vec<T> = state.matrix().as_matrix().diagonal().iter().map(|z| z.re).collect();
        DensityState::from_hermitian(HermitianMatrix::diag(&d), tol)
    }
}

/// Finite lookup table; inputs are matched entrywise within `tol.num`.
#[derive(Debug, Clone)]
pub struct TableOracle<T: Real> {
    pub dim: usize,
    pub entries: Vec<(DensityState<T>, DensityState<T>)>,
}

impl<T: Real> PreserverOracle<T> for TableOracle<T> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, state: &DensityState<T>, tol: &Tolerances<T>) -> Result<DensityState<T>> {
        self.entries
            .iter()
            .find(|(input, _)| {
                input.dim() == state.dim()
                    && max_abs(&(input.matrix().as_matrix() - state.matrix().as_matrix())) <= tol.num
            })
            .map(|(_, out)| out.clone())
            .ok_or_else(|| Error::Oracle("state not present in oracle table".into()))
    }
}

/// Adapter for closures.
pub struct FnOracle<F> {
    pub dim: usize,
    pub map: F,
}

impl<T: Real, F> PreserverOracle<T> for FnOracle<F>
where
    F: Fn(&DensityState<T>, &Tolerances<T>) -> Result<DensityState<T>>,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, state: &DensityState<T>, tol: &Tolerances<T>) -> Result<DensityState<T>> {
        (self.map)(state, tol)
    }
}

/// `values[i][j] = tr(P_i Q_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionTable<T> {
    pub values: Vec<Vec<T>>,
}

impl<T: Real> TransitionTable<T> {
    pub fn new(rows: &[RankOneProjection<T>], cols: &[RankOneProjection<T>]) -> Result<Self> {
        let values = rows
            .iter()
            .map(|p| {
                cols.iter()
                    .map(|q| p.transition_probability(q))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { values })
    }

    /// Largest deviation of any row or column sum from 1.
    pub fn stochastic_defect(&self) -> T {
        let mut worst = T::zero();
        for row in &self.values {
            let s = row.iter().fold(T::zero(), |a, &b| a + b);
            worst = worst.max((s - T::one()).abs());
        }
        let ncols = self.values.first().map_or(0, |r| r.len());
        for j in 0..ncols {
            let s = self.values.iter().fold(T::zero(), |a, r| a + r[j]);
            worst = worst.max((s - T::one()).abs());
        }
        worst
    }

    /// Largest entrywise difference to another table of the same shape.
    pub fn max_deviation(&self, other: &Self) -> T {
        self.values
            .iter()
            .zip(&other.values)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (*x - *y).abs()))
            .fold(T::zero(), |a, b| a.max(b))
    }
}

pub(crate) fn complex_unit<T: Real>(z: Complex<T>) -> Complex<T> {
    let n = crate::scalar::cabs(z);
    z / Complex::new(n, T::zero())
}

pub(crate) fn half<T: Real>() -> T {
    lit(0.5)
}
