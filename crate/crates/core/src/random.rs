//! Seeded random states and unitaries.
//!
//! All sampling runs on ChaCha20 (`rand_chacha::ChaCha20Rng::seed_from_u64`)
//! with standard normals from `rand_distr::StandardNormal` and unit
//! exponentials from `rand_distr::Exp1`, so a seed pins every output.

use nalgebra::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{Error, Result};
use crate::hermitian::{DensityState, HermitianMatrix, RankOneProjection};
use crate::scalar::{lit, CMatrix, CVector, Real};
use crate::tolerance::Tolerances;

pub type SeededRng = ChaCha20Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn complex_normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(lit(re * s), lit(im * s))
}

/// Matrix with i.i.d. standard complex Gaussian entries (filled column-major).
pub fn gaussian_matrix<T: Real, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix<T> {
    let mut m = CMatrix::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m[(i, j)] = complex_normal(rng);
        }
    }
    m
}

/// Unitary from the QR factorization of a complex Gaussian matrix, with the
/// phases of `diag(R)` folded into `Q` so the law is the invariant one.
pub fn random_unitary<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix<T> {
    let g = gaussian_matrix::<T, R>(dim, dim, rng);
    let qr = g.qr();
    let (mut q, r) = qr.unpack();
    for j in 0..dim {
        let d = r[(j, j)];
        let n = crate::scalar::cabs(d);
        if n > T::zero() {
            let phase = d / Complex::new(n, T::zero());
            let mut col = q.column_mut(j);
            col *= phase;
        }
    }
    q
}

pub fn random_unit_vector<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVector<T> {
    let v = CVector::from_fn(dim, |_, _| complex_normal(rng));
    let n = v.norm();
    v.unscale(n)
}

pub fn random_pure<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> RankOneProjection<T> {
    RankOneProjection::from_unnormalized(random_unit_vector(dim, rng)).expect("gaussian vector is nonzero")
}

/// Uniform point of the open probability simplex with `k` vertices.
pub fn random_simplex<T: Real, R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<T> {
    let e: Vec<f64> = (0..k).map(|_| rng.sample::<f64, _>(Exp1)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| lit(x / s)).collect()
}

/// `V diag(w) V*` with `V` a random unitary and `w` uniform on the rank-`rank`
/// face of the simplex.
pub fn random_state<T: Real, R: Rng + ?Sized>(
    dim: usize,
    rank: usize,
    rng: &mut R,
    tol: &Tolerances<T>,
) -> Result<DensityState<T>> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::Parameter(format!(
            "need 1 <= rank <= dim, got rank {rank}, dim {dim}"
        )));
    }
    let v = random_unitary::<T, R>(dim, rng);
    let mut w = random_simplex::<T, R>(rank, rng);
    w.resize(dim, T::zero());
    let m = HermitianMatrix::diag(&w).conjugate_by(&v);
    DensityState::from_hermitian(m, tol)
}

/// Full-rank random state.
pub fn random_full_rank_state<T: Real, R: Rng + ?Sized>(
    dim: usize,
    rng: &mut R,
    tol: &Tolerances<T>,
) -> Result<DensityState<T>> {
    random_state(dim, dim, rng, tol)
}
