//! Constructive Wigner reconstruction from probe images.
//!
//! Probe set for dimension `d ≥ 2`: the basis projections `|e_i⟩⟨e_i|`, the
//! projections onto `(e_1 + e_i)/√2` for `i = 2..d`, and the projection onto
//! `(e_1 + i·e_2)/√2`. The basis images fix the columns of `U` up to phase,
//! the sum probes align those phases with the first column, and the last
//! probe decides between unitary and antiunitary.

use std::fmt;

use nalgebra::Complex;

use super::{complex_unit, SymmetryOp};
use crate::error::{Error, Result};
use crate::hermitian::{max_entry_distance, RankOneProjection};
use crate::scalar::{cabs, lit, to_f64, CMatrix, CVector, Real};
use crate::tolerance::Tolerances;

/// Name of a probe projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeLabel {
    /// `|e_i⟩⟨e_i|` (zero-based `i`).
    Basis(usize),
    /// `(e_1 + e_i)/√2` (zero-based `i ≥ 1`).
    Sum(usize),
    /// `(e_1 + i·e_2)/√2`.
    Phase,
}

impl fmt::Display for ProbeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeLabel::Basis(i) => write!(f, "e{}", i + 1),
            ProbeLabel::Sum(i) => write!(f, "e1+e{}", i + 1),
            ProbeLabel::Phase => f.write_str("e1+ie2"),
        }
    }
}

/// The `2d` probe projections in canonical order: basis, sums, phase.
pub fn probe_set<T: Real>(dim: usize) -> Result<Vec<(ProbeLabel, RankOneProjection<T>)>> {
    if dim < 2 {
        return Err(Error::Degenerate("reconstruction needs dimension at least 2".into()));
    }
    let one = Complex::new(T::one(), T::zero());
    let mut probes: Vec<_> = (0..dim)
        .map(|i| (ProbeLabel::Basis(i), RankOneProjection::basis(dim, i)))
        .collect();
    for i in 1..dim {
        let mut v = CVector::zeros(dim);
        v[0] = one;
        v[i] = one;
        probes.push((ProbeLabel::Sum(i), RankOneProjection::from_unnormalized(v)?));
    }
    let mut v = CVector::zeros(dim);
    v[0] = one;
    v[1] = Complex::new(T::zero(), T::one());
    probes.push((ProbeLabel::Phase, RankOneProjection::from_unnormalized(v)?));
    Ok(probes)
}

/// Images of the probe set under a map on pure states.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbeImages<T: Real> {
    pub dim: usize,
    /// Images of `|e_i⟩⟨e_i|`, `i = 1..d`.
    pub basis: Vec<RankOneProjection<T>>,
    /// Images of `(e_1 + e_i)/√2`, `i = 2..d`.
    pub sums: Vec<RankOneProjection<T>>,
    /// Image of `(e_1 + i·e_2)/√2`.
    pub phase: RankOneProjection<T>,
}

impl<T: Real> ProbeImages<T> {
    /// Evaluates `map` on every probe.
    pub fn from_map<F>(dim: usize, mut map: F) -> Result<Self>
    where
        F: FnMut(&RankOneProjection<T>) -> Result<RankOneProjection<T>>,
    {
        let probes = probe_set::<T>(dim)?;
        let mut images = probes.iter().map(|(_, p)| map(p)).collect::<Result<Vec<_>>>()?;
        let phase = images.pop().expect("probe set is nonempty");
        let sums = images.split_off(dim);
        let out = Self {
            dim,
            basis: images,
            sums,
            phase,
        };
        out.check_dims()?;
        Ok(out)
    }

    /// Images in the order of [`probe_set`].
    pub fn in_order(&self) -> Vec<&RankOneProjection<T>> {
        self.basis
            .iter()
            .chain(&self.sums)
            .chain(std::iter::once(&self.phase))
            .collect()
    }

    fn check_dims(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::Degenerate("reconstruction needs dimension at least 2".into()));
        }
        if self.basis.len() != self.dim || self.sums.len() != self.dim - 1 {
            return Err(Error::Parameter(format!(
                "expected {} basis and {} sum images, got {} and {}",
                self.dim,
                self.dim - 1,
                self.basis.len(),
                self.sums.len()
            )));
        }
        for p in self.in_order() {
            if p.dim() != self.dim {
                return Err(Error::DimensionMismatch {
                    left: self.dim,
                    right: p.dim(),
                });
            }
        }
        Ok(())
    }
}

/// A reconstructed symmetry and its worst residual on the probe set.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction<T: Real> {
    pub op: SymmetryOp<T>,
    /// Max-entry distance between `U R U*` and the supplied image, over probes.
    pub residual: T,
}

/// Coefficient of `w` along `u` relative to `v`: `⟨u, w⟩ / ⟨v, w⟩`.
fn relative_coefficient<T: Real>(u: &CVector<T>, v: &CVector<T>, w: &CVector<T>, what: &str) -> Result<Complex<T>> {
    let a = v.dotc(w);
    let b = u.dotc(w);
    let floor = lit::<T>(1e-3);
    if cabs(a) < floor || cabs(b) < floor {
        return Err(Error::Degenerate(format!(
            "image of probe {what} is (nearly) orthogonal to a basis image"
        )));
    }
    Ok(b / a)
}

/// Rebuilds the unitary or antiunitary operator implementing a
/// transition-probability-preserving map from its probe images.
///
/// The returned matrix has `⟨e_1, U e_1⟩` real and nonnegative.
pub fn wigner_reconstruct<T: Real>(images: &ProbeImages<T>, tol: &Tolerances<T>) -> Result<Reconstruction<T>> {
    images.check_dims()?;
    let dim = images.dim;
    let probes = probe_set::<T>(dim)?;
    let outs = images.in_order();

    for (i, (li, pi)) in probes.iter().enumerate() {
        for (j, (lj, pj)) in probes.iter().enumerate().skip(i + 1) {
            let expected = pi.transition_probability(pj)?;
            let found = outs[i].transition_probability(outs[j])?;
            if (expected - found).abs() > tol.wigner {
                return Err(Error::NotAPreserver {
                    first: li.to_string(),
                    second: lj.to_string(),
                    expected: to_f64(expected),
                    found: to_f64(found),
                });
            }
        }
    }

    let psi1 = images.basis[0].vector().clone();
    let mut u = CMatrix::zeros(dim, dim);
    u.set_column(0, &psi1);
    for i in 1..dim {
        let raw = images.basis[i].vector();
        let label = ProbeLabel::Sum(i).to_string();
        let r = relative_coefficient(raw, &psi1, images.sums[i - 1].vector(), &label)?;
        u.set_column(i, &(raw * complex_unit(r)));
    }

    let psi2 = u.column(1).into_owned();
    let gamma = relative_coefficient(&psi2, &psi1, images.phase.vector(), "e1+ie2")?;
    // γ ≈ +i for a unitary, -i for an antiunitary
    let antiunitary = gamma.im < T::zero();

    let u00 = u[(0, 0)];
    if cabs(u00) > tol.num {
        let g = complex_unit(u00).conj();
        u *= g;
    }

    let op = SymmetryOp { matrix: u, antiunitary };
    let mut residual = T::zero();
    let mut worst = ProbeLabel::Basis(0);
    for ((label, p), image) in probes.iter().zip(&outs) {
        let mapped = op.apply_matrix(&p.matrix());
        let r = max_entry_distance(&mapped, &image.matrix());
        if r > residual {
            residual = r;
            worst = *label;
        }
    }
    if residual > tol.reconstruct {
        return Err(Error::Degenerate(format!(
            "reconstructed operator misses probe {worst} by {:e}",
            to_f64(residual)
        )));
    }
    Ok(Reconstruction { op, residual })
}
