//! Empirical checks for divergence preservers: measure how far a map is
//! from preserving a divergence, rebuild the implementing symmetry from probe
//! images, and compare the map against that symmetry on sampled states.

use rand::Rng;

use super::recover::{transition_from_bregman, transition_from_jensen, transition_from_rank_two};
use super::wigner::{probe_set, wigner_reconstruct, ProbeImages, ProbeLabel, Reconstruction};
use super::PreserverOracle;
use crate::bregman::bregman;
use crate::error::{Error, Result};
use crate::generators::{NormalizedGenerator, ZeroDerivative};
use crate::hermitian::{max_entry_distance, DensityState, RankOneProjection};
use crate::jensen::jensen;
use crate::random::{random_state, rng_from_seed};
use crate::scalar::{lit, to_f64, Real};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceKind {
    Bregman,
    Jensen,
}

impl DivergenceKind {
    pub fn name(&self) -> &'static str {
        match self {
            DivergenceKind::Bregman => "bregman",
            DivergenceKind::Jensen => "jensen",
        }
    }
}

/// Smaller eigenvalue of the rank-two reference states used to read
/// transition probabilities off Bregman values when `f'(0⁺) = -∞`.
pub const RANK_TWO_REFERENCE: f64 = 0.25;

#[derive(Debug, Clone)]
pub struct VerificationReport<T: Real> {
    pub kind: DivergenceKind,
    pub generator: String,
    pub dim: usize,
    pub sample_size: usize,
    pub seed: u64,
    /// `max |D(φA, φB) - D(A, B)|` over ordered sampled pairs; `+∞` when one
    /// side is infinite and the other is not.
    pub divergence_deviation: f64,
    pub worst_pair: Option<(usize, usize)>,
    /// Largest error of transition probabilities recovered from divergence
    /// values of probe images, against the probes' own transition probabilities.
    pub transition_deviation: f64,
    pub reconstruction: std::result::Result<Reconstruction<T>, Error>,
    /// `max |φ(A) - U A U*|` over sampled states, when a reconstruction exists.
    pub state_residual: Option<f64>,
}

impl<T: Real> VerificationReport<T> {
    /// Whether every check is within `threshold`.
    pub fn is_conjugation(&self, threshold: f64) -> bool {
        self.divergence_deviation < threshold
            && self.transition_deviation < threshold
            && self.reconstruction.is_ok()
            && self.state_residual.is_some_and(|r| r < threshold)
    }

    pub fn antiunitary(&self) -> Option<bool> {
        self.reconstruction.as_ref().ok().map(|r| r.op.is_antiunitary())
    }
}

fn divergence<T: Real>(
    f: &NormalizedGenerator<T>,
    kind: DivergenceKind,
    a: &DensityState<T>,
    b: &DensityState<T>,
    tol: &Tolerances<T>,
) -> Result<Option<f64>> {
    Ok(match kind {
        DivergenceKind::Bregman => {
            let v = bregman(f, a, b, tol)?;
            v.as_finite().map(to_f64)
        }
        DivergenceKind::Jensen => Some(to_f64(jensen(f, a, b, tol)?)),
    })
}

fn gap(a: Option<f64>, b: Option<f64>) -> f64 {
    match (a, b) {
        (Some(x), Some(y)) => (x - y).abs(),
        (None, None) => 0.0,
        _ => f64::INFINITY,
    }
}

fn query<T: Real, O: PreserverOracle<T> + ?Sized>(
    oracle: &O,
    s: &DensityState<T>,
    tol: &Tolerances<T>,
) -> Result<DensityState<T>> {
    let out = oracle.apply(s, tol).map_err(|e| match e {
        Error::Oracle(m) => Error::Oracle(m),
        other => Error::Oracle(other.to_string()),
    })?;
    if out.dim() != s.dim() {
        return Err(Error::Oracle(format!(
            "oracle returned dimension {} for input of dimension {}",
            out.dim(),
            s.dim()
        )));
    }
    Ok(out)
}

/// Runs the preserver checks for `oracle` with respect to the `kind`
/// divergence generated by `f`.
///
/// `sample_size` states of random rank are drawn from `seed`. Transition
/// probabilities are recovered from divergence values of probe images: by the
/// rank-one Jensen law, by the rank-one Bregman closed form when `f'(0⁺)` is
/// finite, and against rank-two reference states `¼ e_1 + ¾ e_i` when it is
/// `-∞`.
pub fn verify_preserver<T: Real, O: PreserverOracle<T> + ?Sized>(
    f: &NormalizedGenerator<T>,
    oracle: &O,
    kind: DivergenceKind,
    sample_size: usize,
    seed: u64,
    tol: &Tolerances<T>,
) -> Result<VerificationReport<T>> {
    let dim = oracle.dim();
    let mut rng = rng_from_seed(seed);
    let mut samples = Vec::with_capacity(sample_size);
    for _ in 0..sample_size {
        let rank = rng.random_range(1..=dim);
        samples.push(random_state(dim, rank, &mut rng, tol)?);
    }
    let images = samples
        .iter()
        .map(|s| query(oracle, s, tol))
        .collect::<Result<Vec<_>>>()?;

    let mut divergence_deviation = 0.0f64;
    let mut worst_pair = None;
    for i in 0..samples.len() {
        for j in 0..samples.len() {
            if i == j {
                continue;
            }
            let before = divergence(f, kind, &samples[i], &samples[j], tol)?;
            let after = divergence(f, kind, &images[i], &images[j], tol)?;
            let g = gap(before, after);
            if g > divergence_deviation || (g.is_nan() && worst_pair.is_none()) {
                divergence_deviation = g;
                worst_pair = Some((i, j));
            }
        }
    }

    let probes = probe_set::<T>(dim)?;
    let probe_states = probes
        .iter()
        .map(|(_, p)| p.to_state(tol))
        .collect::<Result<Vec<_>>>()?;
    let probe_images = probe_states
        .iter()
        .map(|s| query(oracle, s, tol))
        .collect::<Result<Vec<_>>>()?;

    let transition_deviation = transition_readback(f, kind, oracle, &probes, &probe_states, &probe_images, tol)?;

    let reconstruction = probe_images
        .iter()
        .map(RankOneProjection::from_state)
        .collect::<Result<Vec<_>>>()
        .and_then(|pure| {
            let mut it = pure.into_iter();
            ProbeImages::from_map(dim, |_| Ok(it.next().expect("one image per probe")))
        })
        .and_then(|imgs| wigner_reconstruct(&imgs, tol));

    let state_residual = reconstruction.as_ref().ok().map(|rec| {
        samples
            .iter()
            .zip(&images)
            .map(|(s, img)| to_f64(max_entry_distance(&rec.op.apply_matrix(s.matrix()), img.matrix())))
            .fold(0.0, f64::max)
    });

    Ok(VerificationReport {
        kind,
        generator: f.name().to_string(),
        dim,
        sample_size,
        seed,
        divergence_deviation,
        worst_pair,
        transition_deviation,
        reconstruction,
        state_residual,
    })
}

fn transition_readback<T: Real, O: PreserverOracle<T> + ?Sized>(
    f: &NormalizedGenerator<T>,
    kind: DivergenceKind,
    oracle: &O,
    probes: &[(ProbeLabel, RankOneProjection<T>)],
    probe_states: &[DensityState<T>],
    probe_images: &[DensityState<T>],
    tol: &Tolerances<T>,
) -> Result<f64> {
    let mut worst = 0.0f64;
    let mut record = |expected: T, recovered: Result<T>| {
        let d = match recovered {
            Ok(p) => (to_f64(p) - to_f64(expected)).abs(),
            Err(_) => f64::INFINITY,
        };
        worst = worst.max(d);
    };

    match (kind, f.zero_derivative()) {
        (DivergenceKind::Jensen, _) => {
            for i in 0..probes.len() {
                for j in i + 1..probes.len() {
                    let expected = probes[i].1.transition_probability(&probes[j].1)?;
                    let j_val = jensen(f, &probe_images[i], &probe_images[j], tol)?;
                    record(expected, transition_from_jensen(f, j_val, tol));
                }
            }
        }
        (DivergenceKind::Bregman, ZeroDerivative::FiniteLimit(_)) => {
            for i in 0..probes.len() {
                for j in i + 1..probes.len() {
                    let expected = probes[i].1.transition_probability(&probes[j].1)?;
                    let h = bregman(f, &probe_images[i], &probe_images[j], tol)?;
                    let rec = h
                        .as_finite()
                        .ok_or_else(|| Error::Unsupported("infinite value".into()))
                        .and_then(|h| transition_from_bregman(f, h, tol));
                    record(expected, rec);
                }
            }
        }
        (DivergenceKind::Bregman, ZeroDerivative::NegativeInfinity) => {
            let dim = oracle.dim();
            let lambda = lit::<T>(RANK_TWO_REFERENCE);
            for i in 1..dim {
                // S = λ e_1 + (1-λ) e_{i+1}, probed by the e_1 + e_{i+1} sum (and the phase probe for i = 1)
                let s = probe_states[0].mix(&probe_states[i], lambda, tol)?;
                let s_img = query(oracle, &s, tol)?;
                let mut rs = vec![dim + i - 1];
                if i == 1 {
                    rs.push(2 * dim - 1);
                }
                for r in rs {
                    let expected = probes[r].1.transition_probability(&probes[0].1)?;
                    let h = bregman(f, &probe_images[r], &s_img, tol)?;
                    let rec = h
                        .as_finite()
                        .ok_or_else(|| Error::Unsupported("infinite value".into()))
                        .and_then(|h| transition_from_rank_two(f, h, lambda));
                    record(expected, rec);
                }
            }
        }
    }
    Ok(worst)
}
