//! Seeded property suites and their machine-readable reports.
//!
//! Every suite draws all of its randomness from one ChaCha20 stream seeded
//! with the run seed, and reports contain no timing unless asked for, so
//! the same command line always prints the same bytes.

use std::collections::BTreeMap;
use std::fmt;

use qdiv::preserver::{
    is_pure_by_max, recover_rank_two_spectrum, transition_from_bregman, transition_from_jensen,
    transition_from_rank_two, verify_preserver, wigner_reconstruct, Dephasing, Depolarizing, DivergenceKind,
    PreserverOracle, ProbeImages, SearchBudget,
};
use qdiv::random::{random_pure, random_state, random_unitary, rng_from_seed, SeededRng};
use qdiv::scalar::{max_abs, trace_product_re};
use qdiv::{
    apply_function, bregman, catalog, jensen, jensen_max_constant, jensen_rank_one, jensen_via_bregman, normalize,
    DensityState64, Domain, Generator64, HermitianMatrix, RankOneProjection, SymmetryOp64, Tolerances64,
};
use rand::Rng;
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::io::Measured;
use crate::tolerance::tolerance_map;

pub const SUITES: [&str; 5] = [
    "closed-forms",
    "inversion",
    "preserver-roundtrip",
    "convexity",
    "purity",
];

#[derive(Debug, Clone, Default)]
pub struct SuiteConfig {
    pub seed: u64,
    pub dims: Option<Vec<usize>>,
    pub generators: Option<Vec<String>>,
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    /// Passes when the largest measured value is at most the threshold.
    AtMost,
    /// Passes when the smallest measured value exceeds the threshold.
    Above,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub samples: usize,
    pub bound: Bound,
    pub measured: Measured,
    pub threshold: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub suite: String,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub generators: Vec<String>,
    pub samples: usize,
    pub tolerances: BTreeMap<&'static str, f64>,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl RunReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Tracker {
    name: String,
    bound: Bound,
    threshold: f64,
    extreme: Option<f64>,
    samples: usize,
    error: Option<String>,
    note: Option<String>,
}

impl Tracker {
    fn new(name: impl Into<String>, bound: Bound, threshold: f64) -> Self {
        Self {
            name: name.into(),
            bound,
            threshold,
            extreme: None,
            samples: 0,
            error: None,
            note: None,
        }
    }

    fn observe(&mut self, v: f64) {
        self.samples += 1;
        if v.is_nan() {
            self.fail("measured NaN");
            return;
        }
        self.extreme = Some(match (self.extreme, self.bound) {
            (None, _) => v,
            (Some(e), Bound::AtMost) => e.max(v),
            (Some(e), Bound::Above) => e.min(v),
        });
    }

    fn record(&mut self, r: qdiv::Result<f64>) {
        match r {
            Ok(v) => self.observe(v),
            Err(e) => {
                self.samples += 1;
                self.fail(e);
            }
        }
    }

    fn fail(&mut self, e: impl fmt::Display) {
        if self.error.is_none() {
            self.error = Some(e.to_string());
        }
    }

    fn finish(self) -> Check {
        let measured = self.extreme.unwrap_or(f64::NAN);
        let within = match self.bound {
            Bound::AtMost => measured <= self.threshold,
            Bound::Above => measured > self.threshold,
        };
        let passed = within && self.error.is_none() && self.samples > 0;
        let note = match (self.error, self.note) {
            (Some(e), _) => Some(e),
            (None, n) => n,
        };
        Check {
            name: self.name,
            samples: self.samples,
            bound: self.bound,
            measured: Measured(measured),
            threshold: self.threshold,
            passed,
            note,
        }
    }
}

fn gens(names: &[String]) -> CliResult<Vec<(String, Generator64)>> {
    names
        .iter()
        .map(|n| {
            catalog::<f64>(n)
                .map(|g| (n.clone(), normalize(&g)))
                .map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect()
}

fn any_state(dim: usize, rng: &mut SeededRng, tol: &Tolerances64) -> qdiv::Result<DensityState64> {
    let rank = rng.random_range(1..=dim);
    random_state(dim, rank, rng, tol)
}

fn pick_dim(dims: &[usize], rng: &mut SeededRng) -> usize {
    dims[rng.random_range(0..dims.len())]
}

fn finite(f: &Generator64, x: &DensityState64, y: &DensityState64, tol: &Tolerances64) -> qdiv::Result<f64> {
    bregman(f, x, y, tol)?
        .as_finite()
        .ok_or_else(|| qdiv::Error::Precondition("divergence is infinite".into()))
}

/// `tr A(log A - log B)` from operator logarithms of the two matrices.
pub fn umegaki_reference(a: &DensityState64, b: &DensityState64, tol: &Tolerances64) -> qdiv::Result<f64> {
    let log = |m: &HermitianMatrix<f64>| apply_function(m, f64::ln, Domain::Positive, tol.cluster);
    let diff = log(a.matrix())?.sub(&log(b.matrix())?);
    Ok(trace_product_re(a.matrix().as_matrix(), diff.as_matrix()))
}

fn hs_squared(a: &DensityState64, b: &DensityState64) -> f64 {
    let d = a.matrix().sub(b.matrix());
    trace_product_re(d.as_matrix(), d.as_matrix())
}

fn closed_forms(cfg: &Resolved, rng: &mut SeededRng, tol: &Tolerances64) -> CliResult<Vec<Check>> {
    let fs = gens(&cfg.generators)?;
    let quad = normalize(&catalog::<f64>("quadratic").expect("catalog generator"));
    let xlogx = normalize(&catalog::<f64>("xlogx").expect("catalog generator"));
    let mut hs_b = Tracker::new("bregman-quadratic-hilbert-schmidt", Bound::AtMost, 1e-10);
    let mut hs_j = Tracker::new("jensen-quadratic-hilbert-schmidt", Bound::AtMost, 1e-10);
    let mut ume = Tracker::new("umegaki-operator-log", Bound::AtMost, 1e-8);
    let mut ume_inf = Tracker::new("umegaki-infinite-off-support", Bound::AtMost, 0.0);
    let mut ident: Vec<_> = fs
        .iter()
        .map(|(n, _)| Tracker::new(format!("jensen-via-bregman {n}"), Bound::AtMost, 1e-8))
        .collect();
    let mut law: Vec<_> = fs
        .iter()
        .map(|(n, _)| Tracker::new(format!("jensen-rank-one-law {n}"), Bound::AtMost, 1e-8))
        .collect();
    let mut max: Vec<_> = fs
        .iter()
        .map(|(n, _)| Tracker::new(format!("jensen-maximum-orthogonal {n}"), Bound::AtMost, 1e-10))
        .collect();

    for &d in &cfg.dims {
        for _ in 0..cfg.samples {
            let a = any_state(d, rng, tol).map_err(|e| CliError::from_core("sampling", e))?;
            let b = any_state(d, rng, tol).map_err(|e| CliError::from_core("sampling", e))?;
            let hs = hs_squared(&a, &b);
            hs_b.record(finite(&quad, &a, &b, tol).map(|h| (h - hs).abs()));
            hs_j.record(jensen(&quad, &a, &b, tol).map(|j| (j - hs / 4.0).abs()));
            for ((_, f), t) in fs.iter().zip(&mut ident) {
                t.record(
                    jensen(f, &a, &b, tol).and_then(|j| jensen_via_bregman(f, &a, &b, tol).map(|v| (j - v).abs())),
                );
            }

            let a = random_state(d, d, rng, tol).map_err(|e| CliError::from_core("sampling", e))?;
            let b = random_state(d, d, rng, tol).map_err(|e| CliError::from_core("sampling", e))?;
            ume.record(finite(&xlogx, &a, &b, tol).and_then(|h| umegaki_reference(&a, &b, tol).map(|r| (h - r).abs())));

            let rank = rng.random_range(1..d);
            let b = random_state(d, rank, rng, tol).map_err(|e| CliError::from_core("sampling", e))?;
            let outside = 1.0 - trace_product_re(b.support().as_matrix(), a.matrix().as_matrix());
            if outside > 1e-6 {
                ume_inf.record(bregman(&xlogx, &a, &b, tol).map(|h| if h.is_infinite() { 0.0 } else { 1.0 }));
            }

            let p = random_pure::<f64, _>(d, rng);
            let q = random_pure::<f64, _>(d, rng);
            let ps = p.to_state(tol).map_err(|e| CliError::from_core("sampling", e))?;
            let qs = q.to_state(tol).map_err(|e| CliError::from_core("sampling", e))?;
            let pq = p
                .transition_probability(&q)
                .map_err(|e| CliError::from_core("sampling", e))?;
            for ((_, f), t) in fs.iter().zip(&mut law) {
                t.record(jensen(f, &ps, &qs, tol).and_then(|j| jensen_rank_one(f, pq, tol).map(|c| (j - c).abs())));
            }
        }
        let u = random_unitary::<f64, _>(d, rng);
        let e0 = RankOneProjection::from_unnormalized(u.column(0).into_owned());
        let e1 = RankOneProjection::from_unnormalized(u.column(1).into_owned());
        for ((_, f), t) in fs.iter().zip(&mut max) {
            let r = e0.clone().and_then(|p| {
                let q = e1.clone()?;
                let j = jensen(f, &p.to_state(tol)?, &q.to_state(tol)?, tol)?;
                Ok((j - jensen_max_constant(f)).abs())
            });
            t.record(r);
        }
    }
    if ume_inf.samples == 0 {
        ume_inf.note = Some("no rank-deficient sample left mass outside the support".into());
    }
    let mut out = vec![hs_b.finish(), hs_j.finish(), ume.finish(), ume_inf.finish()];
    out.extend(ident.into_iter().map(Tracker::finish));
    out.extend(law.into_iter().map(Tracker::finish));
    out.extend(max.into_iter().map(Tracker::finish));
    Ok(out)
}

fn orthogonal_pair(d: usize, rng: &mut SeededRng) -> qdiv::Result<(RankOneProjection<f64>, RankOneProjection<f64>)> {
    let u = random_unitary::<f64, _>(d, rng);
    Ok((
        RankOneProjection::from_unnormalized(u.column(0).into_owned())?,
        RankOneProjection::from_unnormalized(u.column(1).into_owned())?,
    ))
}

fn rank_two(
    p: &RankOneProjection<f64>,
    q: &RankOneProjection<f64>,
    lambda: f64,
    tol: &Tolerances64,
) -> qdiv::Result<DensityState64> {
    DensityState64::from_hermitian(p.matrix().scale(lambda).add(&q.matrix().scale(1.0 - lambda)), tol)
}

fn inversion(cfg: &Resolved, rng: &mut SeededRng, tol: &Tolerances64) -> CliResult<Vec<Check>> {
    let fs = gens(&cfg.generators)?;
    let mut from_b = Vec::new();
    let mut from_j = Vec::new();
    let mut spectrum = Vec::new();
    for (name, f) in &fs {
        if f.derivative_span().is_some() {
            from_b.push(Tracker::new(
                format!("transition-from-bregman {name}"),
                Bound::AtMost,
                1e-8,
            ));
        } else {
            from_b.push(Tracker::new(
                format!("transition-from-rank-two-bregman {name}"),
                Bound::AtMost,
                1e-8,
            ));
        }
        from_j.push(Tracker::new(
            format!("transition-from-jensen {name}"),
            Bound::AtMost,
            1e-6,
        ));
        spectrum.push(Tracker::new(format!("rank-two-spectrum {name}"), Bound::AtMost, 1e-8));
    }
    for _ in 0..cfg.samples {
        let d = pick_dim(&cfg.dims, rng);
        let p = random_pure::<f64, _>(d, rng);
        let q = random_pure::<f64, _>(d, rng);
        let (e, e2) = orthogonal_pair(d, rng).map_err(|e| CliError::from_core("sampling", e))?;
        let lambda = rng.random_range(0.01..0.49);
        let s = rank_two(&e, &e2, lambda, tol).map_err(|e| CliError::from_core("sampling", e))?;
        let c: f64 = rng.random();
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let r = RankOneProjection::from_unnormalized(
            e.vector() * qdiv::scalar::cx(c.sqrt(), 0.0)
                + e2.vector() * qdiv::scalar::Cx::from_polar((1.0 - c).sqrt(), theta),
        )
        .map_err(|e| CliError::from_core("sampling", e))?;
        let ps = p.to_state(tol).map_err(|e| CliError::from_core("sampling", e))?;
        let qs = q.to_state(tol).map_err(|e| CliError::from_core("sampling", e))?;
        let pq = p
            .transition_probability(&q)
            .map_err(|e| CliError::from_core("sampling", e))?;
        for (i, (_, f)) in fs.iter().enumerate() {
            if f.derivative_span().is_some() {
                from_b[i].record(
                    finite(f, &ps, &qs, tol)
                        .and_then(|h| transition_from_bregman(f, h, tol))
                        .map(|x| (x - pq).abs()),
                );
            } else {
                let rp = r.transition_probability(&e).expect("same dimension");
                from_b[i].record(
                    r.to_state(tol)
                        .and_then(|rs| finite(f, &rs, &s, tol))
                        .and_then(|h| transition_from_rank_two(f, h, lambda))
                        .map(|x| (x - rp).abs()),
                );
            }
            from_j[i].record(
                jensen(f, &ps, &qs, tol)
                    .and_then(|j| transition_from_jensen(f, j, tol))
                    .map(|x| (x - pq).abs()),
            );
            let spread = e
                .to_state(tol)
                .and_then(|es| finite(f, &es, &s, tol))
                .and_then(|hp| Ok(hp - finite(f, &e2.to_state(tol)?, &s, tol)?));
            spectrum[i].record(
                spread
                    .and_then(|delta| recover_rank_two_spectrum(f, delta, tol))
                    .map(|l| (l - lambda).abs()),
            );
        }
    }
    Ok(from_b
        .into_iter()
        .chain(from_j)
        .chain(spectrum)
        .map(Tracker::finish)
        .collect())
}

fn verification_error(r: &qdiv::preserver::VerificationReport<f64>) -> f64 {
    let rec = r.reconstruction.as_ref().map_or(f64::INFINITY, |x| x.residual);
    r.divergence_deviation
        .max(r.transition_deviation)
        .max(rec)
        .max(r.state_residual.unwrap_or(f64::INFINITY))
}

fn preserver_roundtrip(cfg: &Resolved, rng: &mut SeededRng, tol: &Tolerances64) -> CliResult<Vec<Check>> {
    let fs = gens(&cfg.generators)?;
    let verify_samples = 6;
    let mut checks = Vec::new();
    for &d in &cfg.dims {
        for anti in [false, true] {
            let label = if anti { "antiunitary" } else { "unitary" };
            let mut wig = Tracker::new(format!("wigner-roundtrip {label} d={d}"), Bound::AtMost, 1e-8);
            let mut ver = Tracker::new(format!("verify-conjugation {label} d={d}"), Bound::AtMost, 1e-8);
            for i in 0..cfg.samples {
                let op = SymmetryOp64::random(d, anti, rng);
                let rec =
                    ProbeImages::from_map(d, |p| op.apply_projection(p)).and_then(|im| wigner_reconstruct(&im, tol));
                match rec {
                    Ok(rec) if rec.op.is_antiunitary() != anti => wig.fail("wrong antiunitary flag"),
                    Ok(rec) => {
                        let mut dist = rec.residual;
                        for _ in 0..4 {
                            let s = any_state(d, rng, tol).map_err(|e| CliError::from_core("sampling", e))?;
                            dist = dist.max(max_abs(
                                rec.op
                                    .apply_matrix(s.matrix())
                                    .sub(&op.apply_matrix(s.matrix()))
                                    .as_matrix(),
                            ));
                        }
                        wig.observe(dist);
                    }
                    Err(e) => {
                        wig.samples += 1;
                        wig.fail(e);
                    }
                }
                let (_, f) = &fs[i % fs.len()];
                let kind = if i % 2 == 0 {
                    DivergenceKind::Bregman
                } else {
                    DivergenceKind::Jensen
                };
                let seed = rng.random();
                match verify_preserver(f, &op, kind, verify_samples, seed, tol) {
                    Ok(r) if r.antiunitary() != Some(anti) => {
                        ver.samples += 1;
                        ver.fail(format!("wrong antiunitary flag with {} {}", kind.name(), f.name()));
                    }
                    Ok(r) => ver.observe(verification_error(&r)),
                    Err(e) => {
                        ver.samples += 1;
                        ver.fail(e);
                    }
                }
            }
            checks.push(wig.finish());
            checks.push(ver.finish());
        }
    }
    let mut depol = Tracker::new("non-conjugation depolarizing", Bound::Above, 1e-3);
    let mut dephase = Tracker::new("non-conjugation dephasing", Bound::Above, 1e-3);
    for i in 0..cfg.samples {
        let d = pick_dim(&cfg.dims, rng);
        let (_, f) = &fs[i % fs.len()];
        let kind = if i % 2 == 0 {
            DivergenceKind::Jensen
        } else {
            DivergenceKind::Bregman
        };
        let keep = rng.random_range(0.1..0.9);
        let oracles: [(&mut Tracker, Box<dyn PreserverOracle<f64>>); 2] = [
            (&mut depol, Box::new(Depolarizing { dim: d, keep })),
            (&mut dephase, Box::new(Dephasing { dim: d })),
        ];
        for (t, o) in oracles {
            let seed = rng.random();
            t.record(verify_preserver(f, o.as_ref(), kind, verify_samples, seed, tol).map(|r| r.divergence_deviation));
        }
    }
    checks.push(depol.finish());
    checks.push(dephase.finish());
    Ok(checks)
}

fn convexity(cfg: &Resolved, rng: &mut SeededRng, tol: &Tolerances64) -> CliResult<Vec<Check>> {
    let fs = gens(&cfg.generators)?;
    let mut strict: Vec<_> = fs
        .iter()
        .map(|(n, _)| Tracker::new(format!("strict-convexity-first-argument {n}"), Bound::Above, 0.0))
        .collect();
    let mut joint: Vec<_> = fs
        .iter()
        .map(|(n, f)| {
            f.matrix_entropy_member()
                .then(|| Tracker::new(format!("joint-convexity {n}"), Bound::AtMost, 1e-9))
        })
        .collect();
    let mut rel_floor = vec![f64::INFINITY; fs.len()];
    let sample = |rng: &mut SeededRng, d: usize| -> CliResult<DensityState64> {
        random_state(d, d, rng, tol).map_err(|e| CliError::from_core("sampling", e))
    };
    for _ in 0..cfg.samples {
        let d = pick_dim(&cfg.dims, rng);
        let (a, b, dd) = (sample(rng, d)?, sample(rng, d)?, sample(rng, d)?);
        let (a2, b2) = (sample(rng, d)?, sample(rng, d)?);
        let w = rng.random_range(0.05..0.95);
        let mab = a.mix(&b, w, tol).map_err(|e| CliError::from_core("sampling", e))?;
        let mb = b.mix(&b2, w, tol).map_err(|e| CliError::from_core("sampling", e))?;
        let ma = a.mix(&a2, w, tol).map_err(|e| CliError::from_core("sampling", e))?;
        for (i, (_, f)) in fs.iter().enumerate() {
            let gap = (|| -> qdiv::Result<(f64, f64)> {
                let lhs = finite(f, &mab, &dd, tol)?;
                let rhs = w * finite(f, &a, &dd, tol)? + (1.0 - w) * finite(f, &b, &dd, tol)?;
                Ok((rhs - lhs, rhs))
            })();
            if let Ok((g, rhs)) = gap {
                if rhs > 0.0 {
                    rel_floor[i] = rel_floor[i].min(g / rhs);
                }
            }
            strict[i].record(gap.map(|(g, _)| g));
            if let Some(t) = joint[i].as_mut() {
                t.record((|| {
                    let lhs = finite(f, &ma, &mb, tol)?;
                    let rhs = w * finite(f, &a, &b, tol)? + (1.0 - w) * finite(f, &a2, &b2, tol)?;
                    Ok(lhs - rhs)
                })());
            }
        }
    }
    let mut out = Vec::new();
    for ((mut s, j), floor) in strict.into_iter().zip(joint).zip(rel_floor) {
        s.note = Some(format!("smallest relative gap {floor:.3e}"));
        out.push(s.finish());
        if let Some(j) = j {
            out.push(j.finish());
        }
    }
    Ok(out)
}

fn purity(cfg: &Resolved, rng: &mut SeededRng, tol: &Tolerances64) -> CliResult<Vec<Check>> {
    let fs = gens(&cfg.generators)?;
    let mut out = Vec::new();
    for (name, f) in &fs {
        let Some(reference) = f.derivative_span() else {
            return Err(CliError::Usage(format!(
                "purity needs a generator with finite f'(0+), `{name}` has f'(0+) = -inf"
            )));
        };
        for &d in &cfg.dims {
            let mut t = Tracker::new(format!("purity-misclassified {name} d={d}"), Bound::AtMost, 0.0);
            let mut pure_gap = 0.0f64;
            let mut mixed_gap = f64::INFINITY;
            let mut errors = 0usize;
            let mut wrong = 0usize;
            for i in 0..2 * cfg.samples {
                let want_pure = i < cfg.samples;
                let x = if want_pure {
                    random_pure::<f64, _>(d, rng).to_state(tol)
                } else {
                    loop {
                        let s = random_state(d, rng.random_range(1..=d), rng, tol);
                        match s {
                            Ok(s) if s.spectral().eigenvalues()[0] > 0.9 => continue,
                            other => break other,
                        }
                    }
                }
                .map_err(|e| CliError::from_core("sampling", e))?;
                let budget = SearchBudget {
                    seed: rng.random(),
                    ..SearchBudget::default()
                };
                match is_pure_by_max(f, &x, reference, &budget, tol) {
                    Ok(c) => {
                        if c.pure != want_pure {
                            wrong += 1;
                        }
                        if want_pure {
                            pure_gap = pure_gap.max(c.gap.abs());
                        } else {
                            mixed_gap = mixed_gap.min(c.gap);
                        }
                    }
                    Err(e) => {
                        errors += 1;
                        t.fail(e);
                    }
                }
            }
            t.observe(wrong as f64);
            t.samples = 2 * cfg.samples;
            t.note = Some(format!(
                "largest pure gap {pure_gap:.3e}, smallest mixed gap {mixed_gap:.3e}, errors {errors}"
            ));
            out.push(t.finish());
        }
    }
    Ok(out)
}

struct Resolved {
    dims: Vec<usize>,
    generators: Vec<String>,
    samples: usize,
}

fn defaults(suite: &str) -> Option<(Vec<usize>, &'static [&'static str], usize)> {
    Some(match suite {
        "closed-forms" => ((2..=8).collect(), &["xlogx", "power:q=1.5", "quadratic"], 200),
        "inversion" => ((2..=6).collect(), &["xlogx", "quadratic", "power:q=1.5"], 500),
        "preserver-roundtrip" => ((2..=5).collect(), &["xlogx", "quadratic", "power:q=1.5"], 20),
        "convexity" => (
            (2..=5).collect(),
            &["xlogx", "quadratic", "power:q=1.5", "power:q=3"],
            500,
        ),
        "purity" => (vec![2, 3], &["quadratic", "power:q=1.5"], 50),
        _ => return None,
    })
}

/// Runs `suite`. `command` is echoed into the report verbatim.
pub fn run_suite(suite: &str, cfg: &SuiteConfig, tol: &Tolerances64, command: Vec<String>) -> CliResult<RunReport> {
    let (dims, generators, samples) = defaults(suite)
        .ok_or_else(|| CliError::Usage(format!("unknown suite `{suite}` (known: {})", SUITES.join(", "))))?;
    let resolved = Resolved {
        dims: cfg.dims.clone().unwrap_or(dims),
        generators: cfg
            .generators
            .clone()
            .unwrap_or_else(|| generators.iter().map(|s| s.to_string()).collect()),
        samples: cfg.samples.unwrap_or(samples),
    };
    if resolved.dims.is_empty() || resolved.dims.iter().any(|&d| d < 2) {
        return Err(CliError::Usage("suite dimensions must be at least 2".into()));
    }
    if resolved.generators.is_empty() {
        return Err(CliError::Usage("at least one generator is required".into()));
    }
    let mut rng = rng_from_seed(cfg.seed);
    let checks = match suite {
        "closed-forms" => closed_forms(&resolved, &mut rng, tol)?,
        "inversion" => inversion(&resolved, &mut rng, tol)?,
        "preserver-roundtrip" => preserver_roundtrip(&resolved, &mut rng, tol)?,
        "convexity" => convexity(&resolved, &mut rng, tol)?,
        "purity" => purity(&resolved, &mut rng, tol)?,
        _ => unreachable!("suite names validated above"),
    };
    let passed = checks.iter().all(|c| c.passed);
    Ok(RunReport {
        command,
        suite: suite.to_string(),
        seed: cfg.seed,
        dims: resolved.dims,
        generators: resolved.generators,
        samples: resolved.samples,
        tolerances: tolerance_map(tol),
        checks,
        passed,
        wall_time_ms: None,
    })
}
