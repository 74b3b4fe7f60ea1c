use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qdiv::preserver::{verify_preserver, wigner_reconstruct, DivergenceKind, ProbeImages};
use qdiv::random::{random_pure, random_state, rng_from_seed};
use qdiv::{bregman, catalog, jensen, normalize, ExtendedReal, Generator64, SymmetryOp64, Tolerances64};
use qdiv_cli::io::{
    read_json, read_state, to_json, write_json, DivergenceTable, Measured, ProbeFile, StateFile, SymmetryFile,
};
use qdiv_cli::oracle::parse_oracle;
use qdiv_cli::suite::{run_suite, SuiteConfig};
use qdiv_cli::tolerance::{tolerance_map, TolArgs};
use qdiv_cli::{CliError, CliResult};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "qdiv",
    version,
    about = "Bregman and Jensen divergences on quantum states, and their preservers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    tol: TolArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Bregman,
    Jensen,
}

impl From<Kind> for DivergenceKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Bregman => DivergenceKind::Bregman,
            Kind::Jensen => DivergenceKind::Jensen,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenKind {
    State,
    Pure,
    Unitary,
    Antiunitary,
}

#[derive(Subcommand)]
enum Command {
    /// Divergence between two state files.
    Div {
        kind: Kind,
        /// Generator: xlogx, quadratic or power:q=<rational>.
        #[arg(long = "f")]
        generator: String,
        a: PathBuf,
        b: PathBuf,
    },
    /// Seeded random state or (anti)unitary.
    Gen {
        kind: GenKind,
        #[arg(long)]
        dim: usize,
        /// Rank of a `state`; defaults to full rank.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Pairwise divergence table over state files.
    Table {
        #[arg(long)]
        kind: Kind,
        #[arg(long = "f")]
        generator: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Probe images of an oracle map, for `reconstruct`.
    Probes {
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Rebuild the unitary or antiunitary behind a probe-image file.
    Reconstruct {
        probes: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check whether an oracle map preserves a divergence.
    Verify {
        #[arg(long)]
        kind: Kind,
        #[arg(long = "f")]
        generator: String,
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest deviation still accepted as a conjugation.
        #[arg(long, default_value_t = 1e-8)]
        threshold: f64,
    },
    /// Run a property suite: closed-forms, inversion, preserver-roundtrip, convexity or purity.
    Suite {
        name: String,
        /// Comma list (`2,3,5`) or inclusive range (`2..5`).
        #[arg(long, value_parser = parse_dims)]
        dims: Option<Dims>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated generators.
        #[arg(long = "f", value_delimiter = ',')]
        generators: Option<Vec<String>>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Add wall time to the report (breaks byte-for-byte reproducibility).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Clone, Debug)]
struct Dims(Vec<usize>);

fn parse_dims(s: &str) -> Result<Dims, String> {
    let bad = || format!("cannot parse dimensions `{s}`");
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok(Dims((lo..=hi).collect()));
    }
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()
        .map(Dims)
}

fn generator(name: &str) -> CliResult<Generator64> {
    catalog(name)
        .map(|g| normalize(&g))
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn core(context: &Path) -> impl Fn(qdiv::Error) -> CliError + '_ {
    move |e| CliError::from_core(context.display().to_string(), e)
}

fn emit<T: Serialize>(value: &T, output: Option<&Path>) -> CliResult<()> {
    match output {
        Some(p) => write_json(p, value),
        None => {
            print!("{}", to_json(value));
            Ok(())
        }
    }
}

fn cmd_div(kind: Kind, gen: &str, a: &Path, b: &Path, tol: &Tolerances64) -> CliResult<()> {
    let f = generator(gen)?;
    let (x, y) = (read_state(a, tol)?, read_state(b, tol)?);
    let context = format!("{} vs {}", a.display(), b.display());
    let value = match kind {
        Kind::Bregman => bregman(&f, &x, &y, tol),
        Kind::Jensen => jensen(&f, &x, &y, tol).map(ExtendedReal::Finite),
    }
    .map_err(|e| CliError::from_core(context, e))?;
    println!("{value}");
    Ok(())
}

fn cmd_gen(kind: GenKind, dim: usize, rank: Option<usize>, seed: u64, out: &Path, tol: &Tolerances64) -> CliResult<()> {
    if dim == 0 {
        return Err(CliError::Usage("--dim must be positive".into()));
    }
    if rank.is_some() && kind != GenKind::State {
        return Err(CliError::Usage("--rank only applies to `gen state`".into()));
    }
    let mut rng = rng_from_seed(seed);
    match kind {
        GenKind::State => {
            let rank = rank.unwrap_or(dim);
            if rank == 0 || rank > dim {
                return Err(CliError::Usage(format!(
                    "need 1 <= rank <= dim, got rank {rank}, dim {dim}"
                )));
            }
            let s = random_state(dim, rank, &mut rng, tol).map_err(core(out))?;
            write_json(out, &StateFile::from_state(&s))
        }
        GenKind::Pure => {
            let s = random_pure::<f64, _>(dim, &mut rng).to_state(tol).map_err(core(out))?;
            write_json(out, &StateFile::from_state(&s))
        }
        GenKind::Unitary | GenKind::Antiunitary => {
            let op = SymmetryOp64::random(dim, kind == GenKind::Antiunitary, &mut rng);
            write_json(out, &SymmetryFile::from_op(&op))
        }
    }
}

fn cmd_table(kind: Kind, gen: &str, files: &[PathBuf], out: Option<&Path>, tol: &Tolerances64) -> CliResult<()> {
    let f = generator(gen)?;
    let states = files
        .iter()
        .map(|p| read_state(p, tol))
        .collect::<CliResult<Vec<_>>>()?;
    let n = states.len();
    let values = (0..n * n)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n, k % n);
            let (x, y) = (&states[i], &states[j]);
            let v = match kind {
                Kind::Bregman => bregman(&f, x, y, tol).map(|h| h.to_f64()),
                Kind::Jensen => jensen(&f, x, y, tol),
            };
            v.map(Measured)
                .map_err(|e| CliError::from_core(format!("{} vs {}", files[i].display(), files[j].display()), e))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let table = DivergenceTable {
        generator: f.name().to_string(),
        kind: DivergenceKind::from(kind).name().to_string(),
        labels: files.iter().map(|p| p.display().to_string()).collect(),
        values: values.chunks(n.max(1)).map(<[Measured]>::to_vec).collect(),
    };
    emit(&table, out)
}

fn cmd_probes(spec: &str, dim: Option<usize>, out: &Path, tol: &Tolerances64) -> CliResult<()> {
    let oracle = parse_oracle(spec, dim, tol)?;
    let images = ProbeImages::from_map(oracle.dim(), |p| {
        let image = oracle.apply(&p.to_state(tol)?, tol)?;
        qdiv::RankOneProjection::from_state(&image)
    })
    .map_err(|e| CliError::from_core(format!("oracle {spec}"), e))?;
    let file = ProbeFile::from_images(&images).map_err(core(out))?;
    write_json(out, &file)
}

#[derive(Serialize)]
struct ReconstructReport {
    output: String,
    dim: usize,
    antiunitary: bool,
    residual: f64,
    tolerances: std::collections::BTreeMap<&'static str, f64>,
}

fn cmd_reconstruct(probes: &Path, out: &Path, tol: &Tolerances64) -> CliResult<()> {
    let file: ProbeFile = read_json(probes)?;
    let images = file.to_images(tol).map_err(core(probes))?;
    let rec = wigner_reconstruct(&images, tol).map_err(core(probes))?;
    write_json(out, &SymmetryFile::from_op(&rec.op))?;
    emit(
        &ReconstructReport {
            output: out.display().to_string(),
            dim: images.dim,
            antiunitary: rec.op.is_antiunitary(),
            residual: rec.residual,
            tolerances: tolerance_map(tol),
        },
        None,
    )
}

#[derive(Serialize)]
struct VerifyReport {
    kind: &'static str,
    generator: String,
    oracle: String,
    dim: usize,
    samples: usize,
    seed: u64,
    threshold: f64,
    tolerances: std::collections::BTreeMap<&'static str, f64>,
    divergence_deviation: Measured,
    worst_pair: Option<(usize, usize)>,
    transition_deviation: Measured,
    antiunitary: Option<bool>,
    reconstruction_residual: Option<f64>,
    reconstruction_error: Option<String>,
    state_residual: Option<f64>,
    conjugation: bool,
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    kind: Kind,
    gen: &str,
    spec: &str,
    dim: Option<usize>,
    samples: usize,
    seed: u64,
    threshold: f64,
    tol: &Tolerances64,
) -> CliResult<()> {
    let f = generator(gen)?;
    let oracle = parse_oracle(spec, dim, tol)?;
    let r = verify_preserver(&f, oracle.as_ref(), kind.into(), samples, seed, tol)
        .map_err(|e| CliError::from_core(format!("oracle {spec}"), e))?;
    let conjugation = r.is_conjugation(threshold);
    let report = VerifyReport {
        kind: r.kind.name(),
        generator: r.generator.clone(),
        oracle: spec.to_string(),
        dim: r.dim,
        samples,
        seed,
        threshold,
        tolerances: tolerance_map(tol),
        divergence_deviation: Measured(r.divergence_deviation),
        worst_pair: r.worst_pair,
        transition_deviation: Measured(r.transition_deviation),
        antiunitary: r.antiunitary(),
        reconstruction_residual: r.reconstruction.as_ref().ok().map(|x| x.residual),
        reconstruction_error: r.reconstruction.as_ref().err().map(|e| e.to_string()),
        state_residual: r.state_residual,
        conjugation,
    };
    emit(&report, None)?;
    if conjugation {
        Ok(())
    } else {
        Err(CliError::ChecksFailed(format!(
            "`{spec}` is not a conjugation within {threshold:e}"
        )))
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let tol = cli.tol.resolve();
    match cli.command {
        Command::Div { kind, generator, a, b } => cmd_div(kind, &generator, &a, &b, &tol),
        Command::Gen {
            kind,
            dim,
            rank,
            seed,
            output,
        } => cmd_gen(kind, dim, rank, seed, &output, &tol),
        Command::Table {
            kind,
            generator,
            output,
            files,
        } => cmd_table(kind, &generator, &files, output.as_deref(), &tol),
        Command::Probes { oracle, dim, output } => cmd_probes(&oracle, dim, &output, &tol),
        Command::Reconstruct { probes, output } => cmd_reconstruct(&probes, &output, &tol),
        Command::Verify {
            kind,
            generator,
            oracle,
            dim,
            samples,
            seed,
            threshold,
        } => cmd_verify(kind, &generator, &oracle, dim, samples, seed, threshold, &tol),
        Command::Suite {
            name,
            dims,
            seed,
            generators,
            samples,
            output,
            timing,
        } => {
            let started = Instant::now();
            let cfg = SuiteConfig {
                seed,
                dims: dims.map(|d| d.0),
                generators,
                samples,
            };
            let command = std::iter::once("qdiv".to_string())
                .chain(std::env::args().skip(1))
                .collect();
            let mut report = run_suite(&name, &cfg, &tol, command)?;
            if timing {
                report.wall_time_ms = Some(started.elapsed().as_millis());
            }
            emit(&report, output.as_deref())?;
            let failed: Vec<_> = report.failures().map(|c| c.name.clone()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::ChecksFailed(format!("failed checks: {}", failed.join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qdiv: error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
