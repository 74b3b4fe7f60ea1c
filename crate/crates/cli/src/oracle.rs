//! Oracle specifications accepted by `verify` and `probes`.
//!
//! | Spec | Map |
//! |------|-----|
//! | `identity` | `A ↦ A` |
//! | `unitary:seed=S` | `A ↦ U A U*`, `U` random from seed `S` |
//! | `antiunitary:seed=S` | `A ↦ U Ā U*` |
//! | `transpose` | `A ↦ Aᵀ` |
//! | `depolarize[:p=P]` | `A ↦ P·A + (1-P)·I/d`, default `P = 0.5` |
//! | `dephase` | `A ↦ diag(A)` |
//! | `file:PATH` | symmetry read from a unitary file |

use std::path::Path;

use qdiv::preserver::{Dephasing, Depolarizing, PreserverOracle, Transpose};
use qdiv::random::rng_from_seed;
use qdiv::{SymmetryOp64, Tolerances64};

use crate::error::{CliError, CliResult};
use crate::io::{read_json, SymmetryFile};

pub type BoxedOracle = Box<dyn PreserverOracle<f64> + Send + Sync>;

fn param<'a>(rest: Option<&'a str>, key: &str) -> Option<&'a str> {
    rest?
        .split(',')
        .find_map(|kv| kv.trim().strip_prefix(key)?.strip_prefix('='))
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn seed_of(spec: &str, rest: Option<&str>) -> CliResult<u64> {
    let s = param(rest, "seed").ok_or_else(|| usage(format!("oracle `{spec}` needs seed=S")))?;
    s.parse()
        .map_err(|_| usage(format!("bad seed `{s}` in oracle `{spec}`")))
}

fn need_dim(spec: &str, dim: Option<usize>) -> CliResult<usize> {
    dim.ok_or_else(|| usage(format!("oracle `{spec}` needs --dim")))
}

/// Builds an oracle. `dim` is required for every spec except `file:`.
pub fn parse_oracle(spec: &str, dim: Option<usize>, tol: &Tolerances64) -> CliResult<BoxedOracle> {
    if let Some(path) = spec.strip_prefix("file:") {
        let path = Path::new(path);
        let file: SymmetryFile = read_json(path)?;
        let op = file
            .to_op(tol)
            .map_err(|e| CliError::from_core(path.display().to_string(), e))?;
        if let Some(d) = dim {
            if d != op.dim() {
                return Err(CliError::Dimension(qdiv::Error::DimensionMismatch {
                    left: d,
                    right: op.dim(),
                }));
            }
        }
        return Ok(Box::new(op));
    }
    let (name, rest) = match spec.split_once(':') {
        Some((n, r)) => (n, Some(r)),
        None => (spec, None),
    };
    let d = need_dim(spec, dim)?;
    if d == 0 {
        return Err(usage("--dim must be positive"));
    }
    Ok(match name {
        "identity" => Box::new(SymmetryOp64::identity(d, false)),
        "unitary" | "antiunitary" => {
            let seed = seed_of(spec, rest)?;
            Box::new(SymmetryOp64::random(d, name == "antiunitary", &mut rng_from_seed(seed)))
        }
        "transpose" => Box::new(Transpose { dim: d }),
        "depolarize" => {
            let keep = match param(rest, "p") {
                Some(p) => p.parse().map_err(|_| usage(format!("bad p `{p}`")))?,
                None => 0.5,
            };
            if !(0.0..=1.0).contains(&keep) {
                return Err(usage(format!("depolarizing parameter {keep} outside [0, 1]")));
            }
            Box::new(Depolarizing { dim: d, keep })
        }
        "dephase" | "diagonal" => Box::new(Dephasing { dim: d }),
        _ => return Err(usage(format!("unknown oracle `{spec}`"))),
    })
}
