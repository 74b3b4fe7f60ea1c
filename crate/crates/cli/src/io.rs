//! JSON file formats.
//!
//! Matrices are stored as separate `re` and `im` row-major arrays. Floats are
//! written in shortest round-trip decimal form, so reading a file back gives
//! the same bits that were written.

use std::fs;
use std::path::Path;

use qdiv::preserver::{probe_set, ProbeImages, ProbeLabel};
use qdiv::scalar::cx;
use qdiv::{CMatrix, DensityState64, RankOneProjection, SymmetryOp64, Tolerances64};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CliError, CliResult};

/// A square complex matrix as two real arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixParts {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixParts {
    pub fn from_matrix(m: &CMatrix<f64>) -> Self {
        let dim = m.nrows();
        let rows = |part: fn(&qdiv::scalar::Cx<f64>) -> f64| {
            (0..dim).map(|i| (0..dim).map(|j| part(&m[(i, j)])).collect()).collect()
        };
        Self {
            dim,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }

    pub fn to_matrix(&self) -> Result<CMatrix<f64>, String> {
        let d = self.dim;
        if d == 0 {
            return Err("dim must be positive".into());
        }
        for (name, part) in [("re", &self.re), ("im", &self.im)] {
            if part.len() != d || part.iter().any(|r| r.len() != d) {
                return Err(format!("`{name}` must be a {d}x{d} array"));
            }
        }
        Ok(CMatrix::from_fn(d, d, |i, j| cx(self.re[i][j], self.im[i][j])))
    }
}

/// A density matrix file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    #[serde(flatten)]
    pub matrix: MatrixParts,
}

impl StateFile {
    pub fn from_state(s: &DensityState64) -> Self {
        Self {
            matrix: MatrixParts::from_matrix(s.matrix().as_matrix()),
        }
    }

    pub fn to_state(&self, tol: &Tolerances64) -> qdiv::Result<DensityState64> {
        let m = self.matrix.to_matrix().map_err(qdiv::Error::Parameter)?;
        DensityState64::new(m, tol)
    }
}

/// A unitary with its antiunitary flag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryFile {
    #[serde(flatten)]
    pub matrix: MatrixParts,
    pub antiunitary: bool,
}

impl SymmetryFile {
    pub fn from_op(op: &SymmetryOp64) -> Self {
        Self {
            matrix: MatrixParts::from_matrix(op.matrix()),
            antiunitary: op.is_antiunitary(),
        }
    }

    pub fn to_op(&self, tol: &Tolerances64) -> qdiv::Result<SymmetryOp64> {
        let m = self.matrix.to_matrix().map_err(qdiv::Error::Parameter)?;
        SymmetryOp64::new(m, self.antiunitary, tol.num)
    }
}

/// Image of one probe projection, stored as a density matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeImage {
    pub label: String,
    #[serde(flatten)]
    pub matrix: MatrixParts,
}

/// Images of the full probe set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeFile {
    pub dim: usize,
    pub images: Vec<ProbeImage>,
}

impl ProbeFile {
    pub fn from_images(images: &ProbeImages<f64>) -> qdiv::Result<Self> {
        let probes = probe_set::<f64>(images.dim)?;
        let entries = probes
            .iter()
            .zip(images.in_order())
            .map(|((label, _), p)| ProbeImage {
                label: label.to_string(),
                matrix: MatrixParts::from_matrix(p.matrix().as_matrix()),
            })
            .collect();
        Ok(Self {
            dim: images.dim,
            images: entries,
        })
    }

    /// Looks every probe up by label; order in the file does not matter.
    pub fn to_images(&self, tol: &Tolerances64) -> qdiv::Result<ProbeImages<f64>> {
        let probes = probe_set::<f64>(self.dim)?;
        let mut out = Vec::with_capacity(probes.len());
        for (label, _) in &probes {
            let name = label.to_string();
            let entry = self
                .images
                .iter()
                .find(|im| im.label == name)
                .ok_or_else(|| qdiv::Error::Parameter(format!("missing image for probe {name}")))?;
            let m = entry.matrix.to_matrix().map_err(qdiv::Error::Parameter)?;
            if m.nrows() != self.dim {
                return Err(qdiv::Error::DimensionMismatch {
                    left: self.dim,
                    right: m.nrows(),
                });
            }
            let state = DensityState64::new(m, tol)?;
            out.push((*label, RankOneProjection::from_state(&state)?));
        }
        let mut basis = Vec::new();
        let mut sums = Vec::new();
        let mut phase = None;
        for (label, p) in out {
            match label {
                ProbeLabel::Basis(_) => basis.push(p),
                ProbeLabel::Sum(_) => sums.push(p),
                ProbeLabel::Phase => phase = Some(p),
            }
        }
        Ok(ProbeImages {
            dim: self.dim,
            basis,
            sums,
            phase: phase.expect("probe set contains the phase probe"),
        })
    }
}

/// A table entry: a finite number, or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measured(pub f64);

impl Serialize for Measured {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else if self.0 == f64::INFINITY {
            s.serialize_str("inf")
        } else if self.0 == f64::NEG_INFINITY {
            s.serialize_str("-inf")
        } else {
            s.serialize_str("nan")
        }
    }
}

impl<'de> Deserialize<'de> for Measured {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Measured(x)),
            Raw::Text(t) => match t.as_str() {
                "inf" => Ok(Measured(f64::INFINITY)),
                "-inf" => Ok(Measured(f64::NEG_INFINITY)),
                "nan" => Ok(Measured(f64::NAN)),
                other => Err(serde::de::Error::custom(format!(
                    "expected a number or \"inf\", got {other:?}"
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceTable {
    pub generator: String,
    pub kind: String,
    pub labels: Vec<String>,
    pub values: Vec<Vec<Measured>>,
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(path, e))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    fs::write(path, to_json(value)).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_state(path: &Path, tol: &Tolerances64) -> CliResult<DensityState64> {
    let file: StateFile = read_json(path)?;
    file.to_state(tol)
        .map_err(|e| CliError::from_core(path.display().to_string(), e))
}
