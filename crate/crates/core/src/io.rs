//! JSON instance files.
//!
//! A matrix is `{"rows": m, "cols": n, "data": [[re, im], ...]}` in row-major
//! order. An instance file names the matrices `A`, `B`, `C`, `W`, the exponent
//! `p`, and optional tolerance overrides under `tol`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{c64, from_row_major, CMatrix, TolerancePolicy};
use crate::shorted::PsdWeight;
use crate::solver::ProblemInstance;

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("missing matrix {0}")]
    Missing(&'static str),
    #[error("invalid matrix {name}: {source}")]
    Invalid {
        name: &'static str,
        source: crate::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let data = (0..m.nrows())
            .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
            .map(|(i, j)| [m[(i, j)].re, m[(i, j)].im])
            .collect();
        Self {
            rows: m.nrows(),
            cols: m.ncols(),
            data,
        }
    }

    pub fn to_matrix(&self) -> crate::Result<CMatrix> {
        let entries: Vec<_> = self.data.iter().map(|[re, im]| c64(*re, *im)).collect();
        from_row_major(self.rows, self.cols, &entries)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ToleranceOverrides {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank_rel: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_abs: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psd_tol: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, base: TolerancePolicy) -> TolerancePolicy {
        TolerancePolicy {
            rank_rel: self.rank_rel.unwrap_or(base.rank_rel),
            residual_abs: self.residual_abs.unwrap_or(base.residual_abs),
            psd_tol: self.psd_tol.unwrap_or(base.psd_tol),
        }
    }
}

fn default_p() -> f64 {
    2.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(rename = "A", default, skip_serializing_if = "Option::is_none")]
    pub a: Option<MatrixJson>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<MatrixJson>,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<MatrixJson>,
    #[serde(rename = "W")]
    pub w: MatrixJson,
    #[serde(default = "default_p")]
    pub p: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<ToleranceOverrides>,
}

fn decode(name: &'static str, m: &Option<MatrixJson>) -> Result<CMatrix, FileError> {
    m.as_ref()
        .ok_or(FileError::Missing(name))?
        .to_matrix()
        .map_err(|source| FileError::Invalid { name, source })
}

impl InstanceFile {
    pub fn from_instance(inst: &ProblemInstance) -> Self {
        Self {
            a: Some(MatrixJson::from_matrix(inst.a())),
            b: Some(MatrixJson::from_matrix(inst.b())),
            c: Some(MatrixJson::from_matrix(inst.c())),
            w: MatrixJson::from_matrix(inst.w().matrix()),
            p: inst.p(),
            tol: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FileError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance files always serialise")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), FileError> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json() + "\n").map_err(|source| FileError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// The file's tolerance overrides applied on top of `base`.
    pub fn tolerance(&self, base: TolerancePolicy) -> TolerancePolicy {
        self.tol.clone().unwrap_or_default().apply(base)
    }

    pub fn weight(&self, tol: &TolerancePolicy) -> Result<PsdWeight, FileError> {
        let w = decode("W", &Some(self.w.clone()))?;
        PsdWeight::new(w, tol).map_err(|source| FileError::Invalid { name: "W", source })
    }

    pub fn instance(&self, tol: &TolerancePolicy) -> Result<ProblemInstance, FileError> {
        let a = decode("A", &self.a)?;
        let b = decode("B", &self.b)?;
        let c = decode("C", &self.c)?;
        let w = self.weight(tol)?;
        ProblemInstance::new(a, b, c, w, self.p).map_err(|source| FileError::Invalid {
            name: "instance",
            source,
        })
    }
}
