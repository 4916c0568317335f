//! JSON file format for systems and contracts.
//!
//! Matrix entries are rational strings (`"3"`, `"-1/2"`, `"0.8"`), never
//! binary floats, so documents round-trip losslessly through the exact
//! core. A contract document holds its two systems inline or as paths
//! resolved relative to the document itself.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::contract::Contract;
use crate::matrix::Matrix;
use crate::scalar::{parse_scalar, scalar_to_string};
use crate::subspace::Subspace;
use crate::system::DVSystem;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("invalid JSON in {path}: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },

    #[error("matrix {matrix} row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        matrix: &'static str,
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("matrix {matrix} entry ({row},{col}): {source}")]
    BadEntry {
        matrix: &'static str,
        row: usize,
        col: usize,
        source: crate::scalar::ScalarParseError,
    },

    #[error(transparent)]
    System(#[from] crate::error::Error),
}

/// On-disk form of a [`DVSystem`]. `H: []` means no constraint rows; a `G`
/// made of empty rows means no driving variable.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "G")]
    pub g: Vec<Vec<String>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<String>>,
    #[serde(rename = "H")]
    pub h: Vec<Vec<String>>,
}

impl SystemDocument {
    pub fn to_system(&self) -> Result<DVSystem, DocError> {
        let a = parse_matrix("A", &self.a, None)?;
        let n = a.cols();
        // `G: []` and rows of empties both mean no driving variable;
        // `H: []` and `C: []` are zero-row maps on the state space.
        let g = if self.g.is_empty() {
            Matrix::zeros(n, 0)
        } else {
            parse_matrix("G", &self.g, None)?
        };
        let c = parse_matrix("C", &self.c, Some(n))?;
        let h = parse_matrix("H", &self.h, Some(n))?;
        let sys = DVSystem::new(a, g, c, h)?;
        Ok(match &self.name {
            Some(name) => sys.with_name(name.clone()),
            None => sys,
        })
    }

    pub fn from_system(sys: &DVSystem) -> SystemDocument {
        SystemDocument {
            name: sys.name.clone(),
            a: matrix_to_strings(&sys.a),
            g: matrix_to_strings(&sys.g),
            c: matrix_to_strings(&sys.c),
            h: matrix_to_strings(&sys.h),
        }
    }
}

/// A system either written out in place or named by a path relative to the
/// referencing document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemRef {
    Path(String),
    Inline(SystemDocument),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractDocument {
    pub assumptions: SystemRef,
    pub guarantees: SystemRef,
}

impl ContractDocument {
    pub fn to_contract(&self, base_dir: &Path) -> Result<Contract, DocError> {
        let a = resolve(&self.assumptions, base_dir)?;
        let g = resolve(&self.guarantees, base_dir)?;
        Ok(Contract::new(a, g)?)
    }
}

fn resolve(reference: &SystemRef, base_dir: &Path) -> Result<DVSystem, DocError> {
    match reference {
        SystemRef::Inline(doc) => doc.to_system(),
        SystemRef::Path(rel) => load_system(&base_dir.join(rel)),
    }
}

fn parse_matrix(
    label: &'static str,
    rows: &[Vec<String>],
    empty_cols: Option<usize>,
) -> Result<Matrix, DocError> {
    let cols = match rows.first() {
        Some(first) => first.len(),
        None => empty_cols.unwrap_or(0),
    };
    let mut out = Matrix::zeros(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(DocError::RaggedRow {
                matrix: label,
                row: i,
                expected: cols,
                found: row.len(),
            });
        }
        for (j, cell) in row.iter().enumerate() {
            out[(i, j)] = parse_scalar(cell).map_err(|source| DocError::BadEntry {
                matrix: label,
                row: i,
                col: j,
                source,
            })?;
        }
    }
    Ok(out)
}

fn matrix_to_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(scalar_to_string).collect())
        .collect()
}

pub fn load_system(path: &Path) -> Result<DVSystem, DocError> {
    let text = std::fs::read_to_string(path).map_err(|source| DocError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let doc: SystemDocument = serde_json::from_str(&text).map_err(|source| DocError::Json {
        path: path.display().to_string(),
        source,
    })?;
    doc.to_system()
}

pub fn load_contract(path: &Path) -> Result<Contract, DocError> {
    let text = std::fs::read_to_string(path).map_err(|source| DocError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let doc: ContractDocument = serde_json::from_str(&text).map_err(|source| DocError::Json {
        path: path.display().to_string(),
        source,
    })?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    doc.to_contract(base)
}

pub fn save_system(sys: &DVSystem, path: &Path) -> Result<(), DocError> {
    let doc = SystemDocument::from_system(sys);
    let text = serde_json::to_string_pretty(&doc).expect("document serialization is infallible");
    std::fs::write(path, text + "\n").map_err(|source| DocError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Serializable form of a subspace witness: its canonical basis columns.
#[derive(Debug, Clone, Serialize)]
pub struct BasisDocument {
    pub ambient_dim: usize,
    pub dim: usize,
    /// One entry per basis vector, each a column of rational strings.
    pub basis: Vec<Vec<String>>,
}

impl BasisDocument {
    pub fn from_subspace(v: &Subspace) -> Self {
        BasisDocument {
            ambient_dim: v.ambient_dim(),
            dim: v.dim(),
            basis: v
                .basis()
                .columns()
                .map(|col| col.iter().map(scalar_to_string).collect())
                .collect(),
        }
    }
}
