//! JSON documents for complexes and minor witnesses.
//!
//! Complexes are written canonically: sorted facets, one per line, so that a
//! second round trip reproduces the same bytes.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::complex::{ComplexError, FaceKey, UniformComplex, VertexId};
use crate::minor::{AssignedFacet, MinorWitness};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid {field}: {source}")]
    Validation {
        field: String,
        #[source]
        source: ComplexError,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub d: usize,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexDocument {
    pub fn from_complex(c: &UniformComplex) -> Self {
        ComplexDocument {
            d: c.d(),
            n: c.vertex_count(),
            names: c.names().map(<[String]>::to_vec),
            facets: c.facets().iter().map(|f| f.vertices().to_vec()).collect(),
        }
    }

    pub fn to_complex(&self) -> Result<UniformComplex, IoError> {
        let c = UniformComplex::new(self.d, self.n, &self.facets).map_err(|source| {
            IoError::Validation {
                field: "facets".into(),
                source,
            }
        })?;
        match &self.names {
            Some(names) => c
                .with_names(names.clone())
                .map_err(|source| IoError::Validation {
                    field: "names".into(),
                    source,
                }),
            None => Ok(c),
        }
    }
}

pub fn parse_str(text: &str) -> Result<UniformComplex, IoError> {
    let doc: ComplexDocument = serde_json::from_str(text)?;
    doc.to_complex()
}

pub fn parse(path: &Path) -> Result<UniformComplex, IoError> {
    parse_str(&read(path)?)
}

pub(crate) fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn facet_line(f: &[usize]) -> String {
    let items: Vec<String> = f.iter().map(ToString::to_string).collect();
    format!("[{}]", items.join(", "))
}

/// Canonical text: fixed key order and one facet per line.
pub fn to_canonical_string(c: &UniformComplex) -> String {
    let mut out = format!("{{\n  \"d\": {},\n  \"n\": {},\n", c.d(), c.vertex_count());
    if let Some(names) = c.names() {
        let json = serde_json::to_string(names).expect("strings serialize");
        out.push_str(&format!("  \"names\": {json},\n"));
    }
    out.push_str("  \"facets\": [");
    let lines: Vec<String> = c
        .facets()
        .iter()
        .map(|f| format!("\n    {}", facet_line(f.vertices())))
        .collect();
    out.push_str(&lines.join(","));
    if !lines.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

pub fn serialize(c: &UniformComplex, path: &Path) -> Result<(), IoError> {
    fs::write(path, to_canonical_string(c)).map_err(|source| IoError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A witness together with the target it realizes. The host is supplied separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDocument {
    pub target: ComplexDocument,
    pub witness: MinorWitness,
}

#[derive(Deserialize)]
struct RawAssigned {
    target: Vec<usize>,
    host: Vec<usize>,
}

#[derive(Deserialize)]
struct RawWitness {
    branch_sets: Vec<Vec<usize>>,
    facet_assignment: Vec<RawAssigned>,
}

fn face(v: Vec<usize>, field: &str) -> Result<FaceKey, IoError> {
    FaceKey::new(v).map_err(|source| IoError::Validation {
        field: field.into(),
        source,
    })
}

/// Reads a witness either from a standalone witness document or from a report
/// whose `result.witness` holds one.
pub fn parse_witness_str(text: &str) -> Result<(UniformComplex, MinorWitness), IoError> {
    let value: Value = serde_json::from_str(text)?;
    let inner = match value.get("result").and_then(|r| r.get("witness")) {
        Some(w) if value.get("witness").is_none() => w.clone(),
        _ => value,
    };
    let target: ComplexDocument =
        serde_json::from_value(inner.get("target").cloned().unwrap_or(Value::Null))?;
    let raw: RawWitness =
        serde_json::from_value(inner.get("witness").cloned().unwrap_or(Value::Null))?;
    let mut facet_assignment = Vec::with_capacity(raw.facet_assignment.len());
    for a in raw.facet_assignment {
        facet_assignment.push(AssignedFacet {
            target: face(a.target, "facet_assignment.target")?,
            host: face(a.host, "facet_assignment.host")?,
        });
    }
    let witness = MinorWitness {
        branch_sets: raw
            .branch_sets
            .into_iter()
            .map(|b| b.into_iter().map(VertexId).collect())
            .collect(),
        facet_assignment,
    };
    Ok((target.to_complex()?, witness))
}
