//! Structured JSON reports emitted by the command-line tool.
//!
//! A [`ReportDocument`] records what was run (command line, input file
//! digests, seed), what came out (a map of results), and under which
//! tolerances. Serialization is deterministic — map keys are sorted, floats
//! use shortest round-trip decimals — so two runs on identical inputs
//! produce byte-identical reports. Non-finite numbers are rejected at the
//! boundary rather than silently encoded as `null`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{OpError, Result};
use crate::matrix::{check_finite, CMatrix};

/// Identifies one input file by path and content hash.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    /// Path as given on the command line.
    pub path: String,
    /// Hex SHA-256 of the file contents.
    pub sha256: String,
}

/// The top-level document written by every subcommand.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    /// The subcommand that produced this report.
    pub command: String,
    /// Digests of every input file, in argument order.
    pub inputs: Vec<InputDigest>,
    /// Computed certificates, residuals, norms — sorted by key.
    pub results: BTreeMap<String, Value>,
    /// Every tolerance that influenced the run, sorted by key.
    pub tolerances_used: BTreeMap<String, f64>,
    /// RNG seed, when the command used randomness.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    /// Crate version that produced the report.
    pub version: String,
}

/// Hex SHA-256 of a file's contents.
pub fn file_digest(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| OpError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// A matrix as an embeddable JSON value (same shape as the `.json` file
/// encoding). Refuses non-finite entries.
pub fn matrix_value(m: &CMatrix) -> Result<Value> {
    check_finite(m, "matrix in report")?;
    serde_json::from_str(&crate::io::format_matrix_json(m)).map_err(|e| {
        OpError::Internal(format!("matrix JSON round-trip failed: {e}"))
    })
}

fn reject_non_finite(path: &str, v: &Value) -> Result<()> {
    match v {
        // Builders never emit null; a null here is a non-finite number that
        // leaked through `serde_json::json!`.
        Value::Null => Err(OpError::NonFiniteValue(path.to_string())),
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                reject_non_finite(&format!("{path}[{i}]"), item)?;
            }
            Ok(())
        }
        Value::Object(map) => {
            for (k, item) in map {
                reject_non_finite(&format!("{path}.{k}"), item)?;
            }
            Ok(())
        }
        _ => Ok(()),
    }
}

impl ReportDocument {
    /// Empty report for a subcommand, stamped with the crate version.
    pub fn new(command: &str) -> Self {
        ReportDocument {
            command: command.to_string(),
            inputs: Vec::new(),
            results: BTreeMap::new(),
            tolerances_used: BTreeMap::new(),
            seed: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    /// Record an input file with its content digest.
    pub fn add_input(&mut self, path: &Path) -> Result<()> {
        self.inputs.push(InputDigest {
            path: path.display().to_string(),
            sha256: file_digest(path)?,
        });
        Ok(())
    }

    /// Record one scalar result; non-finite values are refused.
    pub fn insert_number(&mut self, key: &str, v: f64) -> Result<()> {
        if !v.is_finite() {
            return Err(OpError::NonFiniteValue(key.to_string()));
        }
        self.results.insert(key.to_string(), Value::from(v));
        Ok(())
    }

    /// Record a structured result (already finite-checked by the builder).
    pub fn insert_value(&mut self, key: &str, v: Value) {
        self.results.insert(key.to_string(), v);
    }

    /// Record a tolerance that influenced the computation.
    pub fn insert_tolerance(&mut self, key: &str, v: f64) {
        self.tolerances_used.insert(key.to_string(), v);
    }

    /// Reject any non-finite number (encoded as `null`) anywhere in the
    /// document.
    pub fn validate(&self) -> Result<()> {
        for (k, v) in &self.results {
            reject_non_finite(&format!("results.{k}"), v)?;
        }
        for (k, v) in &self.tolerances_used {
            if !v.is_finite() {
                return Err(OpError::NonFiniteValue(format!("tolerances_used.{k}")));
            }
        }
        Ok(())
    }

    /// Deterministic pretty JSON.
    pub fn serialize(&self) -> Result<String> {
        self.validate()?;
        serde_json::to_string_pretty(self)
            .map_err(|e| OpError::Internal(format!("report serialization failed: {e}")))
    }
}

/// Parse a report back (used by the round-trip tests and the CLI checker).
pub fn parse_report(text: &str) -> Result<ReportDocument> {
    serde_json::from_str(text).map_err(|e| OpError::ParseError {
        path: "<report>".to_string(),
        line: e.line(),
        message: e.to_string(),
    })
}

/// Validate and write a report; a trailing newline terminates the file.
pub fn write_report(r: &ReportDocument, path: &Path) -> Result<()> {
    let mut text = r.serialize()?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| OpError::Io {
        path: path.display().to_string(),
        source: e,
    })
}
