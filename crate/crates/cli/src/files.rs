//! File formats: codeword files, basis/vector files, and the run
//! configuration document.

use crate::CliError;
use codelat_core::lattice::{emit_rows, parse_big_scientific, parse_rows};
use codelat_core::projection::{DualCodeword, Modulus};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::path::Path;

/// Codeword file: first line `d P`, then d decimal entries, one per line.
pub fn write_codeword(path: &Path, codeword: &DualCodeword) -> Result<(), CliError> {
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", codeword.dim(), codeword.modulus().value()));
    for e in codeword.entries() {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    std::fs::write(path, out)?;
    Ok(())
}

pub fn read_codeword(path: &Path) -> Result<DualCodeword, CliError> {
    let text = std::fs::read_to_string(path)?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| CliError::format("empty codeword file"))?;
    let mut parts = header.split_whitespace();
    let d: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| CliError::format("codeword header must start with the dimension"))?;
    let p_str = parts
        .next()
        .ok_or_else(|| CliError::format("codeword header must contain the modulus"))?;
    let p = parse_big_scientific(p_str).map_err(CliError::Core)?;
    let modulus = Modulus::new(p).map_err(CliError::Core)?;
    let entries: Vec<BigInt> = lines
        .map(|l| {
            l.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::format(format!("bad codeword entry '{l}'")))
        })
        .collect::<Result<_, _>>()?;
    if entries.len() != d {
        return Err(CliError::format(format!(
            "codeword file declares {d} entries but contains {}",
            entries.len()
        )));
    }
    DualCodeword::from_unreduced(entries, modulus).map_err(CliError::Core)
}

pub fn read_vectors(path: &Path) -> Result<Vec<Vec<BigInt>>, CliError> {
    let text = std::fs::read_to_string(path)?;
    parse_rows(&text).map_err(CliError::Core)
}

pub fn write_vectors(path: &Path, rows: &[Vec<BigInt>]) -> Result<(), CliError> {
    std::fs::write(path, emit_rows(rows) + "\n")?;
    Ok(())
}

/// Self-describing run configuration; round-trips losslessly through JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfigFile {
    pub modulus: String,
    pub dim: usize,
    pub algo: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dstar: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kmax: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_schedule: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

impl RunConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}
