//! JSON input documents.
//!
//! Complex numbers are `[re, im]` pairs or bare reals. Matrices are arrays of
//! rows.

use std::io::Read;
use std::path::Path;

use niep_core::structured::{AbsolutelyCirculant, SignPattern};
use niep_core::{dft::FirstRow, Complex64, ComplexList, RealMatrix};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
pub enum ComplexInput {
    Pair([f64; 2]),
    Real(f64),
}

impl From<ComplexInput> for Complex64 {
    fn from(z: ComplexInput) -> Self {
        match z {
            ComplexInput::Pair([re, im]) => Complex64::new(re, im),
            ComplexInput::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

pub fn complex_list(values: &[ComplexInput]) -> Result<ComplexList, CliError> {
    let list: ComplexList = values.iter().map(|&z| Complex64::from(z)).collect();
    if list.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(CliError::Input("spectrum entries must be finite".into()));
    }
    Ok(list)
}

pub fn matrix(rows: &[Vec<f64>]) -> Result<RealMatrix, CliError> {
    let m = RealMatrix::from_rows(rows)?;
    if !m.is_finite() {
        return Err(CliError::Input("matrix entries must be finite".into()));
    }
    Ok(m)
}

pub fn first_row(values: &[f64]) -> Result<FirstRow, CliError> {
    Ok(FirstRow::new(values.to_vec())?)
}

/// A first row or a full matrix.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RowOrMatrix {
    Row(Vec<f64>),
    Matrix(Vec<Vec<f64>>),
}

/// Input of `build`.
#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum BuildInput {
    /// First rows of a circulant `S` and a skew circulant `C`.
    CircSkew { s: Vec<f64>, c: Vec<f64> },
    /// Arbitrary `S` and `C` of equal order.
    Even { s: Vec<Vec<f64>>, c: Vec<Vec<f64>> },
    /// `S` of order `n+1` with a skew circulant first row of length `n`, or a
    /// full `n×n` matrix `C`.
    Odd { s: Vec<Vec<f64>>, c: RowOrMatrix },
    /// First row of `S`, plus an absolutely circulant `C` given by its
    /// magnitude row and a sign pattern.
    Abscirc {
        s: Vec<f64>,
        magnitude: Vec<f64>,
        signs: Vec<Vec<i8>>,
    },
}

impl BuildInput {
    pub fn abscirc(magnitude: &[f64], signs: &[Vec<i8>]) -> Result<AbsolutelyCirculant, CliError> {
        let signs = SignPattern::from_rows(signs)?;
        Ok(AbsolutelyCirculant::new(first_row(magnitude)?, signs)?)
    }
}

/// Input of `realize-region`.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionInput {
    pub r: f64,
    pub a: f64,
    pub b: f64,
}

/// Input of `check`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairInput {
    pub circ_part: Vec<ComplexInput>,
    pub skew_part: Vec<ComplexInput>,
}

/// Input of `augment`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AugmentInput {
    pub skew_part: Vec<ComplexInput>,
    pub tail: Vec<ComplexInput>,
    pub rho: f64,
}

/// Input of `verify`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyInput {
    pub matrix: Vec<Vec<f64>>,
    pub spectrum: Vec<ComplexInput>,
}

/// Reads and parses a JSON document; `-` reads stdin.
pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("reading {}: {e}", path.display())))?
    };
    parse_json(&text)
}

pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed JSON: {e}")))
}

/// `--split '[[3,3],[3,0],[1,0]]'`.
pub fn parse_split(text: &str) -> Result<Vec<(f64, f64)>, CliError> {
    parse_json(text)
}
