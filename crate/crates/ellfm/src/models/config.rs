//! The structured-text form of the model registry.
//!
//! These types mirror the TOML file one-to-one and keep every number in the
//! form it was written, so a registry serialises back to the same values.

use crate::chow_elliptic::{BaseClass, BaseSurfaceData};
use crate::error::{Error, Result};
use crate::exact_core::{format_rational, parse_rational, rat, to_i64, RMatrix, Rational};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A number as written in the file: an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    pub fn value(&self) -> Result<Rational> {
        match self {
            Entry::Int(n) => Ok(rat(*n)),
            Entry::Text(s) => parse_rational(s),
        }
    }

    /// Integers are written as integers, everything else as `"p/q"`.
    pub fn from_value(q: &Rational) -> Self {
        match to_i64(q) {
            Some(n) => Entry::Int(n),
            None => Entry::Text(format_rational(q)),
        }
    }
}

pub type MatrixConfig = Vec<Vec<Entry>>;

/// Converts a written matrix to an exact one.
pub fn matrix_from_config(rows: &MatrixConfig) -> Result<RMatrix> {
    let rows =
        rows.iter().map(|row| row.iter().map(Entry::value).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    RMatrix::from_rows(rows)
}

/// Converts an exact matrix to its written form.
pub fn matrix_to_config(m: &RMatrix) -> MatrixConfig {
    m.to_rows().iter().map(|row| row.iter().map(Entry::from_value).collect()).collect()
}

pub fn vector_from_config(v: &[Entry]) -> Result<Vec<Rational>> {
    v.iter().map(Entry::value).collect()
}

/// The whole registry file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegistryConfig {
    pub constants: ConstantsConfig,
    #[serde(default)]
    pub geometry: Vec<GeometryConfig>,
    #[serde(default)]
    pub model: Vec<ModelConfig>,
    #[serde(default)]
    pub printed_period: Vec<PrintedPeriodConfig>,
}

/// Model-independent printed matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstantsConfig {
    #[serde(rename = "M")]
    pub m: MatrixConfig,
    #[serde(rename = "M4")]
    pub m4: MatrixConfig,
    pub k3_section_self_intersection: i64,
}

/// A base surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub labels: Vec<String>,
    pub form: MatrixConfig,
    pub c1: Vec<Entry>,
    pub c2: Entry,
}

impl GeometryConfig {
    pub fn build(&self) -> Result<BaseSurfaceData> {
        BaseSurfaceData::new(
            self.labels.clone(),
            matrix_from_config(&self.form)?,
            BaseClass(vector_from_config(&self.c1)?),
            self.c2.value()?,
        )
        .map_err(|e| Error::Parse(format!("geometry `{}`: {e}", self.name)))
    }
}

/// A divisor named by its coordinates in the model's divisor basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedDivisorConfig {
    pub name: String,
    pub coords: Vec<Entry>,
}

/// A known misprint: the entry at (`row`, `col`), counted from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErratumConfig {
    pub matrix: String,
    pub row: usize,
    pub col: usize,
    pub printed: Entry,
    pub corrected: Entry,
}

/// One model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub name: String,
    #[serde(default)]
    pub title: String,
    pub fibration: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<String>,
    pub divisors: Vec<String>,
    pub triple: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<Vec<Entry>>,
    pub ch1_labels: Vec<String>,
    pub ch1_basis: MatrixConfig,
    pub ch2_labels: Vec<String>,
    pub ch2_pairing: MatrixConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prepotential: Option<String>,
    pub dictionary: MatrixConfig,
    #[serde(default)]
    pub matrices: BTreeMap<String, MatrixConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub extra_divisor: Vec<NamedDivisorConfig>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub errata: Vec<ErratumConfig>,
}

/// A period vector as displayed in print, with the model the text names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrintedPeriodConfig {
    pub label: String,
    pub stated_model: String,
    pub entries: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::frac;

    #[test]
    fn entries_keep_their_written_form() {
        assert_eq!(Entry::from_value(&rat(-3)), Entry::Int(-3));
        assert_eq!(Entry::from_value(&frac(3, 2)), Entry::Text("3/2".into()));
        assert_eq!(Entry::Text("-3/4".into()).value().unwrap(), frac(-3, 4));
        assert!(Entry::Text("x".into()).value().is_err());
    }

    #[test]
    fn matrices_round_trip() {
        let m = RMatrix::from_rows(vec![vec![rat(1), frac(1, 2)], vec![frac(-3, 4), rat(0)]]).unwrap();
        assert_eq!(matrix_from_config(&matrix_to_config(&m)).unwrap(), m);
    }
}
