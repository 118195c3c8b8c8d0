//! JSON documents exchanged with the command line.
//!
//! Every rational is written as a `"p/q"` string (or a plain integer string),
//! never as a float, so documents round-trip exactly.

use ellfm::chow_elliptic::{BaseClass, BaseSurfaceData, VerticalClass};
use ellfm::exact_core::{format_rational, parse_rational, RMatrix, Rational};
use ellfm::models::Registry;
use ellfm::{Error, Result};
use serde::{Deserialize, Serialize};

/// A charge together with the base surface it lives over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChargeDocument {
    /// A registered model or geometry name, or inline base data.  May be
    /// omitted when the geometry is given on the command line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometryRef>,
    pub charge: ChargeSlots,
}

/// Where the base surface comes from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeometryRef {
    Named(String),
    Inline(InlineGeometry),
}

/// A base surface written out in full.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineGeometry {
    pub labels: Vec<String>,
    pub form: Vec<Vec<String>>,
    pub c1: Vec<String>,
    pub c2: String,
}

/// The six slots `(r, x, S, η, a, s)` of
/// `ch = r + xσ + π*S + σ·π*η + aF + s·pt`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChargeSlots {
    pub r: String,
    pub x: String,
    #[serde(rename = "S")]
    pub s_class: Vec<String>,
    pub eta: Vec<String>,
    pub a: String,
    pub s: String,
}

fn parse_all(v: &[String]) -> Result<Vec<Rational>> {
    v.iter().map(|s| parse_rational(s)).collect()
}

fn format_all(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

impl ChargeSlots {
    pub fn from_class(v: &VerticalClass) -> Self {
        Self {
            r: format_rational(&v.r),
            x: format_rational(&v.x),
            s_class: format_all(&v.s_class.0),
            eta: format_all(&v.eta.0),
            a: format_rational(&v.a),
            s: format_rational(&v.s),
        }
    }

    /// The class over `geom`; base classes must have one coefficient per
    /// generator of `H²(B)`.
    pub fn to_class(&self, geom: &BaseSurfaceData) -> Result<VerticalClass> {
        let s_class = BaseClass(parse_all(&self.s_class)?);
        let eta = BaseClass(parse_all(&self.eta)?);
        geom.check_class(&s_class)?;
        geom.check_class(&eta)?;
        Ok(VerticalClass::new(
            parse_rational(&self.r)?,
            parse_rational(&self.x)?,
            s_class,
            eta,
            parse_rational(&self.a)?,
            parse_rational(&self.s)?,
        ))
    }
}

impl InlineGeometry {
    pub fn from_geometry(g: &BaseSurfaceData) -> Self {
        Self {
            labels: g.labels().to_vec(),
            form: g.intersection_form().to_rows().iter().map(|r| format_all(r)).collect(),
            c1: format_all(&g.c1().0),
            c2: format_rational(g.c2()),
        }
    }

    pub fn build(&self) -> Result<BaseSurfaceData> {
        let rows = self.form.iter().map(|r| parse_all(r)).collect::<Result<Vec<_>>>()?;
        BaseSurfaceData::new(
            self.labels.clone(),
            RMatrix::from_rows(rows)?,
            BaseClass(parse_all(&self.c1)?),
            parse_rational(&self.c2)?,
        )
    }
}

impl GeometryRef {
    /// A name is looked up first among geometries, then among models.
    pub fn resolve(&self, reg: &Registry) -> Result<BaseSurfaceData> {
        match self {
            GeometryRef::Named(name) => match reg.geometry(name) {
                Ok(g) => Ok(g.clone()),
                Err(_) => reg.model(name)?.base().cloned(),
            },
            GeometryRef::Inline(g) => g.build(),
        }
    }
}

impl ChargeDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("charge document: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialise")
    }
}
