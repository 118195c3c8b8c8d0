//! The example models: two K3-fibred threefolds of degree 8 and 12, studied
//! through their charge lattices, and the elliptic threefold of degree 18
//! over the projective plane.
//!
//! All printed data lives in a TOML registry (embedded by default, loadable
//! from a file).  [`ModelDefinition`] holds the exact values; [`lattice`]
//! derives monodromies, central charges and lattice actions from them;
//! [`deg18`] checks the relations specific to the elliptic model.

pub mod config;
pub mod deg18;
pub mod lattice;
mod reference;

pub use deg18::{bps_to_vertical, verify_deg18_relations};
pub use lattice::{
    attribute_printed_periods, basis_conjugations, central_charge_bps, central_charge_geometric, gamma_shift_on_bps,
    monodromy_from_prepotential, period_vector, twist_matrix_on_bps, verify_k3_model, verify_monodromy_algebra,
    Attribution, Conjugation, Convention, KahlerDirection,
};

use crate::chow_elliptic::BaseSurfaceData;
use crate::error::{Error, Result};
use crate::exact_core::{rat, MultiPoly, RMatrix, Rational};
use config::{matrix_from_config, vector_from_config, ModelConfig, RegistryConfig};
use std::collections::BTreeMap;
use std::path::Path;

/// The embedded registry file.
pub const BUILTIN_REGISTRY: &str = include_str!("../../data/models.toml");

/// A BPS charge vector, ordered `(n6, n4¹, n4², n0, n2¹, n2²)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BPSCharge {
    pub n6: Rational,
    pub n4_1: Rational,
    pub n4_2: Rational,
    pub n0: Rational,
    pub n2_1: Rational,
    pub n2_2: Rational,
}

impl BPSCharge {
    pub fn from_i64(v: [i64; 6]) -> Self {
        Self::from_vec(&v.map(rat)).expect("six entries")
    }

    pub fn from_vec(v: &[Rational]) -> Result<Self> {
        let [n6, n4_1, n4_2, n0, n2_1, n2_2] = v else {
            return Err(Error::Shape(format!("a BPS charge has 6 entries, got {}", v.len())));
        };
        Ok(Self {
            n6: n6.clone(),
            n4_1: n4_1.clone(),
            n4_2: n4_2.clone(),
            n0: n0.clone(),
            n2_1: n2_1.clone(),
            n2_2: n2_2.clone(),
        })
    }

    pub fn to_vec(&self) -> Vec<Rational> {
        vec![
            self.n6.clone(),
            self.n4_1.clone(),
            self.n4_2.clone(),
            self.n0.clone(),
            self.n2_1.clone(),
            self.n2_2.clone(),
        ]
    }

    pub fn zero() -> Self {
        Self::from_i64([0; 6])
    }
}

/// Chern data in a model's own coordinates: `ch1` in the model's `ch1`
/// basis, `ch2` in its curve basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChernData {
    pub rank: Rational,
    pub ch1: Vec<Rational>,
    pub ch2: Vec<Rational>,
    pub ch3: Rational,
}

impl ChernData {
    pub fn to_vec(&self) -> Vec<Rational> {
        let mut v = vec![self.rank.clone()];
        v.extend(self.ch1.iter().cloned());
        v.extend(self.ch2.iter().cloned());
        v.push(self.ch3.clone());
        v
    }

    pub fn from_vec(v: &[Rational]) -> Result<Self> {
        if v.len() != 6 {
            return Err(Error::Shape(format!("Chern data has 6 entries, got {}", v.len())));
        }
        Ok(Self { rank: v[0].clone(), ch1: v[1..3].to_vec(), ch2: v[3..5].to_vec(), ch3: v[5].clone() })
    }
}

/// How a model is fibred.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fibration {
    /// K3-fibred; only the charge lattice is modelled.
    K3,
    /// Elliptically fibred over a registered base surface.
    Elliptic,
}

/// A cubic prepotential split by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prepotential {
    pub cubic: MultiPoly,
    pub quadratic: MultiPoly,
    pub linear: MultiPoly,
    pub constant: MultiPoly,
}

impl Prepotential {
    pub fn parse(text: &str) -> Result<Self> {
        let f: MultiPoly = text.parse()?;
        if f.degree().is_some_and(|d| d > 3) {
            return Err(Error::Parse(format!("prepotential `{text}` has degree above 3")));
        }
        Ok(Self {
            cubic: f.homogeneous_part(3),
            quadratic: f.homogeneous_part(2),
            linear: f.homogeneous_part(1),
            constant: f.homogeneous_part(0),
        })
    }

    pub fn full(&self) -> MultiPoly {
        self.cubic.add(&self.quadratic).add(&self.linear).add(&self.constant)
    }
}

/// A misprinted entry (indices counted from 1, as in the registry file).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Erratum {
    pub matrix: String,
    pub row: usize,
    pub col: usize,
    pub printed: Rational,
    pub corrected: Rational,
}

/// One model with all of its printed data in exact form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelDefinition {
    pub name: String,
    pub title: String,
    pub fibration: Fibration,
    /// Names of the Kähler-class basis; `t = t1·D1 + t2·D2`.
    pub divisors: Vec<String>,
    /// `D1³, D1²D2, D1D2², D2³`.
    pub triple: [Rational; 4],
    /// `c₂(X)·D1, c₂(X)·D2`.
    pub c2: Vec<Rational>,
    pub ch1_labels: Vec<String>,
    /// Rows: the `ch1` basis classes in divisor coordinates.
    pub ch1_basis: RMatrix,
    pub ch2_labels: Vec<String>,
    /// Entry `(i, j)`: `D_i` paired with the `j`-th curve basis class.
    pub ch2_pairing: RMatrix,
    pub prepotential: Option<Prepotential>,
    /// BPS charge to Chern data, acting on column vectors.
    pub dictionary: RMatrix,
    pub matrices: BTreeMap<String, RMatrix>,
    /// Further named divisors, in divisor coordinates.
    pub extra_divisors: Vec<(String, Vec<Rational>)>,
    pub errata: Vec<Erratum>,
    pub geometry: Option<BaseSurfaceData>,
}

impl ModelDefinition {
    fn from_config(cfg: &ModelConfig, geometries: &BTreeMap<String, BaseSurfaceData>) -> Result<Self> {
        let ctx = |what: &str, e: Error| Error::Parse(format!("model `{}`, {what}: {e}", cfg.name));
        let fibration = match cfg.fibration.as_str() {
            "k3" => Fibration::K3,
            "elliptic" => Fibration::Elliptic,
            other => return Err(Error::Parse(format!("model `{}`: unknown fibration `{other}`", cfg.name))),
        };
        let geometry = match (&cfg.geometry, fibration) {
            (Some(g), Fibration::Elliptic) => Some(
                geometries
                    .get(g)
                    .cloned()
                    .ok_or_else(|| Error::Parse(format!("model `{}`: unknown geometry `{g}`", cfg.name)))?,
            ),
            (None, Fibration::K3) => None,
            _ => {
                return Err(Error::Parse(format!(
                    "model `{}`: elliptic models need a geometry and K3 models must not have one",
                    cfg.name
                )))
            }
        };
        let two = |what: &str, n: usize| {
            if n == 2 {
                Ok(())
            } else {
                Err(Error::Parse(format!("model `{}`: {what} must have 2 entries, got {n}", cfg.name)))
            }
        };
        two("divisors", cfg.divisors.len())?;
        two("ch1_labels", cfg.ch1_labels.len())?;
        two("ch2_labels", cfg.ch2_labels.len())?;
        let triple = vector_from_config(&cfg.triple).map_err(|e| ctx("triple", e))?;
        let triple: [Rational; 4] =
            triple.try_into().map_err(|_| Error::Parse(format!("model `{}`: triple needs 4 entries", cfg.name)))?;
        let square = |what: &str, m: &config::MatrixConfig, n: usize| -> Result<RMatrix> {
            let m = matrix_from_config(m).map_err(|e| ctx(what, e))?;
            if m.rows() != n || m.cols() != n {
                return Err(Error::Parse(format!(
                    "model `{}`: {what} must be {n}x{n}, got {}x{}",
                    cfg.name,
                    m.rows(),
                    m.cols()
                )));
            }
            Ok(m)
        };
        let ch1_basis = square("ch1_basis", &cfg.ch1_basis, 2)?;
        let ch2_pairing = square("ch2_pairing", &cfg.ch2_pairing, 2)?;
        let dictionary = square("dictionary", &cfg.dictionary, 6)?;
        let mut matrices = BTreeMap::new();
        for (name, m) in &cfg.matrices {
            matrices.insert(name.clone(), square(&format!("matrix {name}"), m, 6)?);
        }
        let prepotential =
            cfg.prepotential.as_deref().map(Prepotential::parse).transpose().map_err(|e| ctx("prepotential", e))?;
        let mut extra_divisors = Vec::new();
        for d in &cfg.extra_divisor {
            let coords = vector_from_config(&d.coords).map_err(|e| ctx("extra divisor", e))?;
            two(&format!("divisor {}", d.name), coords.len())?;
            extra_divisors.push((d.name.clone(), coords));
        }
        let mut errata = Vec::new();
        for e in &cfg.errata {
            let m = matrices.get(&e.matrix).ok_or_else(|| {
                Error::Parse(format!("model `{}`: erratum for unknown matrix `{}`", cfg.name, e.matrix))
            })?;
            if e.row == 0 || e.col == 0 || e.row > m.rows() || e.col > m.cols() {
                return Err(Error::Parse(format!("model `{}`: erratum position out of range", cfg.name)));
            }
            errata.push(Erratum {
                matrix: e.matrix.clone(),
                row: e.row,
                col: e.col,
                printed: e.printed.value().map_err(|er| ctx("erratum", er))?,
                corrected: e.corrected.value().map_err(|er| ctx("erratum", er))?,
            });
        }
        let mut model = Self {
            name: cfg.name.clone(),
            title: cfg.title.clone(),
            fibration,
            divisors: cfg.divisors.clone(),
            triple,
            c2: Vec::new(),
            ch1_labels: cfg.ch1_labels.clone(),
            ch1_basis,
            ch2_labels: cfg.ch2_labels.clone(),
            ch2_pairing,
            prepotential,
            dictionary,
            matrices,
            extra_divisors,
            errata,
            geometry,
        };
        model.c2 = match (&cfg.c2, fibration) {
            (Some(c2), Fibration::K3) => {
                let c2 = vector_from_config(c2).map_err(|e| ctx("c2", e))?;
                two("c2", c2.len())?;
                c2
            }
            (None, Fibration::Elliptic) => deg18::c2_pairings(&model)?,
            _ => {
                return Err(Error::Parse(format!(
                    "model `{}`: K3 models list c2 pairings, elliptic models derive them",
                    cfg.name
                )))
            }
        };
        Ok(model)
    }

    /// A printed matrix by name.
    pub fn matrix(&self, name: &str) -> Result<&RMatrix> {
        self.matrices.get(name).ok_or_else(|| Error::UnknownName(format!("{name} (model {})", self.name)))
    }

    /// A printed matrix with its recorded errata applied.
    pub fn corrected_matrix(&self, name: &str) -> Result<RMatrix> {
        let mut m = self.matrix(name)?.clone();
        for e in self.errata.iter().filter(|e| e.matrix == name) {
            m = m.with_entry(e.row - 1, e.col - 1, e.corrected.clone());
        }
        Ok(m)
    }

    /// Coordinates of a named divisor in the divisor basis.
    pub fn divisor(&self, name: &str) -> Result<Vec<Rational>> {
        if let Some(i) = self.divisors.iter().position(|d| d == name) {
            let mut v = vec![rat(0), rat(0)];
            v[i] = rat(1);
            return Ok(v);
        }
        self.extra_divisors
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c.clone())
            .ok_or_else(|| Error::UnknownName(format!("divisor {name} (model {})", self.name)))
    }

    /// All divisor names: the basis first, then the extra ones.
    pub fn divisor_names(&self) -> Vec<String> {
        self.divisors.iter().cloned().chain(self.extra_divisors.iter().map(|(n, _)| n.clone())).collect()
    }

    /// The dictionary applied to `n`.
    pub fn bps_to_chern(&self, n: &BPSCharge) -> ChernData {
        let v = self.dictionary.mul_vec(&n.to_vec()).expect("6x6 dictionary");
        ChernData::from_vec(&v).expect("six entries")
    }

    pub fn base(&self) -> Result<&BaseSurfaceData> {
        self.geometry.as_ref().ok_or_else(|| Error::Precondition(format!("model {} has no base surface", self.name)))
    }

    pub fn prepotential(&self) -> Result<&Prepotential> {
        self.prepotential
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("no prepotential is recorded for model {}", self.name)))
    }
}

/// Free function form of [`ModelDefinition::bps_to_chern`].
pub fn bps_to_chern(m: &ModelDefinition, n: &BPSCharge) -> ChernData {
    m.bps_to_chern(n)
}

/// A period vector as displayed in print.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrintedPeriod {
    pub label: String,
    pub stated_model: String,
    pub entries: Vec<MultiPoly>,
}

/// Model-independent printed matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constants {
    pub m: RMatrix,
    pub m4: RMatrix,
    pub k3_section_self_intersection: Rational,
}

/// All models, geometries and constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Registry {
    pub constants: Constants,
    pub geometries: BTreeMap<String, BaseSurfaceData>,
    pub models: Vec<ModelDefinition>,
    pub printed_periods: Vec<PrintedPeriod>,
    config: RegistryConfig,
}

impl Registry {
    /// The embedded registry.
    pub fn builtin() -> Self {
        Self::from_toml_str(BUILTIN_REGISTRY).expect("embedded registry is valid")
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let config: RegistryConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_config(config)
    }

    pub fn from_config(config: RegistryConfig) -> Result<Self> {
        let constants = Constants {
            m: matrix_from_config(&config.constants.m)?,
            m4: matrix_from_config(&config.constants.m4)?,
            k3_section_self_intersection: rat(config.constants.k3_section_self_intersection),
        };
        let mut geometries = BTreeMap::new();
        for g in &config.geometry {
            if geometries.insert(g.name.clone(), g.build()?).is_some() {
                return Err(Error::Parse(format!("geometry `{}` is defined twice", g.name)));
            }
        }
        let mut models: Vec<ModelDefinition> = Vec::new();
        for m in &config.model {
            if models.iter().any(|x| x.name == m.name) {
                return Err(Error::Parse(format!("model `{}` is defined twice", m.name)));
            }
            models.push(ModelDefinition::from_config(m, &geometries)?);
        }
        let printed_periods = config
            .printed_period
            .iter()
            .map(|p| {
                Ok(PrintedPeriod {
                    label: p.label.clone(),
                    stated_model: p.stated_model.clone(),
                    entries: p.entries.iter().map(|e| e.parse()).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { constants, geometries, models, printed_periods, config })
    }

    /// The registry in its written form.
    pub fn config(&self) -> &RegistryConfig {
        &self.config
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(&self.config).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn model(&self, name: &str) -> Result<&ModelDefinition> {
        self.models.iter().find(|m| m.name == name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn geometry(&self, name: &str) -> Result<&BaseSurfaceData> {
        self.geometries.get(name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn model_names(&self) -> Vec<&str> {
        self.models.iter().map(|m| m.name.as_str()).collect()
    }
}
