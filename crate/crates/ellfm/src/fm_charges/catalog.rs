//! Fibrewise T-duality on basic sheaves.
//!
//! The transform exchanges
//!
//! * a point (D0) with a fibre (D2 wrapped on `F`);
//! * the section (D4 on `B`) with the whole threefold (D6);
//! * a curve in the section (D2 on a base curve) with the surface over the
//!   curve (D4 containing the fibre).

use super::{fm_forward, fm_inverse};
use crate::chow_elliptic::{self, series_power, todd_n, BaseClass, BaseGraded, BaseSurfaceData, VerticalClass};
use crate::error::Result;
use crate::exact_core::{frac, rat, Rational};

/// One row of the catalog.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub input: VerticalClass,
    /// `ch(S(·))`, the alternating sum.
    pub forward: VerticalClass,
    /// `ch(Ŝ(·))`, the alternating sum.
    pub inverse: VerticalClass,
    /// The degree in which the forward transform has its only cohomology sheaf.
    pub wit_index: u32,
    /// Chern character of that single sheaf, `(−1)^wit · forward`.
    pub forward_sheaf: VerticalClass,
}

impl std::fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {} ↦ {}", self.name, self.input, self.forward)
    }
}

/// `ch(σ_*E)` from the Chern character of a sheaf `E` on the base, by
/// Riemann-Roch for the section: `σ·π*(ch(E)·Td(N)⁻¹)`.
pub fn section_pushforward(ch_base: &BaseGraded, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    let td_inv = series_power(&todd_n(geom), &rat(-1), geom)?;
    let lifted = VerticalClass {
        r: ch_base.h0.clone(),
        s_class: ch_base.h2.clone(),
        a: ch_base.h4.clone(),
        ..VerticalClass::zero(geom.rank())
    };
    let product = chow_elliptic::vertical_mul(&lifted, &td_inv, geom);
    Ok(chow_elliptic::vertical_mul(&VerticalClass::sigma(geom.rank()), &product, geom))
}

/// `ch(O_D) = D − D²/2` on the base.
fn ch_curve(d: &BaseClass, geom: &BaseSurfaceData) -> BaseGraded {
    BaseGraded { h0: Rational::from_integer(0.into()), h2: d.clone(), h4: geom.pair(d, d) * frac(-1, 2) }
}

/// Multiplication by `π*K_B = exp(−π*c₁)`.
fn twist_by_canonical(v: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    let kb = chow_elliptic::exp_divisor(&VerticalClass::pullback(&-geom.c1()), geom)?;
    Ok(chow_elliptic::vertical_mul(v, &kb, geom))
}

fn entry(name: &str, input: VerticalClass, wit_index: u32, geom: &BaseSurfaceData) -> Result<CatalogEntry> {
    let forward = fm_forward(&input, geom)?;
    let inverse = fm_inverse(&input, geom)?;
    let forward_sheaf = if wit_index % 2 == 0 { forward.clone() } else { -&forward };
    Ok(CatalogEntry { name: name.into(), input, forward, inverse, wit_index, forward_sheaf })
}

/// The catalog with the base curve taken to be the first generator of
/// `H²(B)`.
pub fn canonical_catalog(geom: &BaseSurfaceData) -> Result<Vec<CatalogEntry>> {
    catalog_for_curve(geom, &BaseClass::basis(geom.rank(), 0))
}

/// The catalog for a chosen base curve `D`.
pub fn catalog_for_curve(geom: &BaseSurfaceData, d: &BaseClass) -> Result<Vec<CatalogEntry>> {
    geom.check_class(d)?;
    let k = geom.rank();
    let o_sigma = section_pushforward(&BaseGraded { h0: rat(1), h2: BaseClass::zero(k), h4: rat(0) }, geom)?;
    let j_curve = section_pushforward(&ch_curve(d, geom), geom)?;
    let pi_curve = &VerticalClass::pullback(d) + &VerticalClass::fibre(k).scale(&(geom.pair(d, d) * frac(-1, 2)));
    Ok(vec![
        entry("skyscraper", VerticalClass::point(k), 0, geom)?,
        entry("fibre", VerticalClass::fibre(k), 1, geom)?,
        entry("section", o_sigma, 0, geom)?,
        entry("structure sheaf", VerticalClass::one(k), 1, geom)?,
        entry("curve in section", j_curve, 0, geom)?,
        entry("surface over curve", pi_curve, 1, geom)?,
    ])
}

/// Expected single-sheaf images, written independently of the transform:
/// `S⁰(O_σ) = O_X`, `S¹(O_X) = O_σ ⊗ π*K_B`, `S⁰(j_*O_D) = π*O_D`,
/// `S¹(π*O_D) = j_*O_D ⊗ π*K_B`.
pub(crate) fn expected_images(geom: &BaseSurfaceData, d: &BaseClass) -> Result<Vec<(String, VerticalClass)>> {
    let k = geom.rank();
    let o_sigma = section_pushforward(&BaseGraded { h0: rat(1), h2: BaseClass::zero(k), h4: rat(0) }, geom)?;
    let j_curve = section_pushforward(&ch_curve(d, geom), geom)?;
    let pi_curve = &VerticalClass::pullback(d) + &VerticalClass::fibre(k).scale(&(geom.pair(d, d) * frac(-1, 2)));
    Ok(vec![
        ("skyscraper".into(), VerticalClass::fibre(k)),
        ("section".into(), VerticalClass::one(k)),
        ("structure sheaf".into(), twist_by_canonical(&o_sigma, geom)?),
        ("curve in section".into(), pi_curve),
        ("surface over curve".into(), twist_by_canonical(&j_curve, geom)?),
    ])
}
