//! The elliptic model of degree 18 over the projective plane.
//!
//! Its divisor basis is `E = σ`, `L = π*ℓ` (so `H = 3L + E`), and Chern data
//! in the model coordinates `(n, α, β, γ, δ, ε)` is exactly a vertical class
//! `(r, x, S, η, a, s)` over a base with one generator.  Lattice matrices are
//! therefore computed by running the ring-level transforms through the
//! printed dictionary `l`.

use super::lattice::{gamma_operator, lattice_action, twist_operator};
use super::{BPSCharge, ModelDefinition};
use crate::chow_elliptic::{integrate, vmul, BaseClass, BaseSurfaceData, VerticalClass};
use crate::error::{Error, Result};
use crate::exact_core::{format_vector, frac, rat, RMatrix, Rational};
use crate::fm_charges::{fm_inverse, m_matrix, tdn_matrix, TdSign};
use crate::kontsevich::{ch_fibre_ideal, factor_inverse_fm, gamma_shift, line_bundle_twist};
use crate::report::{Check, Report};

fn rank_one_base(m: &ModelDefinition) -> Result<&BaseSurfaceData> {
    let geom = m.base()?;
    if geom.rank() != 1 {
        return Err(Error::Precondition(format!(
            "model {} needs a base with one H² generator, got {}",
            m.name,
            geom.rank()
        )));
    }
    Ok(geom)
}

/// The divisor `e·σ + l·π*ℓ` for coordinates `(e, l)` in the basis `(E, L)`.
pub fn divisor_class(coords: &[Rational]) -> VerticalClass {
    VerticalClass { x: coords[0].clone(), s_class: BaseClass(vec![coords[1].clone()]), ..VerticalClass::zero(1) }
}

/// `c₂(X) = 12σ·π*c₁ + π*c₂ + 11π*c₁²`.
pub fn c2_class(geom: &BaseSurfaceData) -> VerticalClass {
    VerticalClass {
        eta: geom.c1().scale(&rat(12)),
        a: geom.c2() + rat(11) * geom.c1_squared(),
        ..VerticalClass::zero(geom.rank())
    }
}

/// `c₂(X)·E` and `c₂(X)·L`, computed in the ring.
pub(crate) fn c2_pairings(m: &ModelDefinition) -> Result<Vec<Rational>> {
    let geom = rank_one_base(m)?;
    let c2 = c2_class(geom);
    m.divisors.iter().map(|d| Ok(integrate(&vmul(&c2, &divisor_class(&m.divisor(d)?), geom)?))).collect()
}

/// `E³, E²L, EL², L³` computed in the ring.
pub fn ring_triple_intersections(m: &ModelDefinition) -> Result<[Rational; 4]> {
    let geom = rank_one_base(m)?;
    let e = divisor_class(&m.divisor(&m.divisors[0])?);
    let l = divisor_class(&m.divisor(&m.divisors[1])?);
    let cube = |a: &VerticalClass, b: &VerticalClass, c: &VerticalClass| -> Result<Rational> {
        Ok(integrate(&vmul(&vmul(a, b, geom)?, c, geom)?))
    };
    Ok([cube(&e, &e, &e)?, cube(&e, &e, &l)?, cube(&e, &l, &l)?, cube(&l, &l, &l)?])
}

/// The vertical class of `n`:
/// `(n6, n4¹, n4², 3/2·n4¹ + n2², 3/2·n4² + n2¹, −n0 + n4¹/2 − 3n4²)`.
pub fn coefficient_formula(n: &BPSCharge) -> VerticalClass {
    let h = frac(3, 2);
    VerticalClass::new(
        n.n6.clone(),
        n.n4_1.clone(),
        BaseClass(vec![n.n4_2.clone()]),
        BaseClass(vec![&h * &n.n4_1 + &n.n2_2]),
        &h * &n.n4_2 + &n.n2_1,
        -&n.n0 + &n.n4_1 * frac(1, 2) - rat(3) * &n.n4_2,
    )
}

/// The vertical class of `n` under the model's dictionary.
pub fn bps_to_vertical(m: &ModelDefinition, n: &BPSCharge) -> Result<VerticalClass> {
    rank_one_base(m)?;
    VerticalClass::from_vec(1, &m.bps_to_chern(n).to_vec())
}

/// Matrix of a linear map on vertical classes over a one-generator base.
fn vertical_operator(f: impl Fn(&VerticalClass) -> Result<VerticalClass>) -> Result<RMatrix> {
    let cols = (0..6)
        .map(|j| {
            let mut e = vec![rat(0); 6];
            e[j] = rat(1);
            Ok(f(&VerticalClass::from_vec(1, &e)?)?.to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RMatrix::from_rows(cols)?.transpose())
}

fn same_shape(a: &RMatrix, b: &RMatrix) -> bool {
    a.rows() == b.rows() && a.cols() == b.cols()
}

/// Lattice matrices agree on charges with `n4¹ = 0` (row convention).
fn agree_on_sublattice_rows(a: &RMatrix, b: &RMatrix) -> bool {
    same_shape(a, b) && a.differences(b).iter().all(|&(i, _)| i == 1)
}

/// Chern-space matrices agree on classes with `α = 0` (column convention).
fn agree_on_sublattice_cols(a: &RMatrix, b: &RMatrix) -> bool {
    same_shape(a, b) && a.differences(b).iter().all(|&(_, j)| j == 1)
}

fn positions(a: &RMatrix, b: &RMatrix) -> String {
    let d = a.differences(b);
    if d.is_empty() {
        "equal".into()
    } else {
        format!("differ at (row, col) {d:?}")
    }
}

/// Runs a group of checks; an evaluation error (for instance a singular
/// matrix) becomes a failing check instead of aborting the report.
fn section(r: &mut Report, name: &str, f: impl FnOnce(&mut Vec<Check>) -> Result<()>) {
    let mut checks = Vec::new();
    let outcome = f(&mut checks);
    r.checks.extend(checks);
    if let Err(e) = outcome {
        r.push(Check::gate(name, "the checks in this group can be evaluated", false, e.to_string()));
    }
}

/// Checks every relation among the printed degree-18 matrices, and every
/// printed matrix against the ring-level transform it represents.
pub fn verify_deg18_relations(m: &ModelDefinition) -> Result<Report> {
    let geom = rank_one_base(m)?;
    let mut r = Report::new("deg18");
    let s = |name: &str| m.matrix(name).cloned();
    let (s_h, s_l, s_e, s_v) = (s("S_H")?, s("S_L")?, s("S_E")?, s("S_V")?);
    let (l, s_td) = (s("l")?, s("S_td")?);
    let s_i_printed = s("S_I")?;
    let s_i = m.corrected_matrix("S_I")?;

    // Geometry of the model.
    section(&mut r, "deg18-geometry", |c| {
        let ring = ring_triple_intersections(m)?;
        c.push(Check::gate(
            "deg18-intersections",
            "E³ = 9, E²L = −3, EL² = 1, L³ = 0 agree with the ring (σ² = −σc₁)",
            ring == m.triple,
            format!("ring gives {}", format_vector(&ring)),
        ));
        let h = m.divisor("H")?;
        c.push(Check::gate(
            "deg18-h-relation",
            "H = 3L + E",
            h == vec![rat(1), rat(3)],
            format!("H = {}", format_vector(&h)),
        ));
        c.push(Check::info("deg18-c2", "c₂(X)·E, c₂(X)·L from c₂(X) = 12σc₁ + c₂ + 11c₁²", format_vector(&m.c2)));
        Ok(())
    });

    // Dictionary.
    section(&mut r, "deg18-dictionary-evaluation", |c| {
        let mut formula_ok = true;
        for j in 0..6 {
            let mut v = [0i64; 6];
            v[j] = 1;
            let n = BPSCharge::from_i64(v);
            formula_ok &= bps_to_vertical(m, &n)? == coefficient_formula(&n);
        }
        c.push(Check::gate(
            "deg18-dictionary",
            "the dictionary is γ = 3/2·n4¹ + n2², δ = 3/2·n4² + n2¹, ε = −n0 + n4¹/2 − 3n4²",
            formula_ok,
            String::new(),
        ));
        c.push(Check::gate("deg18-l", "l is the dictionary matrix", l == m.dictionary, positions(&l, &m.dictionary)));
        let td = tdn_matrix(geom, TdSign::Minus)?;
        c.push(Check::gate("deg18-s-td", "S_td is multiplication by Td(N)", s_td == td, positions(&s_td, &td)));
        Ok(())
    });

    // Relations among the printed monodromies.
    section(&mut r, "deg18-monodromy-evaluation", |c| {
        for (name, mat) in [("S_H", &s_h), ("S_L", &s_l), ("S_E", &s_e), ("S_I", &s_i_printed), ("S_V", &s_v)] {
            c.push(Check::gate(
                &format!("deg18-unimodular-{name}"),
                &format!("{name} is integral with determinant ±1"),
                mat.is_unimodular(),
                format!("det = {}", mat.det()?),
            ));
        }
        let rhs = s_h.mat_mul(&s_l.pow(-3)?)?;
        c.push(Check::gate("deg18-s-e", "S_E = S_H·S_L⁻³", s_e == rhs, positions(&s_e, &rhs)));
        let commute = |a: &RMatrix, b: &RMatrix| -> Result<bool> { Ok(a.mat_mul(b)? == b.mat_mul(a)?) };
        let all_commute = commute(&s_h, &s_l)? && commute(&s_h, &s_e)? && commute(&s_l, &s_e)?;
        c.push(Check::gate("deg18-commute", "S_H, S_L, S_E commute pairwise", all_commute, String::new()));
        Ok(())
    });

    // Printed matrices against the ring-level transforms.
    section(&mut r, "deg18-transform-evaluation", |c| {
        for d in ["E", "L", "H"] {
            let div = divisor_class(&m.divisor(d)?);
            let op = vertical_operator(|v| line_bundle_twist(v, &div, geom))?;
            let lattice = lattice_action(m, &op)?;
            let want = s(&format!("S_{d}"))?.mat_inverse()?;
            c.push(Check::gate(
                &format!("deg18-twist-{d}"),
                &format!("⊗O({d}) acts as S_{d}⁻¹"),
                lattice == want,
                positions(&lattice, &want),
            ));
            let generic = twist_operator(m, d)?;
            c.push(Check::gate(
                &format!("deg18-twist-{d}-intersection-form"),
                &format!("⊗O({d}) from the intersection numbers agrees with the ring"),
                generic == op,
                positions(&generic, &op),
            ));
        }
        let gamma_ring = vertical_operator(|v| gamma_shift(v, geom))?;
        let gamma_generic = gamma_operator(m)?;
        c.push(Check::gate(
            "deg18-gamma-intersection-form",
            "the gamma shift from the intersection numbers agrees with the ring",
            gamma_ring == gamma_generic,
            positions(&gamma_ring, &gamma_generic),
        ));

        let fm = vertical_operator(|v| fm_inverse(v, geom))?;
        let fm_lattice = lattice_action(m, &fm)?;
        let want = s_v.mat_inverse()?.neg();
        c.push(Check::gate(
            "deg18-fm-inverse",
            "the inverse transform acts as −S_V⁻¹ (the sign is the WIT₁ shift)",
            fm_lattice == want,
            positions(&fm_lattice, &want),
        ));
        let factor = lattice_action(m, &vertical_operator(|v| factor_inverse_fm(v, geom))?)?;
        c.push(Check::gate(
            "deg18-factorization",
            "twist(2c₁)∘twist(σ)∘S_I∘twist(σ) acts as the inverse transform",
            factor == fm_lattice,
            positions(&factor, &fm_lattice),
        ));
        Ok(())
    });

    // S_I and its erratum.
    section(&mut r, "deg18-s-i-evaluation", |c| {
        for e in m.errata.iter().filter(|e| e.matrix == "S_I") {
            let got = s_i_printed.get(e.row - 1, e.col - 1);
            c.push(Check::gate(
                "deg18-s-i-erratum",
                &format!("S_I({}, {}) is printed as {}", e.row, e.col, e.printed),
                got == &e.printed,
                format!("stored value {got}, corrected to {}", e.corrected),
            ));
        }
        let fibre_ideal = lattice_action(m, &vertical_operator(|v| ch_fibre_ideal(v, geom))?)?;
        let want = s_i.mat_inverse()?.neg();
        c.push(Check::gate(
            "deg18-fibre-ideal",
            "the fibre-ideal transform acts as −S_I⁻¹ (corrected S_I)",
            fibre_ideal == want,
            positions(&fibre_ideal, &want),
        ));
        let want_printed = s_i_printed.mat_inverse()?.neg();
        c.push(Check::info(
            "deg18-fibre-ideal-as-printed",
            "the fibre-ideal transform against −S_I⁻¹ with S_I as printed",
            positions(&fibre_ideal, &want_printed),
        ));
        Ok(())
    });

    // S_V = S_E·S_L⁶·S_I·S_E.
    section(&mut r, "deg18-rel-evaluation", |c| {
        let rel = |si: &RMatrix| -> Result<RMatrix> { s_e.mat_mul(&s_l.pow(6)?)?.mat_mul(si)?.mat_mul(&s_e) };
        let product = rel(&s_i)?;
        c.push(Check::gate(
            "deg18-rel",
            "S_V = S_E·S_L⁶·S_I·S_E on charges with n4¹ = 0 (corrected S_I)",
            agree_on_sublattice_rows(&s_v, &product),
            format!("full lattice: {}", positions(&s_v, &product)),
        ));
        c.push(Check::informational(
            "deg18-rel-full-lattice",
            "S_V = S_E·S_L⁶·S_I·S_E on the full lattice (corrected S_I)",
            s_v == product,
            positions(&s_v, &product),
        ));
        let printed_product = rel(&s_i_printed)?;
        c.push(Check::info(
            "deg18-rel-as-printed",
            "S_V against S_E·S_L⁶·S_I·S_E with S_I as printed",
            format!(
                "n4¹ = 0 sublattice {}; {}",
                if agree_on_sublattice_rows(&s_v, &printed_product) { "agrees" } else { "disagrees" },
                positions(&s_v, &printed_product)
            ),
        ));
        Ok(())
    });

    // M = l·[S_V⁻¹]ᵀ·l⁻¹·S_td, up to the WIT₁ sign.
    section(&mut r, "deg18-mata-evaluation", |c| {
        let conj = l.mat_mul(&s_v.mat_inverse()?.transpose())?.mat_mul(&l.mat_inverse()?)?.mat_mul(&s_td)?;
        let mm = m_matrix(geom);
        let signed = conj.neg();
        c.push(Check::gate(
            "deg18-mata",
            "M = −l·[S_V⁻¹]ᵀ·l⁻¹·S_td on classes with α = n4¹ = 0",
            agree_on_sublattice_cols(&mm, &signed),
            format!("full lattice: {}", positions(&mm, &signed)),
        ));
        c.push(Check::informational(
            "deg18-mata-full-lattice",
            "M = −l·[S_V⁻¹]ᵀ·l⁻¹·S_td on the full lattice",
            mm == signed,
            positions(&mm, &signed),
        ));
        c.push(Check::info(
            "deg18-mata-without-sign",
            "M against l·[S_V⁻¹]ᵀ·l⁻¹·S_td without the WIT₁ sign",
            positions(&mm, &conj),
        ));
        Ok(())
    });
    Ok(r)
}
