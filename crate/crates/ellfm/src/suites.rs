//! The exact-identity verification suites.
//!
//! Each suite is a named function from a [`Registry`] to a [`Report`].  The
//! randomised suites draw their inputs from fixed seeds, so every run checks
//! the same charges.  Identities that must hold for every sample are folded
//! into one check per geometry whose detail names the first counterexample.

use crate::chow_elliptic::{
    self, exp_divisor, series_power, todd_n, BaseClass, BaseSurfaceData, VerticalClass, K3_SECTION_SELF_INTERSECTION,
};
use crate::error::{Error, Result};
use crate::exact_core::{format_vector, frac, rat, MultiPoly, RMatrix, Var};
use crate::fibre_square::{
    ch_inverse_kernel, ch_poincare, f_map_kernel, f_map_with, grr_transform, ideal_self_check, Direction, FMapVariant,
};
use crate::fm_charges::{
    self, canonical_catalog, fm_forward, fm_inverse, fm_inverse_as_printed, k3_m_matrix, m_apply, m_matrix,
    mukai_charge, verify_m_relations,
};
use crate::kontsevich::{ch_diagonal_ideal, ch_fibre_ideal, ch_g_closed_form, ch_j, factor_inverse_fm, factor_steps};
use crate::models::{
    attribute_printed_periods, verify_deg18_relations, verify_k3_model, BPSCharge, Fibration, Registry,
};
use crate::moduli::{
    c2_fmw_residual, c2_fmw_residual_closed_form, dim_moduli_deg18, duy_constraint, ext_dimensions, fmw_bps_dictionary,
    fmw_integrality_scan, serre_index, HodgeInput,
};
use crate::report::{Check, Report};
use crate::sampling::{random_base_class, random_class, random_degree_zero_class};
use crate::spectral::{
    amended_mismatch, ch_bundle_from_spectral, ch_spectral_sheaf, t_question_mismatch, SpectralData,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Charges per geometry in the oracle comparison.
pub const ORACLE_SAMPLES: usize = 100;
/// Fibre-degree-zero charges per geometry in the M-relation suite.
pub const M_RELATION_SAMPLES: usize = 200;
/// Charges per geometry in the remaining randomised suites.
pub const SAMPLES: usize = 100;

type SuiteFn = fn(&Registry) -> Result<Report>;

/// All suites, sorted by name.
const SUITES: [(&str, SuiteFn); 11] = [
    ("catalog", catalog),
    ("deg18-factorization", deg18_factorization),
    ("f-maps", f_maps),
    ("invertibility", invertibility),
    ("kontsevich", kontsevich),
    ("m-matrix", m_matrix_suite),
    ("m-relations", m_relations),
    ("moduli", moduli),
    ("monodromy-derivation", monodromy_derivation),
    ("oracle-equivalence", oracle_equivalence),
    ("spectral", spectral),
];

/// The names of all suites, sorted.
pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|(n, _)| *n).collect()
}

/// Runs one suite by name.
pub fn run_suite(name: &str, reg: &Registry) -> Result<Report> {
    let (_, f) = SUITES.iter().find(|(n, _)| *n == name).ok_or_else(|| Error::UnknownName(name.to_string()))?;
    let mut report = f(reg)?;
    report.suite = name.to_string();
    Ok(report)
}

/// Runs every suite concurrently and returns the reports in name order.
/// A suite that cannot be evaluated becomes a report with one failing check.
pub fn run_all(reg: &Registry) -> Vec<Report> {
    std::thread::scope(|scope| {
        let handles: Vec<_> =
            SUITES.iter().map(|(name, _)| (*name, scope.spawn(move || run_suite(name, reg)))).collect();
        handles
            .into_iter()
            .map(|(name, h)| match h.join() {
                Ok(Ok(report)) => report,
                Ok(Err(e)) => failed_suite(name, &e.to_string()),
                Err(_) => failed_suite(name, "the suite panicked"),
            })
            .collect()
    })
}

fn failed_suite(name: &str, message: &str) -> Report {
    let mut r = Report::new(name);
    r.push(Check::gate(&format!("{name}-evaluation"), "the suite evaluates", false, message));
    r
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn samples(
    seed: u64,
    count: usize,
    geom: &BaseSurfaceData,
    draw: fn(&mut ChaCha8Rng, &BaseSurfaceData) -> VerticalClass,
) -> Vec<VerticalClass> {
    let mut r = rng(seed);
    (0..count).map(|_| draw(&mut r, geom)).collect()
}

/// Evaluates `holds` on every sample; the check passes when it holds on all.
fn for_all<T: std::fmt::Display>(
    name: &str,
    statement: &str,
    inputs: &[T],
    holds: impl Fn(&T) -> Result<bool>,
) -> Check {
    for input in inputs {
        match holds(input) {
            Ok(true) => {}
            Ok(false) => return Check::gate(name, statement, false, format!("fails at {input}")),
            Err(e) => return Check::gate(name, statement, false, format!("error at {input}: {e}")),
        }
    }
    Check::gate(name, statement, true, format!("{} samples", inputs.len()))
}

fn informational(check: Check) -> Check {
    Check { gating: false, ..check }
}

fn mul(u: &VerticalClass, v: &VerticalClass, geom: &BaseSurfaceData) -> VerticalClass {
    chow_elliptic::vertical_mul(u, v, geom)
}

/// `1 + c₁/2 + (c₁² + c₂)/12`, the Todd class of the base pulled back.
fn todd_base(geom: &BaseSurfaceData) -> VerticalClass {
    VerticalClass {
        s_class: geom.c1().scale(&frac(1, 2)),
        a: (geom.c1_squared() + geom.c2()) * frac(1, 12),
        ..VerticalClass::one(geom.rank())
    }
}

fn m_matrix_suite(reg: &Registry) -> Result<Report> {
    let mut r = Report::new("m-matrix");
    let c = &reg.constants;
    let neg_id = |n: usize| RMatrix::identity(n).neg();
    r.push(Check::gate("m-squared", "M² = −1", c.m.mat_mul(&c.m)? == neg_id(6), c.m.to_string()));
    r.push(Check::gate("m4-squared", "M₄² = −1", c.m4.mat_mul(&c.m4)? == neg_id(4), c.m4.to_string()));
    let p2 = BaseSurfaceData::projective_plane();
    r.push(Check::gate(
        "m-is-fibre-duality",
        "M is (n, x, S, η, a, s) ↦ (x, −n, η, −S, s, −a) over a rank-one base",
        c.m == m_matrix(&p2),
        "",
    ));
    r.push(Check::gate("m4-is-fibre-duality", "M₄ is (r, σ, F, pt) ↦ (σ, −r, pt, −F)", c.m4 == k3_m_matrix(), ""));
    for (name, geom) in &reg.geometries {
        let m = m_matrix(geom);
        let dim = m.rows();
        r.push(Check::gate(
            &format!("m-squared-{name}"),
            "M² = −1",
            m.mat_mul(&m)? == neg_id(dim),
            format!("{dim}×{dim}"),
        ));
    }
    r.push(Check::gate(
        "k3-section-self-intersection",
        "σ² = −2 on an elliptic K3",
        c.k3_section_self_intersection == rat(K3_SECTION_SELF_INTERSECTION),
        c.k3_section_self_intersection.to_string(),
    ));
    Ok(r)
}

fn oracle_equivalence(reg: &Registry) -> Result<Report> {
    let mut r = Report::new("oracle-equivalence");
    for (i, (name, geom)) in reg.geometries.iter().enumerate() {
        let charges = samples(100 + i as u64, ORACLE_SAMPLES, geom, random_class);
        r.push(Check::gate(
            &format!("ideal-sheaf-{name}"),
            "1 − ch(I) = ch(δ_*O_X) by Riemann-Roch",
            ideal_self_check(geom),
            "",
        ));
        let forward_kernel = ch_poincare(geom);
        let inverse_kernel = ch_inverse_kernel(geom);
        r.push(for_all(
            &format!("forward-oracle-{name}"),
            "closed-form ch(S(V)) = p₁_*(p₂*ch(V)·ch(P)·p₂*Td(T_{X/B}))",
            &charges,
            |v| Ok(fm_forward(v, geom)? == grr_transform(v, &forward_kernel, Direction::Forward, geom)?),
        ));
        r.push(for_all(
            &format!("inverse-oracle-{name}"),
            "closed-form ch(Ŝ(V)) = p₂_*(p₁*ch(V)·ch(P̂)·p₁*Td(T_{X/B}))",
            &charges,
            |v| Ok(fm_inverse(v, geom)? == grr_transform(v, &inverse_kernel, Direction::Inverse, geom)?),
        ));
        let mut differing = 0usize;
        for v in &charges {
            if fm_inverse_as_printed(v, geom)? != fm_inverse(v, geom)? {
                differing += 1;
            }
        }
        r.push(Check::info(
            &format!("inverse-as-printed-{name}"),
            "charges on which the inverse with the extra x·c₁² term in ch₃ differs from the kernel computation",
            format!("{differing} of {}", charges.len()),
        ));
    }
    Ok(r)
}

fn m_relations(reg: &Registry) -> Result<Report> {
    let mut r = Report::new("m-relations");
    for (i, (name, geom)) in reg.geometries.iter().enumerate() {
        let charges = samples(200 + i as u64, M_RELATION_SAMPLES, geom, random_degree_zero_class);
        let first = verify_m_relations(&charges[0], geom)?;
        for template in &first.checks {
            r.push(for_all(&format!("{}-{name}", template.name), &template.statement, &charges, |v| {
                Ok(verify_m_relations(v, geom)?.find(&template.name).is_some_and(Check::passed))
            }));
        }
        let mut probe = charges[0].clone();
        probe.x = rat(1);
        r.push(Check::gate(
            &format!("precondition-{name}"),
            "the M relations reject charges with x ≠ 0",
            matches!(verify_m_relations(&probe, geom), Err(Error::Precondition(_))),
            "",
        ));
    }
    Ok(r)
}

fn invertibility(reg: &Registry) -> Result<Report> {
    let mut r = Report::new("invertibility");
    for (i, (name, geom)) in reg.geometries.iter().enumerate() {
        let charges = samples(300 + i as u64, SAMPLES, geom, random_class);
        r.push(for_all(&format!("inverse-after-forward-{name}"), "Ŝ∘S = −1 on charges", &charges, |v| {
            Ok(fm_inverse(&fm_forward(v, geom)?, geom)? == -v)
        }));
        r.push(for_all(&format!("forward-after-inverse-{name}"), "S∘Ŝ = −1 on charges", &charges, |v| {
            Ok(fm_forward(&fm_inverse(v, geom)?, geom)? == -v)
        }));
    }
    Ok(r)
}

fn catalog(reg: &Registry) -> Result<Report> {
    let mut r = Report::new("catalog");
    for (name, geom) in &reg.geometries {
        let k = geom.rank();
        let cat = canonical_catalog(geom)?;
        let find =
            |n: &str| cat.iter().find(|e| e.name == n).ok_or_else(|| Error::UnknownName(format!("catalog entry {n}")));
        r.push(Check::gate(
            &format!("skyscraper-{name}"),
            "S(O_p) is a sheaf supported on a fibre, ch = F",
            find("skyscraper")?.forward_sheaf == VerticalClass::fibre(k),
            "",
        ));
        r.push(Check::gate(
            &format!("fibre-{name}"),
            "S¹(O_F) is a point, ch = pt",
            find("fibre")?.forward_sheaf == VerticalClass::point(k),
            "",
        ));
        r.push(Check::gate(
            &format!("section-{name}"),
            "S(O_σ) = O_X, ch = (1, 0, 0, 0, 0, 0)",
            find("section")?.forward_sheaf == VerticalClass::one(k),
            "",
        ));
        for (entry, expected) in fm_charges::catalog_expected_images(geom, &BaseClass::basis(k, 0))? {
            let got = &find(&entry)?.forward_sheaf;
            r.push(Check::gate(
                &format!("{}-{name}", entry.replace(' ', "-")),
                &format!("single-sheaf image of the {entry}"),
                got == &expected,
                got.to_string(),
            ));
        }
        r.push(for_all(&format!("round-trip-{name}"), "Ŝ(S(E)) = E[−1] for every entry", &cat, |e| {
            Ok(fm_inverse(&e.forward, geom)? == -&e.input)
        }));
        let indices: Vec<String> = cat.iter().map(|e| format!("{}: {}", e.name, e.wit_index)).collect();
        r.push(Check::info(
            &format!("wit-indices-{name}"),
            "degree of the single cohomology sheaf",
            indices.join(", "),
        ));
    }
    Ok(r)
}

fn f_maps(reg: &Registry) -> Result<Report> {
    let mut r = Report::new("f-maps");
    for (i, (name, geom)) in reg.geometries.iter().enumerate() {
        let all = samples(400 + i as u64, SAMPLES, geom, random_class);
        let degree_zero = samples(500 + i as u64, SAMPLES, geom, random_degree_zero_class);
        let relative = f_map_kernel(FMapVariant::Relative, geom)?;
        let absolute = f_map_kernel(FMapVariant::Absolute, geom)?;
        r.push(for_all(&format!("relative-{name}"), "f_r(Q(V)) = Q(S(V))", &all, |v| {
            Ok(f_map_with(&mukai_charge(v, geom)?, &relative, geom)? == mukai_charge(&fm_forward(v, geom)?, geom)?)
        }));
        r.push(informational(for_all(
            &format!("absolute-{name}"),
            "f(Q(S(V))) = M·Q(V) for x = 0",
            &degree_zero,
            |v| {
                let lhs = f_map_with(&mukai_charge(&fm_forward(v, geom)?, geom)?, &absolute, geom)?;
                Ok(lhs == m_apply(&mukai_charge(v, geom)?))
            },
        )));
        let kb = exp_divisor(&VerticalClass::c1(geom).scale(&rat(-1)), geom)?;
        let factor = mul(&todd_base(geom), &kb, geom);
        r.push(for_all(&format!("absolute-evaluated-{name}"), "f(Q(S(V))) = −Td(B)·e^{−c₁}·Q(V)", &all, |v| {
            let lhs = f_map_with(&mukai_charge(&fm_forward(v, geom)?, geom)?, &absolute, geom)?;
            Ok(lhs == -&mul(&factor, &mukai_charge(v, geom)?, geom))
        }));
    }
    Ok(r)
}

fn kontsevich(reg: &Registry) -> Result<Report> {
    let mut r = Report::new("kontsevich");
    for (i, (name, geom)) in reg.geometries.iter().enumerate() {
        let all = samples(600 + i as u64, SAMPLES, geom, random_class);
        let degree_zero = samples(700 + i as u64, SAMPLES, geom, random_degree_zero_class);
        r.push(for_all(
            &format!("ideal-additivity-{name}"),
            "ch(S_{I_Δ}(V)) = ch(S_{j_*I}(V)) + ch(S_J(V))",
            &all,
            |v| Ok(ch_diagonal_ideal(v, geom)? == &ch_fibre_ideal(v, geom)? + &ch_j(v, geom)?),
        ));
        r.push(for_all(&format!("g-table-{name}"), "ch(V ⊗ O(σ)) in closed form", &all, |v| {
            Ok(ch_g_closed_form(v, geom)? == factor_steps(v, geom)?.g)
        }));
        r.push(for_all(
            &format!("factorisation-{name}"),
            "Ŝ = (⊗ q*K_B⁻²)∘(⊗ O(σ))∘S_{j_*I}∘(⊗ O(σ)) for x = 0",
            &degree_zero,
            |v| Ok(factor_inverse_fm(v, geom)? == fm_inverse(v, geom)?),
        ));
    }
    Ok(r)
}

fn deg18_factorization(reg: &Registry) -> Result<Report> {
    let mut r = Report::new("deg18-factorization");
    let models: Vec<_> = reg.models.iter().filter(|m| m.fibration == Fibration::Elliptic).collect();
    if models.is_empty() {
        return Err(Error::Precondition("the registry has no elliptic model".into()));
    }
    for m in models {
        r.extend(verify_deg18_relations(m)?);
    }
    Ok(r)
}

fn monodromy_derivation(reg: &Registry) -> Result<Report> {
    let mut r = Report::new("monodromy-derivation");
    let models: Vec<_> = reg.models.iter().filter(|m| m.fibration == Fibration::K3).collect();
    if models.is_empty() {
        return Err(Error::Precondition("the registry has no K3-fibred model".into()));
    }
    for m in models {
        r.extend(verify_k3_model(m)?);
    }
    for a in attribute_printed_periods(reg)? {
        r.push(Check::info(
            &format!("period-attribution-{}", a.label.replace(' ', "-")),
            &format!("model whose periods the {} reproduces", a.label),
            format!(
                "stated {}, matches {}, differing entries {:?}",
                a.stated_model, a.best_model, a.mismatched_entries
            ),
        ));
    }
    Ok(r)
}

fn random_spectral_data(rng: &mut ChaCha8Rng, geom: &BaseSurfaceData) -> Result<SpectralData> {
    SpectralData::new(rng.gen_range(1..=6), random_base_class(rng, geom), frac(rng.gen_range(-5..=5), 2))
}

fn spectral(reg: &Registry) -> Result<Report> {
    let mut r = Report::new("spectral");
    for (i, (name, geom)) in reg.geometries.iter().enumerate() {
        let mut g = rng(800 + i as u64);
        let data = (0..SAMPLES).map(|_| random_spectral_data(&mut g, geom)).collect::<Result<Vec<_>>>()?;
        let tdn = todd_n(geom);
        r.push(for_all(&format!("amended-t-{name}"), "ch(V) = M·(ch(i_*L)·Td(N))", &data, |sd| {
            Ok(ch_bundle_from_spectral(sd, geom)? == m_apply(&mul(&ch_spectral_sheaf(sd, geom)?, &tdn, geom)))
        }));
        r.push(for_all(&format!("amended-mismatch-{name}"), "the amended functor has no mismatch", &data, |sd| {
            Ok(amended_mismatch(sd, geom)?.is_zero())
        }));
        r.push(for_all(&format!("t-question-mismatch-{name}"), "mismatch of T? = n·c₁²/24", &data, |sd| {
            Ok(t_question_mismatch(sd, geom)? == rat(sd.n) * geom.c1_squared() * frac(1, 24))
        }));
        let closed = VerticalClass {
            s_class: geom.c1().scale(&frac(-1, 4)),
            a: geom.c1_squared() * frac(1, 96),
            ..VerticalClass::one(geom.rank())
        };
        r.push(Check::gate(
            &format!("sqrt-td-n-{name}"),
            "(1 − c₁/4 + c₁²/96)² = Td(N)",
            mul(&closed, &closed, geom) == tdn && series_power(&tdn, &frac(1, 2), geom)? == closed,
            closed.to_string(),
        ));
    }
    Ok(r)
}

fn moduli(reg: &Registry) -> Result<Report> {
    let mut r = Report::new("moduli");
    let violations = fmw_integrality_scan(20, 19);
    r.push(Check::gate(
        "fmw-integrality",
        "the spectral-bundle charges are integral for even n ≤ 20 and odd |a| ≤ 19",
        violations.is_empty(),
        format!("{violations:?}"),
    ));
    let fmw = fmw_bps_dictionary(2, 1)?;
    r.push(Check::gate(
        "fmw-rank-two",
        "the rank-2 bundle with η = c₁ has charge (2, 0, 0, 0, 0, −3)",
        fmw == BPSCharge::from_i64([2, 0, 0, 0, 0, -3]),
        format_vector(&fmw.to_vec()),
    ));
    let dim = dim_moduli_deg18(&fmw)?;
    r.push(Check::gate(
        "dimension-rank-two",
        "h¹(End V) = 11 for (2, 0, 0, ·, 0, −3)",
        dim == rat(11),
        dim.to_string(),
    ));
    r.push(Check::gate(
        "dimension-precondition",
        "the dimension formula rejects n4¹ ≠ 0",
        matches!(dim_moduli_deg18(&BPSCharge::from_i64([1, 1, 0, 0, 0, 0])), Err(Error::Precondition(_))),
        "",
    ));
    r.push(Check::gate("serre-index", "Σ(−1)ⁱ dim Extⁱ(V, V) = 0", serre_index().is_zero(), ""));
    let mut g = rng(900);
    let hodge: Vec<HodgeInput> = (0..SAMPLES)
        .map(|_| HodgeInput { h01: g.gen_range(0..50), h20: g.gen_range(0..50), h10: g.gen_range(0..50) })
        .collect();
    r.push(for_all(
        "ext-dimensions",
        "Ext¹_X(i_*L, i_*L) = h^{0,1} + h^{2,0}, h¹(End V) = h^{2,0} + h^{1,0}",
        &hodge,
        |h| {
            let e = ext_dimensions(h);
            Ok(e.ext1_on_cover == h.h01 && e.ext1_on_x == h.h01 + h.h20 && e.h1_end_v == h.h20 + h.h10)
        },
    ));
    for (i, (name, geom)) in reg.geometries.iter().enumerate() {
        let mut g = rng(1000 + i as u64);
        let data = (0..SAMPLES).map(|_| random_spectral_data(&mut g, geom)).collect::<Result<Vec<_>>>()?;
        r.push(for_all(
            &format!("c2-residual-{name}"),
            "−ch₂(V) − c₂(FMW) = ½λ²·n·η·(η − n c₁) F",
            &data,
            |sd| {
                let residual = c2_fmw_residual(sd, geom)?;
                let expected =
                    VerticalClass { a: c2_fmw_residual_closed_form(sd, geom), ..VerticalClass::zero(geom.rank()) };
                Ok(residual == expected)
            },
        ));
    }
    for m in reg.models.iter().filter(|m| m.fibration == Fibration::Elliptic) {
        let t1 = MultiPoly::var(Var::T1);
        let t2 = MultiPoly::var(Var::T2);
        let expected = t1.pow(2).scale(&rat(3)).add(&t1.mul(&t2).scale(&rat(2)));
        let got = duy_constraint(m, &BPSCharge::from_i64([0, 0, 1, 0, 0, 0]))?;
        r.push(Check::gate(
            &format!("{}-duy", m.name),
            "∫(t₁H + t₂L)²·L = 3t₁² + 2t₁t₂",
            got == expected,
            got.to_string(),
        ));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_sorted_and_unique() {
        let names = suite_names();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(names, sorted);
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &Registry::builtin()), Err(Error::UnknownName(_))));
    }

    #[test]
    fn builtin_registry_passes_every_suite() {
        let reports = run_all(&Registry::builtin());
        assert_eq!(reports.iter().map(|r| r.suite.as_str()).collect::<Vec<_>>(), suite_names());
        for r in &reports {
            for c in r.failures() {
                eprintln!("{} / {}: {}", r.suite, c.name, c.detail);
            }
        }
        assert!(reports.iter().all(Report::ok));
        // The absolute f-map identity is reported but does not hold.
        let f = &reports.iter().find(|r| r.suite == "f-maps").unwrap();
        let absolute = f.find("absolute-p2").unwrap();
        assert!(!absolute.gating && !absolute.passed());
        assert!(f.find("absolute-evaluated-p2").unwrap().passed());
    }
}
