//! Frozen values through the public API, on the elliptic fibration over P².

use ellfm::chow_elliptic::{BaseClass, BaseSurfaceData, VerticalClass};
use ellfm::exact_core::{frac, rat, Rational};
use ellfm::fm_charges::{double_transform, fm_forward, fm_inverse};
use ellfm::models::Registry;
use ellfm::moduli::{dim_moduli_deg18, fmw_bps_dictionary};
use ellfm::suites::{run_suite, suite_names};

fn class(r: Rational, x: Rational, s: Rational, eta: Rational, a: Rational, pt: Rational) -> VerticalClass {
    VerticalClass::new(r, x, BaseClass(vec![s]), BaseClass(vec![eta]), a, pt)
}

#[test]
fn structure_sheaf_transforms() {
    let p2 = BaseSurfaceData::projective_plane();
    let o = VerticalClass::one(1);
    assert_eq!(fm_forward(&o, &p2).unwrap(), class(rat(0), rat(-1), rat(0), frac(3, 2), rat(0), frac(-3, 2)));
    assert_eq!(fm_inverse(&o, &p2).unwrap(), class(rat(0), rat(-1), rat(0), frac(-3, 2), rat(0), frac(-3, 2)));
}

#[test]
fn section_goes_to_a_rank_one_class() {
    let p2 = BaseSurfaceData::projective_plane();
    assert_eq!(
        fm_forward(&VerticalClass::sigma(1), &p2).unwrap(),
        class(rat(1), rat(0), frac(-3, 2), rat(0), frac(3, 4), rat(0))
    );
}

#[test]
fn point_and_fibre_are_exchanged() {
    let p2 = BaseSurfaceData::projective_plane();
    assert_eq!(fm_forward(&VerticalClass::point(1), &p2).unwrap(), VerticalClass::fibre(1));
    assert_eq!(fm_forward(&VerticalClass::fibre(1), &p2).unwrap(), -&VerticalClass::point(1));
}

#[test]
fn double_transform_is_minus_identity() {
    let p2 = BaseSurfaceData::projective_plane();
    let v = class(rat(2), frac(-1, 3), frac(5, 2), rat(-7), frac(1, 6), rat(4));
    assert_eq!(double_transform(&v, &p2).unwrap(), -&v);
}

#[test]
fn rank_two_spectral_bundle_moduli() {
    let n = fmw_bps_dictionary(2, 1).unwrap();
    assert_eq!(n.to_vec(), [2, 0, 0, 0, 0, -3].map(rat).to_vec());
    assert_eq!(dim_moduli_deg18(&n).unwrap(), rat(11));
}

#[test]
fn every_suite_passes_on_the_builtin_registry() {
    let reg = Registry::builtin();
    for name in suite_names() {
        let report = run_suite(name, &reg).unwrap();
        assert!(report.ok(), "{name}: {:?}", report.failures().map(|c| &c.name).collect::<Vec<_>>());
    }
}
