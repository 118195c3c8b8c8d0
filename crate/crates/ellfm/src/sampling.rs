//! Deterministic pseudo-random samples for the randomised identity checks.
//!
//! All sampling goes through a seeded ChaCha generator so every verification
//! run examines the same inputs.

use crate::chow_elliptic::{BaseClass, BaseSurfaceData, VerticalClass};
use crate::exact_core::{frac, rat, RMatrix, Rational};
use rand::Rng;

/// A small random rational `p/q` with `|p| ≤ 9`, `1 ≤ q ≤ 6`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

/// A small random integer in `[-n, n]` as a rational.
pub fn random_integer<R: Rng>(rng: &mut R, n: i64) -> Rational {
    rat(rng.gen_range(-n..=n))
}

/// A random base divisor class over `geom`.
pub fn random_base_class<R: Rng>(rng: &mut R, geom: &BaseSurfaceData) -> BaseClass {
    BaseClass((0..geom.rank()).map(|_| random_rational(rng)).collect())
}

/// A random vertical class with every slot populated.
pub fn random_class<R: Rng>(rng: &mut R, geom: &BaseSurfaceData) -> VerticalClass {
    VerticalClass::new(
        random_rational(rng),
        random_rational(rng),
        random_base_class(rng, geom),
        random_base_class(rng, geom),
        random_rational(rng),
        random_rational(rng),
    )
}

/// A random vertical class of fibre degree zero (`x = 0`).
pub fn random_degree_zero_class<R: Rng>(rng: &mut R, geom: &BaseSurfaceData) -> VerticalClass {
    VerticalClass { x: rat(0), ..random_class(rng, geom) }
}

/// A random unit series (degree-0 slot equal to one).
pub fn random_unit_series<R: Rng>(rng: &mut R, geom: &BaseSurfaceData) -> VerticalClass {
    VerticalClass { r: rat(1), ..random_class(rng, geom) }
}

/// A random integral 6-vector with entries in `[-n, n]`.
pub fn random_lattice_vector<R: Rng>(rng: &mut R, n: i64) -> Vec<Rational> {
    (0..6).map(|_| random_integer(rng, n)).collect()
}

/// Two synthetic base surfaces with unrelated numerical data, used to test
/// that base-independent identities really are base-independent: a
/// hyperbolic-plane base with `c₁ = (2, 2)`, `c₂ = 4`, and an indefinite
/// form `[[2, 1], [1, −3]]` with `c₁ = (1, −1)`, `c₂ = 7`.
pub fn synthetic_bases() -> Vec<BaseSurfaceData> {
    vec![
        BaseSurfaceData::new(
            vec!["f1".into(), "f2".into()],
            RMatrix::from_i64(&[&[0, 1], &[1, 0]]),
            BaseClass::from_i64(&[2, 2]),
            rat(4),
        )
        .expect("valid synthetic base"),
        BaseSurfaceData::new(
            vec!["u".into(), "v".into()],
            RMatrix::from_i64(&[&[2, 1], &[1, -3]]),
            BaseClass::from_i64(&[1, -1]),
            rat(7),
        )
        .expect("valid synthetic base"),
    ]
}
