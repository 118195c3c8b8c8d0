//! Closed-form fibrewise Fourier-Mukai transforms on charge vectors.
//!
//! Charges are [`VerticalClass`]es `(n, x, S, η, a, s)`.  All transforms
//! return the alternating sum `ch(S(·)) = Σ(−1)ⁱ ch(Sⁱ(·))`; the catalog in
//! [`catalog`] additionally records single-sheaf images with their sign.
//!
//! The closed forms are independently reproduced by the
//! Grothendieck-Riemann-Roch engine of [`crate::fibre_square`].

mod catalog;

pub(crate) use catalog::expected_images as catalog_expected_images;
pub use catalog::{canonical_catalog, catalog_for_curve, section_pushforward, CatalogEntry};

use crate::chow_elliptic::{self, series_power, todd_n, todd_x, BaseSurfaceData, K3Class, VerticalClass};
use crate::error::{Error, Result};
use crate::exact_core::{frac, rat, RMatrix, Rational};
use crate::report::{Check, Report};
use num_traits::Zero;

/// The six numerical invariants of a charge: `n = rk`, `d = ch₁·F`,
/// `s = ch₃`, `g = ch₁·σ·c₁`, `c = ch₂·σ`, `f = ch₂·c₁`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalInvariants {
    pub n: Rational,
    pub d: Rational,
    pub s: Rational,
    pub g: Rational,
    pub c: Rational,
    pub f: Rational,
}

impl NumericalInvariants {
    /// Computes the invariants through ring products.
    pub fn of(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<Self> {
        chow_elliptic::check_class(ch, geom)?;
        let k = geom.rank();
        let m = |u: &VerticalClass, v: &VerticalClass| chow_elliptic::vertical_mul(u, v, geom);
        let ch1 = ch.component(1);
        let ch2 = ch.component(2);
        let sigma = VerticalClass::sigma(k);
        let c1 = VerticalClass::c1(geom);
        Ok(Self {
            n: ch.r.clone(),
            d: m(&ch1, &VerticalClass::fibre(k)).s,
            s: ch.s.clone(),
            g: m(&m(&ch1, &sigma), &c1).s,
            c: m(&ch2, &sigma).s,
            f: m(&ch2, &c1).s,
        })
    }
}

/// Forward transform:
///
/// ```text
/// ch₀ = x
/// ch₁ = −nσ + η − ½x c₁
/// ch₂ = (½n c₁ − S)σ + (s − ½η·c₁ + x c₁²/12) F
/// ch₃ = −n c₁²/6 − a + ½c₁·S
/// ```
pub fn fm_forward(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    chow_elliptic::check_class(ch, geom)?;
    let c1 = geom.c1();
    let c1sq = geom.c1_squared();
    let (n, x) = (&ch.r, &ch.x);
    Ok(VerticalClass::new(
        x.clone(),
        -n,
        &ch.eta - &c1.scale(&(x * frac(1, 2))),
        &c1.scale(&(n * frac(1, 2))) - &ch.s_class,
        &ch.s - geom.pair(&ch.eta, c1) * frac(1, 2) + x * &c1sq * frac(1, 12),
        -(n * &c1sq * frac(1, 6)) - &ch.a + geom.pair(c1, &ch.s_class) * frac(1, 2),
    ))
}

/// Inverse transform:
///
/// ```text
/// ch₀ = x
/// ch₁ = −nσ + η + ½x c₁
/// ch₂ = (−½n c₁ − S)σ + (s + ½η·c₁ + x c₁²/12) F
/// ch₃ = −n c₁²/6 − a − ½c₁·S
/// ```
///
/// This is the form reproduced by the Riemann-Roch engine; it differs from
/// [`fm_inverse_as_printed`] by the term `x c₁²` in `ch₃`.
pub fn fm_inverse(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    chow_elliptic::check_class(ch, geom)?;
    let c1 = geom.c1();
    let c1sq = geom.c1_squared();
    let (n, x) = (&ch.r, &ch.x);
    Ok(VerticalClass::new(
        x.clone(),
        -n,
        &ch.eta + &c1.scale(&(x * frac(1, 2))),
        &(-&c1.scale(&(n * frac(1, 2)))) - &ch.s_class,
        &ch.s + geom.pair(&ch.eta, c1) * frac(1, 2) + x * &c1sq * frac(1, 12),
        -(n * &c1sq * frac(1, 6)) - &ch.a - geom.pair(c1, &ch.s_class) * frac(1, 2),
    ))
}

/// The inverse transform with the additional `+x c₁²` term in `ch₃` as it
/// appears in the literature.  It agrees with [`fm_inverse`] exactly when
/// `x·c₁² = 0` and is kept to document the discrepancy.
pub fn fm_inverse_as_printed(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    let mut out = fm_inverse(ch, geom)?;
    out.s += &ch.x * geom.c1_squared();
    Ok(out)
}

/// `fm_inverse(fm_forward(ch))`, which equals `−ch` (the composite is the
/// shift by one).
pub fn double_transform(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    fm_inverse(&fm_forward(ch, geom)?, geom)
}

/// Sign of the Todd-class power used by [`tdn_matrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TdSign {
    /// `Td(N)⁻¹`.
    Plus,
    /// `Td(N)` itself.
    Minus,
}

/// `Td(N⁻¹) = 1 + c₁/2 + c₁²/12`, the Todd class of the dual of the normal
/// bundle of the section (not the inverse of `Td(N)`).
pub fn todd_n_dual(geom: &BaseSurfaceData) -> VerticalClass {
    VerticalClass {
        s_class: geom.c1().scale(&frac(1, 2)),
        a: geom.c1_squared() * frac(1, 12),
        ..VerticalClass::one(geom.rank())
    }
}

/// The twisted charge `(−1)^p ch·(√Td(N))^{(−1)^{p+1}}` of a complex whose
/// only cohomology sheaf, with Chern character `ch`, sits in degree `p`.
pub fn twisted_charge(ch: &VerticalClass, shift_parity: i64, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    chow_elliptic::check_class(ch, geom)?;
    let even = shift_parity.rem_euclid(2) == 0;
    let exponent = if even { frac(-1, 2) } else { frac(1, 2) };
    let twist = series_power(&todd_n(geom), &exponent, geom)?;
    let out = chow_elliptic::vertical_mul(ch, &twist, geom);
    Ok(if even { out } else { -&out })
}

/// The Mukai charge `ch·√Td(X)`.
pub fn mukai_charge(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    chow_elliptic::check_class(ch, geom)?;
    let root = series_power(&todd_x(geom), &frac(1, 2), geom)?;
    Ok(chow_elliptic::vertical_mul(ch, &root, geom))
}

/// `M·(n, x, S, η, a, s) = (x, −n, η, −S, s, −a)`.
pub fn m_apply(ch: &VerticalClass) -> VerticalClass {
    VerticalClass::new(ch.x.clone(), -&ch.r, ch.eta.clone(), -&ch.s_class, ch.s.clone(), -&ch.a)
}

/// The matrix of [`m_apply`] on the coordinates `(n, x, S, η, a, s)`,
/// with `S` and `η` expanded in the basis of `H²(B)`.
pub fn m_matrix(geom: &BaseSurfaceData) -> RMatrix {
    let k = geom.rank();
    let dim = 2 * k + 4;
    let mut m = RMatrix::zeros(dim, dim);
    let mut set = |i: usize, j: usize, v: i64| m = m.with_entry(i, j, rat(v));
    set(0, 1, 1);
    set(1, 0, -1);
    for i in 0..k {
        set(2 + i, 2 + k + i, 1);
        set(2 + k + i, 2 + i, -1);
    }
    set(2 * k + 2, 2 * k + 3, 1);
    set(2 * k + 3, 2 * k + 2, -1);
    m
}

/// Matrix of multiplication by a class `1 + β₁ + β₂` pulled back from a base
/// with a single generator `ℓ`, `ℓ² = q·pt`, in the coordinates
/// `(n, x, S, η, a, s)`.
fn base_multiplication_matrix(beta1: &Rational, beta2: &Rational, q: &Rational) -> RMatrix {
    let mut m = RMatrix::identity(6);
    for (i, j, v) in [
        (2, 0, beta1.clone()),
        (3, 1, beta1.clone()),
        (4, 0, beta2.clone()),
        (4, 2, beta1 * q),
        (5, 1, beta2.clone()),
        (5, 3, beta1 * q),
    ] {
        m = m.with_entry(i, j, v);
    }
    m
}

/// Matrix of multiplication by `Td(N)` (`Minus`) or `Td(N)⁻¹` (`Plus`).
/// Only defined over a base with one-dimensional `H²`; use ring
/// multiplication otherwise.
pub fn tdn_matrix(geom: &BaseSurfaceData, sign: TdSign) -> Result<RMatrix> {
    if geom.rank() != 1 {
        return Err(Error::Representation(format!(
            "the Td(N) matrix needs a one-generator H²(B), this base has {} generators",
            geom.rank()
        )));
    }
    let td = match sign {
        TdSign::Minus => todd_n(geom),
        TdSign::Plus => series_power(&todd_n(geom), &rat(-1), geom)?,
    };
    let q = geom.intersection_form().get(0, 0).clone();
    Ok(base_multiplication_matrix(&td.s_class.0[0], &td.a, &q))
}

/// Checks, for a charge with `x = 0`,
/// `Td(N)·ch(Ŝ(V)) = M·ch(V)`, `Td(N⁻¹)·ch(S(V)) = M·ch(V)` and
/// `Q(Ŝ(V)) = M·Q(V)`.
pub fn verify_m_relations(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<Report> {
    chow_elliptic::check_class(ch, geom)?;
    if !ch.x.is_zero() {
        return Err(Error::Precondition(format!(
            "the M relations hold when V is fibrewise of degree 0, but x = {}",
            ch.x
        )));
    }
    let m = |u: &VerticalClass, v: &VerticalClass| chow_elliptic::vertical_mul(u, v, geom);
    let target = m_apply(ch);
    let inverse = fm_inverse(ch, geom)?;
    let forward = fm_forward(ch, geom)?;
    let mut report = Report::new("m-relations");
    let lhs = m(&todd_n(geom), &inverse);
    report.push(Check::gate("td-n-inverse-fm", "Td(N)·ch(Ŝ(V)) = M·ch(V)", lhs == target, lhs.to_string()));
    let lhs = m(&todd_n_dual(geom), &forward);
    report.push(Check::gate("td-n-dual-forward-fm", "Td(N⁻¹)·ch(S(V)) = M·ch(V)", lhs == target, lhs.to_string()));
    // Ŝ(V) is represented by ch(Ŝ(V)) = −ch(Ŝ¹(V)) placed in degree 1.
    let q_hat = twisted_charge(&-&inverse, 1, geom)?;
    let q_v = m_apply(&twisted_charge(ch, 0, geom)?);
    report.push(Check::gate("twisted-charge", "Q(Ŝ(V)) = M·Q(V)", q_hat == q_v, q_hat.to_string()));
    Ok(report)
}

/// The 4×4 fibre T-duality matrix on `(r, σ, F, pt)` of an elliptic K3.
pub fn k3_m_matrix() -> RMatrix {
    RMatrix::from_i64(&[&[0, 1, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]])
}

/// Applies [`k3_m_matrix`].
pub fn k3_fm(ch: &K3Class) -> K3Class {
    ch.apply(&k3_m_matrix())
}

#[cfg(test)]
mod tests;
