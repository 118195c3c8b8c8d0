//! Vertical classes and their ring structure.

use super::{BaseClass, BaseSurfaceData};
use crate::error::{Error, Result};
use crate::exact_core::{frac, rat, Rational};
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// An element of the vertical cohomology `H^even(X)`.
///
/// The six slots are, in order, the coefficient of `1`, of `σ`, the class
/// `S` with `π*S`, the class `η` with `σ·π*η`, the coefficient `a` of the
/// fibre class `F`, and the coefficient `s` of the point class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VerticalClass {
    pub r: Rational,
    pub x: Rational,
    pub s_class: BaseClass,
    pub eta: BaseClass,
    pub a: Rational,
    pub s: Rational,
}

impl fmt::Display for VerticalClass {
    /// `(r, x, S, η, a, s)` with rationals as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}, {}, {})", self.r, self.x, self.s_class, self.eta, self.a, self.s)
    }
}

impl VerticalClass {
    pub fn new(r: Rational, x: Rational, s_class: BaseClass, eta: BaseClass, a: Rational, s: Rational) -> Self {
        assert_eq!(s_class.len(), eta.len(), "S and eta over different bases");
        Self { r, x, s_class, eta, a, s }
    }

    /// The zero class over a base with `k` generators.
    pub fn zero(k: usize) -> Self {
        Self::new(
            Rational::zero(),
            Rational::zero(),
            BaseClass::zero(k),
            BaseClass::zero(k),
            Rational::zero(),
            Rational::zero(),
        )
    }

    /// The unit `1 ∈ H⁰`.
    pub fn one(k: usize) -> Self {
        Self { r: Rational::one(), ..Self::zero(k) }
    }

    /// The scalar `c ∈ H⁰`.
    pub fn scalar(k: usize, c: Rational) -> Self {
        Self { r: c, ..Self::zero(k) }
    }

    /// The section class `σ`.
    pub fn sigma(k: usize) -> Self {
        Self { x: Rational::one(), ..Self::zero(k) }
    }

    /// The fibre class `F`.
    pub fn fibre(k: usize) -> Self {
        Self { a: Rational::one(), ..Self::zero(k) }
    }

    /// The point class.
    pub fn point(k: usize) -> Self {
        Self { s: Rational::one(), ..Self::zero(k) }
    }

    /// `π*α` for a base divisor class `α`.
    pub fn pullback(alpha: &BaseClass) -> Self {
        Self { s_class: alpha.clone(), ..Self::zero(alpha.len()) }
    }

    /// `σ·π*α` for a base divisor class `α`.
    pub fn sigma_pullback(alpha: &BaseClass) -> Self {
        Self { eta: alpha.clone(), ..Self::zero(alpha.len()) }
    }

    /// `π*c₁(B)`.
    pub fn c1(geom: &BaseSurfaceData) -> Self {
        Self::pullback(geom.c1())
    }

    /// Number of generators of `H²(B)` this class is written over.
    pub fn base_rank(&self) -> usize {
        self.s_class.len()
    }

    /// Flattens to `(r, x, S…, η…, a, s)`.
    pub fn to_vec(&self) -> Vec<Rational> {
        let mut v = vec![self.r.clone(), self.x.clone()];
        v.extend(self.s_class.0.iter().cloned());
        v.extend(self.eta.0.iter().cloned());
        v.push(self.a.clone());
        v.push(self.s.clone());
        v
    }

    /// Inverse of [`VerticalClass::to_vec`] for a base with `k` generators.
    pub fn from_vec(k: usize, v: &[Rational]) -> Result<Self> {
        if v.len() != 2 * k + 4 {
            return Err(Error::Shape(format!(
                "a vertical class over a rank-{k} base has {} slots, got {}",
                2 * k + 4,
                v.len()
            )));
        }
        Ok(Self::new(
            v[0].clone(),
            v[1].clone(),
            BaseClass(v[2..2 + k].to_vec()),
            BaseClass(v[2 + k..2 + 2 * k].to_vec()),
            v[2 + 2 * k].clone(),
            v[3 + 2 * k].clone(),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
            && self.x.is_zero()
            && self.s_class.is_zero()
            && self.eta.is_zero()
            && self.a.is_zero()
            && self.s.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(&self.r * k, &self.x * k, self.s_class.scale(k), self.eta.scale(k), &self.a * k, &self.s * k)
    }

    /// The part of complex codimension `p` (0 to 3).
    pub fn component(&self, p: usize) -> Self {
        let k = self.base_rank();
        let mut out = Self::zero(k);
        match p {
            0 => out.r = self.r.clone(),
            1 => {
                out.x = self.x.clone();
                out.s_class = self.s_class.clone();
            }
            2 => {
                out.eta = self.eta.clone();
                out.a = self.a.clone();
            }
            3 => out.s = self.s.clone(),
            _ => {}
        }
        out
    }

    /// True when the class is concentrated in complex codimension `p`.
    pub fn is_pure(&self, p: usize) -> bool {
        *self == self.component(p)
    }

    /// Splits off the nilpotent part of a unit series: returns `v − 1`,
    /// failing unless the degree-0 slot equals one.
    fn nilpotent_part(&self) -> Result<Self> {
        if !self.r.is_one() {
            return Err(Error::Series(format!("degree-0 part is {} but a unit series needs 1", self.r)));
        }
        Ok(Self { r: Rational::zero(), ..self.clone() })
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let bf = |p: &BaseClass, q: &BaseClass| {
            assert_eq!(p.len(), q.len(), "vertical classes over different bases");
            BaseClass(p.0.iter().zip(&q.0).map(|(a, b)| f(a, b)).collect())
        };
        Self::new(
            f(&self.r, &other.r),
            f(&self.x, &other.x),
            bf(&self.s_class, &other.s_class),
            bf(&self.eta, &other.eta),
            f(&self.a, &other.a),
            f(&self.s, &other.s),
        )
    }
}

impl Add for &VerticalClass {
    type Output = VerticalClass;
    fn add(self, rhs: &VerticalClass) -> VerticalClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &VerticalClass {
    type Output = VerticalClass;
    fn sub(self, rhs: &VerticalClass) -> VerticalClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &VerticalClass {
    type Output = VerticalClass;
    fn neg(self) -> VerticalClass {
        self.scale(&-Rational::one())
    }
}

/// Checks that a class is written over the base of `geom`.
pub(crate) fn check(v: &VerticalClass, geom: &BaseSurfaceData) -> Result<()> {
    if v.s_class.len() != geom.rank() || v.eta.len() != geom.rank() {
        return Err(Error::Geometry(format!(
            "class written over a rank-{} base used with a rank-{} base",
            v.s_class.len(),
            geom.rank()
        )));
    }
    Ok(())
}

/// Ring product without shape checks; callers guarantee matching bases.
pub(crate) fn mul(u: &VerticalClass, v: &VerticalClass, geom: &BaseSurfaceData) -> VerticalClass {
    let c1 = geom.c1();
    let pair = |p: &BaseClass, q: &BaseClass| geom.pair(p, q);
    let r = &u.r * &v.r;
    let x = &u.r * &v.x + &u.x * &v.r;
    let s_class = &u.s_class.scale(&v.r) + &v.s_class.scale(&u.r);
    // σ² = −σ·π*c₁ sends the σ·σ term into the η slot.
    let eta = &(&(&u.eta.scale(&v.r) + &v.eta.scale(&u.r)) + &v.s_class.scale(&u.x))
        + &(&u.s_class.scale(&v.x) - &c1.scale(&(&u.x * &v.x)));
    let a = &u.r * &v.a + &u.a * &v.r + pair(&u.s_class, &v.s_class);
    let s = &u.r * &v.s
        + &u.s * &v.r
        + &u.x * (&v.a - pair(c1, &v.eta))
        + &v.x * (&u.a - pair(c1, &u.eta))
        + pair(&u.s_class, &v.eta)
        + pair(&v.s_class, &u.eta);
    VerticalClass::new(r, x, s_class, eta, a, s)
}

/// Ring product, truncated above the top degree.
pub fn vmul(u: &VerticalClass, v: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    check(u, geom)?;
    check(v, geom)?;
    Ok(mul(u, v, geom))
}

/// The coefficient of the point class.
pub fn integrate(v: &VerticalClass) -> Rational {
    v.s.clone()
}

/// A class on the base, graded as `H⁰(B) ⊕ H²(B) ⊕ H⁴(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseGraded {
    pub h0: Rational,
    pub h2: BaseClass,
    pub h4: Rational,
}

impl BaseGraded {
    /// `π*` of this base class, as a vertical class.
    pub fn pullback(&self) -> VerticalClass {
        VerticalClass {
            r: self.h0.clone(),
            s_class: self.h2.clone(),
            a: self.h4.clone(),
            ..VerticalClass::zero(self.h2.len())
        }
    }
}

/// Pushforward along the fibration: `π_*(σ) = 1`, `π_*(σ·π*α) = α`,
/// `π_*(pt) = pt_B`, and everything else maps to zero.
pub fn pi_pushforward(v: &VerticalClass) -> BaseGraded {
    BaseGraded { h0: v.x.clone(), h2: v.eta.clone(), h4: v.s.clone() }
}

/// `Td(X) = 1 + (12σc₁ + c₂ + 11c₁²)/12`.
pub fn todd_x(geom: &BaseSurfaceData) -> VerticalClass {
    let k = geom.rank();
    VerticalClass {
        r: rat(1),
        eta: geom.c1().clone(),
        a: (geom.c2() + rat(11) * geom.c1_squared()) / rat(12),
        ..VerticalClass::zero(k)
    }
}

/// Todd class of the relative tangent bundle,
/// `1 − c₁/2 + (13c₁² + 12σc₁)/12 − σc₁²/2`.
pub fn todd_rel(geom: &BaseSurfaceData) -> VerticalClass {
    let k = geom.rank();
    let c1sq = geom.c1_squared();
    VerticalClass {
        r: rat(1),
        s_class: geom.c1().scale(&frac(-1, 2)),
        eta: geom.c1().clone(),
        a: &c1sq * frac(13, 12),
        s: &c1sq * frac(-1, 2),
        ..VerticalClass::zero(k)
    }
}

/// Todd class of the normal bundle of the section, `1 − c₁/2 + c₁²/12`.
pub fn todd_n(geom: &BaseSurfaceData) -> VerticalClass {
    let k = geom.rank();
    VerticalClass {
        r: rat(1),
        s_class: geom.c1().scale(&frac(-1, 2)),
        a: geom.c1_squared() * frac(1, 12),
        ..VerticalClass::zero(k)
    }
}

/// Generalised binomial coefficient `C(p, j)` for rational `p`.
fn binomial_rational(p: &Rational, j: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc = acc * (p - rat(i64::from(i))) / rat(i64::from(i + 1));
    }
    acc
}

/// `v^p` for a unit series `v` and any rational exponent `p`, computed as
/// the binomial series of the nilpotent part (which vanishes to fourth order).
pub fn series_power(v: &VerticalClass, p: &Rational, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    check(v, geom)?;
    let n = v.nilpotent_part()?;
    let k = geom.rank();
    let mut acc = VerticalClass::one(k);
    let mut power = VerticalClass::one(k);
    for j in 1..=3 {
        power = mul(&power, &n, geom);
        acc = &acc + &power.scale(&binomial_rational(p, j));
    }
    Ok(acc)
}

/// The square root `w` of a unit series, with `w·w = v`.
pub fn series_sqrt(v: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    series_power(v, &frac(1, 2), geom)
}

/// The multiplicative inverse of a unit series.
pub fn series_inverse(v: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    series_power(v, &rat(-1), geom)
}

/// `exp(d) = 1 + d + d²/2 + d³/6` for a divisor class `d`.
pub fn exp_divisor(d: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    check(d, geom)?;
    if !d.is_pure(1) {
        return Err(Error::Grading("exponential needs a class of pure degree two (a divisor class)".into()));
    }
    let d2 = mul(d, d, geom);
    let d3 = mul(&d2, d, geom);
    let one = VerticalClass::one(geom.rank());
    Ok(&(&(&one + d) + &d2.scale(&frac(1, 2))) + &d3.scale(&frac(1, 6)))
}
