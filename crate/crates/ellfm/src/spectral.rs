//! Spectral-cover Chern characters.
//!
//! A bundle `V` of rank `n` built from a spectral cover `C = nσ + π*η`
//! with line bundle `L` on `C` is the transform of `i_*L`, where
//! `c₁(L) = (C + c₁)/2 + γ` and `γ = λ(nσ − π*η + nπ*c₁)` lies in the
//! kernel of `π_*`.  All pushforwards `i_*` are realised as products with
//! `C` inside the vertical ring.

use crate::chow_elliptic::{self, exp_divisor, series_power, todd_n, BaseClass, BaseSurfaceData, VerticalClass};
use crate::error::{Error, Result};
use crate::exact_core::{frac, is_integer, rat, Rational};
use crate::fm_charges::m_apply;

/// Spectral data `(n, η, λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralData {
    pub n: i64,
    pub eta: BaseClass,
    pub lambda: Rational,
}

impl std::fmt::Display for SpectralData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n = {}, η = {}, λ = {}", self.n, self.eta, self.lambda)
    }
}

impl SpectralData {
    /// Validates `n > 0` and `2λ ∈ ℤ`.
    pub fn new(n: i64, eta: BaseClass, lambda: Rational) -> Result<Self> {
        if n <= 0 {
            return Err(Error::Precondition(format!("the cover degree must be positive, got {n}")));
        }
        if !is_integer(&(&lambda * rat(2))) {
            return Err(Error::Precondition(format!("λ must be half-integral, got {lambda}")));
        }
        Ok(Self { n, eta, lambda })
    }

    fn check(&self, geom: &BaseSurfaceData) -> Result<()> {
        geom.check_class(&self.eta)
    }

    /// The cover class `C = nσ + π*η`.
    pub fn cover_class(&self) -> VerticalClass {
        let k = self.eta.len();
        &VerticalClass::sigma(k).scale(&rat(self.n)) + &VerticalClass::pullback(&self.eta)
    }
}

/// `γ = λ(nσ − π*η + nπ*c₁)`.
pub fn gamma_class(sd: &SpectralData, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    sd.check(geom)?;
    let k = geom.rank();
    let n = rat(sd.n);
    let base = &geom.c1().scale(&n) - &sd.eta;
    Ok((&VerticalClass::sigma(k).scale(&n) + &VerticalClass::pullback(&base)).scale(&sd.lambda))
}

/// `ch(i_*L) = C·(1 + c₁/2 + γ + (C² + 3c₁²)/24 + γ(c₁ + γ)/2)`.
pub fn ch_spectral_sheaf(sd: &SpectralData, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    let gamma = gamma_class(sd, geom)?;
    let m = |u: &VerticalClass, v: &VerticalClass| chow_elliptic::vertical_mul(u, v, geom);
    let k = geom.rank();
    let c = sd.cover_class();
    let c1 = VerticalClass::c1(geom);
    let degree_one = &c1.scale(&frac(1, 2)) + &gamma;
    let degree_two = &(&m(&c, &c) + &m(&c1, &c1).scale(&rat(3))).scale(&frac(1, 24))
        + &m(&gamma, &(&c1 + &gamma)).scale(&frac(1, 2));
    let series = &(&VerticalClass::one(k) + &degree_one) + &degree_two;
    Ok(m(&c, &series))
}

/// `ch(V) = (n, 0, 0, −η, ∫C·(C²/24 + γ²/2) − n c₁²/24, λ η·(η − n c₁))`.
pub fn ch_bundle_from_spectral(sd: &SpectralData, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    let gamma = gamma_class(sd, geom)?;
    let m = |u: &VerticalClass, v: &VerticalClass| chow_elliptic::vertical_mul(u, v, geom);
    let c = sd.cover_class();
    let n = rat(sd.n);
    let inner = &m(&c, &c).scale(&frac(1, 24)) + &m(&gamma, &gamma).scale(&frac(1, 2));
    let fibre_part = chow_elliptic::integrate(&m(&c, &inner)) - &n * geom.c1_squared() * frac(1, 24);
    let twisted = &sd.eta - &geom.c1().scale(&n);
    let top = &sd.lambda * geom.pair(&sd.eta, &twisted);
    Ok(VerticalClass::new(n, rat(0), BaseClass::zero(geom.rank()), -&sd.eta, fibre_part, top))
}

/// `ch(T?(V)) = ch(i_*L ⊗ π*K_B^{1/2}) = ch(i_*L)·exp(−c₁/2)`, the
/// K3-style T-functor.
pub fn t_question_charge(sd: &SpectralData, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    let half_kb = exp_divisor(&VerticalClass::c1(geom).scale(&frac(-1, 2)), geom)?;
    Ok(chow_elliptic::vertical_mul(&ch_spectral_sheaf(sd, geom)?, &half_kb, geom))
}

/// `M⁻¹·v = −M·v`.
fn m_inverse_apply(v: &VerticalClass) -> VerticalClass {
    -&m_apply(v)
}

/// The point-class discrepancy between `ch(T?(V))` and `M⁻¹·ch(V)`; equals
/// `n c₁²/24`.
pub fn t_question_mismatch(sd: &SpectralData, geom: &BaseSurfaceData) -> Result<Rational> {
    let t = t_question_charge(sd, geom)?;
    let target = m_inverse_apply(&ch_bundle_from_spectral(sd, geom)?);
    Ok(&t.s - &target.s)
}

/// `ch(T(i_*L)) = ch(V)·ch(Y)` for the amended functor with
/// `ch(Y) = Td(N)⁻¹`.
pub fn amended_t_charge(sd: &SpectralData, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    let y = series_power(&todd_n(geom), &rat(-1), geom)?;
    Ok(chow_elliptic::vertical_mul(&ch_bundle_from_spectral(sd, geom)?, &y, geom))
}

/// The point-class discrepancy between `M⁻¹·ch(T(i_*L))` and `ch(i_*L)`
/// for the amended functor; identically zero.
pub fn amended_mismatch(sd: &SpectralData, geom: &BaseSurfaceData) -> Result<Rational> {
    let lhs = m_inverse_apply(&amended_t_charge(sd, geom)?);
    Ok(&lhs.s - &ch_spectral_sheaf(sd, geom)?.s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow_elliptic::pi_pushforward;
    use crate::fibre_square::{ch_poincare, grr_transform, Direction};
    use crate::fm_charges::fm_forward;
    use crate::sampling::{random_base_class, synthetic_bases};
    use num_traits::Zero;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p2() -> BaseSurfaceData {
        BaseSurfaceData::projective_plane()
    }

    fn geometries() -> Vec<BaseSurfaceData> {
        std::iter::once(p2()).chain(synthetic_bases()).collect()
    }

    fn ell(c: i64) -> BaseClass {
        BaseClass::from_i64(&[c])
    }

    fn random_data(rng: &mut ChaCha8Rng, g: &BaseSurfaceData) -> SpectralData {
        let n = rng.gen_range(1..7);
        let lambda = frac(rng.gen_range(-5..6), 2);
        SpectralData::new(n, random_base_class(rng, g), lambda).unwrap()
    }

    fn v(r: Rational, x: Rational, s: Rational, eta: Rational, a: Rational, pt: Rational) -> VerticalClass {
        VerticalClass::new(r, x, BaseClass(vec![s]), BaseClass(vec![eta]), a, pt)
    }

    #[test]
    fn validation() {
        assert!(SpectralData::new(0, ell(1), rat(0)).is_err());
        assert!(SpectralData::new(2, ell(1), frac(1, 3)).is_err());
        assert!(SpectralData::new(2, ell(1), frac(-3, 2)).is_ok());
        let sd = SpectralData::new(2, BaseClass::from_i64(&[1, 1]), rat(0)).unwrap();
        assert!(gamma_class(&sd, &p2()).is_err());
    }

    #[test]
    fn gamma_examples() {
        let g = p2();
        let sd = SpectralData::new(3, ell(4), rat(0)).unwrap();
        assert!(gamma_class(&sd, &g).unwrap().is_zero());
        let sd = SpectralData::new(2, ell(6), frac(1, 2)).unwrap();
        assert_eq!(gamma_class(&sd, &g).unwrap(), VerticalClass::sigma(1));
    }

    #[test]
    fn gamma_lies_in_kernel_of_pushforward() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for g in geometries() {
            for _ in 0..10 {
                let sd = random_data(&mut rng, &g);
                let prod = chow_elliptic::vmul(&sd.cover_class(), &gamma_class(&sd, &g).unwrap(), &g).unwrap();
                let push = pi_pushforward(&prod);
                assert!(push.h0.is_zero() && push.h2.is_zero() && push.h4.is_zero());
            }
        }
    }

    #[test]
    fn spectral_sheaf_examples() {
        let g = p2();
        let sd = SpectralData::new(2, ell(6), frac(1, 2)).unwrap();
        let ch = ch_spectral_sheaf(&sd, &g).unwrap();
        assert_eq!(ch, v(rat(0), rat(2), rat(6), rat(3), rat(9), frac(21, 4)));
        let sd = SpectralData::new(3, ell(4), frac(-3, 2)).unwrap();
        let ch = ch_spectral_sheaf(&sd, &g).unwrap();
        assert_eq!(ch, v(rat(0), rat(3), rat(4), frac(9, 2), rat(-24), frac(147, 2)));
        // λ = 0: the degree-two part is C·c₁/2
        let sd = SpectralData::new(3, ell(9), rat(0)).unwrap();
        let ch = ch_spectral_sheaf(&sd, &g).unwrap();
        let half = chow_elliptic::vmul(&sd.cover_class(), &VerticalClass::c1(&g).scale(&frac(1, 2)), &g).unwrap();
        assert_eq!(ch.component(2), half.component(2));
        assert_eq!(ch.component(1), sd.cover_class());
    }

    #[test]
    fn bundle_examples() {
        let g = p2();
        let sd = SpectralData::new(2, ell(6), frac(1, 2)).unwrap();
        assert_eq!(ch_bundle_from_spectral(&sd, &g).unwrap(), v(rat(2), rat(0), rat(0), rat(-6), frac(9, 4), rat(0)));
        let sd = SpectralData::new(3, ell(4), frac(-3, 2)).unwrap();
        assert_eq!(ch_bundle_from_spectral(&sd, &g).unwrap(), v(rat(3), rat(0), rat(0), rat(-4), rat(69), rat(30)));
        let sd = SpectralData::new(3, ell(4), rat(0)).unwrap();
        assert!(ch_bundle_from_spectral(&sd, &g).unwrap().s.is_zero());
    }

    #[test]
    fn bundle_is_transform_of_spectral_sheaf() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for g in geometries() {
            let kernel = ch_poincare(&g);
            for _ in 0..10 {
                let sd = random_data(&mut rng, &g);
                let il = ch_spectral_sheaf(&sd, &g).unwrap();
                let vb = ch_bundle_from_spectral(&sd, &g).unwrap();
                assert_eq!(vb.eta, -&sd.eta);
                assert_eq!(fm_forward(&il, &g).unwrap(), vb);
                assert_eq!(grr_transform(&il, &kernel, Direction::Forward, &g).unwrap(), vb);
                let twisted = chow_elliptic::vmul(&il, &todd_n(&g), &g).unwrap();
                assert_eq!(m_apply(&twisted), vb);
            }
        }
    }

    #[test]
    fn t_question_mismatch_is_n_c1_squared_over_24() {
        let g = p2();
        let sd = SpectralData::new(2, ell(6), frac(1, 2)).unwrap();
        assert_eq!(t_question_mismatch(&sd, &g).unwrap(), frac(3, 4));
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for g in geometries() {
            for _ in 0..10 {
                let sd = random_data(&mut rng, &g);
                let expected = rat(sd.n) * g.c1_squared() * frac(1, 24);
                assert_eq!(t_question_mismatch(&sd, &g).unwrap(), expected);
                assert!(amended_mismatch(&sd, &g).unwrap().is_zero());
                let il = ch_spectral_sheaf(&sd, &g).unwrap();
                assert_eq!(amended_t_charge(&sd, &g).unwrap(), m_apply(&il));
            }
        }
    }
}
