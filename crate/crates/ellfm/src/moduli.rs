//! Index and moduli-dimension formulas.
//!
//! Every formula takes numbers that have already been paired in the ring;
//! the helpers that do the pairing (`c2_fmw`, `duy_constraint`) return ring
//! elements or polynomials.

use crate::chow_elliptic::{BaseClass, BaseSurfaceData, VerticalClass};
use crate::error::{Error, Result};
use crate::exact_core::{frac, is_integer, rat, MultiPoly, Rational, Var};
use crate::models::{lattice::triple_poly, BPSCharge, Fibration, ModelDefinition};
use crate::spectral::{ch_bundle_from_spectral, SpectralData};
use num_traits::{Signed, Zero};
use serde::Serialize;

/// Hodge numbers of a spectral cover `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HodgeInput {
    pub h01: u64,
    pub h20: u64,
    pub h10: u64,
}

impl std::fmt::Display for HodgeInput {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "h01 = {}, h20 = {}, h10 = {}", self.h01, self.h20, self.h10)
    }
}

/// `Σ (−1)ⁱ dim Extⁱ(V, V)`, which vanishes on a Calabi-Yau threefold by
/// Serre duality and the self-duality of `End V`.
pub fn serre_index() -> Rational {
    Rational::zero()
}

/// `Σ∫c₂(V) = 2·S2 + ∫σηc₁ − 4a`, with `S2 = ∫σ·ch₁²`.
pub fn c2_fixed_point_sum(s2: &Rational, eta_c1: &Rational, a: &Rational) -> Rational {
    rat(2) * s2 + eta_c1 - rat(4) * a
}

/// `dim M = r(V) − Σ∫c₂(V) + 2h^{1,0}(C)`.
pub fn dim_moduli_tau(rank: &Rational, c2sum: &Rational, h10: u64) -> Rational {
    rank - c2sum + rat(2) * rat(h10 as i64)
}

/// `h¹ = n6 − 3n2² + 6n4² + 4n2¹ − 2(n4²)²` for charges with `n4¹ = 0`.
pub fn dim_moduli_deg18(n: &BPSCharge) -> Result<Rational> {
    if !n.n4_1.is_zero() {
        return Err(Error::Precondition(format!(
            "the moduli dimension formula assumes n4^1 = 0, got n4^1 = {}",
            n.n4_1
        )));
    }
    Ok(&n.n6 - rat(3) * &n.n2_2 + rat(6) * &n.n4_2 + rat(4) * &n.n2_1 - rat(2) * &n.n4_2 * &n.n4_2)
}

/// The BPS vector of the rank-`n` spectral bundle with `η = a·c₁(B)`:
/// `(n, 0, 0, 0, (3(n³ − n) + 9a(a − n)n)/8, −3a)`.
pub fn fmw_bps_dictionary(n: i64, a: i64) -> Result<BPSCharge> {
    if n <= 0 || n % 2 != 0 {
        return Err(Error::Parity(format!("the rank must be even and positive, got {n}")));
    }
    if a % 2 == 0 {
        return Err(Error::Parity(format!("a must be odd, got {a}")));
    }
    let n2_1 = frac(3 * (n * n * n - n) + 9 * a * (a - n) * n, 8);
    Ok(BPSCharge { n6: rat(n), n4_1: rat(0), n4_2: rat(0), n0: rat(0), n2_1, n2_2: rat(-3 * a) })
}

/// One point of the integrality scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanViolation {
    pub n: i64,
    pub a: i64,
    pub reason: String,
}

/// Scans even `n ∈ [2, max_n]` and odd `a` with `|a| ≤ max_a`: the FMW
/// dictionary must be integral and its moduli dimension a nonnegative
/// integer.  Returns the violations (none are expected).
pub fn fmw_integrality_scan(max_n: i64, max_a: i64) -> Vec<ScanViolation> {
    let mut out = Vec::new();
    for n in (2..=max_n).step_by(2) {
        for a in (-max_a..=max_a).filter(|a| a % 2 != 0) {
            let bps = match fmw_bps_dictionary(n, a) {
                Ok(b) => b,
                Err(e) => {
                    out.push(ScanViolation { n, a, reason: e.to_string() });
                    continue;
                }
            };
            if !is_integer(&bps.n2_1) {
                out.push(ScanViolation { n, a, reason: format!("n2^1 = {} is not an integer", bps.n2_1) });
            }
            match dim_moduli_deg18(&bps) {
                Ok(d) if is_integer(&d) && !d.is_negative() => {}
                Ok(d) => out.push(ScanViolation { n, a, reason: format!("dimension {d}") }),
                Err(e) => out.push(ScanViolation { n, a, reason: e.to_string() }),
            }
        }
    }
    out
}

/// `c₂(V) = ησ − ((n³ − n)/24)c₁² − (n/8)η(η − nc₁)` as a degree-4 class.
pub fn c2_fmw(rank: i64, eta: &BaseClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    geom.check_class(eta)?;
    let n = rat(rank);
    let shifted = eta - &geom.c1().scale(&n);
    let fibre = -frac(rank * rank * rank - rank, 24) * geom.c1_squared() - &n * frac(1, 8) * geom.pair(eta, &shifted);
    Ok(VerticalClass { eta: eta.clone(), a: fibre, ..VerticalClass::zero(geom.rank()) })
}

/// `−ch₂` of the spectral bundle minus [`c2_fmw`]: the fibre-class
/// coefficient by which the two differ (the section parts always agree).
pub fn c2_fmw_residual(sd: &SpectralData, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    let ch = ch_bundle_from_spectral(sd, geom)?;
    let c2 = -&ch.component(2);
    Ok(&c2 - &c2_fmw(sd.n, &sd.eta, geom)?)
}

/// `½λ²·n·η(η − nc₁)`, the closed form of [`c2_fmw_residual`].
pub fn c2_fmw_residual_closed_form(sd: &SpectralData, geom: &BaseSurfaceData) -> Rational {
    let n = rat(sd.n);
    let shifted = &sd.eta - &geom.c1().scale(&n);
    &sd.lambda * &sd.lambda * frac(1, 2) * n * geom.pair(&sd.eta, &shifted)
}

/// Extension-group dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtDimensions {
    /// `dim Ext¹_C(L, L) = h^{0,1}(C)`.
    pub ext1_on_cover: u64,
    /// `dim Ext¹_X(i_*L, i_*L) = h^{0,1}(C) + h^{2,0}(C)`.
    pub ext1_on_x: u64,
    /// `h¹(End V) = h^{2,0}(C) + h^{1,0}(C)`.
    pub h1_end_v: u64,
}

pub fn ext_dimensions(h: &HodgeInput) -> ExtDimensions {
    ExtDimensions { ext1_on_cover: h.h01, ext1_on_x: h.h01 + h.h20, h1_end_v: h.h20 + h.h10 }
}

/// `∫(t1·H + t2·L)²·n4²·L`, which must vanish for a solution of the
/// Donaldson-Uhlenbeck-Yau equations; equals `(3t1² + 2t1t2)·n4²`.
pub fn duy_constraint(m: &ModelDefinition, n: &BPSCharge) -> Result<MultiPoly> {
    if m.fibration != Fibration::Elliptic {
        return Err(Error::Precondition(format!("the stability constraint needs an elliptic model, not {}", m.name)));
    }
    let h = m.divisor("H")?;
    let l = m.divisor("L")?;
    let t: Vec<MultiPoly> =
        (0..2).map(|i| MultiPoly::var(Var::T1).scale(&h[i]).add(&MultiPoly::var(Var::T2).scale(&l[i]))).collect();
    let l_poly: Vec<MultiPoly> = l.iter().cloned().map(MultiPoly::constant).collect();
    Ok(triple_poly(m, &t, &t, &l_poly).scale(&n.n4_2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Registry;

    fn p2() -> BaseSurfaceData {
        BaseSurfaceData::projective_plane()
    }

    #[test]
    fn serre_index_vanishes() {
        assert!(serre_index().is_zero());
    }

    #[test]
    fn fixed_point_sum_and_dimension() {
        assert!(c2_fixed_point_sum(&rat(0), &rat(0), &rat(0)).is_zero());
        assert_eq!(c2_fixed_point_sum(&rat(0), &rat(3), &rat(1)), rat(-1));
        assert_eq!(c2_fixed_point_sum(&rat(2), &rat(0), &rat(0)), rat(4));
        assert_eq!(dim_moduli_tau(&rat(2), &rat(0), 0), rat(2));
        assert_eq!(dim_moduli_tau(&rat(2), &rat(0), 3), rat(8));
        let c2 = c2_fixed_point_sum(&rat(0), &rat(3), &rat(1));
        assert_eq!(dim_moduli_tau(&rat(2), &c2, 1), rat(5));
    }

    #[test]
    fn deg18_dimension() {
        assert_eq!(dim_moduli_deg18(&BPSCharge::from_i64([2, 0, 0, 7, 0, -3])).unwrap(), rat(11));
        assert_eq!(dim_moduli_deg18(&BPSCharge::from_i64([1, 0, 0, 0, 0, 0])).unwrap(), rat(1));
        let one = dim_moduli_deg18(&BPSCharge::from_i64([0, 0, 1, 0, 0, 0])).unwrap();
        let two = dim_moduli_deg18(&BPSCharge::from_i64([0, 0, 2, 0, 0, 0])).unwrap();
        assert_eq!((one.clone(), two.clone()), (rat(4), rat(4)));
        assert_ne!(two, one * rat(2));
        let err = dim_moduli_deg18(&BPSCharge::from_i64([1, 1, 0, 0, 0, 0])).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref s) if s.contains("n4^1 = 0")));
    }

    #[test]
    fn fmw_dictionary() {
        assert_eq!(fmw_bps_dictionary(2, 1).unwrap(), BPSCharge::from_i64([2, 0, 0, 0, 0, -3]));
        let b = fmw_bps_dictionary(4, 1).unwrap();
        assert_eq!((b.n2_1, b.n2_2), (rat(9), rat(-3)));
        assert!(matches!(fmw_bps_dictionary(3, 1), Err(Error::Parity(_))));
        assert!(matches!(fmw_bps_dictionary(2, 2), Err(Error::Parity(_))));
        assert!(matches!(fmw_bps_dictionary(0, 1), Err(Error::Parity(_))));
        assert_eq!(dim_moduli_deg18(&fmw_bps_dictionary(2, 1).unwrap()).unwrap(), rat(11));
    }

    #[test]
    fn integrality_scan_is_clean() {
        assert_eq!(fmw_integrality_scan(20, 19), vec![]);
    }

    #[test]
    fn c2_of_spectral_bundles() {
        let g = p2();
        assert!(c2_fmw(1, &BaseClass::from_i64(&[0]), &g).unwrap().is_zero());
        let c = c2_fmw(2, &BaseClass::from_i64(&[3]), &g).unwrap();
        assert_eq!(c.eta.0, vec![rat(3)]);
        // −(6/24)·9 − (2/8)·3·(3 − 6)
        assert_eq!(c.a, frac(-9, 4) + frac(9, 4));
        for (n, eta, lambda) in [(2, 6, frac(1, 2)), (3, 4, frac(-3, 2)), (2, 4, frac(1, 2)), (4, 5, frac(1, 2))] {
            let sd = SpectralData::new(n, BaseClass::from_i64(&[eta]), lambda).unwrap();
            let res = c2_fmw_residual(&sd, &g).unwrap();
            assert!(res.eta.is_zero());
            assert_eq!(res.a, c2_fmw_residual_closed_form(&sd, &g), "n = {n}, η = {eta}");
        }
    }

    #[test]
    fn ext_dimension_identities() {
        let z = ext_dimensions(&HodgeInput { h01: 0, h20: 0, h10: 0 });
        assert_eq!(z, ExtDimensions { ext1_on_cover: 0, ext1_on_x: 0, h1_end_v: 0 });
        let e = ext_dimensions(&HodgeInput { h01: 3, h20: 5, h10: 3 });
        assert_eq!((e.ext1_on_x, e.h1_end_v), (8, 8));
        assert_eq!(e.ext1_on_x - e.ext1_on_cover, 5);
    }

    #[test]
    fn duy_constraint_polynomial() {
        let reg = Registry::builtin();
        let m = reg.model("deg18").unwrap();
        assert!(duy_constraint(m, &BPSCharge::from_i64([1, 0, 0, 0, 0, 0])).unwrap().is_zero());
        let one = duy_constraint(m, &BPSCharge::from_i64([0, 0, 1, 0, 0, 0])).unwrap();
        assert_eq!(one, "3*t1^2 + 2*t1*t2".parse().unwrap());
        let five = duy_constraint(m, &BPSCharge::from_i64([0, 0, 5, 0, 0, 0])).unwrap();
        assert_eq!(five, one.scale(&rat(5)));
        assert!(duy_constraint(reg.model("deg8").unwrap(), &BPSCharge::zero()).is_err());
    }
}
