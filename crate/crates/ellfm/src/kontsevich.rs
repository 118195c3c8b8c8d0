//! Full Fourier-Mukai kernels on `X × X` at the level of charges.
//!
//! The transforms here are the monodromy building blocks: twists by line
//! bundles (kernel `O_Δ ⊗ L`), the kernel `O_{X×X}` (which only sees the
//! Euler characteristic), the ideal sheaf of the diagonal (the conifold
//! monodromy), the ideal sheaf of the fibre product inside `X × X`, and the
//! ideal sheaf of the diagonal of the fibre product.  The fibrewise inverse
//! transform factors as
//!
//! ```text
//! Ŝ = (⊗ q*K_B⁻²) ∘ (⊗ O(σ)) ∘ S_{j_*I} ∘ (⊗ O(σ)).
//! ```

use crate::chow_elliptic::{self, exp_divisor, todd_x, BaseSurfaceData, VerticalClass};
use crate::error::{Error, Result};
use crate::exact_core::{frac, rat, Rational};

/// A kernel on `X × X`, described by the effect of its transform on charges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelDescriptor {
    /// `O_Δ ⊗ q₂*O(d)` for a divisor class `d`: the twist by `O(d)`.
    DiagonalTwist(VerticalClass),
    /// The ideal sheaf `I_Δ` of the diagonal of `X × X`.
    DiagonalIdeal,
    /// The ideal sheaf `J` of `X ×_B X` inside `X × X`.
    FibreProductIdeal,
    /// `j_*I`, the ideal of the diagonal of `X ×_B X` pushed into `X × X`.
    FibreIdeal,
    /// The structure sheaf `O_{X×X}`.
    StructureProduct,
}

impl KernelDescriptor {
    /// The Chern character of the transform of a charge.
    pub fn apply(&self, ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
        match self {
            Self::DiagonalTwist(d) => line_bundle_twist(ch, d, geom),
            Self::DiagonalIdeal => ch_diagonal_ideal(ch, geom),
            Self::FibreProductIdeal => ch_j(ch, geom),
            Self::FibreIdeal => ch_fibre_ideal(ch, geom),
            Self::StructureProduct => Ok(VerticalClass::scalar(geom.rank(), euler_characteristic(ch, geom)?)),
        }
    }
}

/// `∫ ch·Td(X) = ch₃ + ch₁·c₂(X)/12`.
pub fn euler_characteristic(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<Rational> {
    chow_elliptic::check_class(ch, geom)?;
    Ok(chow_elliptic::integrate(&chow_elliptic::vertical_mul(ch, &todd_x(geom), geom)))
}

/// `ch·exp(d)` for a divisor class `d`.
pub fn line_bundle_twist(ch: &VerticalClass, d: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    chow_elliptic::check_class(ch, geom)?;
    let e = exp_divisor(d, geom)?;
    Ok(chow_elliptic::vertical_mul(ch, &e, geom))
}

/// The gamma shift `ch ↦ ch − (∫ch·Td(X))·1`.
pub fn gamma_shift(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    let chi = euler_characteristic(ch, geom)?;
    Ok(VerticalClass { r: &ch.r - chi, ..ch.clone() })
}

/// `ch(S_{I_Δ}(G)) = (∫ch·Td(X))·1 − ch`.
pub fn ch_diagonal_ideal(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    let chi = euler_characteristic(ch, geom)?;
    Ok(&VerticalClass::scalar(geom.rank(), chi) - ch)
}

/// `ch(S_J(G))`:
///
/// ```text
/// ch₀ = ∫ch·Td(X) − x
/// ch₁ = −n c₁ − η + ½x c₁
/// ch₂ = ((½n − x/12) c₁² − c₁·S + ½η·c₁ − s) F
/// ch₃ = 0
/// ```
pub fn ch_j(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    let chi = euler_characteristic(ch, geom)?;
    let c1 = geom.c1();
    let (n, x) = (&ch.r, &ch.x);
    Ok(VerticalClass {
        r: chi - x,
        s_class: &c1.scale(&(x * frac(1, 2) - n)) - &ch.eta,
        a: (n * frac(1, 2) - x * frac(1, 12)) * geom.c1_squared() - geom.pair(c1, &ch.s_class)
            + geom.pair(&ch.eta, c1) * frac(1, 2)
            - &ch.s,
        ..VerticalClass::zero(geom.rank())
    })
}

/// `ch(S_{j_*I}(G))`:
///
/// ```text
/// ch₀ = x − n
/// ch₁ = −xσ − S + (n − ½x) c₁ + η
/// ch₂ = −ση − aF − (½n − x/12) c₁² + c₁·S − ½η·c₁ + sF
/// ch₃ = −s
/// ```
pub fn ch_fibre_ideal(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    chow_elliptic::check_class(ch, geom)?;
    let c1 = geom.c1();
    let (n, x) = (&ch.r, &ch.x);
    let s_class = &(&c1.scale(&(n - x * frac(1, 2))) - &ch.s_class) + &ch.eta;
    Ok(VerticalClass::new(
        x - n,
        -x,
        s_class,
        -&ch.eta,
        -&ch.a - (n * frac(1, 2) - x * frac(1, 12)) * geom.c1_squared() + geom.pair(c1, &ch.s_class)
            - geom.pair(&ch.eta, c1) * frac(1, 2)
            + &ch.s,
        -&ch.s,
    ))
}

/// The intermediate charges of the factorisation of the inverse transform.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorSteps {
    /// `G = V ⊗ O(σ)`.
    pub g: VerticalClass,
    /// `S_{j_*I}(G)`.
    pub fibre_ideal: VerticalClass,
    /// `S_{j_*I}(G) ⊗ O(σ)`.
    pub twisted: VerticalClass,
    /// The final result, after `⊗ q*K_B⁻²`.
    pub result: VerticalClass,
}

/// Runs the factorisation step by step.
pub fn factor_steps(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<FactorSteps> {
    let k = geom.rank();
    let sigma = VerticalClass::sigma(k);
    let g = line_bundle_twist(ch, &sigma, geom)?;
    let fibre_ideal = ch_fibre_ideal(&g, geom)?;
    let twisted = line_bundle_twist(&fibre_ideal, &sigma, geom)?;
    let result = line_bundle_twist(&twisted, &VerticalClass::c1(geom).scale(&rat(2)), geom)?;
    Ok(FactorSteps { g, fibre_ideal, twisted, result })
}

/// The inverse fibrewise transform assembled from full transforms.
pub fn factor_inverse_fm(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    Ok(factor_steps(ch, geom)?.result)
}

/// The charge `G = V ⊗ O(σ)` in closed form:
///
/// ```text
/// n_G = n, x_G = x + n, S_G = S, η_G = η − ½n c₁ + S − x c₁,
/// a_G = a, s_G = s − c₁·η + a + ½x c₁² − ½c₁·S + n c₁²/6
/// ```
pub fn ch_g_closed_form(ch: &VerticalClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    chow_elliptic::check_class(ch, geom)?;
    let c1 = geom.c1();
    let c1sq = geom.c1_squared();
    let (n, x) = (&ch.r, &ch.x);
    Ok(VerticalClass::new(
        n.clone(),
        x + n,
        ch.s_class.clone(),
        &(&(&ch.eta - &c1.scale(&(n * frac(1, 2)))) + &ch.s_class) - &c1.scale(x),
        ch.a.clone(),
        &ch.s - geom.pair(c1, &ch.eta) + &ch.a + x * &c1sq * frac(1, 2) - geom.pair(c1, &ch.s_class) * frac(1, 2)
            + n * &c1sq * frac(1, 6),
    ))
}

/// Rejects a twist class that is not a divisor class.
pub fn check_divisor(d: &VerticalClass) -> Result<()> {
    if d.is_pure(1) {
        Ok(())
    } else {
        Err(Error::Grading("a line-bundle twist needs a divisor class".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow_elliptic::BaseClass;
    use crate::fibre_square::{ch_ideal, grr_transform, Direction};
    use crate::fm_charges::fm_inverse;
    use crate::sampling::{random_base_class, random_class, random_degree_zero_class, synthetic_bases};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p2() -> BaseSurfaceData {
        BaseSurfaceData::projective_plane()
    }

    fn geometries() -> Vec<BaseSurfaceData> {
        std::iter::once(p2()).chain(synthetic_bases()).collect()
    }

    #[test]
    fn twist_group_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for g in geometries() {
            let c = random_class(&mut rng, &g);
            let k = g.rank();
            assert_eq!(line_bundle_twist(&c, &VerticalClass::zero(k), &g).unwrap(), c);
            let d1 =
                &VerticalClass::sigma(k).scale(&rat(2)) + &VerticalClass::pullback(&random_base_class(&mut rng, &g));
            let d2 = VerticalClass::pullback(&random_base_class(&mut rng, &g));
            let back = line_bundle_twist(&line_bundle_twist(&c, &d1, &g).unwrap(), &-&d1, &g).unwrap();
            assert_eq!(back, c);
            let two = line_bundle_twist(&line_bundle_twist(&c, &d1, &g).unwrap(), &d2, &g).unwrap();
            assert_eq!(two, line_bundle_twist(&c, &(&d1 + &d2), &g).unwrap());
            assert_eq!(KernelDescriptor::DiagonalTwist(VerticalClass::zero(k)).apply(&c, &g).unwrap(), c);
        }
    }

    #[test]
    fn mixed_degree_twist_is_rejected() {
        let g = p2();
        let d = &VerticalClass::sigma(1) + &VerticalClass::fibre(1);
        assert!(matches!(line_bundle_twist(&VerticalClass::one(1), &d, &g), Err(Error::Grading(_))));
        assert!(check_divisor(&d).is_err());
        assert!(check_divisor(&VerticalClass::sigma(1)).is_ok());
    }

    #[test]
    fn gamma_shift_examples() {
        let g = p2();
        assert_eq!(gamma_shift(&VerticalClass::one(1), &g).unwrap(), VerticalClass::one(1));
        let pt = gamma_shift(&VerticalClass::point(1), &g).unwrap();
        assert_eq!(pt, &VerticalClass::point(1) - &VerticalClass::one(1));
        // unipotent: twice shifts degree 0 by twice the integral
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for g in geometries() {
            let c = random_class(&mut rng, &g);
            let chi = euler_characteristic(&c, &g).unwrap();
            let twice = gamma_shift(&gamma_shift(&c, &g).unwrap(), &g).unwrap();
            assert_eq!(twice, VerticalClass { r: &c.r - chi * rat(2), ..c.clone() });
        }
    }

    #[test]
    fn euler_characteristic_formula() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for g in geometries() {
            let c = random_class(&mut rng, &g);
            let expected = &c.s + &c.x * (g.c2() - g.c1_squared()) / rat(12) + g.pair(g.c1(), &c.s_class);
            assert_eq!(euler_characteristic(&c, &g).unwrap(), expected);
        }
    }

    #[test]
    fn diagonal_ideal_examples() {
        let g = p2();
        assert_eq!(ch_diagonal_ideal(&VerticalClass::one(1), &g).unwrap(), VerticalClass::scalar(1, rat(-1)));
        let pt = ch_diagonal_ideal(&VerticalClass::point(1), &g).unwrap();
        assert_eq!(pt, &VerticalClass::one(1) - &VerticalClass::point(1));
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let c = random_class(&mut rng, &g);
        assert_eq!(ch_diagonal_ideal(&c, &g).unwrap(), -&gamma_shift(&c, &g).unwrap());
    }

    #[test]
    fn j_and_fibre_ideal_of_structure_sheaf() {
        let g = p2();
        let one = VerticalClass::one(1);
        let c1 = BaseClass::from_i64(&[3]);
        let j = ch_j(&one, &g).unwrap();
        assert_eq!(j, VerticalClass { r: rat(0), s_class: -&c1, a: frac(9, 2), ..VerticalClass::zero(1) });
        let i = ch_fibre_ideal(&one, &g).unwrap();
        assert_eq!(i, VerticalClass { r: rat(-1), s_class: c1, a: frac(-9, 2), ..VerticalClass::zero(1) });
        assert_eq!(&i + &j, VerticalClass::scalar(1, rat(-1)));
    }

    #[test]
    fn ideal_sequence_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for g in geometries() {
            for _ in 0..30 {
                let c = random_class(&mut rng, &g);
                let sum = &ch_fibre_ideal(&c, &g).unwrap() + &ch_j(&c, &g).unwrap();
                assert_eq!(ch_diagonal_ideal(&c, &g).unwrap(), sum);
                assert_eq!(ch_fibre_ideal(&c, &g).unwrap().s, -&c.s);
            }
        }
    }

    #[test]
    fn fibre_ideal_matches_riemann_roch() {
        let mut rng = ChaCha8Rng::seed_from_u64(46);
        for g in geometries() {
            let kernel = ch_ideal(&g);
            for _ in 0..20 {
                let c = random_class(&mut rng, &g);
                assert_eq!(
                    ch_fibre_ideal(&c, &g).unwrap(),
                    grr_transform(&c, &kernel, Direction::Forward, &g).unwrap()
                );
            }
        }
    }

    #[test]
    fn factorisation_reproduces_inverse_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for g in geometries() {
            for _ in 0..30 {
                let c = random_degree_zero_class(&mut rng, &g);
                assert_eq!(factor_inverse_fm(&c, &g).unwrap(), fm_inverse(&c, &g).unwrap());
                let c = random_class(&mut rng, &g);
                let steps = factor_steps(&c, &g).unwrap();
                assert_eq!(steps.g, ch_g_closed_form(&c, &g).unwrap());
                assert_eq!(steps.result, fm_inverse(&c, &g).unwrap());
            }
            assert!(factor_inverse_fm(&VerticalClass::zero(g.rank()), &g).unwrap().is_zero());
        }
    }

    #[test]
    fn structure_product_kernel() {
        let g = p2();
        let out = KernelDescriptor::StructureProduct.apply(&VerticalClass::point(1), &g).unwrap();
        assert_eq!(out, VerticalClass::one(1));
        let mut rng = ChaCha8Rng::seed_from_u64(48);
        let c = random_class(&mut rng, &g);
        // I_Δ → O → O_Δ: ch(S_{I_Δ}) = ch(S_O) − ch
        let lhs = KernelDescriptor::DiagonalIdeal.apply(&c, &g).unwrap();
        let rhs = &KernelDescriptor::StructureProduct.apply(&c, &g).unwrap() - &c;
        assert_eq!(lhs, rhs);
        let lhs = KernelDescriptor::DiagonalIdeal.apply(&c, &g).unwrap();
        let rhs = &KernelDescriptor::FibreIdeal.apply(&c, &g).unwrap()
            + &KernelDescriptor::FibreProductIdeal.apply(&c, &g).unwrap();
        assert_eq!(lhs, rhs);
    }
}
