//! The vertical ring of the fibre square `X ×_B X` and a
//! Grothendieck-Riemann-Roch pushforward engine.
//!
//! A class is kept in the normal form
//!
//! ```text
//! p₂*(v₀) + σ₁·p₂*(v₁) + Δ·p₂*(w)
//! ```
//!
//! where `σ₁ = p₁*σ`, `Δ` is the class of the diagonal and `v₀, v₁, w` are
//! vertical classes of `X`.  Pullbacks from the base are stored as
//! `p₂*`-pullbacks (both projections agree on them), and on the diagonal
//! `p₁* = p₂*`, so every class has exactly one such representation.  The
//! multiplication rules are
//!
//! * `σ₁² = −σ₁·c₁` (the section rule pulled back along `p₁`);
//! * `p₁*u·Δ = Δ·p₂*u` (the two projections agree on the diagonal);
//! * `Δ·Δ = −Δ·c₁` (self-intersection through the relative tangent bundle,
//!   whose first Chern class is `−π*c₁`).

use crate::chow_elliptic::{
    self, pi_pushforward, series_power, todd_rel, todd_x, BaseClass, BaseSurfaceData, VerticalClass,
};
use crate::error::Result;
use crate::exact_core::{frac, rat, Rational};
use num_traits::One;

/// A class on the fibre square in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibreSquareClass {
    /// Coefficient of `p₂*(·)`.
    pub v0: VerticalClass,
    /// Coefficient of `σ₁·p₂*(·)`.
    pub v1: VerticalClass,
    /// The diagonal part `Δ·p₂*(w)`.
    pub diag: VerticalClass,
}

impl FibreSquareClass {
    pub fn zero(k: usize) -> Self {
        Self { v0: VerticalClass::zero(k), v1: VerticalClass::zero(k), diag: VerticalClass::zero(k) }
    }

    pub fn one(k: usize) -> Self {
        Self { v0: VerticalClass::one(k), ..Self::zero(k) }
    }

    /// The diagonal class `Δ`.
    pub fn delta(k: usize) -> Self {
        Self { diag: VerticalClass::one(k), ..Self::zero(k) }
    }

    /// `σ₁ = p₁*σ`.
    pub fn sigma1(k: usize) -> Self {
        Self { v1: VerticalClass::one(k), ..Self::zero(k) }
    }

    /// `σ₂ = p₂*σ`.
    pub fn sigma2(k: usize) -> Self {
        Self::p2_pull(&VerticalClass::sigma(k))
    }

    /// `q*α` for a base class `α`, with `q` the map to the base.
    pub fn q_pull(alpha: &BaseClass) -> Self {
        Self::p2_pull(&VerticalClass::pullback(alpha))
    }

    /// `p₂*v`.
    pub fn p2_pull(v: &VerticalClass) -> Self {
        Self { v0: v.clone(), ..Self::zero(v.base_rank()) }
    }

    /// `p₁*v`: writes `v = π*β₀ + σ·π*β₁` and sends `σ` to `σ₁`.
    pub fn p1_pull(v: &VerticalClass) -> Self {
        let k = v.base_rank();
        let beta0 =
            VerticalClass { r: v.r.clone(), s_class: v.s_class.clone(), a: v.a.clone(), ..VerticalClass::zero(k) };
        let beta1 = pi_pushforward(v).pullback();
        Self { v0: beta0, v1: beta1, diag: VerticalClass::zero(k) }
    }

    /// `Δ·p₂*w`.
    pub fn diagonal(w: &VerticalClass) -> Self {
        Self { diag: w.clone(), ..Self::zero(w.base_rank()) }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { v0: &self.v0 + &other.v0, v1: &self.v1 + &other.v1, diag: &self.diag + &other.diag }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { v0: &self.v0 - &other.v0, v1: &self.v1 - &other.v1, diag: &self.diag - &other.diag }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { v0: self.v0.scale(k), v1: self.v1.scale(k), diag: self.diag.scale(k) }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Ring product in the normal form.
    pub fn mul(&self, other: &Self, geom: &BaseSurfaceData) -> Self {
        let m = |u: &VerticalClass, v: &VerticalClass| chow_elliptic::vertical_mul(u, v, geom);
        let c1 = VerticalClass::c1(geom);
        let sigma = VerticalClass::sigma(geom.rank());
        let v0 = m(&self.v0, &other.v0);
        let v1 = &(&m(&self.v0, &other.v1) + &m(&self.v1, &other.v0)) - &m(&c1, &m(&self.v1, &other.v1));
        // Restrictions of the plain parts to the diagonal, where σ₁ = σ₂.
        let a_on_diag = &self.v0 + &m(&sigma, &self.v1);
        let b_on_diag = &other.v0 + &m(&sigma, &other.v1);
        let diag = &(&m(&a_on_diag, &other.diag) + &m(&b_on_diag, &self.diag)) - &m(&c1, &m(&self.diag, &other.diag));
        Self { v0, v1, diag }
    }

    /// Sum of powers `Σ coeffs[j]·n^j` of the nilpotent part `n = self − 1`.
    fn nilpotent_series(&self, coeffs: &[Rational], geom: &BaseSurfaceData) -> Self {
        let k = geom.rank();
        let n = self.sub(&Self::one(k));
        let mut acc = Self::zero(k);
        let mut power = Self::one(k);
        for c in coeffs {
            acc = acc.add(&power.scale(c));
            power = power.mul(&n, geom);
        }
        acc
    }

    /// Inverse of a unit (degree-0 part one); the nilpotent part vanishes to
    /// fifth order on a fourfold.
    pub fn inverse(&self, geom: &BaseSurfaceData) -> Self {
        let coeffs: Vec<Rational> = (0..5).map(|j| rat(if j % 2 == 0 { 1 } else { -1 })).collect();
        self.nilpotent_series(&coeffs, geom)
    }

    /// `exp(d)` for a class `d` without degree-0 part.
    pub fn exp(d: &Self, geom: &BaseSurfaceData) -> Self {
        let k = geom.rank();
        let mut acc = Self::one(k);
        let mut power = Self::one(k);
        let mut fact = Rational::one();
        for j in 1..=4 {
            power = power.mul(d, geom);
            fact *= rat(j);
            acc = acc.add(&power.scale(&(Rational::one() / &fact)));
        }
        acc
    }

    /// Dualisation on Chern characters: the codimension-`p` part picks up
    /// the sign `(−1)^p`.
    pub fn dual(&self) -> Self {
        let k = self.v0.base_rank();
        let signed = |v: &VerticalClass, shift: usize| {
            (0..4).fold(VerticalClass::zero(k), |acc, p| {
                let sign = if (p + shift) % 2 == 0 { rat(1) } else { rat(-1) };
                &acc + &v.component(p).scale(&sign)
            })
        };
        Self { v0: signed(&self.v0, 0), v1: signed(&self.v1, 1), diag: signed(&self.diag, 1) }
    }

    /// Pushforward along the first projection:
    /// `p₁_*(p₂*v) = π*π_*v`, `p₁_*(σ₁·p₂*v) = σ·π*π_*v`, `p₁_*(Δ·p₂*w) = w`.
    pub fn p1_push(&self, geom: &BaseSurfaceData) -> VerticalClass {
        let k = geom.rank();
        let a = pi_pushforward(&self.v0).pullback();
        let b = pi_pushforward(&self.v1).pullback();
        &(&a + &chow_elliptic::vertical_mul(&VerticalClass::sigma(k), &b, geom)) + &self.diag
    }

    /// Pushforward along the second projection:
    /// `p₂_*(p₂*v) = 0`, `p₂_*(σ₁·p₂*v) = v`, `p₂_*(Δ·p₂*w) = w`.
    pub fn p2_push(&self) -> VerticalClass {
        &self.v1 + &self.diag
    }
}

/// Inverse of the relative Todd class, the series multiplying `Δ` in the
/// Chern character of the structure sheaf of the diagonal.
fn todd_rel_inverse(geom: &BaseSurfaceData) -> VerticalClass {
    series_power(&todd_rel(geom), &rat(-1), geom).expect("Todd class is a unit")
}

/// Chern character of the ideal sheaf of the diagonal,
/// `1 − Δ − ½Δ·c₁ + Δ·σc₁ + (5/6)Δ·c₁² + ½Δ·σc₁²`.
pub fn ch_ideal(geom: &BaseSurfaceData) -> FibreSquareClass {
    let k = geom.rank();
    let c1 = geom.c1();
    let c1sq = geom.c1_squared();
    let w =
        VerticalClass::new(rat(-1), rat(0), c1.scale(&frac(-1, 2)), c1.clone(), &c1sq * frac(5, 6), &c1sq * frac(1, 2));
    FibreSquareClass { diag: w, ..FibreSquareClass::one(k) }
}

/// Chern character of the structure sheaf of the diagonal obtained from
/// Riemann-Roch for the diagonal embedding `δ`:
/// `ch(δ_*O_X) = δ_*(Td(X)) / Td(X ×_B X)` with
/// `Td(X ×_B X) = p₂*Td(X)·p₁*Td(T_{X/B})`.
pub fn ch_diagonal_structure_sheaf(geom: &BaseSurfaceData) -> FibreSquareClass {
    let td_square = FibreSquareClass::p2_pull(&todd_x(geom)).mul(&FibreSquareClass::p1_pull(&todd_rel(geom)), geom);
    FibreSquareClass::diagonal(&todd_x(geom)).mul(&td_square.inverse(geom), geom)
}

/// The divisor `σ₁ + σ₂ + q*c₁` on the fibre square.
fn poincare_divisor(geom: &BaseSurfaceData) -> FibreSquareClass {
    let k = geom.rank();
    FibreSquareClass::sigma1(k).add(&FibreSquareClass::sigma2(k)).add(&FibreSquareClass::q_pull(geom.c1()))
}

/// Chern character of the Poincaré sheaf,
/// `ch(I*)·exp(−σ₁ − σ₂ − q*c₁)`, where `ch(I*)` is obtained from
/// [`ch_ideal`] by dualisation.
pub fn ch_poincare(geom: &BaseSurfaceData) -> FibreSquareClass {
    let twist = FibreSquareClass::exp(&poincare_divisor(geom).neg(), geom);
    ch_ideal(geom).dual().mul(&twist, geom)
}

/// Kernel of the inverse transform: the dual Poincaré sheaf twisted by
/// `q*K_B⁻¹`, i.e. `ch(I)·exp(σ₁ + σ₂ + 2q*c₁)`.
pub fn ch_inverse_kernel(geom: &BaseSurfaceData) -> FibreSquareClass {
    let twist = FibreSquareClass::exp(&FibreSquareClass::q_pull(geom.c1()), geom);
    ch_poincare(geom).dual().mul(&twist, geom)
}

/// Chern character of the structure sheaf of the diagonal, `1 − ch(I)`.
pub fn ch_diagonal_kernel(geom: &BaseSurfaceData) -> FibreSquareClass {
    FibreSquareClass::one(geom.rank()).sub(&ch_ideal(geom))
}

/// Direction of an integral transform on the fibre square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Pull back along `p₂`, push forward along `p₁`.
    Forward,
    /// Pull back along `p₁`, push forward along `p₂`.
    Inverse,
}

/// Which factor the relative Todd class is pulled back from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ToddPlacement {
    /// From the factor that is integrated out: the relative tangent bundle
    /// of `p₁` is `p₂*T_{X/B}`.  This is the correct placement.
    IntegratedFactor,
    /// From the target factor.  Kept only to demonstrate that it fails.
    TargetFactor,
}

/// Grothendieck-Riemann-Roch transform of a charge through a kernel:
/// forward `p₁_*(p₂*ch · K · p₂*Td(T_{X/B}))`, inverse with the roles of the
/// two factors exchanged.
pub fn grr_transform(
    ch_in: &VerticalClass,
    kernel: &FibreSquareClass,
    direction: Direction,
    geom: &BaseSurfaceData,
) -> Result<VerticalClass> {
    grr_transform_with(ch_in, kernel, direction, ToddPlacement::IntegratedFactor, geom)
}

/// [`grr_transform`] with an explicit Todd-class placement.
pub fn grr_transform_with(
    ch_in: &VerticalClass,
    kernel: &FibreSquareClass,
    direction: Direction,
    placement: ToddPlacement,
    geom: &BaseSurfaceData,
) -> Result<VerticalClass> {
    chow_elliptic::check_class(ch_in, geom)?;
    let td = todd_rel(geom);
    type Pullback = fn(&VerticalClass) -> FibreSquareClass;
    let (pull_in, pull_td_integrated, pull_td_target): (Pullback, Pullback, Pullback) = match direction {
        Direction::Forward => (FibreSquareClass::p2_pull, FibreSquareClass::p2_pull, FibreSquareClass::p1_pull),
        Direction::Inverse => (FibreSquareClass::p1_pull, FibreSquareClass::p1_pull, FibreSquareClass::p2_pull),
    };
    let td_class = match placement {
        ToddPlacement::IntegratedFactor => pull_td_integrated(&td),
        ToddPlacement::TargetFactor => pull_td_target(&td),
    };
    let integrand = pull_in(ch_in).mul(kernel, geom).mul(&td_class, geom);
    Ok(match direction {
        Direction::Forward => integrand.p1_push(geom),
        Direction::Inverse => integrand.p2_push(),
    })
}

/// Which Todd class the f-map kernel is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FMapVariant {
    /// `√p₂*Td(T_{X/B}) · ch(P) · √p₁*Td(T_{X/B})`.
    Relative,
    /// `√p₂*Td(X) · ch(P) · √p₁*Td(X)`.
    Absolute,
}

/// The kernel `Z` of the f-map of `variant`.
pub fn f_map_kernel(variant: FMapVariant, geom: &BaseSurfaceData) -> Result<FibreSquareClass> {
    let td = match variant {
        FMapVariant::Relative => todd_rel(geom),
        FMapVariant::Absolute => todd_x(geom),
    };
    let root = series_power(&td, &frac(1, 2), geom)?;
    Ok(FibreSquareClass::p2_pull(&root).mul(&ch_poincare(geom), geom).mul(&FibreSquareClass::p1_pull(&root), geom))
}

/// `x ↦ p₁_*(p₂*x · Z)` for a precomputed kernel `Z`.
pub fn f_map_with(x: &VerticalClass, z: &FibreSquareClass, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    chow_elliptic::check_class(x, geom)?;
    Ok(FibreSquareClass::p2_pull(x).mul(z, geom).p1_push(geom))
}

/// The f-map `x ↦ p₁_*(p₂*x · Z)` with the kernel `Z` of `variant`.
pub fn f_map(x: &VerticalClass, variant: FMapVariant, geom: &BaseSurfaceData) -> Result<VerticalClass> {
    chow_elliptic::check_class(x, geom)?;
    f_map_with(x, &f_map_kernel(variant, geom)?, geom)
}

/// Self-check: `1 − ch(I)` equals the Riemann-Roch value of `ch(δ_*O_X)`,
/// and the diagonal coefficient equals `Td(T_{X/B})⁻¹`.
pub fn ideal_self_check(geom: &BaseSurfaceData) -> bool {
    let from_rr = ch_diagonal_structure_sheaf(geom);
    from_rr == ch_diagonal_kernel(geom) && from_rr == FibreSquareClass::diagonal(&todd_rel_inverse(geom))
}
