//! The two-dimensional analogue: an elliptic K3 surface with section.

use crate::exact_core::{rat, RMatrix, Rational};
use num_traits::Zero;

/// Self-intersection of the section of an elliptic K3 surface, `σ² = −2·pt`.
///
/// Kept in one place so the choice can be changed without touching the ring.
pub const K3_SECTION_SELF_INTERSECTION: i64 = -2;

/// A class in `H⁰ ⊕ (σ ⊕ F) ⊕ H⁴` of an elliptic K3 surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct K3Class {
    pub r: Rational,
    pub sigma: Rational,
    pub f: Rational,
    pub s: Rational,
}

impl K3Class {
    pub fn new(r: Rational, sigma: Rational, f: Rational, s: Rational) -> Self {
        Self { r, sigma, f, s }
    }

    pub fn from_i64(v: [i64; 4]) -> Self {
        Self::new(rat(v[0]), rat(v[1]), rat(v[2]), rat(v[3]))
    }

    pub fn zero() -> Self {
        Self::from_i64([0, 0, 0, 0])
    }

    pub fn to_vec(&self) -> Vec<Rational> {
        vec![self.r.clone(), self.sigma.clone(), self.f.clone(), self.s.clone()]
    }

    pub fn from_vec(v: &[Rational]) -> Self {
        assert_eq!(v.len(), 4, "a K3 class has four slots");
        Self::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.to_vec().iter().all(Zero::is_zero)
    }

    /// Ring product with `σ² = −2·pt`, `σ·F = pt`, `F² = 0`.
    pub fn mul(&self, other: &Self) -> Self {
        let r = &self.r * &other.r;
        let sigma = &self.r * &other.sigma + &self.sigma * &other.r;
        let f = &self.r * &other.f + &self.f * &other.r;
        let s = &self.r * &other.s
            + &self.s * &other.r
            + &self.sigma * &other.f
            + &self.f * &other.sigma
            + &self.sigma * &other.sigma * rat(K3_SECTION_SELF_INTERSECTION);
        Self::new(r, sigma, f, s)
    }

    /// Applies a 4×4 matrix to the slot vector.
    pub fn apply(&self, m: &RMatrix) -> Self {
        Self::from_vec(&m.mul_vec(&self.to_vec()).expect("4x4 matrix acting on a K3 class"))
    }
}
