//! The base surface `B` of the fibration.

use crate::error::{Error, Result};
use crate::exact_core::{format_vector, rat, RMatrix, Rational};
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A class in `H²(B)` written in the chosen basis `e₁ … e_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseClass(pub Vec<Rational>);

impl BaseClass {
    pub fn zero(k: usize) -> Self {
        Self(vec![Rational::zero(); k])
    }

    /// The basis element `e_i` (zero-based).
    pub fn basis(k: usize, i: usize) -> Self {
        let mut v = Self::zero(k);
        v.0[i] = rat(1);
        v
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        assert_eq!(self.len(), other.len(), "base classes over different bases");
        Self(self.0.iter().zip(&other.0).map(|(a, b)| f(a, b)).collect())
    }
}

impl fmt::Display for BaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_vector(&self.0))
    }
}

impl Add for &BaseClass {
    type Output = BaseClass;
    fn add(self, rhs: &BaseClass) -> BaseClass {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &BaseClass {
    type Output = BaseClass;
    fn sub(self, rhs: &BaseClass) -> BaseClass {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &BaseClass {
    type Output = BaseClass;
    fn neg(self) -> BaseClass {
        BaseClass(self.0.iter().map(|c| -c).collect())
    }
}

/// Numerical data of the base surface: a basis of `H²(B)` with its
/// intersection form, the first Chern class and the second Chern number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSurfaceData {
    labels: Vec<String>,
    form: RMatrix,
    c1: BaseClass,
    c2: Rational,
}

impl BaseSurfaceData {
    /// Validates and builds base data.  The form must be square, symmetric
    /// and match the number of labels and the length of `c1`.
    pub fn new(labels: Vec<String>, form: RMatrix, c1: BaseClass, c2: Rational) -> Result<Self> {
        let k = labels.len();
        if k == 0 {
            return Err(Error::Geometry("a base surface needs at least one H^2 generator".into()));
        }
        if form.rows() != k || form.cols() != k {
            return Err(Error::Geometry(format!(
                "intersection form is {}x{} but there are {k} basis labels",
                form.rows(),
                form.cols()
            )));
        }
        if form != form.transpose() {
            return Err(Error::Geometry("intersection form is not symmetric".into()));
        }
        if c1.len() != k {
            return Err(Error::Geometry(format!("c1 has {} coefficients but the basis has {k} elements", c1.len())));
        }
        Ok(Self { labels, form, c1, c2 })
    }

    /// The projective plane: `ℓ² = 1`, `c₁ = 3ℓ`, `c₂ = 3`.
    pub fn projective_plane() -> Self {
        Self::new(vec!["l".into()], RMatrix::from_i64(&[&[1]]), BaseClass::from_i64(&[3]), rat(3))
            .expect("projective plane data is valid")
    }

    /// Number of generators of `H²(B)`.
    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn intersection_form(&self) -> &RMatrix {
        &self.form
    }

    pub fn c1(&self) -> &BaseClass {
        &self.c1
    }

    /// The number `∫_B c₂(B)`.
    pub fn c2(&self) -> &Rational {
        &self.c2
    }

    /// The bilinear pairing `αᵀ·Q·β` in units of the point class of `B`.
    pub fn pair(&self, a: &BaseClass, b: &BaseClass) -> Rational {
        let k = self.rank();
        assert!(a.len() == k && b.len() == k, "base class over a different base");
        let mut acc = Rational::zero();
        for i in 0..k {
            if a.0[i].is_zero() {
                continue;
            }
            for j in 0..k {
                let q = self.form.get(i, j);
                if !q.is_zero() {
                    acc += &a.0[i] * q * &b.0[j];
                }
            }
        }
        acc
    }

    /// `c₁·c₁` on `B`.
    pub fn c1_squared(&self) -> Rational {
        self.pair(&self.c1, &self.c1)
    }

    /// Checks that a base class lives over this base.
    pub fn check_class(&self, a: &BaseClass) -> Result<()> {
        if a.len() != self.rank() {
            return Err(Error::Geometry(format!(
                "class has {} coefficients but H^2(B) has rank {}",
                a.len(),
                self.rank()
            )));
        }
        Ok(())
    }
}
