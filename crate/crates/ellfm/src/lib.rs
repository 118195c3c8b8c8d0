//! Exact intersection-theory engine for fibrewise Fourier-Mukai transforms on
//! elliptically fibred Calabi-Yau threefolds.
//!
//! Every quantity is an exact rational; every identity is checked by
//! structural equality.  The crate is organised bottom-up:
//!
//! * [`exact_core`] — rationals, small dense matrices, polynomials in `(t1, t2)`;
//! * [`chow_elliptic`] — the vertical cohomology ring of an elliptic threefold
//!   with section, Todd-type series, and the K3 analogue;
//! * [`fibre_square`] — the ring of `X ×_B X` with diagonal calculus and a
//!   Grothendieck-Riemann-Roch pushforward engine;
//! * [`fm_charges`] — closed-form fibrewise transforms on charge vectors;
//! * [`spectral`] — spectral-cover Chern characters;
//! * [`kontsevich`] — full-kernel transforms at the charge level;
//! * [`models`] — the degree-8, degree-12 and degree-18 example models;
//! * [`moduli`] — index and moduli-dimension formulas;
//! * [`suites`] — the exact-identity verification suites.

pub mod chow_elliptic;
pub mod error;
pub mod exact_core;
pub mod fibre_square;
pub mod fm_charges;
pub mod kontsevich;
pub mod models;
pub mod moduli;
pub mod report;
pub mod sampling;
pub mod spectral;
pub mod suites;

pub use error::{Error, Result};
