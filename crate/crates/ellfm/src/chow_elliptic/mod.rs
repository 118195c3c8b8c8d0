//! Vertical cohomology ring of an elliptic Calabi-Yau threefold with section.
//!
//! A class is written in the decomposition
//!
//! ```text
//! H^0 ⊕ (σ ⊕ π*H^2(B)) ⊕ (σ·π*H^2(B) ⊕ F) ⊕ H^6
//!  r        x     S            η        a      s
//! ```
//!
//! where σ is the section, `F` the fibre class and `π` the projection to the
//! base surface `B`.  The ring is generated by the single rule
//! `σ² = −σ·π*c₁` together with the intersection form of `B`.

mod base;
mod k3;
mod vertical;

pub use base::{BaseClass, BaseSurfaceData};
pub use k3::{K3Class, K3_SECTION_SELF_INTERSECTION};
pub(crate) use vertical::{check as check_class, mul as vertical_mul};
pub use vertical::{
    exp_divisor, integrate, pi_pushforward, series_inverse, series_power, series_sqrt, todd_n, todd_rel, todd_x, vmul,
    BaseGraded, VerticalClass,
};
