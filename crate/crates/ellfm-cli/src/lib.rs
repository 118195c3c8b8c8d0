//! Command-line front end for `ellfm`: model inspection, charge transforms,
//! verification suites and moduli formulas, with JSON output.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 a verified identity
//! failed.

pub mod commands;
pub mod document;

pub use document::{ChargeDocument, ChargeSlots, GeometryRef, InlineGeometry};

/// Exit code for malformed input or a violated precondition.
pub const EXIT_INPUT: u8 = 2;
/// Exit code for a failed identity.
pub const EXIT_IDENTITY: u8 = 3;
