//! Recorded values of the conjugates `m⁻¹K⁻¹·S·K·m` for the K3-fibred models.
//!
//! The change-of-basis matrices `m` and `K` have no independent check, so
//! their conjugates are frozen here: any change to `m` or `K` (or to the
//! monodromies) shows up as a mismatch.

use crate::exact_core::{parse_rational, RMatrix};

const T_CONJUGATE: &str = "3/2 -1/2 0 0 0 0; 1/2 1/2 0 0 0 0; -1 1 1 0 0 0; 1/2 -1/2 0 1 0 0; 0 0 0 0 1 0; 0 0 0 0 0 1";

const TABLE: &[(&str, &str, &str)] = &[
    (
        "deg8",
        "S_L",
        "3/2 0 0 -3/2 -1 0; 9/2 0 -1 -5/2 -3 0; -4 1 2 1 2 0; -1/2 0 0 5/2 1 0; 1 0 0 -3 -1 0; -2 0 0 10 6 1",
    ),
    (
        "deg8",
        "S_H",
        "-1/4 0 0 11/4 -1 -1; -1/4 -1 -2 47/4 2 -1; -1 2 3 -17 -7 0; 5/4 0 0 -7/4 1 1; -3/2 0 0 13/2 -1 -2; 13/2 0 0 -35/2 6 7",
    ),
    ("deg8", "T", T_CONJUGATE),
    (
        "deg12",
        "S_L",
        "3/2 0 0 -1/2 -1/2 0; 5/2 0 -1 1/2 -1/2 0; -2 1 2 -1 0 0; -1/2 0 0 3/2 1/2 0; 1 0 0 -1 0 0; -2 0 0 4 3 1",
    ),
    (
        "deg12",
        "S_H",
        "-1/4 0 0 3/4 -1/2 -1/2; 11/4 -1 -2 19/4 3/2 1/2; -3 2 3 -7 -4 -1; 5/4 0 0 1/4 1/2 1/2; -3/2 0 0 5/2 0 -1; 13/2 0 0 -11/2 3 4",
    ),
    ("deg12", "T", T_CONJUGATE),
];

fn parse(text: &str) -> RMatrix {
    let rows = text
        .split(';')
        .map(|row| row.split_whitespace().map(|e| parse_rational(e).expect("valid entry")).collect())
        .collect();
    RMatrix::from_rows(rows).expect("rectangular reference")
}

/// The recorded conjugate of `matrix` for `model`, if there is one.
pub(crate) fn conjugate(model: &str, matrix: &str) -> Option<RMatrix> {
    TABLE.iter().find(|(m, s, _)| *m == model && *s == matrix).map(|(_, _, text)| parse(text))
}
