//! Dense rational matrices.

use super::{rat, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt;

/// An immutable dense matrix of rationals stored row-major.
///
/// Every operation returns a fresh matrix.  Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries supplied for a {rows}x{cols} matrix", entries.len())));
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from a list of equally long rows.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some((i, bad)) = rows.iter().enumerate().find(|(_, row)| row.len() != c) {
            return Err(Error::Shape(format!("row {i} has {} entries, expected {c}", bad.len())));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix from integer rows (convenient for printed data).
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let data = rows.iter().map(|row| row.iter().map(|&v| rat(v)).collect()).collect();
        Self::from_rows(data).expect("ragged integer matrix literal")
    }

    /// The `rows × cols` zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    /// The `n × n` identity.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    /// A column vector.
    pub fn column(values: Vec<Rational>) -> Self {
        let n = values.len();
        Self { rows: n, cols: 1, entries: values }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry `(i, j)`.  Panics when out of range.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        &self.entries[i * self.cols + j]
    }

    /// A copy with entry `(i, j)` replaced.
    pub fn with_entry(&self, i: usize, j: usize, value: Rational) -> Self {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of range");
        let mut m = self.clone();
        m.entries[i * self.cols + j] = value;
        m
    }

    /// Row `i` as a vector.
    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Column `j` as a vector.
    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// All rows.
    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    fn same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "cannot {op} {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "add")?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "subtract")?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, k: &Rational) -> Self {
        let entries = self.entries.iter().map(|a| a * k).collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|a| -a).collect();
        Self { rows: self.rows, cols: self.cols, entries }
    }

    /// Exact product `self · other`.
    pub fn mat_mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        Ok(self.mat_mul(&Self::column(v.to_vec()))?.entries)
    }

    /// Row vector times matrix (`v · self`).
    pub fn vec_mul(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        let row = Self::new(1, v.len(), v.to_vec())?;
        Ok(row.mat_mul(self)?.entries)
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn mat_inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape(format!("cannot invert a non-square {}x{} matrix", self.rows, self.cols)));
        }
        linear_solve(self, &Self::identity(self.rows))
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let base = if e < 0 { self.mat_inverse()? } else { self.clone() };
        let mut acc = Self::identity(self.rows);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mat_mul(&base)?;
        }
        Ok(acc)
    }

    /// Exact determinant by Gaussian elimination over the rationals.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let pivot = a[c][c].clone();
            det *= &pivot;
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] / &pivot;
                for k in c..n {
                    let t = &f * &a[c][k];
                    a[r][k] -= t;
                }
            }
        }
        Ok(det)
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Shape("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).map(|i| self.get(i, i).clone()).sum())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(super::is_integer)
    }

    /// True when the matrix is integral with determinant ±1.
    pub fn is_unimodular(&self) -> bool {
        self.is_integral() && self.det().map(|d| d == Rational::one() || d == -Rational::one()).unwrap_or(false)
    }

    /// Positions `(i, j)` where the two matrices differ.
    pub fn differences(&self, other: &Self) -> Vec<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return vec![];
        }
        let mut out = vec![];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) != other.get(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> =
            self.to_rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[{}]", line.join(" "))?;
            if i + 1 < cells.len() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// Solves `a · x = b` exactly.
///
/// `a` may be overdetermined (more rows than columns).  The solution must be
/// unique: a rank-deficient `a` is reported as [`Error::Singular`] naming the
/// first column without a pivot, and an unsatisfiable equation as
/// [`Error::Inconsistent`].
pub fn linear_solve(a: &RMatrix, b: &RMatrix) -> Result<RMatrix> {
    if a.rows != b.rows {
        return Err(Error::Shape(format!("system matrix has {} rows but right-hand side has {}", a.rows, b.rows)));
    }
    let (m, n, p) = (a.rows, a.cols, b.cols);
    let mut aug: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = a.row(i);
            row.extend(b.row(i));
            row
        })
        .collect();
    // Forward elimination with row tracking so inconsistencies name the
    // original equation.
    let mut origin: Vec<usize> = (0..m).collect();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..m).find(|&i| !aug[i][c].is_zero()) else {
            return Err(Error::Singular { pivot: c });
        };
        aug.swap(r, pr);
        origin.swap(r, pr);
        let inv = Rational::one() / &aug[r][c];
        for k in c..n + p {
            aug[r][k] = &aug[r][k] * &inv;
        }
        for i in 0..m {
            if i == r || aug[i][c].is_zero() {
                continue;
            }
            let f = aug[i][c].clone();
            for k in c..n + p {
                let t = &f * &aug[r][k];
                aug[i][k] -= t;
            }
        }
        r += 1;
    }
    if let Some(i) = (n..m).find(|&i| aug[i][n..].iter().any(|v| !v.is_zero())) {
        return Err(Error::Inconsistent { row: origin[i] });
    }
    let entries = aug[..n].iter().flat_map(|row| row[n..].to_vec()).collect();
    RMatrix::new(n, p, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_core::frac;

    fn s_l_deg8() -> RMatrix {
        RMatrix::from_i64(&[
            &[1, 0, -1, 2, -2, 0],
            &[0, 1, 0, -2, -4, 0],
            &[0, 0, 1, 0, 0, 0],
            &[0, 0, 0, 1, 0, 0],
            &[0, 0, 0, 0, 1, 0],
            &[0, 0, 0, 1, 0, 1],
        ])
    }

    #[test]
    fn identity_is_neutral() {
        let s = s_l_deg8();
        assert_eq!(RMatrix::identity(6).mat_mul(&s).unwrap(), s);
        assert_eq!(s.mat_mul(&RMatrix::identity(6)).unwrap(), s);
    }

    #[test]
    fn shape_errors() {
        let a = RMatrix::zeros(2, 3);
        assert!(matches!(a.mat_mul(&a), Err(Error::Shape(_))));
        assert!(matches!(a.mat_inverse(), Err(Error::Shape(_))));
        assert!(RMatrix::new(2, 2, vec![rat(1)]).is_err());
    }

    #[test]
    fn inverse_of_identity_and_conifold_matrix() {
        assert!(RMatrix::identity(6).mat_inverse().unwrap().is_identity());
        let t = RMatrix::identity(6).with_entry(3, 0, rat(-1));
        let ti = t.mat_inverse().unwrap();
        assert_eq!(ti, RMatrix::identity(6).with_entry(3, 0, rat(1)));
        assert!(t.mat_mul(&ti).unwrap().is_identity());
    }

    #[test]
    fn inverse_is_integral_and_unimodular() {
        let s = s_l_deg8();
        let si = s.mat_inverse().unwrap();
        assert!(si.is_integral());
        assert!(s.is_unimodular());
        assert!(s.mat_mul(&si).unwrap().is_identity());
        assert!(si.mat_mul(&s).unwrap().is_identity());
    }

    #[test]
    fn singular_matrix_names_pivot() {
        let a = RMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.mat_inverse(), Err(Error::Singular { pivot: 1 }));
        assert_eq!(a.det().unwrap(), rat(0));
    }

    #[test]
    fn solve_identity_and_overdetermined() {
        let b = RMatrix::from_i64(&[&[3], &[4]]);
        assert_eq!(linear_solve(&RMatrix::identity(2), &b).unwrap(), b);
        // consistent overdetermined system: x = 1, y = 2, x + y = 3
        let a = RMatrix::from_i64(&[&[1, 0], &[0, 1], &[1, 1]]);
        let rhs = RMatrix::from_i64(&[&[1], &[2], &[3]]);
        assert_eq!(linear_solve(&a, &rhs).unwrap(), RMatrix::from_i64(&[&[1], &[2]]));
        // zero row with a nonzero right-hand side
        let a = RMatrix::from_i64(&[&[1, 0], &[0, 1], &[0, 0]]);
        let rhs = RMatrix::from_i64(&[&[1], &[2], &[5]]);
        assert_eq!(linear_solve(&a, &rhs), Err(Error::Inconsistent { row: 2 }));
    }

    #[test]
    fn determinant_and_power() {
        let a = RMatrix::from_rows(vec![vec![frac(1, 2), rat(1)], vec![rat(3), rat(4)]]).unwrap();
        assert_eq!(a.det().unwrap(), rat(-1));
        let s = s_l_deg8();
        assert_eq!(s.pow(2).unwrap(), s.mat_mul(&s).unwrap());
        assert!(s.pow(3).unwrap().mat_mul(&s.pow(-3).unwrap()).unwrap().is_identity());
        assert!(s.pow(0).unwrap().is_identity());
    }
}
