//! Polynomials with rational coefficients in the two Kähler parameters.

use super::{binomial, parse_rational, pow_u, rat, Rational};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// One of the two polynomial variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T1,
    T2,
}

impl Var {
    /// Both variables in declaration order.
    pub const ALL: [Var; 2] = [Var::T1, Var::T2];

    pub fn name(self) -> &'static str {
        match self {
            Var::T1 => "t1",
            Var::T2 => "t2",
        }
    }

    /// Looks a variable up by name.
    pub fn from_name(name: &str) -> Result<Self> {
        match name.trim() {
            "t1" => Ok(Var::T1),
            "t2" => Ok(Var::T2),
            other => Err(Error::UnknownVariable(other.to_string())),
        }
    }

    fn index(self) -> usize {
        match self {
            Var::T1 => 0,
            Var::T2 => 1,
        }
    }
}

/// Exponent pair `(e1, e2)` of the monomial `t1^e1 · t2^e2`.
pub type Monomial = (u32, u32);

/// A polynomial in `t1, t2` with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c · t1^e1 · t2^e2`.
    pub fn monomial(c: Rational, e1: u32, e2: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((e1, e2), c);
        p
    }

    /// The polynomial consisting of one variable.
    pub fn var(v: Var) -> Self {
        match v {
            Var::T1 => Self::monomial(Rational::one(), 1, 0),
            Var::T2 => Self::monomial(Rational::one(), 0, 1),
        }
    }

    /// Builds a polynomial from `(coefficient, e1, e2)` triples.
    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, u32, u32)>) -> Self {
        let mut p = Self::zero();
        for (c, e1, e2) in terms {
            p.add_term((e1, e2), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t1^e1 t2^e2` (zero when absent).
    pub fn coeff(&self, e1: u32, e2: u32) -> Rational {
        self.terms.get(&(e1, e2)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in increasing monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Total degree (`None` for the zero polynomial).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }

    /// The homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(self.terms.iter().filter(|((a, b), _)| a + b == d).map(|(&(a, b), c)| (c.clone(), a, b)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        for (&m, c) in &other.terms {
            p.add_term(m, c.clone());
        }
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| (c * k, a, b)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                p.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        p
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative with respect to `v`.
    pub fn partial(&self, v: Var) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(&(a, b), c)| {
            let e = [a, b][v.index()];
            (e > 0).then(|| {
                let k = c * rat(i64::from(e));
                match v {
                    Var::T1 => (k, a - 1, b),
                    Var::T2 => (k, a, b - 1),
                }
            })
        }))
    }

    /// Substitutes `v → v + delta` and expands exactly.
    pub fn shift(&self, v: Var, delta: &Rational) -> Self {
        let mut p = Self::zero();
        for (&(a, b), c) in &self.terms {
            let e = [a, b][v.index()];
            for k in 0..=e {
                let coeff = c * binomial(e, k) * pow_u(delta, e - k);
                let m = match v {
                    Var::T1 => (k, b),
                    Var::T2 => (a, k),
                };
                p.add_term(m, coeff);
            }
        }
        p
    }

    /// Substitutes `var → var + delta` where `var` is given by name.
    pub fn poly_shift(&self, var: &str, delta: &Rational) -> Result<Self> {
        Ok(self.shift(Var::from_name(var)?, delta))
    }

    /// Evaluates at a rational point.
    pub fn eval(&self, t1: &Rational, t2: &Rational) -> Rational {
        self.terms.iter().map(|(&(a, b), c)| c * pow_u(t1, a) * pow_u(t2, b)).sum()
    }
}

impl fmt::Display for MultiPoly {
    /// Highest total degree first, e.g. `-4/3*t1^3 - 2*t1^2*t2 + 7/3*t1 + t2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by_key(|m| std::cmp::Reverse((m.0 + m.1, m.0)));
        for (i, m) in keys.iter().enumerate() {
            let c = &self.terms[*m];
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = vec![];
            for (v, e) in [("t1", m.0), ("t2", m.1)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Parses sums of terms such as `2/3*t1^3 + t1^2*t2 - 13/6 t1 + 1/6`.
    /// A term is an optional rational coefficient followed by `*`- or
    /// space-separated factors `t1`, `t2`, `t1^k`, `t2^k`.
    fn from_str(text: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("bad polynomial `{text}`: {why}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty"));
        }
        let mut p = Self::zero();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let mut sign = Rational::one();
            let mut saw_sign = false;
            while let Some(c) = rest.chars().next().filter(|c| *c == '+' || *c == '-') {
                if c == '-' {
                    sign = -sign;
                }
                rest = &rest[1..];
                saw_sign = true;
            }
            let end = rest.char_indices().skip(1).find(|&(_, c)| c == '+' || c == '-').map_or(rest.len(), |(i, _)| i);
            let (term, tail) = rest.split_at(end);
            if term.is_empty() {
                return Err(bad(if saw_sign { "dangling sign" } else { "empty term" }));
            }
            let mut coeff = sign;
            let mut exps = [0u32; 2];
            for factor in term.split('*').filter(|s| !s.is_empty()) {
                // A coefficient may be glued to its variables, as in `3t1t2^2`.
                let split = factor.find('t').unwrap_or(factor.len());
                let (num, mut vars) = factor.split_at(split);
                if !num.is_empty() {
                    coeff *= parse_rational(num)?;
                }
                while !vars.is_empty() {
                    if vars.len() < 2 {
                        return Err(bad("truncated variable"));
                    }
                    let v = Var::from_name(&vars[..2])?;
                    vars = &vars[2..];
                    let mut exp = 1;
                    if let Some(after) = vars.strip_prefix('^') {
                        let digits = after.find(|c: char| !c.is_ascii_digit()).unwrap_or(after.len());
                        exp = after[..digits].parse::<u32>().map_err(|_| bad("bad exponent"))?;
                        vars = &after[digits..];
                    }
                    exps[v.index()] += exp;
                }
            }
            p.add_term((exps[0], exps[1]), coeff);
            rest = tail;
        }
        Ok(p)
    }
}
