//! Period vectors, monodromies, central charges and lattice actions.
//!
//! Charge vectors are rows: a lattice matrix `A` sends `n` to `n·A`.  An
//! operation `Φ` on Chern data (acting on columns) becomes the lattice matrix
//! `(D⁻¹ Φ D)ᵀ`, where `D` is the model's dictionary.
//!
//! Internally Chern data is also handled in *geometric* coordinates: `ch1`
//! in the divisor basis and `ch2` through its pairings `D_i·ch2` with the
//! basis divisors, which is all the intersection ring of the threefold needs.

use super::reference;
use super::{BPSCharge, ChernData, ModelDefinition, Registry};
use crate::error::{Error, Result};
use crate::exact_core::{frac, rat, MultiPoly, RMatrix, Rational, Var};
use crate::report::{Check, Report};
use num_traits::Zero;
use std::fmt;

/// Which Kähler parameter is shifted by one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KahlerDirection {
    T1,
    T2,
}

impl KahlerDirection {
    pub const ALL: [KahlerDirection; 2] = [KahlerDirection::T1, KahlerDirection::T2];

    pub fn var(self) -> Var {
        match self {
            Self::T1 => Var::T1,
            Self::T2 => Var::T2,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Self::T1 => 0,
            Self::T2 => 1,
        }
    }
}

/// How a derived matrix `A` with `Π(t + e) = A·Π(t)` is compared with a
/// printed one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Convention {
    Direct,
    Inverse,
    Transpose,
    InverseTranspose,
}

impl Convention {
    pub const ALL: [Convention; 4] =
        [Convention::Direct, Convention::Inverse, Convention::Transpose, Convention::InverseTranspose];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Direct => "A",
            Self::Inverse => "A^-1",
            Self::Transpose => "A^T",
            Self::InverseTranspose => "A^-T",
        }
    }

    pub fn apply(self, a: &RMatrix) -> Result<RMatrix> {
        match self {
            Self::Direct => Ok(a.clone()),
            Self::Inverse => a.mat_inverse(),
            Self::Transpose => Ok(a.transpose()),
            Self::InverseTranspose => Ok(a.mat_inverse()?.transpose()),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

// ---------------------------------------------------------------------------
// Intersection ring of the threefold in the divisor basis.

/// `C_ijk` for indices in `{0, 1}`.
fn c_ijk(m: &ModelDefinition, i: usize, j: usize, k: usize) -> &Rational {
    &m.triple[i + j + k]
}

/// The symmetric trilinear intersection form.
pub fn triple_product(m: &ModelDefinition, a: &[Rational], b: &[Rational], c: &[Rational]) -> Rational {
    let mut sum = Rational::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                sum += c_ijk(m, i, j, k) * &a[i] * &b[j] * &c[k];
            }
        }
    }
    sum
}

pub(crate) fn triple_poly(m: &ModelDefinition, a: &[MultiPoly], b: &[MultiPoly], c: &[MultiPoly]) -> MultiPoly {
    let mut sum = MultiPoly::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                sum = sum.add(&a[i].mul(&b[j]).mul(&c[k]).scale(c_ijk(m, i, j, k)));
            }
        }
    }
    sum
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn kahler_class() -> Vec<MultiPoly> {
    vec![MultiPoly::var(Var::T1), MultiPoly::var(Var::T2)]
}

fn constants(v: &[Rational]) -> Vec<MultiPoly> {
    v.iter().cloned().map(MultiPoly::constant).collect()
}

/// Chern data with `ch1` in divisor coordinates and `ch2` as pairings.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Geometric {
    r: Rational,
    d: Vec<Rational>,
    p: Vec<Rational>,
    ch3: Rational,
}

fn to_geometric(m: &ModelDefinition, ch: &ChernData) -> Geometric {
    Geometric {
        r: ch.rank.clone(),
        d: m.ch1_basis.transpose().mul_vec(&ch.ch1).expect("2x2"),
        p: m.ch2_pairing.mul_vec(&ch.ch2).expect("2x2"),
        ch3: ch.ch3.clone(),
    }
}

fn from_geometric(m: &ModelDefinition, g: &Geometric) -> Result<ChernData> {
    let rank = |what: &str, e: Error| Error::Rank(format!("model {}: {what} is not invertible ({e})", m.name));
    let b = m.ch1_basis.transpose().mat_inverse().map_err(|e| rank("the ch1 basis", e))?;
    let p = m.ch2_pairing.mat_inverse().map_err(|e| rank("the ch2 pairing", e))?;
    Ok(ChernData { rank: g.r.clone(), ch1: b.mul_vec(&g.d)?, ch2: p.mul_vec(&g.p)?, ch3: g.ch3.clone() })
}

/// `ch ↦ ch·e^D`.
fn twist_geometric(m: &ModelDefinition, g: &Geometric, div: &[Rational]) -> Geometric {
    let half = frac(1, 2);
    let basis = |i: usize| if i == 0 { [rat(1), rat(0)] } else { [rat(0), rat(1)] };
    let p = (0..2)
        .map(|i| {
            let di = basis(i);
            &g.p[i] + triple_product(m, &di, div, &g.d) + &g.r * triple_product(m, &di, div, div) * &half
        })
        .collect();
    Geometric {
        r: g.r.clone(),
        d: g.d.iter().zip(div).map(|(x, y)| x + &g.r * y).collect(),
        p,
        ch3: &g.ch3
            + dot(div, &g.p)
            + triple_product(m, &g.d, div, div) * &half
            + &g.r * triple_product(m, div, div, div) * frac(1, 6),
    }
}

/// `∫ ch·Td(X) = ch3 + c₂(X)·ch1/12` on a Calabi-Yau threefold.
fn euler_geometric(m: &ModelDefinition, g: &Geometric) -> Rational {
    &g.ch3 + dot(&m.c2, &g.d) * frac(1, 12)
}

/// The 6×6 matrix (on model Chern coordinates) of an operation given in
/// geometric coordinates.
fn chern_operator(m: &ModelDefinition, f: impl Fn(&Geometric) -> Geometric) -> Result<RMatrix> {
    let mut cols = Vec::with_capacity(6);
    for j in 0..6 {
        let mut e = vec![rat(0); 6];
        e[j] = rat(1);
        let g = to_geometric(m, &ChernData::from_vec(&e)?);
        cols.push(from_geometric(m, &f(&g))?.to_vec());
    }
    Ok(RMatrix::from_rows(cols)?.transpose())
}

/// The lattice matrix `(D⁻¹ Φ D)ᵀ` of an operator `Φ` on Chern data.
pub fn lattice_action(m: &ModelDefinition, phi: &RMatrix) -> Result<RMatrix> {
    let dinv = m
        .dictionary
        .mat_inverse()
        .map_err(|e| Error::Rank(format!("the dictionary of model {} is not invertible ({e})", m.name)))?;
    Ok(dinv.mat_mul(phi)?.mat_mul(&m.dictionary)?.transpose())
}

/// The Chern-data operator of `⊗O(D)` for a named divisor.
pub fn twist_operator(m: &ModelDefinition, divisor: &str) -> Result<RMatrix> {
    twist_operator_by(m, &m.divisor(divisor)?)
}

/// The Chern-data operator of `⊗O(D)` for `D` in divisor coordinates.
pub fn twist_operator_by(m: &ModelDefinition, div: &[Rational]) -> Result<RMatrix> {
    chern_operator(m, |g| twist_geometric(m, g, div))
}

/// The Chern-data operator of `ch ↦ ch − (∫ch·Td)·1`.
pub fn gamma_operator(m: &ModelDefinition) -> Result<RMatrix> {
    chern_operator(m, |g| Geometric { r: &g.r - euler_geometric(m, g), ..g.clone() })
}

/// `⊗O(D)` transported to the BPS lattice.
pub fn twist_matrix_on_bps(m: &ModelDefinition, divisor: &str) -> Result<RMatrix> {
    lattice_action(m, &twist_operator(m, divisor)?)
}

/// The gamma shift transported to the BPS lattice.
pub fn gamma_shift_on_bps(m: &ModelDefinition) -> Result<RMatrix> {
    lattice_action(m, &gamma_operator(m)?)
}

/// Intersection numbers of a divisor `D` written in divisor coordinates:
/// `(D³, D²·D2, c₂·D)`.
pub fn divisor_numbers(m: &ModelDefinition, d: &[Rational]) -> (Rational, Rational, Rational) {
    let second = [rat(0), rat(1)];
    (triple_product(m, d, d, d), triple_product(m, d, d, &second), dot(&m.c2, d))
}

// ---------------------------------------------------------------------------
// Periods and central charges.

/// `Π = (2F − tⁱF_i, B₁·∇F, B₂·∇F, 1, t1, t2)` where `B₁, B₂` are the
/// `ch1` basis classes (for the K3-fibred models `F_E = F₁ − 2F₂`, `F_L = F₂`).
pub fn period_vector(m: &ModelDefinition) -> Result<Vec<MultiPoly>> {
    let f = m.prepotential()?.full();
    let grad: Vec<MultiPoly> = Var::ALL.iter().map(|&v| f.partial(v)).collect();
    let t = kahler_class();
    let euler = f.scale(&rat(2)).sub(&t[0].mul(&grad[0])).sub(&t[1].mul(&grad[1]));
    let along = |i: usize| {
        let b = m.ch1_basis.row(i);
        grad[0].scale(&b[0]).add(&grad[1].scale(&b[1]))
    };
    Ok(vec![euler, along(0), along(1), MultiPoly::one(), t[0].clone(), t[1].clone()])
}

/// `Z(n) = Σ nᵢΠᵢ`.
pub fn central_charge_bps(m: &ModelDefinition, n: &BPSCharge) -> Result<MultiPoly> {
    let pi = period_vector(m)?;
    Ok(pi.iter().zip(n.to_vec()).fold(MultiPoly::zero(), |acc, (p, c)| acc.add(&p.scale(&c))))
}

/// `Z(Q) = r t³/6 − ch1·t²/2 + (ch2 + r c₂/24)·t − (ch3 + ch1·c₂/24)`
/// with `t = t1·D1 + t2·D2`.
pub fn central_charge_geometric(m: &ModelDefinition, ch: &ChernData) -> MultiPoly {
    let g = to_geometric(m, ch);
    let t = kahler_class();
    let cubic = triple_poly(m, &t, &t, &t).scale(&(&g.r * frac(1, 6)));
    let quadratic = triple_poly(m, &constants(&g.d), &t, &t).scale(&frac(-1, 2));
    let linear =
        (0..2).fold(MultiPoly::zero(), |acc, i| acc.add(&t[i].scale(&(&g.p[i] + &g.r * &m.c2[i] * frac(1, 24)))));
    let constant = MultiPoly::constant(-(&g.ch3 + dot(&g.d, &m.c2) * frac(1, 24)));
    cubic.add(&quadratic).add(&linear).add(&constant)
}

/// The cubic part the prepotential must have: `−C_ijk tⁱtʲtᵏ/6`.
pub fn expected_cubic(m: &ModelDefinition) -> MultiPoly {
    let t = kahler_class();
    triple_poly(m, &t, &t, &t).scale(&frac(-1, 6))
}

// ---------------------------------------------------------------------------
// Monodromy.

fn coefficient_matrix(polys: &[MultiPoly]) -> Result<RMatrix> {
    let mut monomials: Vec<(u32, u32)> = polys.iter().flat_map(|p| p.terms().map(|(m, _)| *m)).collect();
    monomials.sort_unstable();
    monomials.dedup();
    RMatrix::from_rows(polys.iter().map(|p| monomials.iter().map(|&(a, b)| p.coeff(a, b)).collect()).collect())
}

/// The matrix `A` with `Π(t + δ·e) = A·Π(t)`, solved exactly from the
/// polynomial coefficients.
pub fn derive_shift_matrix(m: &ModelDefinition, direction: KahlerDirection, delta: &Rational) -> Result<RMatrix> {
    let pi = period_vector(m)?;
    let shifted: Vec<MultiPoly> = pi.iter().map(|p| p.shift(direction.var(), delta)).collect();
    let mut all = pi.clone();
    all.extend(shifted);
    // One common monomial list for both sides.
    let coeffs = coefficient_matrix(&all)?;
    let rows = coeffs.to_rows();
    let p = RMatrix::from_rows(rows[..6].to_vec())?;
    let q = RMatrix::from_rows(rows[6..].to_vec())?;
    // A·P = Q  ⇔  Pᵀ·Aᵀ = Qᵀ.
    Ok(crate::exact_core::linear_solve(&p.transpose(), &q.transpose())?.transpose())
}

/// Name of the printed monodromy matrix for a direction.
pub fn monodromy_name(m: &ModelDefinition, direction: KahlerDirection) -> String {
    format!("S_{}", m.divisors[direction.index()])
}

/// Every convention under which `derived` reproduces `printed`.
pub fn matching_conventions(derived: &RMatrix, printed: &RMatrix) -> Vec<Convention> {
    Convention::ALL.into_iter().filter(|c| c.apply(derived).is_ok_and(|x| &x == printed)).collect()
}

/// Derives the monodromy for `t_i → t_i + 1` and reconciles it with the
/// printed `S` matrix, returning the derived matrix and the first matching
/// convention.
pub fn monodromy_from_prepotential(m: &ModelDefinition, direction: KahlerDirection) -> Result<(RMatrix, Convention)> {
    let derived = derive_shift_matrix(m, direction, &rat(1))?;
    let name = monodromy_name(m, direction);
    let printed = m.matrix(&name)?;
    match matching_conventions(&derived, printed).first() {
        Some(&c) => Ok((derived, c)),
        None => Err(Error::Reconciliation {
            message: format!("{name} of model {} matches the derived monodromy under no convention", m.name),
            derived: derived.to_string(),
            printed: printed.to_string(),
        }),
    }
}

/// Checks `R_iR_jR_k = C_ijk·Y` for `R_i = S_i − 1` and `(T − 1)² = 0`.
pub fn verify_monodromy_algebra(m: &ModelDefinition) -> Result<Report> {
    let mut report = Report::new("monodromy-algebra");
    let id = RMatrix::identity(6);
    let r: Vec<RMatrix> =
        KahlerDirection::ALL.iter().map(|&d| m.matrix(&monodromy_name(m, d))?.sub(&id)).collect::<Result<_>>()?;
    let triples: Vec<[usize; 3]> = (0..8).map(|b: usize| [b >> 2 & 1, b >> 1 & 1, b & 1]).collect();
    let products: Vec<RMatrix> =
        triples.iter().map(|&[i, j, k]| r[i].mat_mul(&r[j])?.mat_mul(&r[k])).collect::<Result<_>>()?;
    let pivot = triples.iter().position(|&[i, j, k]| !c_ijk(m, i, j, k).is_zero());
    let name = |i: usize| &m.divisors[i];
    match pivot {
        None => report.push(Check::gate(
            &format!("{}-r-algebra", m.name),
            "R_iR_jR_k = C_ijk·Y with a single Y",
            false,
            "all triple intersections vanish",
        )),
        Some(p) => {
            let [i, j, k] = triples[p];
            let y = products[p].scale(&(rat(1) / c_ijk(m, i, j, k)));
            let bad: Vec<String> = triples
                .iter()
                .zip(&products)
                .filter(|(&[i, j, k], prod)| **prod != y.scale(c_ijk(m, i, j, k)))
                .map(|(&[i, j, k], _)| format!("R_{}R_{}R_{}", name(i), name(j), name(k)))
                .collect();
            let ok = bad.is_empty() && !y.is_zero();
            report.push(Check::gate(
                &format!("{}-r-algebra", m.name),
                "R_iR_jR_k = C_ijk·Y with a single nonzero Y",
                ok,
                if ok {
                    format!("Y fixed by R_{}R_{}R_{} = {}·Y", name(i), name(j), name(k), c_ijk(m, i, j, k))
                } else {
                    format!("violated by {bad:?}")
                },
            ));
        }
    }
    let t1 = m.matrix("T")?.sub(&id)?;
    let sq = t1.mat_mul(&t1)?;
    report.push(Check::gate(&format!("{}-t-unipotent", m.name), "(T − 1)² = 0", sq.is_zero(), sq.to_string()));
    Ok(report)
}

/// `K⁻¹·S·K` and `m⁻¹·(K⁻¹·S·K)·m` for a printed matrix `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjugation {
    pub matrix: String,
    pub tilde: RMatrix,
    pub conjugate: RMatrix,
}

/// Conjugates each of `S_L`, `S_H`, `T` by the printed change-of-basis
/// matrices `K` and `m`.
pub fn basis_conjugations(m: &ModelDefinition) -> Result<Vec<Conjugation>> {
    let k = m.matrix("K")?;
    let mm = m.matrix("m")?;
    let (kinv, minv) = (k.mat_inverse()?, mm.mat_inverse()?);
    let mut out = Vec::new();
    for d in KahlerDirection::ALL {
        let name = monodromy_name(m, d);
        out.push(conjugation(&name, m.matrix(&name)?, k, &kinv, mm, &minv)?);
    }
    out.push(conjugation("T", m.matrix("T")?, k, &kinv, mm, &minv)?);
    Ok(out)
}

fn conjugation(
    name: &str,
    s: &RMatrix,
    k: &RMatrix,
    kinv: &RMatrix,
    m: &RMatrix,
    minv: &RMatrix,
) -> Result<Conjugation> {
    let tilde = kinv.mat_mul(s)?.mat_mul(k)?;
    let conjugate = minv.mat_mul(&tilde)?.mat_mul(m)?;
    Ok(Conjugation { matrix: name.to_string(), tilde, conjugate })
}

// ---------------------------------------------------------------------------
// Printed period vectors.

/// Which model a printed period vector belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attribution {
    pub label: String,
    pub stated_model: String,
    /// The model whose derived periods agree with the most entries.
    pub best_model: String,
    /// 0-based entries that differ from the best model's periods.
    pub mismatched_entries: Vec<usize>,
    /// Number of agreeing entries per model.
    pub scores: Vec<(String, usize)>,
}

/// Compares every printed period vector with every model that has a
/// prepotential.
pub fn attribute_printed_periods(reg: &Registry) -> Result<Vec<Attribution>> {
    let derived: Vec<(String, Vec<MultiPoly>)> = reg
        .models
        .iter()
        .filter(|m| m.prepotential.is_some())
        .map(|m| Ok((m.name.clone(), period_vector(m)?)))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for printed in &reg.printed_periods {
        let scores: Vec<(String, usize)> = derived
            .iter()
            .map(|(name, pi)| (name.clone(), pi.iter().zip(&printed.entries).filter(|(a, b)| a == b).count()))
            .collect();
        let Some(best) = scores.iter().max_by_key(|(_, s)| *s) else { continue };
        let pi = &derived.iter().find(|(n, _)| n == &best.0).expect("scored model").1;
        let mismatched_entries =
            (0..printed.entries.len().max(pi.len())).filter(|&i| pi.get(i) != printed.entries.get(i)).collect();
        out.push(Attribution {
            label: printed.label.clone(),
            stated_model: printed.stated_model.clone(),
            best_model: best.0.clone(),
            mismatched_entries,
            scores,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The full check list for a K3-fibred model.

fn gate_result<T>(
    report: &mut Report,
    name: &str,
    statement: &str,
    r: Result<T>,
    ok: impl FnOnce(&T) -> (bool, String),
) {
    match r {
        Ok(v) => {
            let (pass, detail) = ok(&v);
            report.push(Check::gate(name, statement, pass, detail));
        }
        Err(e) => report.push(Check::gate(name, statement, false, e.to_string())),
    }
}

/// Every lattice-level identity of a K3-fibred model with a prepotential.
pub fn verify_k3_model(m: &ModelDefinition) -> Result<Report> {
    let mut report = Report::new(&m.name);
    let id = RMatrix::identity(6);
    let n = &m.name;

    // Prepotential against the intersection numbers.
    let prep = m.prepotential()?;
    let cubic = expected_cubic(m);
    report.push(Check::gate(
        &format!("{n}-prepotential-cubic"),
        "cubic part of F = −C_ijk tⁱtʲtᵏ/3!",
        prep.cubic == cubic,
        format!("printed {}, expected {cubic}", prep.cubic),
    ));

    // Monodromies from the prepotential.
    let mut tags: Vec<Vec<Convention>> = Vec::new();
    for d in KahlerDirection::ALL {
        let name = monodromy_name(m, d);
        let statement = format!("Π(t + e_{}) = A·Π(t) reproduces the printed {name}", d.index() + 1);
        let derived = derive_shift_matrix(m, d, &rat(1));
        gate_result(&mut report, &format!("{n}-monodromy-{name}"), &statement, derived, |a| {
            let printed = m.matrix(&name).expect("printed monodromy");
            let matches = matching_conventions(a, printed);
            let detail = if matches.is_empty() {
                format!("derived A =\n{a}")
            } else {
                format!("conventions {}", matches.iter().map(|c| c.tag()).collect::<Vec<_>>().join(", "))
            };
            tags.push(matches.clone());
            (!matches.is_empty(), detail)
        });
    }
    let common: Vec<Convention> =
        Convention::ALL.into_iter().filter(|c| tags.len() == 2 && tags.iter().all(|t| t.contains(c))).collect();
    report.push(Check::gate(
        &format!("{n}-monodromy-convention"),
        "one convention tag reconciles every derived monodromy",
        common.len() == 1,
        format!("common conventions: {}", common.iter().map(|c| c.tag()).collect::<Vec<_>>().join(", ")),
    ));
    let zero_shift = derive_shift_matrix(m, KahlerDirection::T1, &rat(0));
    gate_result(
        &mut report,
        &format!("{n}-monodromy-zero-shift"),
        "a zero shift gives the identity",
        zero_shift,
        |a| (a.is_identity(), a.to_string()),
    );

    // R-algebra and unipotency.
    report.extend(verify_monodromy_algebra(m)?);

    // Lattice actions of the twists and of the gamma shift.
    for d in KahlerDirection::ALL {
        let div = &m.divisors[d.index()];
        let name = monodromy_name(m, d);
        let got = twist_matrix_on_bps(m, div);
        gate_result(&mut report, &format!("{n}-twist-{div}"), &format!("⊗O({div}) acts as {name}⁻¹"), got, |a| {
            let ok = m.matrix(&name).and_then(|s| s.mat_inverse()).is_ok_and(|inv| &inv == a);
            (ok, a.to_string())
        });
    }
    let got = gamma_shift_on_bps(m);
    gate_result(&mut report, &format!("{n}-gamma-shift"), "the gamma shift acts as T⁻¹", got, |a| {
        let ok = m.matrix("T").and_then(|t| t.mat_inverse()).is_ok_and(|inv| &inv == a);
        (ok, a.to_string())
    });
    let got = twist_operator_by(m, &[rat(0), rat(0)]).and_then(|phi| lattice_action(m, &phi));
    gate_result(&mut report, &format!("{n}-twist-zero"), "⊗O(0) acts as the identity", got, |a| {
        (a == &id, a.to_string())
    });

    // Central charges: both sides are linear in n, so unit vectors suffice.
    let mut bad = Vec::new();
    for j in 0..6 {
        let mut v = [0i64; 6];
        v[j] = 1;
        let e = BPSCharge::from_i64(v);
        let zn = central_charge_bps(m, &e)?;
        let zq = central_charge_geometric(m, &m.bps_to_chern(&e));
        if zn != zq {
            bad.push(format!("e{}: Z(n) = {zn}, Z(Q) = {zq}", j + 1));
        }
    }
    report.push(Check::gate(
        &format!("{n}-central-charge"),
        "Z(n) = Z(Q) under the dictionary, as polynomials",
        bad.is_empty(),
        bad.join("; "),
    ));

    // Unimodularity of the lattice matrices; m is only a rational change of basis.
    for name in m.matrices.keys() {
        let mat = m.matrix(name)?;
        let det = mat.det()?;
        if name == "m" {
            report.push(Check::info(&format!("{n}-det-{name}"), "det m", det.to_string()));
        } else {
            report.push(Check::gate(
                &format!("{n}-unimodular-{name}"),
                &format!("{name} is integral with determinant ±1"),
                mat.is_unimodular(),
                format!("det = {det}"),
            ));
        }
    }

    // Conjugations by m and K.
    match basis_conjugations(m) {
        Ok(conjs) => {
            let k = m.matrix("K")?;
            for c in conjs {
                let s = m.matrix(&c.matrix)?;
                let back = k.mat_mul(&c.tilde)?.mat_mul(&k.mat_inverse()?)?;
                let inv_ok = c.conjugate.det()? == s.det()? && c.conjugate.trace()? == s.trace()?;
                report.push(Check::gate(
                    &format!("{n}-conjugation-{}-invariants", c.matrix),
                    &format!("K·(K⁻¹{0}K)·K⁻¹ = {0}; conjugation keeps det and trace", c.matrix),
                    &back == s && inv_ok,
                    String::new(),
                ));
                let reference = reference::conjugate(n, &c.matrix);
                report.push(Check::gate(
                    &format!("{n}-conjugation-{}-reference", c.matrix),
                    &format!("m⁻¹K⁻¹{}Km equals the recorded reference", c.matrix),
                    reference.as_ref() == Some(&c.conjugate),
                    c.conjugate.to_string(),
                ));
            }
        }
        Err(e) => {
            report.push(Check::gate(&format!("{n}-conjugations"), "m and K are invertible", false, e.to_string()))
        }
    }
    Ok(report)
}
