//! The subcommands, independent of argument parsing.
//!
//! Each command returns the text for standard output together with an
//! optional identity failure; input problems are returned as errors.

use crate::document::{ChargeDocument, ChargeSlots, GeometryRef};
use ellfm::exact_core::{format_rational, parse_rational, RMatrix, Rational};
use ellfm::fibre_square::{ch_inverse_kernel, ch_poincare, grr_transform, Direction};
use ellfm::fm_charges::{fm_forward, fm_inverse, twisted_charge, verify_m_relations};
use ellfm::models::lattice::divisor_numbers;
use ellfm::models::{BPSCharge, ChernData, Fibration, ModelDefinition, Registry};
use ellfm::moduli::{dim_moduli_deg18, fmw_bps_dictionary};
use ellfm::report::Report;
use ellfm::suites::{run_all, run_suite};
use ellfm::{Error, Result};
use serde_json::{json, Map, Value};

/// What a successful evaluation produced.
#[derive(Debug)]
pub struct Output {
    pub stdout: String,
    /// Set when a verified identity fails; the process then exits with 3.
    pub failure: Option<String>,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self { stdout, failure: None }
    }

    fn json(value: &Value) -> Self {
        Self::ok(pretty(value))
    }
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values always serialise")
}

fn q(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

fn qs(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn matrix_json(m: &RMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| qs(r)).collect())
}

/// The registry from `--config`, or the built-in one.
pub fn load_registry(config: Option<&std::path::Path>) -> Result<Registry> {
    match config {
        Some(path) => Registry::from_path(path),
        None => Ok(Registry::builtin()),
    }
}

/// `model list`.
pub fn model_list(reg: &Registry, as_json: bool) -> Output {
    let names = reg.model_names();
    if as_json {
        Output::json(&json!(names))
    } else {
        Output::ok(names.join("\n"))
    }
}

fn fibration_name(f: Fibration) -> &'static str {
    match f {
        Fibration::K3 => "K3",
        Fibration::Elliptic => "elliptic",
    }
}

/// Named intersection numbers, in display order.
fn intersection_numbers(m: &ModelDefinition) -> Result<Vec<(String, Rational)>> {
    let (a, b) = (&m.divisors[0], &m.divisors[1]);
    let mut out = vec![
        (format!("{a}^3"), m.triple[0].clone()),
        (format!("{a}^2·{b}"), m.triple[1].clone()),
        (format!("{a}·{b}^2"), m.triple[2].clone()),
        (format!("{b}^3"), m.triple[3].clone()),
    ];
    let extras: Vec<String> = m.divisor_names().into_iter().skip(2).collect();
    for name in &extras {
        let (cube, square, _) = divisor_numbers(m, &m.divisor(name)?);
        out.push((format!("{name}^3"), cube));
        out.push((format!("{name}^2·{b}"), square));
    }
    for name in m.divisor_names() {
        let (_, _, c2) = divisor_numbers(m, &m.divisor(&name)?);
        out.push((format!("c2·{name}"), c2));
    }
    Ok(out)
}

fn model_json(m: &ModelDefinition) -> Result<Value> {
    let numbers: Map<String, Value> = intersection_numbers(m)?.into_iter().map(|(k, v)| (k, q(&v))).collect();
    let matrices: Map<String, Value> = m.matrices.iter().map(|(k, v)| (k.clone(), matrix_json(v))).collect();
    let extra: Map<String, Value> = m.extra_divisors.iter().map(|(k, v)| (k.clone(), qs(v))).collect();
    let errata: Vec<Value> = m
        .errata
        .iter()
        .map(|e| json!({"matrix": e.matrix, "row": e.row, "col": e.col, "printed": q(&e.printed), "corrected": q(&e.corrected)}))
        .collect();
    Ok(json!({
        "name": m.name,
        "title": m.title,
        "fibration": fibration_name(m.fibration),
        "divisors": m.divisors,
        "extra_divisors": extra,
        "intersection_numbers": numbers,
        "ch1_labels": m.ch1_labels,
        "ch2_labels": m.ch2_labels,
        "prepotential": m.prepotential.as_ref().map(|p| p.full().to_string()),
        "dictionary": matrix_json(&m.dictionary),
        "matrices": matrices,
        "errata": errata,
    }))
}

fn model_text(m: &ModelDefinition) -> Result<String> {
    let mut out = vec![format!("{} — {}", m.name, m.title), format!("fibration: {}", fibration_name(m.fibration))];
    out.push(format!("divisors: {}", m.divisors.join(", ")));
    for (name, coords) in &m.extra_divisors {
        let terms: Vec<String> = coords.iter().zip(&m.divisors).map(|(c, d)| format!("{c}·{d}")).collect();
        out.push(format!("  {name} = {}", terms.join(" + ")));
    }
    out.push("intersection numbers:".into());
    for (k, v) in intersection_numbers(m)? {
        out.push(format!("  {k} = {v}"));
    }
    if let Some(p) = &m.prepotential {
        out.push(format!("prepotential: F = {}", p.full()));
    }
    out.push(format!(
        "dictionary (rank, ch1 in {}, ch2 in {}, ch3) from (n6, n4^1, n4^2, n0, n2^1, n2^2):",
        m.ch1_labels.join(", "),
        m.ch2_labels.join(", ")
    ));
    out.push(indent(&m.dictionary.to_string()));
    for (name, mat) in &m.matrices {
        out.push(format!("{name}:"));
        out.push(indent(&mat.to_string()));
    }
    for e in &m.errata {
        out.push(format!(
            "erratum: {} entry ({}, {}) printed {} corrected {}",
            e.matrix, e.row, e.col, e.printed, e.corrected
        ));
    }
    Ok(out.join("\n"))
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}")).collect::<Vec<_>>().join("\n")
}

/// `model show <name>`.
pub fn model_show(reg: &Registry, name: &str, as_json: bool) -> Result<Output> {
    let m = reg.model(name)?;
    Ok(if as_json { Output::json(&model_json(m)?) } else { Output::ok(model_text(m)?) })
}

/// Options of the `fm` command.
#[derive(Clone, Debug, Default)]
pub struct FmOptions {
    pub model: Option<String>,
    pub forward: bool,
    pub twisted_charge: bool,
    pub oracle: bool,
    pub verify_m: bool,
}

/// `fm`: transforms the charge in `doc`.
pub fn fm(reg: &Registry, doc: &ChargeDocument, opts: &FmOptions) -> Result<Output> {
    let geometry = match (&opts.model, &doc.geometry) {
        (Some(name), _) => GeometryRef::Named(name.clone()),
        (None, Some(g)) => g.clone(),
        (None, None) => {
            return Err(Error::Precondition("no geometry: pass --model or set `geometry` in the document".into()))
        }
    };
    let geom = geometry.resolve(reg)?;
    let v = doc.charge.to_class(&geom)?;
    let (direction, out) =
        if opts.forward { ("forward", fm_forward(&v, &geom)?) } else { ("inverse", fm_inverse(&v, &geom)?) };
    let mut result = Map::new();
    result.insert("direction".into(), json!(direction));
    result.insert("geometry".into(), serde_json::to_value(&geometry).expect("serialisable"));
    result.insert("input".into(), serde_json::to_value(ChargeSlots::from_class(&v)).expect("serialisable"));
    result.insert("output".into(), serde_json::to_value(ChargeSlots::from_class(&out)).expect("serialisable"));
    let mut failures = vec![];
    if opts.twisted_charge {
        // The output complex is read as a single sheaf in degree 1.
        let q_in = twisted_charge(&v, 0, &geom)?;
        let q_out = twisted_charge(&-&out, 1, &geom)?;
        result.insert(
            "twisted_charge".into(),
            json!({
                "input": ChargeSlots::from_class(&q_in),
                "output": ChargeSlots::from_class(&q_out),
            }),
        );
    }
    if opts.oracle {
        let oracle = if opts.forward {
            grr_transform(&v, &ch_poincare(&geom), Direction::Forward, &geom)?
        } else {
            grr_transform(&v, &ch_inverse_kernel(&geom), Direction::Inverse, &geom)?
        };
        let matches = oracle == out;
        result.insert("oracle_match".into(), json!(matches));
        if !matches {
            result.insert(
                "oracle_output".into(),
                serde_json::to_value(ChargeSlots::from_class(&oracle)).expect("serialisable"),
            );
            failures.push("the closed form disagrees with the kernel computation".to_string());
        }
    }
    if opts.verify_m {
        let report = verify_m_relations(&v, &geom)?;
        failures.extend(report.failures().map(|c| format!("{}: {}", c.name, c.statement)));
        result.insert("m_relations".into(), serde_json::to_value(&report).expect("serialisable"));
    }
    Ok(Output {
        stdout: pretty(&Value::Object(result)),
        failure: if failures.is_empty() { None } else { Some(failures.join("; ")) },
    })
}

/// `verify all` or `verify <suite>`.
pub fn verify(reg: &Registry, suite: &str) -> Result<Output> {
    let reports: Vec<Report> = if suite == "all" { run_all(reg) } else { vec![run_suite(suite, reg)?] };
    let ok = reports.iter().all(Report::ok);
    let failing: Vec<String> = reports
        .iter()
        .flat_map(|r| r.failures().map(move |c| format!("{}/{}: {}", r.suite, c.name, c.statement)))
        .collect();
    let value = json!({ "ok": ok, "suites": reports });
    Ok(Output {
        stdout: pretty(&value),
        failure: if ok { None } else { Some(format!("failing identities:\n  {}", failing.join("\n  "))) },
    })
}

/// Parses a comma-separated list of rationals.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>> {
    text.split(',').map(parse_rational).collect()
}

fn chern_json(m: &ModelDefinition, ch: &ChernData) -> Value {
    let named = |labels: &[String], values: &[Rational]| -> Value {
        Value::Object(labels.iter().cloned().zip(values.iter().map(q)).collect())
    };
    json!({
        "rank": q(&ch.rank),
        "ch1": named(&m.ch1_labels, &ch.ch1),
        "ch2": named(&m.ch2_labels, &ch.ch2),
        "ch3": q(&ch.ch3),
    })
}

/// Which charge the `moduli` command evaluates.
#[derive(Clone, Debug)]
pub enum ModuliInput {
    Bps(String),
    Fmw(String),
}

/// `moduli`: the moduli dimension of a charge of an elliptic model.
pub fn moduli(reg: &Registry, model: &str, input: &ModuliInput) -> Result<Output> {
    let m = reg.model(model)?;
    if m.fibration != Fibration::Elliptic {
        return Err(Error::Precondition(format!("the moduli formula needs an elliptic model, not {model}")));
    }
    let mut result = Map::new();
    result.insert("model".into(), json!(m.name));
    let bps = match input {
        ModuliInput::Bps(text) => BPSCharge::from_vec(&parse_vector(text)?)?,
        ModuliInput::Fmw(text) => {
            let parts: Vec<&str> = text.split(',').collect();
            let [n, a] = parts.as_slice() else {
                return Err(Error::Parse(format!("--fmw takes `n,a`, got `{text}`")));
            };
            let int = |s: &str| s.trim().parse::<i64>().map_err(|_| Error::Parse(format!("not an integer: `{s}`")));
            let (n, a) = (int(n)?, int(a)?);
            result.insert("fmw".into(), json!({"n": n, "a": a}));
            fmw_bps_dictionary(n, a)?
        }
    };
    let dimension = dim_moduli_deg18(&bps)?;
    result.insert("bps".into(), qs(&bps.to_vec()));
    result.insert("chern".into(), chern_json(m, &m.bps_to_chern(&bps)));
    result.insert("dimension".into(), q(&dimension));
    Ok(Output::json(&Value::Object(result)))
}
