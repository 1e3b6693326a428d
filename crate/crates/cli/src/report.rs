//! Reports as JSON trees, and their text rendering.
//!
//! Every command first builds a `serde_json::Value`; the text form is
//! rendered from that value, so both carry the same data. Degrees are string
//! keys, ranks are integers and rational coefficients are strings such as
//! `"-2/3"`.

use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use sullivan_core::weights::WeightOutcome;
use sullivan_core::{
    build_ks_total, find_positive_weights, gottlieb, homology_of, lemma44_verify, prop23_check, weight_constraints,
    Certificate, DerComplex, Derivation, GeneratorSet, MinimalModel,
};

use crate::dsl::{rational_string, ModelFile};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub reps: bool,
    pub degrees: Option<(u32, u32)>,
}

impl Options {
    fn keeps(&self, n: u32) -> bool {
        self.degrees.is_none_or(|(a, b)| (a..=b).contains(&n))
    }
}

/// A command outcome: the report and the exit code it implies.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub exit: i32,
}

/// A command that could not produce a report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub exit: i32,
    pub message: String,
}

pub const COMMANDS: [&str; 7] = ["validate", "homology", "baut", "gottlieb", "weights", "ks-check", "der-table"];

pub const DIAGONAL_NOTE: &str = "no generator-diagonal positive weight system exists";

fn coefficients(gens: &GeneratorSet, theta: &Derivation) -> Value {
    let mut terms: Vec<_> = theta.coords().collect();
    terms.sort_by_key(|(e, _)| (std::cmp::Reverse(gens.generator(e.source).degree), e.source, e.target.clone()));
    let mut out = Map::new();
    for (e, c) in terms {
        out.insert(e.label(gens), json!(rational_string(c)));
    }
    Value::Object(out)
}

fn require_valid(m: &MinimalModel) -> Result<(), Failure> {
    let report = m.validate();
    if report.is_valid() {
        Ok(())
    } else {
        Err(Failure {
            exit: 1,
            message: format!("invalid model:\n{report}"),
        })
    }
}

pub fn validate(file: &ModelFile) -> Outcome {
    let m = &file.model;
    let report = m.validate();
    let mut out = json!({
        "command": "validate",
        "valid": report.is_valid(),
        "generators": m.generators().len(),
        "top_degree": m.top_degree(),
        "violations": report.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "warnings": report.warnings.iter().map(ToString::to_string).collect::<Vec<_>>(),
    });
    let mut ok = report.is_valid();
    if let Some(ext) = &file.extension {
        let total = build_ks_total(m, ext);
        ok &= total.is_ok();
        out["extension"] = json!({
            "base": ext.base().name,
            "degree": ext.base().degree,
            "valid": total.is_ok(),
            "error": total.err().map(|e| e.to_string()),
        });
    }
    Outcome {
        report: out,
        exit: if ok { 0 } else { 1 },
    }
}

pub fn homology(file: &ModelFile, opts: Options) -> Result<Outcome, Failure> {
    let m = &file.model;
    require_valid(m)?;
    let complex = DerComplex::new(m).expect("validated");
    let h = homology_of(&complex);
    let gens = m.generators();
    let mut degrees = Map::new();
    for d in h.degrees.iter().filter(|d| opts.keeps(d.degree)) {
        let mut entry = json!({
            "chains": d.chains,
            "cycles": d.cycles,
            "boundaries": d.boundaries,
            "rank": d.dim(),
        });
        if opts.reps {
            entry["representatives"] = d.representatives.iter().map(|r| coefficients(gens, r)).collect();
        }
        degrees.insert(d.degree.to_string(), entry);
    }
    let ranks: Map<String, Value> = h
        .ranks()
        .into_iter()
        .filter(|(n, _)| opts.keeps(*n))
        .map(|(n, r)| (n.to_string(), json!(r)))
        .collect();
    let baut: Map<String, Value> = h
        .ranks()
        .into_iter()
        .filter(|(n, _)| opts.keeps(*n))
        .map(|(n, r)| ((n + 1).to_string(), json!(r)))
        .collect();
    Ok(Outcome {
        report: json!({
            "command": "homology",
            "top_degree": m.top_degree(),
            "degrees": degrees,
            "ranks": ranks,
            "baut": baut,
        }),
        exit: 0,
    })
}

/// Ranks of `π_n(B aut₁ X)`; `--degrees` refers to these homotopy degrees.
pub fn baut(file: &ModelFile, opts: Options) -> Result<Outcome, Failure> {
    require_valid(&file.model)?;
    let h = sullivan_core::homology(&file.model).expect("validated");
    let ranks: Map<String, Value> = h
        .baut_ranks()
        .into_iter()
        .filter(|(n, _)| opts.keeps(*n))
        .map(|(n, r)| (n.to_string(), json!(r)))
        .collect();
    Ok(Outcome {
        report: json!({ "command": "baut", "ranks": ranks }),
        exit: 0,
    })
}

pub fn gottlieb_report(file: &ModelFile, opts: Options) -> Result<Outcome, Failure> {
    let m = &file.model;
    require_valid(m)?;
    let g = gottlieb(m).expect("validated");
    let gens = m.generators();
    let mut degrees = Map::new();
    for d in g.degrees.iter().filter(|d| d.rank > 0 && opts.keeps(d.degree)) {
        let functionals: Vec<Value> = d
            .functionals
            .iter()
            .map(|f| {
                Value::Object(
                    f.iter()
                        .map(|(id, c)| (gens.generator(*id).name.clone(), json!(rational_string(c))))
                        .collect(),
                )
            })
            .collect();
        degrees.insert(d.degree.to_string(), json!({ "rank": d.rank, "functionals": functionals }));
    }
    let ranks: Map<String, Value> = g
        .ranks()
        .into_iter()
        .filter(|(n, _)| opts.keeps(*n))
        .map(|(n, r)| (n.to_string(), json!(r)))
        .collect();
    Ok(Outcome {
        report: json!({ "command": "gottlieb", "ranks": ranks, "degrees": degrees }),
        exit: 0,
    })
}

pub fn weights(file: &ModelFile) -> Result<Outcome, Failure> {
    let m = &file.model;
    require_valid(m)?;
    let gens = m.generators();
    let constraints: Vec<String> = weight_constraints(m).equations.iter().map(|e| e.display(gens)).collect();
    let block = match lemma44_verify(m) {
        Ok(r) => json!({
            "verified": r.verified(),
            "basis": r.basis_size,
            "differentials_checked": r.differentials_checked,
            "brackets_checked": r.brackets_checked,
            "violations": r.violations.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
        Err(_) => Value::Null,
    };
    let (mut report, exit) = match find_positive_weights(m).expect("validated") {
        WeightOutcome::Feasible(ws) => {
            let weights: Map<String, Value> = gens
                .iter()
                .map(|g| {
                    let w = ws.get(g.id).expect("every generator weighted");
                    (g.name.clone(), json!(w.to_integer().to_u64().expect("small weight")))
                })
                .collect();
            (json!({ "command": "weights", "status": "FEASIBLE", "weights": weights }), 0)
        }
        WeightOutcome::Infeasible(w) => (
            json!({
                "command": "weights",
                "status": "INFEASIBLE",
                "witness": w.lines(gens),
                "conclusion": DIAGONAL_NOTE,
            }),
            1,
        ),
    };
    report["constraints"] = json!(constraints);
    report["block_weights"] = block;
    Ok(Outcome { report, exit })
}

pub fn ks_check(file: &ModelFile) -> Result<Outcome, Failure> {
    let Some(ext) = &file.extension else {
        return Err(Failure {
            exit: 2,
            message: "ks-check needs an `extend` declaration in the model file".into(),
        });
    };
    require_valid(&file.model)?;
    let total = build_ks_total(&file.model, ext).map_err(|e| Failure {
        exit: 1,
        message: e.to_string(),
    })?;
    let gens = total.generators();
    let cert = prop23_check(&total, ext.base_id()).expect("valid total");
    let mut report = json!({
        "command": "ks-check",
        "base": ext.base().name,
        "degree": ext.base().degree,
    });
    let exit = match cert {
        Certificate::Pass {
            cycle_dimension,
            base_boundary,
            ..
        } => {
            report["status"] = json!("PASS");
            report["cycle_dimension"] = json!(cycle_dimension);
            report["base_boundary"] = json!(base_boundary.display(gens));
            0
        }
        Certificate::Fail { witness } => {
            report["status"] = json!("FAIL");
            report["witness"] = json!(witness.display(gens));
            1
        }
    };
    Ok(Outcome { report, exit })
}

pub fn der_table(file: &ModelFile, opts: Options) -> Result<Outcome, Failure> {
    let m = &file.model;
    require_valid(m)?;
    let complex = DerComplex::new(m).expect("validated");
    let gens = m.generators();
    let mut degrees = Map::new();
    for n in (1..=complex.top_degree()).rev().filter(|n| opts.keeps(*n)) {
        let basis = complex.basis(n);
        if basis.is_empty() {
            continue;
        }
        let labels: Vec<String> = basis.iter().map(|e| e.label(gens)).collect();
        let differentials: Map<String, Value> = (0..basis.len())
            .map(|i| {
                let d = complex.differential(&complex.basis_derivation(n, i));
                (labels[i].clone(), json!(d.display(gens)))
            })
            .collect();
        degrees.insert(n.to_string(), json!({ "basis": labels, "differentials": differentials }));
    }
    Ok(Outcome {
        report: json!({ "command": "der-table", "degrees": degrees }),
        exit: 0,
    })
}

pub fn run_command(command: &str, file: &ModelFile, opts: Options) -> Result<Outcome, Failure> {
    match command {
        "validate" => Ok(validate(file)),
        "homology" => homology(file, opts),
        "baut" => baut(file, opts),
        "gottlieb" => gottlieb_report(file, opts),
        "weights" => weights(file),
        "ks-check" => ks_check(file),
        "der-table" => der_table(file, opts),
        other => Err(Failure {
            exit: 2,
            message: format!("unknown command `{other}`"),
        }),
    }
}

/// Every applicable command on one file, as stored beside each fixture.
pub fn fixture_report(file: &ModelFile) -> Value {
    let opts = Options {
        reps: true,
        degrees: None,
    };
    let mut out = Map::new();
    for command in COMMANDS {
        if command == "ks-check" && file.extension.is_none() {
            continue;
        }
        let entry = match run_command(command, file, opts) {
            Ok(o) => json!({ "exit": o.exit, "report": o.report }),
            Err(f) => json!({ "exit": f.exit, "error": f.message }),
        };
        out.insert(command.to_string(), entry);
    }
    Value::Object(out)
}

fn subscript(n: impl ToString) -> String {
    n.to_string()
        .chars()
        .map(|c| match c {
            '0'..='9' => char::from_u32(0x2080 + c.to_digit(10).unwrap()).unwrap(),
            other => other,
        })
        .collect()
}

fn superscript(n: u64) -> String {
    n.to_string()
        .chars()
        .map(|c| match c {
            '1' => '¹',
            '2' => '²',
            '3' => '³',
            _ => char::from_u32(0x2070 + c.to_digit(10).unwrap()).unwrap(),
        })
        .collect()
}

fn q_power(rank: u64) -> String {
    if rank == 1 {
        "ℚ".into()
    } else {
        format!("ℚ{}", superscript(rank))
    }
}

struct Style {
    color: bool,
}

impl Style {
    fn status(&self, s: &str) -> String {
        if !self.color {
            return s.to_string();
        }
        let code = match s {
            "PASS" | "FEASIBLE" | "valid" => "32",
            _ => "31",
        };
        format!("\x1b[1;{code}m{s}\x1b[0m")
    }
}

fn str_of(v: &Value) -> &str {
    v.as_str().unwrap_or_default()
}

fn table(header: (&str, &str), rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(a, _)| a.chars().count()).chain([header.0.len()]).max().unwrap_or(0);
    let mut out = format!("{:>width$} | {}\n", header.0, header.1);
    out.push_str(&format!("{}-+-{}\n", "-".repeat(width), "-".repeat(header.1.len().max(8))));
    for (a, b) in rows {
        out.push_str(&format!("{a:>width$} | {b}\n"));
    }
    out
}

/// Renders a report as plain text.
pub fn render_text(report: &Value, color: bool) -> String {
    let style = Style { color };
    let empty = Map::new();
    let obj = |v: &Value| v.as_object().unwrap_or(&empty).clone();
    match str_of(&report["command"]) {
        "validate" => {
            let mut out = String::new();
            if report["valid"].as_bool() == Some(true) {
                out.push_str(&format!(
                    "{}: {} generators, top degree {}\n",
                    style.status("valid"),
                    report["generators"],
                    report["top_degree"]
                ));
            } else {
                out.push_str(&format!("{}\n", style.status("invalid")));
            }
            for v in report["violations"].as_array().into_iter().flatten() {
                out.push_str(&format!("  error: {}\n", str_of(v)));
            }
            for w in report["warnings"].as_array().into_iter().flatten() {
                out.push_str(&format!("  warning: {}\n", str_of(w)));
            }
            if let Some(ext) = report.get("extension") {
                match ext["valid"].as_bool() {
                    Some(true) => out.push_str(&format!(
                        "extension by {} (degree {}): {}\n",
                        str_of(&ext["base"]),
                        ext["degree"],
                        style.status("valid")
                    )),
                    _ => out.push_str(&format!(
                        "extension by {} (degree {}): {}: {}\n",
                        str_of(&ext["base"]),
                        ext["degree"],
                        style.status("invalid"),
                        str_of(&ext["error"])
                    )),
                }
            }
            out
        }
        "homology" => {
            let degrees = obj(&report["degrees"]);
            let mut out = String::from("degree | dim Der | cycles | boundaries | H\n");
            out.push_str("-------+---------+--------+------------+---\n");
            let mut reps = String::new();
            for (n, d) in &degrees {
                out.push_str(&format!(
                    "{:>6} | {:>7} | {:>6} | {:>10} | {}\n",
                    n,
                    d["chains"].to_string(),
                    d["cycles"].to_string(),
                    d["boundaries"].to_string(),
                    d["rank"].to_string()
                ));
                for (i, r) in d.get("representatives").and_then(Value::as_array).into_iter().flatten().enumerate() {
                    let terms: Vec<String> = obj(r)
                        .iter()
                        .map(|(label, c)| match str_of(c) {
                            "1" => label.clone(),
                            "-1" => format!("-{label}"),
                            c => format!("{c}·{label}"),
                        })
                        .collect();
                    reps.push_str(&format!("  H_{n}[{i}] = {}\n", terms.join(" + ").replace("+ -", "- ")));
                }
            }
            if !reps.is_empty() {
                out.push_str("representatives:\n");
                out.push_str(&reps);
            }
            let ranks = obj(&report["ranks"]);
            if ranks.is_empty() {
                out.push_str("homology vanishes\n");
            } else {
                let shown: Vec<String> = ranks.iter().map(|(n, r)| format!("H_{n} = {}", q_power(r.as_u64().unwrap_or(0)))).collect();
                out.push_str(&format!("{}\n", shown.join(", ")));
            }
            out
        }
        "baut" => {
            let ranks = obj(&report["ranks"]);
            if ranks.is_empty() {
                return "π_* = 0\n".into();
            }
            let shown: Vec<String> = ranks
                .iter()
                .map(|(n, r)| format!("π{} = {}", subscript(n), q_power(r.as_u64().unwrap_or(0))))
                .collect();
            format!("{}\n", shown.join(", "))
        }
        "gottlieb" => {
            let degrees = obj(&report["degrees"]);
            if degrees.is_empty() {
                return "G_* = 0\n".into();
            }
            let mut out = String::new();
            for (n, d) in &degrees {
                out.push_str(&format!("G{} = {}\n", subscript(n), q_power(d["rank"].as_u64().unwrap_or(0))));
                for f in d["functionals"].as_array().into_iter().flatten() {
                    let parts: Vec<String> = obj(f).iter().map(|(g, c)| format!("{g} ↦ {}", str_of(c))).collect();
                    out.push_str(&format!("  {}\n", parts.join(", ")));
                }
            }
            out
        }
        "weights" => {
            let mut out = String::new();
            let constraints = report["constraints"].as_array().cloned().unwrap_or_default();
            if !constraints.is_empty() {
                out.push_str("constraints:\n");
                for c in &constraints {
                    out.push_str(&format!("  {}\n", str_of(c)));
                }
            }
            match str_of(&report["status"]) {
                "FEASIBLE" => {
                    let ws: Vec<String> = obj(&report["weights"]).iter().map(|(g, w)| format!("wt({g}) = {w}")).collect();
                    out.push_str(&format!("{}: {}\n", style.status("FEASIBLE"), ws.join(", ")));
                }
                _ => {
                    out.push_str(&format!("{}\n", style.status("INFEASIBLE")));
                    for line in report["witness"].as_array().into_iter().flatten() {
                        out.push_str(&format!("  {}\n", str_of(line)));
                    }
                    out.push_str(&format!("{}\n", str_of(&report["conclusion"])));
                }
            }
            let block = &report["block_weights"];
            if !block.is_null() {
                let verdict = if block["verified"].as_bool() == Some(true) { "PASS" } else { "FAIL" };
                out.push_str(&format!(
                    "block weights on Der: {} ({} basis elements, {} differentials, {} brackets checked)\n",
                    style.status(verdict),
                    block["basis"],
                    block["differentials_checked"],
                    block["brackets_checked"]
                ));
                for v in block["violations"].as_array().into_iter().flatten() {
                    out.push_str(&format!("  {}\n", str_of(v)));
                }
            }
            out
        }
        "ks-check" => {
            let head = format!("extension by {} (degree {})", str_of(&report["base"]), report["degree"]);
            match str_of(&report["status"]) {
                "PASS" => format!(
                    "{head}: {}\n  D({}*) = {}\n  every degree-{} cycle vanishes on {} ({} cycles)\n",
                    style.status("PASS"),
                    str_of(&report["base"]),
                    str_of(&report["base_boundary"]),
                    report["degree"],
                    str_of(&report["base"]),
                    report["cycle_dimension"]
                ),
                _ => format!(
                    "{head}: {}\n  witness cycle: {}\n",
                    style.status("FAIL"),
                    str_of(&report["witness"])
                ),
            }
        }
        "der-table" => {
            let degrees = obj(&report["degrees"]);
            let rows: Vec<(String, String)> = degrees
                .iter()
                .map(|(n, d)| {
                    let labels: Vec<&str> = d["basis"].as_array().into_iter().flatten().map(str_of).collect();
                    (n.clone(), labels.join(", "))
                })
                .collect();
            let mut out = table(("degree", "generators"), &rows);
            out.push('\n');
            for d in degrees.values() {
                for (label, value) in obj(&d["differentials"]) {
                    out.push_str(&format!("D({label}) = {}\n", str_of(&value)));
                }
            }
            out
        }
        _ => format!("{report}\n"),
    }
}
