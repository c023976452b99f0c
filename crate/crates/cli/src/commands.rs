use crate::{Cli, Command, Format, Params, Source};
use acms::classify::{c_lambda_mu_subspace, class_subspace, classify_full, formula_dimension, project, ClassLabel, ClassSet};
use acms::connections::{connection_report, ConnectionReport};
use acms::geometry::{catalog_example, model_predicates, predicates, Example, ExampleParams, CATALOG};
use acms::io::{parse_input, to_json_string, Input, IntrinsicJson, TensorJson};
use acms::space::{cv_dimension, cv_rank_by_projection, cv_residual, norm};
use acms::{canonical_structure, AcmsError, IntrinsicData, DEFAULT_TOL};
use serde_json::{json, Value};
use std::fmt::Write as _;

pub struct Outcome {
    pub stdout: String,
    pub error: Option<String>,
    pub code: u8,
}

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }
}

impl From<AcmsError> for Failure {
    fn from(e: AcmsError) -> Self {
        let code = match e {
            AcmsError::Json(_) | AcmsError::InvalidArgument(_) | AcmsError::UnknownLabel(_) => 1,
            AcmsError::NoCharacteristic { .. } => 3,
            _ => 2,
        };
        Self { code, message: e.to_string() }
    }
}

/// Report text, plus exit code 3 when the independent routes disagree.
struct Rendered {
    text: String,
    inconsistent: bool,
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Classify(src) => classify(src, cli),
        Command::Project { source, class } => project_cmd(source, class, cli),
        Command::Dims { n } => dims(*n, cli),
        Command::Connection(src) => connection(src, cli),
        Command::Examples => examples(cli),
        Command::Selftest { n, seed, inject_fault } => {
            let r = crate::selftest::run(*n, *seed, *inject_fault);
            let text = match cli.format {
                Format::Text => r.text(),
                Format::Json => to_json_string(&r).map_err(Failure::from).unwrap_or_default(),
            };
            Ok(Rendered { text, inconsistent: !r.passed() })
        }
    };
    match result {
        Ok(r) => Outcome {
            stdout: r.text,
            error: r.inconsistent.then(|| "independent checks disagree".to_string()),
            code: if r.inconsistent { 3 } else { 0 },
        },
        Err(f) => Outcome { stdout: String::new(), error: Some(f.message), code: f.code },
    }
}

fn example_params(p: &Params) -> ExampleParams {
    ExampleParams { n: p.n, lambda: p.lambda.clone(), alpha: p.alpha, delta: p.delta, seed: p.seed }
}

fn load(src: &Source) -> Result<Vec<Example>, Failure> {
    match (&src.input, &src.example) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
            let input = parse_input(&text)?;
            let name = path.display().to_string();
            if let Input::Point { structure, alpha } = &input {
                let residual = cv_residual(alpha, structure);
                if residual > DEFAULT_TOL * (1.0 + norm(alpha, structure)) {
                    return Err(AcmsError::NotInCv { residual }.into());
                }
            }
            Ok(vec![Example {
                name,
                structure: input.structure().clone(),
                alpha: input.alpha(),
                model: input.model().cloned(),
            }])
        }
        (None, Some(name)) => Ok(catalog_example(name, &example_params(&src.params))?),
        (None, None) => Err(Failure::usage("one of --input or --example is required")),
    }
}

fn label_text(label: ClassSet) -> String {
    if label.is_empty() {
        "C0 (cokähler)".to_string()
    } else {
        label.to_string()
    }
}

fn emit(format: Format, text: String, value: &Value, inconsistent: bool) -> Result<Rendered, Failure> {
    let text = match format {
        Format::Text => text,
        Format::Json => to_json_string(value)?,
    };
    Ok(Rendered { text, inconsistent })
}

fn classify(src: &Source, cli: &Cli) -> Result<Rendered, Failure> {
    let mut text = String::new();
    let mut results = Vec::new();
    let mut inconsistent = false;
    for ex in load(src)? {
        let st = &ex.structure;
        let report = classify_full(&ex.alpha, st, cli.tolerance);
        let table = match &ex.model {
            Some(m) => model_predicates(m, cli.tolerance),
            None => predicates(&ex.alpha, st, cli.tolerance),
        };
        inconsistent |= !report.agreement || !table.consistent();

        let _ = writeln!(text, "{}: {}", ex.name, label_text(report.label));
        let _ = writeln!(text, "  H-parallel part: {}", report.hparallel_label);
        let _ = writeln!(text, "  D1 part: {}", report.d1_label);
        let _ = writeln!(text, "  norm: {:.6e}", report.norm);
        for (k, v) in report.component_norms.iter().filter(|(_, v)| **v > cli.tolerance * report.norm) {
            let _ = writeln!(text, "  |{k}| = {v:.6e}");
        }
        if !report.marginal_branches.is_empty() {
            let _ = writeln!(text, "  marginal: {}", report.marginal_branches.join(", "));
        }
        for row in &table.rows {
            let crit = row.criterion.map_or("-".to_string(), |c| c.holds.to_string());
            let _ = writeln!(text, "  {:<13} {:<5} (criterion {crit})", row.name, row.definition.holds);
        }
        let _ = writeln!(text, "  routes agree: {}", if report.agreement && table.consistent() { "yes" } else { "NO" });

        let intrinsic = IntrinsicJson::from(&IntrinsicData::from_alpha(&ex.alpha, st)?);
        results.push(json!({
            "name": ex.name,
            "report": report,
            "intrinsic": intrinsic,
            "predicates": table,
        }));
    }
    emit(cli.format, text, &json!({ "results": results }), inconsistent)
}

fn project_cmd(src: &Source, class: &str, cli: &Cli) -> Result<Rendered, Failure> {
    let label: ClassLabel = class.parse()?;
    let mut text = String::new();
    let mut results = Vec::new();
    for ex in load(src)? {
        let st = &ex.structure;
        let p = project(&ex.alpha, label, st);
        let (total, part) = (norm(&ex.alpha, st), norm(&p, st));
        let _ = writeln!(text, "{}: |proj onto {label}| = {part:.6e} of |alpha| = {total:.6e}", ex.name);
        results.push(json!({
            "name": ex.name,
            "class": label,
            "norm": total,
            "projected_norm": part,
            "tensor": TensorJson::from_tensor(&p),
        }));
    }
    emit(cli.format, text, &json!({ "results": results }), false)
}

fn dims(n: usize, cli: &Cli) -> Result<Rendered, Failure> {
    if n == 0 {
        return Err(AcmsError::Dimension("n must be at least 1".into()).into());
    }
    let st = canonical_structure(n);
    let mut rows: Vec<(String, usize, Option<usize>)> = (1..=12u8)
        .map(|i| (format!("C{i}"), class_subspace(ClassLabel::irreducible(i), &st).dim(), formula_dimension(i, n)))
        .collect();
    rows.push(("Cmin".into(), class_subspace(ClassLabel::Min, &st).dim(), Some(n * n - n)));
    let lm = c_lambda_mu_subspace(1.0, 1.0, &st)?;
    rows.push(("C(1,1)".into(), lm.dim(), Some(n * n - n)));
    rows.push(("C(V)".into(), cv_rank_by_projection(&st), Some(cv_dimension(n))));

    let mut mismatch = false;
    let mut text = format!("n = {n}\nclass | computed | formula | match\n");
    let mut json_rows = Vec::new();
    for (name, computed, formula) in &rows {
        let ok = formula.map(|f| f == *computed);
        mismatch |= ok == Some(false);
        let f = formula.map_or("-".to_string(), |f| f.to_string());
        let flag = match ok {
            Some(true) => "ok",
            Some(false) => "MISMATCH",
            None => "-",
        };
        let _ = writeln!(text, "{name} | {computed} | {f} | {flag}");
        json_rows.push(json!({ "class": name, "computed": computed, "formula": formula, "ok": ok }));
    }
    emit(cli.format, text, &json!({ "n": n, "rows": json_rows }), mismatch)
}

fn connection_text(name: &str, class: ClassSet, r: &ConnectionReport) -> String {
    let mut t = format!("{name}:\n");
    if r.levi_civita {
        t.push_str("  minimal = Levi-Civita, T=0\n");
    } else {
        let types: Vec<String> = r.type_norms.iter().map(|(k, v)| format!("|{k}| = {v:.6e}")).collect();
        let _ = writeln!(t, "  minimal connection torsion types: {}", types.join(", "));
        if r.minimal_skew {
            t.push_str("  minimal torsion is totally skew\n");
        }
    }
    let _ = writeln!(t, "  minimal connection adapted: residual {:.3e}", r.adapted.max());
    let c = &r.characteristic;
    if c.exists {
        t.push_str("  characteristic connection: exists");
        if let Some(f) = c.eta_wedge_d_eta {
            let _ = write!(t, ", T = eta^d(eta): {} (residual {:.3e})", f.holds, f.residual);
        }
        t.push('\n');
    } else {
        let _ = writeln!(t, "  characteristic connection: does not exist (class {class})");
    }
    if !c.consistent {
        t.push_str("  existence routes DISAGREE\n");
    }
    if let Some(p) = &r.parallel_torsion {
        let _ = writeln!(t, "  parallel torsion: (i) {}, (ii) {}, (iii) {}", p.i.holds, p.ii.holds, p.iii.holds);
    }
    t
}

fn connection(src: &Source, cli: &Cli) -> Result<Rendered, Failure> {
    let mut text = String::new();
    let mut results = Vec::new();
    let mut inconsistent = false;
    for ex in load(src)? {
        let st = &ex.structure;
        let class = classify_full(&ex.alpha, st, cli.tolerance).label;
        let r = connection_report(&ex.alpha, st, ex.model.as_ref(), cli.tolerance);
        inconsistent |= !r.characteristic.consistent || r.parallel_torsion.as_ref().is_some_and(|p| !p.agree());
        text.push_str(&connection_text(&ex.name, class, &r));
        results.push(json!({ "name": ex.name, "class": class, "connection": r }));
    }
    emit(cli.format, text, &json!({ "results": results }), inconsistent)
}

fn examples(cli: &Cli) -> Result<Rendered, Failure> {
    let width = CATALOG.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
    let text = CATALOG.iter().map(|(n, d)| format!("{n:<width$}  {d}\n")).collect();
    let value: Vec<Value> = CATALOG.iter().map(|(n, d)| json!({ "name": n, "description": d })).collect();
    emit(cli.format, text, &Value::Array(value), false)
}
