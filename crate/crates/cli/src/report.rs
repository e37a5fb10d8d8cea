use std::fmt::Write;

use serde_json::Value as Json;

use crate::OutputFormat;

/// Exit status plus the structured report.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: u8,
    pub report: Json,
}

fn scalar_text(v: &Json) -> String {
    match v {
        Json::String(s) => s.clone(),
        Json::Object(m) if m.contains_key("pi_coefficient") => {
            let mut s = format!("({})·π", m["pi_coefficient"].as_str().unwrap_or("?"));
            if let Some(approx) = m.get("approx") {
                let _ = write!(s, " ≈ {approx}");
            }
            s
        }
        Json::Null => "-".into(),
        other => other.to_string(),
    }
}

pub fn render(outcome: &Outcome, format: OutputFormat) -> String {
    let r = &outcome.report;
    match format {
        OutputFormat::Json => format!("{r}\n"),
        OutputFormat::Csv => {
            let mut out = String::from("x,value\n");
            for row in r["result"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "{},{}", scalar_text(&row["x"]), scalar_text(&row["value"]));
            }
            out
        }
        OutputFormat::Human => {
            let mut out = String::new();
            let _ = writeln!(out, "{} ({})", scalar_text(&r["command"]), scalar_text(&r["mode"]));
            if let Some(inputs) = r["inputs"].as_object() {
                for (k, v) in inputs {
                    let text = match v {
                        Json::Array(items) => items.iter().map(scalar_text).collect::<Vec<_>>().join(", "),
                        other => scalar_text(other),
                    };
                    let _ = writeln!(out, "  {k}: {text}");
                }
            }
            match &r["result"] {
                Json::Array(rows) => {
                    for row in rows {
                        let _ = writeln!(out, "  {}\t{}", scalar_text(&row["x"]), scalar_text(&row["value"]));
                    }
                }
                Json::Null => {}
                v => {
                    let _ = writeln!(out, "result: {}", scalar_text(v));
                }
            }
            if let Some(expected) = r.get("expected") {
                let _ = writeln!(out, "expected: {}", scalar_text(expected));
            }
            for case in r["cases"].as_array().into_iter().flatten() {
                let a = case["a"].as_array().map(|v| v.iter().map(scalar_text).collect::<Vec<_>>().join(","));
                let _ = writeln!(
                    out,
                    "  a=[{}] x={}  closed={} convolution={} quadrature={} monte_carlo={} max|Δ|={} {}",
                    a.unwrap_or_default(),
                    scalar_text(&case["x"]),
                    scalar_text(&case["closed_form"]),
                    scalar_text(&case["convolution"]),
                    scalar_text(&case["quadrature"]),
                    scalar_text(&case["monte_carlo"]),
                    scalar_text(&case["max_abs_discrepancy"]),
                    if case["pass"] == Json::Bool(true) { "ok" } else { "FAIL" },
                );
            }
            if let Some(d) = r.get("max_abs_discrepancy") {
                let _ = writeln!(out, "max_abs_discrepancy: {d}");
            }
            if let Some(pass) = r.get("pass") {
                let _ = writeln!(out, "pass: {pass}");
            }
            out
        }
    }
}
