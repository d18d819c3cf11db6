use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::centrality::{AdjacencyView, CentralityReport, Direction};
use crate::complex::SimplicialComplex;
use crate::concentration::ConcentrationAssignment;
use crate::error::Result;
use crate::inference::InferenceTrace;

use super::VertexLabels;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!(
                "unknown format {other:?} (expected text, json or csv)"
            )),
        }
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_owned()
}

/// Twelve significant digits, fixed-point for moderate magnitudes.
pub fn format_real(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        trim_zeros(format!("{x:.*}", (11 - exp) as usize))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_owned()))
    }
}

fn real_json(x: f64) -> Value {
    format_real(x)
        .parse::<f64>()
        .ok()
        .and_then(serde_json::Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialise");
    s.push('\n');
    s
}

/// One `label<TAB>weight` line per simplex, by dimension then lexicographically.
pub fn render_weights(
    complex: &SimplicialComplex,
    assignment: &ConcentrationAssignment,
    labels: &VertexLabels,
) -> Result<String> {
    let mut out = String::new();
    if let Some(kind) = assignment.scheme() {
        writeln!(out, "# scheme: {kind}").unwrap();
    }
    for q in 0..=complex.dim().unwrap_or(0) {
        for sigma in complex.level(q) {
            writeln!(
                out,
                "{}\t{}",
                labels.simplex_label(sigma),
                assignment.weight(sigma)?
            )
            .unwrap();
        }
    }
    Ok(out)
}

fn label_value(labels: &VertexLabels, v: usize) -> Value {
    let label = labels.label(v);
    match label.parse::<u64>() {
        Ok(n) if labels.is_numeric() => json!(n),
        _ => json!(label),
    }
}

/// `{"facets": [...]}`, readable by `parse_complex_json`.
pub fn render_complex_json(complex: &SimplicialComplex, labels: &VertexLabels) -> String {
    let facets: Vec<Value> = complex
        .facets()
        .iter()
        .map(|f| {
            Value::Array(
                f.vertices()
                    .iter()
                    .map(|&v| label_value(labels, v))
                    .collect(),
            )
        })
        .collect();
    let mut s = serde_json::to_string(&json!({ "facets": facets })).expect("json values serialise");
    s.push('\n');
    s
}

pub fn render_trace(trace: &InferenceTrace, labels: &VertexLabels, format: Format) -> String {
    match format {
        Format::Json => {
            let levels: Vec<Value> = trace
                .levels
                .iter()
                .map(|level| {
                    let candidates: Vec<Value> = level
                        .candidates
                        .iter()
                        .map(|c| {
                            json!({
                                "simplex": labels.simplex_label(&c.simplex),
                                "boundary_weight": c.boundary_weight.to_string(),
                                "admitted": level.admitted.contains(&c.simplex),
                            })
                        })
                        .collect();
                    json!({
                        "q": level.q,
                        "reference_level": level.reference_level.to_string(),
                        "threshold": level.threshold.to_string(),
                        "candidates": candidates,
                        "admitted": level.admitted.iter().map(|s| labels.simplex_label(s)).collect::<Vec<_>>(),
                        "rejected": level.rejected.iter().map(|s| labels.simplex_label(s)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            pretty(&json!({ "levels": levels }))
        }
        Format::Text | Format::Csv => {
            let mut out = String::new();
            for level in &trace.levels {
                writeln!(
                    out,
                    "q={} reference={} threshold={} candidates={} admitted={} rejected={}",
                    level.q,
                    level.reference_level,
                    level.threshold,
                    level.candidates.len(),
                    level.admitted.len(),
                    level.rejected.len()
                )
                .unwrap();
                for c in &level.candidates {
                    let verdict = if level.admitted.contains(&c.simplex) {
                        "admit"
                    } else {
                        "reject"
                    };
                    writeln!(
                        out,
                        "  {verdict} {} W={}",
                        labels.simplex_label(&c.simplex),
                        c.boundary_weight
                    )
                    .unwrap();
                }
            }
            out
        }
    }
}

const REPORT_COLUMNS: [&str; 8] = [
    "simplex",
    "k",
    "D",
    "D_alpha",
    "closeness",
    "harmonic",
    "component",
    "farness",
];

fn report_cells(report: &CentralityReport, labels: &VertexLabels) -> Vec<[String; 8]> {
    report
        .rows
        .iter()
        .map(|r| {
            [
                labels.simplex_label(&r.simplex),
                r.degree.to_string(),
                r.weighted_degree.to_string(),
                format_real(r.combined_degree),
                format_real(r.closeness),
                format_real(r.harmonic),
                r.component.to_string(),
                format_real(r.farness),
            ]
        })
        .collect()
}

fn direction_name(direction: Direction) -> &'static str {
    match direction {
        Direction::Outgoing => "outgoing",
        Direction::Incoming => "incoming",
    }
}

pub fn render_report(report: &CentralityReport, labels: &VertexLabels, format: Format) -> String {
    let cells = report_cells(report, labels);
    match format {
        Format::Csv => {
            let mut out = REPORT_COLUMNS.join(",");
            out.push('\n');
            for row in cells {
                out.push_str(&row.join(","));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "simplex": labels.simplex_label(&r.simplex),
                        "k": r.degree,
                        "D": r.weighted_degree.to_string(),
                        "D_alpha": real_json(r.combined_degree),
                        "closeness": real_json(r.closeness),
                        "harmonic": real_json(r.harmonic),
                        "component": r.component,
                        "farness": real_json(r.farness),
                    })
                })
                .collect();
            pretty(&json!({
                "q": report.q,
                "alpha": real_json(report.alpha),
                "direction": direction_name(report.direction),
                "rows": rows,
            }))
        }
        Format::Text => {
            let mut widths = REPORT_COLUMNS.map(str::len);
            for row in &cells {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            let mut out = format!(
                "# q={} alpha={} direction={}\n",
                report.q,
                format_real(report.alpha),
                direction_name(report.direction)
            );
            let line = |cells: &[&str]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:<w$}"))
                    .collect();
                padded.join("  ").trim_end().to_owned() + "\n"
            };
            out.push_str(&line(&REPORT_COLUMNS));
            for row in &cells {
                out.push_str(&line(&row.iter().map(String::as_str).collect::<Vec<_>>()));
            }
            out
        }
    }
}

fn matrix_csv(
    view: &AdjacencyView,
    labels: &VertexLabels,
    cell: impl Fn(usize, usize) -> String,
) -> String {
    let names: Vec<String> = view
        .simplices()
        .iter()
        .map(|s| labels.simplex_label(s))
        .collect();
    let mut out = String::from("simplex");
    for name in &names {
        write!(out, ",{name}").unwrap();
    }
    out.push('\n');
    for (i, name) in names.iter().enumerate() {
        out.push_str(name);
        for j in 0..names.len() {
            write!(out, ",{}", cell(i, j)).unwrap();
        }
        out.push('\n');
    }
    out
}

/// `A^(q)` with simplex labels as headers.
pub fn render_binary_csv(view: &AdjacencyView, labels: &VertexLabels) -> String {
    let m = view.binary_matrix();
    matrix_csv(view, labels, |i, j| m[i][j].to_string())
}

/// `A_w^(q)` with exact rational entries.
pub fn render_strength_csv(view: &AdjacencyView, labels: &VertexLabels) -> String {
    let m = view.strength_matrix();
    matrix_csv(view, labels, |i, j| m[i][j].to_string())
}
