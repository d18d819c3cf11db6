use std::fmt;
use std::fs;
use std::path::Path;

use metaplex::centrality::{adjacency_matrices, CentralityReport, Direction};
use metaplex::concentration::{validate_all, ContributionScheme, SchemeKind};
use metaplex::inference::{InferenceConfig, Metaplex};
use metaplex::io::{
    load_bundle, parse_edge_list, parse_weights, read_sources, render_binary_csv,
    render_complex_json, render_report, render_strength_csv, render_trace, render_weights, Format,
    InputBundle, LoadError, Source, VertexLabels,
};
use metaplex::{clique_complex, ConcentrationAssignment, Graph, SimplicialComplex};
use metaplex_testkit::{generate_random_cm, RandomCMSpec};
use serde_json::json;

use crate::{Command, InputArgs, OutputArgs, PipelineArgs, SchemeArg};

/// Why a command stopped: bad input (exit 2) or a failed check (exit 1).
#[derive(Debug)]
pub enum Failure {
    Input(anyhow::Error),
    Validation(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(e) => write!(f, "error: {e:#}"),
            Failure::Validation(msg) => write!(f, "validation failed: {msg}"),
        }
    }
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn input_error(msg: impl fmt::Display) -> Failure {
    Failure::Input(anyhow::anyhow!("{msg}"))
}

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Infer {
            input,
            pipeline,
            output,
        } => infer(&input, &pipeline, &output),
        Command::Weights { input, output } => weights(&input, &output),
        Command::Centrality {
            input,
            pipeline,
            output,
            q,
            alpha,
            incoming,
        } => {
            let direction = if incoming {
                Direction::Incoming
            } else {
                Direction::Outgoing
            };
            centrality(&input, &pipeline, &output, q, alpha, direction)
        }
        Command::Matrix {
            input,
            pipeline,
            output,
            q,
            weighted,
        } => matrix(&input, &pipeline, &output, q, weighted),
        Command::Validate {
            input,
            pipeline,
            output,
            weights,
        } => validate(&input, &pipeline, &output, weights.as_deref()),
        Command::Clique {
            edges,
            max_dim,
            output,
        } => clique(&edges, max_dim, &output),
        Command::Generate {
            seed,
            vertices,
            edge_probability,
            out,
        } => generate(seed, vertices, edge_probability, &out),
    }
}

fn load(input: &InputArgs) -> Result<InputBundle, LoadError> {
    let table = match &input.scheme {
        SchemeArg::Uniform => None,
        SchemeArg::Table(path) => Some(path.as_path()),
    };
    let sources = read_sources(
        input.edges.as_deref(),
        input.complex.as_deref(),
        input.conc.as_deref(),
        input.internal.as_deref(),
        table,
    )?;
    load_bundle(&sources)
}

fn config(pipeline: &PipelineArgs) -> InferenceConfig {
    InferenceConfig {
        max_dim: pipeline.max_dim,
        threshold_multiplier: pipeline.multiplier.clone(),
        strict: !pipeline.non_strict,
        ..InferenceConfig::default()
    }
}

fn build(input: &InputArgs, pipeline: &PipelineArgs) -> Result<(InputBundle, Metaplex), Failure> {
    let bundle = load(input)?;
    let m = bundle.metaplex(&config(pipeline))?;
    Ok((bundle, m))
}

fn extension(format: Format) -> &'static str {
    match format {
        Format::Text => "txt",
        Format::Json => "json",
        Format::Csv => "csv",
    }
}

/// Writes `content` to `DIR/name` when `--out` is given, else to stdout.
fn emit(output: &OutputArgs, name: &str, content: &str) -> Outcome {
    match &output.out {
        Some(dir) => write_file(dir, name, content),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn write_file(dir: &Path, name: &str, content: &str) -> Outcome {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), content)?;
    Ok(())
}

fn infer(input: &InputArgs, pipeline: &PipelineArgs, output: &OutputArgs) -> Outcome {
    if output.format == Format::Csv {
        return Err(input_error("traces are available as text or json"));
    }
    let (bundle, m) = build(input, pipeline)?;
    let trace = render_trace(&m.trace, &bundle.labels, output.format);
    emit(
        output,
        &format!("trace.{}", extension(output.format)),
        &trace,
    )?;
    if let Some(dir) = &output.out {
        let weights = render_weights(&m.complex, &m.assignment, &bundle.labels)?;
        write_file(dir, "weights.txt", &weights)?;
        write_file(
            dir,
            "complex.json",
            &render_complex_json(&m.complex, &bundle.labels),
        )?;
    }
    Ok(())
}

fn weights(input: &InputArgs, output: &OutputArgs) -> Outcome {
    if output.format != Format::Text {
        return Err(input_error("weights are written as text only"));
    }
    let bundle = load(input)?;
    let complex = bundle.topology.complex()?;
    let assignment =
        metaplex::concentration::extend_full(&complex, &bundle.concentrations, &bundle.scheme)?;
    emit(
        output,
        "weights.txt",
        &render_weights(&complex, &assignment, &bundle.labels)?,
    )
}

fn centrality(
    input: &InputArgs,
    pipeline: &PipelineArgs,
    output: &OutputArgs,
    q: usize,
    alpha: f64,
    direction: Direction,
) -> Outcome {
    let (bundle, m) = build(input, pipeline)?;
    let report = CentralityReport::compute(&m.complex, &m.assignment, q, alpha, direction)?;
    let name = format!("centrality.q{q}.{}", extension(output.format));
    emit(
        output,
        &name,
        &render_report(&report, &bundle.labels, output.format),
    )
}

fn matrix(
    input: &InputArgs,
    pipeline: &PipelineArgs,
    output: &OutputArgs,
    q: usize,
    weighted: bool,
) -> Outcome {
    if output.format == Format::Json {
        return Err(input_error("matrices are written as csv"));
    }
    let (bundle, m) = build(input, pipeline)?;
    let view = adjacency_matrices(&m.complex, &m.assignment, q)?;
    let (name, csv) = if weighted {
        ("strength", render_strength_csv(&view, &bundle.labels))
    } else {
        ("adjacency", render_binary_csv(&view, &bundle.labels))
    };
    emit(output, &format!("{name}.q{q}.csv"), &csv)
}

struct Check {
    name: String,
    level: Option<usize>,
    holds: bool,
    detail: String,
}

fn read_weights(
    path: &Path,
    complex: &SimplicialComplex,
    bundle: &InputBundle,
) -> Result<(ConcentrationAssignment, Vec<Check>), Failure> {
    let parsed = parse_weights(&Source::read(path)?, &bundle.labels)?;
    let kind = match bundle.scheme {
        ContributionScheme::Uniform => SchemeKind::Uniform,
        ContributionScheme::ExplicitTable(_) => SchemeKind::ExplicitTable,
    };
    let assignment = ConcentrationAssignment::from_weights(parsed.clone(), Some(kind));
    let name = |s| bundle.labels.simplex_label(s);

    let missing: Vec<String> = complex
        .simplices()
        .filter(|s| assignment.get(s).is_none())
        .map(name)
        .collect();
    let extra: Vec<String> = parsed
        .iter()
        .filter(|(s, _)| !complex.contains(s))
        .map(|(s, _)| name(s))
        .collect();
    let mismatched: Vec<String> = complex
        .level(0)
        .filter(|v| assignment.get(v) != bundle.concentrations.get(v.vertices()[0]))
        .map(name)
        .collect();
    let coverage = Check {
        name: "coverage".into(),
        level: None,
        holds: missing.is_empty() && extra.is_empty() && parsed.len() == assignment.len(),
        detail: if missing.is_empty() && extra.is_empty() {
            String::new()
        } else {
            format!(
                "missing [{}], outside the complex [{}]",
                missing.join(", "),
                extra.join(", ")
            )
        },
    };
    let vertices = Check {
        name: "vertex-weights".into(),
        level: None,
        holds: mismatched.is_empty(),
        detail: if mismatched.is_empty() {
            String::new()
        } else {
            format!("differ from concentrations at [{}]", mismatched.join(", "))
        },
    };
    Ok((assignment, vec![coverage, vertices]))
}

fn validate(
    input: &InputArgs,
    pipeline: &PipelineArgs,
    output: &OutputArgs,
    weights: Option<&Path>,
) -> Outcome {
    let bundle = load(input)?;
    let (complex, assignment, mut checks) = match weights {
        Some(path) => {
            let complex = bundle.topology.complex()?;
            let (assignment, checks) = read_weights(path, &complex, &bundle)?;
            (complex, assignment, checks)
        }
        None => {
            let m = bundle.metaplex(&config(pipeline))?;
            (m.complex, m.assignment, Vec::new())
        }
    };

    let closure = complex.validate_closure();
    checks.push(Check {
        name: "closure".into(),
        level: None,
        holds: closure.is_closed(),
        detail: closure.violations.first().map_or_else(String::new, |v| {
            format!(
                "{} lacks {}",
                bundle.labels.simplex_label(&v.simplex),
                bundle.labels.simplex_label(&v.missing_face)
            )
        }),
    });
    for q in 1..=complex.dim().unwrap_or(0) {
        let report = bundle.scheme.validate(&complex, q);
        checks.push(Check {
            name: "scheme".into(),
            level: Some(q),
            holds: report.is_valid(),
            detail: report
                .violations
                .first()
                .map_or_else(String::new, |v| v.to_string()),
        });
    }
    if checks.iter().all(|c| c.holds) {
        for c in validate_all(&assignment, &complex)? {
            checks.push(Check {
                name: c.identity.to_string(),
                level: c.level,
                holds: c.holds(),
                detail: format!("{} = {}", c.lhs, c.rhs),
            });
        }
    }

    let rendered = match output.format {
        Format::Text => checks
            .iter()
            .map(|c| {
                let status = if c.holds { "ok" } else { "FAIL" };
                let level = c.level.map_or_else(String::new, |q| format!(" q={q}"));
                let detail = if c.detail.is_empty() {
                    String::new()
                } else {
                    format!(": {}", c.detail)
                };
                format!("{status} {}{level}{detail}\n", c.name)
            })
            .collect::<String>(),
        Format::Json => {
            let rows: Vec<_> = checks
                .iter()
                .map(|c| json!({"check": c.name, "level": c.level, "holds": c.holds, "detail": c.detail}))
                .collect();
            let mut s = serde_json::to_string_pretty(&rows)?;
            s.push('\n');
            s
        }
        Format::Csv => return Err(input_error("validation reports are text or json")),
    };
    emit(
        output,
        &format!("validation.{}", extension(output.format)),
        &rendered,
    )?;

    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.holds)
        .map(|c| match c.level {
            Some(q) => format!("{} q={q}", c.name),
            None => c.name.clone(),
        })
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Validation(failed.join(", ")))
    }
}

fn clique(edges: &Path, max_dim: usize, output: &OutputArgs) -> Outcome {
    let pairs = parse_edge_list(&Source::read(edges)?)?;
    let labels = VertexLabels::new(pairs.iter().flat_map(|(u, v)| [u, v]));
    let ids = pairs
        .iter()
        .map(|(u, v)| (labels.id(u).expect("seen"), labels.id(v).expect("seen")));
    let graph = Graph::new(labels.len(), ids)?;
    let complex = clique_complex(&graph, max_dim)?;
    emit(
        output,
        "complex.json",
        &render_complex_json(&complex, &labels),
    )
}

fn generate(seed: u64, vertices: usize, edge_probability: f64, out: &Path) -> Outcome {
    let spec = RandomCMSpec::new(vertices, edge_probability, seed);
    let (graph, conc) = generate_random_cm(&spec)?;
    let edges: String = graph.edges().map(|(u, v)| format!("{u} {v}\n")).collect();
    let values: String = conc.iter().map(|(v, c)| format!("{v} {c}\n")).collect();
    write_file(out, "graph.edges", &edges)?;
    write_file(out, "graph.conc", &values)
}
