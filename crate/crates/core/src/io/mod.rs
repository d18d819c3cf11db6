//! Text, JSON and CSV formats.
//!
//! Vertices are named by free-form labels in input files and remapped to
//! dense ids. When every label is a non-negative integer they are ordered
//! numerically, otherwise lexicographically.

mod parse;
mod render;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::complex::{clique_complex, Graph, Simplex, SimplicialComplex, VertexId};
use crate::concentration::{extend_full, ConcentrationMap, ContributionScheme, SchemeTable};
use crate::inference::{infer_metaplex, InferenceConfig, InferenceTrace, Metaplex};
use crate::rational::Rational;

pub use parse::{
    parse_complex_json, parse_concentrations, parse_edge_list, parse_internal_json,
    parse_scheme_json, parse_weights, SchemeRow,
};
pub use render::{
    format_real, render_binary_csv, render_complex_json, render_report, render_strength_csv,
    render_trace, render_weights, Format,
};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{origin}:{line}:{col}: {message}")]
    Parse {
        origin: String,
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{origin}: {message}")]
    Json { origin: String, message: String },
    #[error("missing concentration for vertices: {}", .0.join(", "))]
    MissingConcentration(Vec<String>),
    #[error("{origin}: unknown vertex label {label:?}")]
    UnknownLabel { origin: String, label: String },
    #[error("{0}")]
    Topology(&'static str),
    #[error(transparent)]
    Model(#[from] crate::Error),
}

pub type LoadResult<T> = std::result::Result<T, LoadError>;

/// Bijection between input labels and dense vertex ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexLabels {
    labels: Vec<String>,
    ids: BTreeMap<String, VertexId>,
}

impl VertexLabels {
    pub fn new<S: AsRef<str>>(labels: impl IntoIterator<Item = S>) -> Self {
        let unique: BTreeSet<String> = labels.into_iter().map(|s| s.as_ref().to_owned()).collect();
        let mut labels: Vec<String> = unique.into_iter().collect();
        if labels.iter().all(|l| l.parse::<u64>().is_ok()) {
            labels.sort_by_key(|l| l.parse::<u64>().expect("numeric"));
        }
        let ids = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();
        VertexLabels { labels, ids }
    }

    /// Labels `0..n`.
    pub fn identity(n: usize) -> Self {
        Self::new((0..n).map(|v| v.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn id(&self, label: &str) -> Option<VertexId> {
        self.ids.get(label).copied()
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn is_numeric(&self) -> bool {
        self.labels.iter().all(|l| l.parse::<u64>().is_ok())
    }

    /// `"0-1-3"` style label.
    pub fn simplex_label(&self, sigma: &Simplex) -> String {
        sigma
            .vertices()
            .iter()
            .map(|&v| self.label(v))
            .collect::<Vec<_>>()
            .join("-")
    }

    pub fn simplex(&self, origin: &str, labels: &[String]) -> LoadResult<Simplex> {
        let ids = labels
            .iter()
            .map(|l| {
                self.id(l).ok_or_else(|| LoadError::UnknownLabel {
                    origin: origin.into(),
                    label: l.clone(),
                })
            })
            .collect::<LoadResult<Vec<_>>>()?;
        Ok(Simplex::new(ids)?)
    }

    /// Parses a `"0-1-3"` style label.
    pub fn parse_simplex(&self, origin: &str, text: &str) -> LoadResult<Simplex> {
        let parts: Vec<String> = text.split('-').map(str::to_owned).collect();
        self.simplex(origin, &parts)
    }
}

/// A named input: file contents plus a name used in diagnostics.
#[derive(Debug, Clone)]
pub struct Source {
    pub origin: String,
    pub text: String,
}

impl Source {
    pub fn new(origin: impl Into<String>, text: impl Into<String>) -> Self {
        Source {
            origin: origin.into(),
            text: text.into(),
        }
    }

    pub fn read(path: &Path) -> LoadResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
            path: path.to_owned(),
            source,
        })?;
        Ok(Source {
            origin: path.display().to_string(),
            text,
        })
    }
}

/// The raw inputs of one run. Exactly one topology source must be present.
#[derive(Debug, Clone, Default)]
pub struct Sources {
    pub edges: Option<Source>,
    pub complex: Option<Source>,
    pub concentrations: Option<Source>,
    pub internal: Option<Source>,
    pub scheme_table: Option<Source>,
}

#[derive(Debug, Clone)]
pub enum Topology {
    Graph(Graph),
    Complex(SimplicialComplex),
}

impl Topology {
    /// The complex itself, or the 1-dimensional clique complex of the graph.
    pub fn complex(&self) -> crate::Result<SimplicialComplex> {
        match self {
            Topology::Graph(g) => clique_complex(g, 1),
            Topology::Complex(c) => Ok(c.clone()),
        }
    }

    pub fn graph(&self) -> Graph {
        match self {
            Topology::Graph(g) => g.clone(),
            Topology::Complex(c) => Graph::one_skeleton(c),
        }
    }
}

/// Validated inputs with labels resolved to ids.
#[derive(Debug, Clone)]
pub struct InputBundle {
    pub labels: VertexLabels,
    pub topology: Topology,
    pub concentrations: ConcentrationMap,
    pub scheme: ContributionScheme,
}

impl fmt::Display for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Topology::Graph(g) => write!(
                f,
                "graph ({} vertices, {} edges)",
                g.vertex_count(),
                g.edges().len()
            ),
            Topology::Complex(c) => write!(f, "complex ({} simplices)", c.len()),
        }
    }
}

pub fn load_bundle(sources: &Sources) -> LoadResult<InputBundle> {
    let edges = sources.edges.as_ref().map(parse_edge_list).transpose()?;
    let facets = sources
        .complex
        .as_ref()
        .map(parse_complex_json)
        .transpose()?;
    let concentrations = sources
        .concentrations
        .as_ref()
        .map(parse_concentrations)
        .transpose()?
        .unwrap_or_default();
    let internal = sources
        .internal
        .as_ref()
        .map(parse_internal_json)
        .transpose()?
        .unwrap_or_default();

    let mut all_labels: Vec<&String> = Vec::new();
    match (&edges, &facets) {
        (Some(e), None) => all_labels.extend(e.iter().flat_map(|(u, v)| [u, v])),
        (None, Some(f)) => all_labels.extend(f.iter().flatten()),
        _ => {
            return Err(LoadError::Topology(
                "exactly one of an edge list or a complex is required",
            ))
        }
    }
    all_labels.extend(concentrations.iter().map(|(l, _)| l));
    all_labels.extend(internal.iter().map(|(l, _)| l));
    let labels = VertexLabels::new(all_labels);

    let topology = if let Some(edges) = edges {
        let pairs = edges.iter().map(|(u, v)| {
            (
                labels.id(u).expect("collected"),
                labels.id(v).expect("collected"),
            )
        });
        Topology::Graph(Graph::new(labels.len(), pairs)?)
    } else {
        let origin = &sources.complex.as_ref().expect("present").origin;
        let facets = facets
            .expect("present")
            .iter()
            .map(|f| labels.simplex(origin, f))
            .collect::<LoadResult<Vec<_>>>()?;
        Topology::Complex(SimplicialComplex::from_simplices(labels.len(), facets)?)
    };

    let mut values: BTreeMap<VertexId, Rational> = BTreeMap::new();
    for (label, value) in concentrations {
        let v = labels.id(&label).expect("collected");
        if values.insert(v, value).is_some() {
            return Err(crate::Error::DuplicateLabel(label).into());
        }
    }
    for (label, structure) in internal {
        let v = labels.id(&label).expect("collected");
        if values.insert(v, structure.concentration()?).is_some() {
            return Err(crate::Error::DuplicateLabel(label).into());
        }
    }
    let concentrations = ConcentrationMap::new(values)?;

    let complex = topology.complex()?;
    let missing: Vec<String> = complex
        .active_vertices()
        .filter(|&v| concentrations.get(v).is_none())
        .map(|v| labels.label(v).to_owned())
        .collect();
    if !missing.is_empty() {
        return Err(LoadError::MissingConcentration(missing));
    }

    let scheme = match &sources.scheme_table {
        None => ContributionScheme::Uniform,
        Some(src) => {
            let rows = parse_scheme_json(src)?;
            let entries = rows
                .into_iter()
                .map(|r| {
                    Ok((
                        labels.simplex(&src.origin, &r.tau)?,
                        labels.simplex(&src.origin, &r.sigma)?,
                        r.fraction,
                    ))
                })
                .collect::<LoadResult<Vec<_>>>()?;
            ContributionScheme::ExplicitTable(SchemeTable::new(entries)?)
        }
    };

    Ok(InputBundle {
        labels,
        topology,
        concentrations,
        scheme,
    })
}

impl InputBundle {
    /// Infers a metaplex from a graph, or extends the concentrations over a
    /// given complex (with an empty trace). The bundle's scheme overrides the
    /// one in `config`.
    pub fn metaplex(&self, config: &InferenceConfig) -> crate::Result<Metaplex> {
        let config = InferenceConfig {
            scheme: self.scheme.clone(),
            ..config.clone()
        };
        match &self.topology {
            Topology::Graph(g) => infer_metaplex(g, &self.concentrations, &config),
            Topology::Complex(c) => Ok(Metaplex {
                assignment: extend_full(c, &self.concentrations, &config.scheme)?,
                complex: c.clone(),
                trace: InferenceTrace::default(),
            }),
        }
    }
}

/// Reads whichever of the given paths are present.
pub fn read_sources(
    edges: Option<&Path>,
    complex: Option<&Path>,
    concentrations: Option<&Path>,
    internal: Option<&Path>,
    scheme_table: Option<&Path>,
) -> LoadResult<Sources> {
    let read = |p: Option<&Path>| p.map(Source::read).transpose();
    Ok(Sources {
        edges: read(edges)?,
        complex: read(complex)?,
        concentrations: read(concentrations)?,
        internal: read(internal)?,
        scheme_table: read(scheme_table)?,
    })
}
