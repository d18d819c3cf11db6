//! Combinatorial metaplexes.
//!
//! A combinatorial metaplex couples a finite abstract simplicial complex with
//! strictly positive rational concentrations on its vertices. This crate
//! provides:
//!
//! - [`complex`]: canonical simplices, closed complexes, facets, skeletons,
//!   upper degrees and clique complexes of simple graphs;
//! - [`concentration`]: fractional contribution schemes, the level-by-level
//!   extension of vertex concentrations to every simplex, scheme composition
//!   and exact conservation validators;
//! - [`inference`]: threshold-based admission of higher-order simplices from
//!   a weighted 1-skeleton;
//! - [`centrality`]: facet-mediated adjacency, degree families, asymmetric
//!   walk distances and closeness/harmonic centralities;
//! - [`io`]: text/JSON/CSV formats used by the command-line tool.
//!
//! All weights are exact rationals. Distances and centralities that involve a
//! real exponent are evaluated in `f64`.

pub mod centrality;
pub mod complex;
pub mod concentration;
mod error;
pub mod inference;
pub mod io;
pub mod rational;

pub use centrality::{AdjacencyView, CentralityReport, DistanceTable};
pub use complex::{clique_complex, Graph, Simplex, SimplicialComplex, VertexId};
pub use concentration::{
    ConcentrationAssignment, ConcentrationMap, ContributionScheme, InternalStructure,
    LevelFractions,
};
pub use error::{Error, Result};
pub use inference::{infer_metaplex, InferenceConfig, InferenceTrace};
pub use rational::Rational;
