use thiserror::Error;

use crate::complex::{Simplex, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a simplex needs at least one vertex")]
    EmptyVertexList,
    #[error("vertex {0} appears more than once")]
    DuplicateVertex(VertexId),
    #[error("vertex {vertex} is out of range for {vertex_count} vertices")]
    VertexOutOfRange {
        vertex: VertexId,
        vertex_count: usize,
    },
    #[error("the boundary of a 0-simplex is not defined")]
    ZeroDimensionalSimplex,
    #[error("simplex {0} is not in the complex")]
    SimplexNotInComplex(Simplex),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge {0}-{1} listed more than once")]
    DuplicateEdge(VertexId, VertexId),
    #[error("maximum dimension must be at least {min}, got {got}")]
    InvalidMaxDim { min: usize, got: usize },
    #[error("internal structure has no strictly positive weight")]
    AllZeroWeights,
    #[error("internal structure weight for {label:?} is negative")]
    NegativeWeight { label: String },
    #[error("concentration of vertex {vertex} must be strictly positive, got {value}")]
    NonPositiveConcentration { vertex: VertexId, value: String },
    #[error("no concentration for vertices {0:?}")]
    MissingConcentration(Vec<VertexId>),
    #[error("no weight assigned to simplex {0}")]
    WeightNotAssigned(Simplex),
    #[error("contribution scheme violates its axioms at level {level}: {detail}")]
    SchemeInvalid { level: usize, detail: String },
    #[error("scheme entry ({tau}, {sigma}) is not a codimension-one incidence")]
    NotAnIncidence { tau: Simplex, sigma: Simplex },
    #[error("scheme entry ({tau}, {sigma}) listed more than once")]
    DuplicateSchemeEntry { tau: Simplex, sigma: Simplex },
    #[error("level {0} is outside the valid range for this operation")]
    InvalidLevel(usize),
    #[error("label {0:?} appears more than once")]
    DuplicateLabel(String),
    #[error("level {0} has no simplices")]
    EmptyLevel(usize),
    #[error("threshold multiplier must be strictly positive")]
    NonPositiveMultiplier,
    #[error("simplices {left} and {right} have different dimensions")]
    DimensionMismatch { left: Simplex, right: Simplex },
    #[error("simplices at positions {0} and {1} are not adjacent")]
    NotAdjacent(usize, usize),
    #[error("alpha must lie in {range}, got {alpha}")]
    InvalidAlpha { alpha: f64, range: &'static str },
}
