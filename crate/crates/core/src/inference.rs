//! Threshold-based admission of higher-order simplices.
//!
//! Starting from a graph with vertex concentrations, each dimension
//! `q = 2, 3, …` proceeds in three steps:
//!
//! 1. enumerate the candidates `E_q`, the `q`-simplices whose whole boundary
//!    is already in `S_{q-1}`;
//! 2. admit a candidate iff its aggregated boundary weight `W_q` exceeds
//!    `θ_q = m · mean(a over S_{q-1})`, where the multiplier `m` is `q + 1`
//!    unless overridden;
//! 3. weight the admitted simplices with the contribution scheme, normalised
//!    over admitted cofaces only.
//!
//! Lower levels are never re-weighted once a higher level is admitted.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::complex::{Graph, Simplex, SimplicialComplex};
use crate::concentration::{
    extend_one_level, ConcentrationAssignment, ConcentrationMap, ContributionScheme,
};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InferenceConfig {
    pub max_dim: usize,
    pub scheme: ContributionScheme,
    /// Replaces the default `q + 1` factor of the threshold when set.
    pub threshold_multiplier: Option<Rational>,
    /// `W > θ` when true, `W ≥ θ` otherwise.
    pub strict: bool,
}

impl Default for InferenceConfig {
    fn default() -> Self {
        Self {
            max_dim: 3,
            scheme: ContributionScheme::Uniform,
            threshold_multiplier: None,
            strict: true,
        }
    }
}

impl InferenceConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_dim < 2 {
            return Err(Error::InvalidMaxDim {
                min: 2,
                got: self.max_dim,
            });
        }
        if self
            .threshold_multiplier
            .as_ref()
            .is_some_and(|m| !m.is_positive())
        {
            return Err(Error::NonPositiveMultiplier);
        }
        Ok(())
    }

    pub fn multiplier(&self, q: usize) -> Rational {
        self.threshold_multiplier
            .clone()
            .unwrap_or_else(|| Rational::from_integer((q + 1).into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub simplex: Simplex,
    /// `W_q`.
    pub boundary_weight: Rational,
}

/// What happened at one dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelTrace {
    pub q: usize,
    pub candidates: Vec<Candidate>,
    /// Mean weight of `S_{q-1}`.
    pub reference_level: Rational,
    pub threshold: Rational,
    pub admitted: Vec<Simplex>,
    pub rejected: Vec<Simplex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InferenceTrace {
    pub levels: Vec<LevelTrace>,
}

impl InferenceTrace {
    pub fn level(&self, q: usize) -> Option<&LevelTrace> {
        self.levels.iter().find(|l| l.q == q)
    }
}

/// The complex, its weights, and the trace produced by [`infer_metaplex`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metaplex {
    pub complex: SimplicialComplex,
    pub assignment: ConcentrationAssignment,
    pub trace: InferenceTrace,
}

/// `E_q` in lexicographic order: vertex sets of size `q + 1`, not already in
/// the complex, whose `(q-1)`-faces all lie in `S_{q-1}`.
pub fn enumerate_candidates(complex: &SimplicialComplex, q: usize) -> Vec<Simplex> {
    if q == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // Each candidate is generated once, from the face missing its top vertex.
    for base in complex.level(q - 1) {
        for v in base.max_vertex() + 1..complex.vertex_count() {
            let candidate = base.with_vertex(v).expect("v exceeds every vertex of base");
            if complex.contains(&candidate) {
                continue;
            }
            let feasible = candidate
                .boundary()
                .expect("q >= 1")
                .iter()
                .all(|face| complex.contains(face));
            if feasible {
                out.push(candidate);
            }
        }
    }
    out.sort();
    out
}

/// `W_q(σ) = Σ_{τ ∈ B(σ)} a(τ)`.
pub fn aggregated_boundary_weight(
    candidate: &Simplex,
    assignment: &ConcentrationAssignment,
) -> Result<Rational> {
    candidate
        .boundary()?
        .iter()
        .try_fold(Rational::zero(), |acc, tau| {
            Ok(acc + assignment.weight(tau)?)
        })
}

/// Mean weight of `S_{q-1}`.
pub fn reference_level(
    assignment: &ConcentrationAssignment,
    complex: &SimplicialComplex,
    q: usize,
) -> Result<Rational> {
    if q == 0 {
        return Err(Error::InvalidLevel(q));
    }
    let n = complex.count(q - 1);
    if n == 0 {
        return Err(Error::EmptyLevel(q - 1));
    }
    Ok(assignment.level_sum(complex, q - 1)? / Rational::from_integer(n.into()))
}

/// `θ_q`.
pub fn threshold(
    assignment: &ConcentrationAssignment,
    complex: &SimplicialComplex,
    q: usize,
    config: &InferenceConfig,
) -> Result<Rational> {
    Ok(config.multiplier(q) * reference_level(assignment, complex, q)?)
}

/// Applies the inclusion rule to `candidates` at dimension `q`.
pub fn admit(
    candidates: &[Simplex],
    assignment: &ConcentrationAssignment,
    complex: &SimplicialComplex,
    q: usize,
    config: &InferenceConfig,
) -> Result<LevelTrace> {
    let reference = reference_level(assignment, complex, q)?;
    let theta = config.multiplier(q) * &reference;
    let candidates: Vec<Candidate> = candidates
        .par_iter()
        .map(|sigma| {
            Ok(Candidate {
                simplex: sigma.clone(),
                boundary_weight: aggregated_boundary_weight(sigma, assignment)?,
            })
        })
        .collect::<Result<_>>()?;
    let (admitted, rejected): (Vec<&Candidate>, Vec<&Candidate>) =
        candidates.iter().partition(|c| {
            if config.strict {
                c.boundary_weight > theta
            } else {
                c.boundary_weight >= theta
            }
        });
    let admitted = admitted.into_iter().map(|c| c.simplex.clone()).collect();
    let rejected = rejected.into_iter().map(|c| c.simplex.clone()).collect();
    Ok(LevelTrace {
        q,
        reference_level: reference,
        threshold: theta,
        admitted,
        rejected,
        candidates,
    })
}

/// Builds a weighted complex from a graph and vertex concentrations.
///
/// Every graph vertex (`0..graph.vertex_count()`) must have a concentration.
/// The loop stops at `config.max_dim`, or earlier when a level has no
/// simplices or no candidates.
pub fn infer_metaplex(
    graph: &Graph,
    concentrations: &ConcentrationMap,
    config: &InferenceConfig,
) -> Result<Metaplex> {
    config.validate()?;
    concentrations.check_covers(0..graph.vertex_count())?;

    let mut complex = SimplicialComplex::new(graph.vertex_count());
    for v in 0..graph.vertex_count() {
        complex.insert_boundary_complete(Simplex::vertex(v));
    }
    for (u, v) in graph.edges() {
        complex.insert_boundary_complete(Simplex::edge(u, v)?);
    }

    let mut assignment = ConcentrationAssignment::from_weights(
        concentrations
            .iter()
            .filter(|(v, _)| *v < graph.vertex_count())
            .map(|(v, c)| (Simplex::vertex(v), c.clone())),
        Some(config.scheme.kind()),
    );
    extend_level(&complex, &mut assignment, &config.scheme, 1)?;

    let mut trace = InferenceTrace::default();
    for q in 2..=config.max_dim {
        if complex.count(q - 1) == 0 {
            break;
        }
        let candidates = enumerate_candidates(&complex, q);
        let level = admit(&candidates, &assignment, &complex, q, config)?;
        for sigma in &level.admitted {
            complex.insert_boundary_complete(sigma.clone());
        }
        let stop = level.candidates.is_empty();
        trace.levels.push(level);
        if stop {
            break;
        }
        extend_level(&complex, &mut assignment, &config.scheme, q)?;
    }

    Ok(Metaplex {
        complex,
        assignment,
        trace,
    })
}

fn extend_level(
    complex: &SimplicialComplex,
    assignment: &mut ConcentrationAssignment,
    scheme: &ContributionScheme,
    q: usize,
) -> Result<()> {
    let fractions = scheme.at_level(complex, q);
    for (sigma, weight) in extend_one_level(complex, assignment, &fractions)? {
        assignment.insert(sigma, weight);
    }
    Ok(())
}
