//! Brute-force reference implementations and seeded random instances.
//!
//! The oracles here deliberately avoid the algorithms of the main crate and
//! use only its domain types. They are meant for small instances and refuse
//! anything larger with [`OracleError::InstanceTooLarge`].

use std::collections::{BTreeMap, BTreeSet};

use metaplex::concentration::ContributionScheme;
use metaplex::inference::{infer_metaplex, InferenceConfig, Metaplex};
use metaplex::rational::ratio;
use metaplex::{
    ConcentrationAssignment, ConcentrationMap, Graph, Rational, Simplex, SimplicialComplex,
};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub mod fixtures;

pub const MAX_ORACLE_SIMPLICES: usize = 1 << 10;
pub const MAX_ORACLE_LEVEL: usize = 12;
pub const MAX_RANDOM_VERTICES: usize = 10;
pub const MAX_DENOMINATOR: i64 = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("instance too large for {oracle}: {size} > {limit}")]
    InstanceTooLarge {
        oracle: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("no weight for {0}")]
    MissingWeight(Simplex),
    #[error("invalid random spec: {0}")]
    InvalidSpec(&'static str),
    #[error(transparent)]
    Model(#[from] metaplex::Error),
}

pub type OracleResult<T> = Result<T, OracleError>;

fn guard(oracle: &'static str, size: usize, limit: usize) -> OracleResult<()> {
    if size > limit {
        return Err(OracleError::InstanceTooLarge {
            oracle,
            size,
            limit,
        });
    }
    Ok(())
}

fn proper_subset(a: &Simplex, b: &Simplex) -> bool {
    a.len() < b.len() && a.vertices().iter().all(|v| b.vertices().contains(v))
}

/// Facets by pairwise inclusion over every simplex.
pub fn oracle_facets(complex: &SimplicialComplex) -> OracleResult<BTreeSet<Simplex>> {
    guard("oracle_facets", complex.len(), MAX_ORACLE_SIMPLICES)?;
    let all: Vec<&Simplex> = complex.simplices().collect();
    Ok(all
        .iter()
        .filter(|s| !all.iter().any(|t| proper_subset(s, t)))
        .map(|s| (*s).clone())
        .collect())
}

/// Weights by direct recursive nested sums, with upper degrees recounted
/// from scratch at every step.
pub fn oracle_extend(
    complex: &SimplicialComplex,
    concentrations: &ConcentrationMap,
    scheme: &ContributionScheme,
) -> OracleResult<ConcentrationAssignment> {
    guard("oracle_extend", complex.len(), MAX_ORACLE_SIMPLICES)?;
    let all: Vec<&Simplex> = complex.simplices().collect();
    let table: BTreeMap<(Simplex, Simplex), Rational> = match scheme {
        ContributionScheme::Uniform => BTreeMap::new(),
        ContributionScheme::ExplicitTable(t) => t
            .iter()
            .map(|(a, b, f)| ((a.clone(), b.clone()), f.clone()))
            .collect(),
    };
    let fraction = |tau: &Simplex, sigma: &Simplex| -> Rational {
        match scheme {
            ContributionScheme::Uniform => {
                let up = all
                    .iter()
                    .filter(|s| s.len() == tau.len() + 1 && proper_subset(tau, s))
                    .count();
                Rational::new(1.into(), up.into())
            }
            ContributionScheme::ExplicitTable(_) => table
                .get(&(tau.clone(), sigma.clone()))
                .cloned()
                .unwrap_or_else(Rational::zero),
        }
    };

    fn weight_of(
        sigma: &Simplex,
        concentrations: &ConcentrationMap,
        fraction: &dyn Fn(&Simplex, &Simplex) -> Rational,
    ) -> OracleResult<Rational> {
        if sigma.len() == 1 {
            let v = sigma.vertices()[0];
            return concentrations
                .get(v)
                .cloned()
                .ok_or_else(|| OracleError::MissingWeight(sigma.clone()));
        }
        let mut total = Rational::zero();
        for skip in 0..sigma.len() {
            let face = Simplex::new(
                sigma
                    .vertices()
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v),
            )?;
            total += fraction(&face, sigma) * weight_of(&face, concentrations, fraction)?;
        }
        Ok(total)
    }

    let weights = all
        .iter()
        .map(|s| Ok(((*s).clone(), weight_of(s, concentrations, &fraction)?)))
        .collect::<OracleResult<Vec<_>>>()?;
    Ok(ConcentrationAssignment::from_weights(
        weights,
        Some(scheme.kind()),
    ))
}

/// Exhaustive simple-path search over the `q`-simplices of one complex.
///
/// Adjacency and strengths are recomputed from the oracle facet list. Branches
/// whose partial cost already reaches the best complete path are cut, which
/// cannot discard a better path since every step cost is positive.
#[derive(Debug, Clone)]
pub struct PathOracle {
    nodes: Vec<Simplex>,
    cost: Vec<Vec<Option<f64>>>,
}

impl PathOracle {
    pub fn new(
        complex: &SimplicialComplex,
        assignment: &ConcentrationAssignment,
        q: usize,
        alpha: f64,
    ) -> OracleResult<Self> {
        let nodes: Vec<Simplex> = complex
            .simplices()
            .filter(|s| s.dim() == q)
            .cloned()
            .collect();
        guard("oracle_shortest", nodes.len(), MAX_ORACLE_LEVEL)?;
        let facets = oracle_facets(complex)?;
        let weight = |s: &Simplex| {
            assignment
                .get(s)
                .cloned()
                .ok_or_else(|| OracleError::MissingWeight(s.clone()))
        };
        let n = nodes.len();
        let mut cost = vec![vec![None; n]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut best: Option<Rational> = None;
                for g in &facets {
                    if proper_subset(&nodes[i], g) && proper_subset(&nodes[j], g) {
                        let w = weight(g)?;
                        if best.as_ref().is_none_or(|b| w > *b) {
                            best = Some(w);
                        }
                    }
                }
                if let Some(s) = best {
                    let base = (Rational::one() / (s * weight(&nodes[j])?))
                        .to_f64()
                        .unwrap_or(f64::INFINITY);
                    cost[i][j] = Some(base.powf(alpha));
                }
            }
        }
        Ok(PathOracle { nodes, cost })
    }

    fn locate(&self, s: &Simplex) -> OracleResult<usize> {
        self.nodes
            .iter()
            .position(|n| n == s)
            .ok_or_else(|| metaplex::Error::SimplexNotInComplex(s.clone()).into())
    }

    /// Minimum summed step cost over simple paths, or `None` if unreachable.
    pub fn shortest(&self, from: &Simplex, to: &Simplex) -> OracleResult<Option<f64>> {
        let (source, target) = (self.locate(from)?, self.locate(to)?);
        if source == target {
            return Ok(Some(0.0));
        }
        let mut best = f64::INFINITY;
        let mut on_path = vec![false; self.nodes.len()];
        self.dfs(source, 0.0, target, &mut on_path, &mut best);
        Ok(best.is_finite().then_some(best))
    }

    fn dfs(&self, u: usize, acc: f64, target: usize, on_path: &mut [bool], best: &mut f64) {
        if u == target {
            *best = best.min(acc);
            return;
        }
        on_path[u] = true;
        for (v, c) in self.cost[u].iter().enumerate() {
            if let Some(c) = c {
                if !on_path[v] && acc + c < *best {
                    self.dfs(v, acc + c, target, on_path, best);
                }
            }
        }
        on_path[u] = false;
    }
}

/// Shortest `d^α` from `from` to `to`, both of the same dimension.
pub fn oracle_shortest(
    complex: &SimplicialComplex,
    assignment: &ConcentrationAssignment,
    from: &Simplex,
    to: &Simplex,
    alpha: f64,
) -> OracleResult<Option<f64>> {
    if from.dim() != to.dim() {
        return Err(metaplex::Error::DimensionMismatch {
            left: from.clone(),
            right: to.clone(),
        }
        .into());
    }
    PathOracle::new(complex, assignment, from.dim(), alpha)?.shortest(from, to)
}

/// Parameters of one seeded random combinatorial metaplex.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomCMSpec {
    pub vertex_count: usize,
    pub edge_probability: f64,
    /// Inclusive bounds; the lower bound must be positive.
    pub concentration_range: (Rational, Rational),
    pub seed: u64,
    pub max_dim: usize,
}

impl RandomCMSpec {
    pub fn new(vertex_count: usize, edge_probability: f64, seed: u64) -> Self {
        RandomCMSpec {
            vertex_count,
            edge_probability,
            concentration_range: (ratio(1, 4), ratio(20, 1)),
            seed,
            max_dim: 3,
        }
    }

    pub fn validate(&self) -> OracleResult<()> {
        if self.vertex_count > MAX_RANDOM_VERTICES {
            return Err(OracleError::InstanceTooLarge {
                oracle: "generate_random_cm",
                size: self.vertex_count,
                limit: MAX_RANDOM_VERTICES,
            });
        }
        if !(0.0..=1.0).contains(&self.edge_probability) {
            return Err(OracleError::InvalidSpec("edge probability outside [0, 1]"));
        }
        let (lo, hi) = &self.concentration_range;
        if !lo.is_positive() || lo > hi {
            return Err(OracleError::InvalidSpec(
                "concentration range must satisfy 0 < lo <= hi",
            ));
        }
        Ok(())
    }

    pub fn config(&self) -> InferenceConfig {
        InferenceConfig {
            max_dim: self.max_dim,
            ..InferenceConfig::default()
        }
    }
}

fn sample_rational(rng: &mut ChaCha8Rng, lo: &Rational, hi: &Rational) -> Rational {
    loop {
        let den: i64 = rng.gen_range(1..=MAX_DENOMINATOR);
        let d = Rational::from_integer(den.into());
        let min = (lo * &d).ceil().to_integer().to_i64().expect("small bound");
        let max = (hi * &d)
            .floor()
            .to_integer()
            .to_i64()
            .expect("small bound");
        if min <= max {
            let num = rng.gen_range(min..=max);
            if num > 0 {
                return ratio(num, den);
            }
        }
    }
}

/// A simple graph with independent edges and concentrations sampled from
/// the range with denominators at most 64.
pub fn generate_random_cm(spec: &RandomCMSpec) -> OracleResult<(Graph, ConcentrationMap)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.vertex_count;
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(spec.edge_probability) {
                edges.push((u, v));
            }
        }
    }
    let (lo, hi) = &spec.concentration_range;
    let values: Vec<(usize, Rational)> = (0..n)
        .map(|v| (v, sample_rational(&mut rng, lo, hi)))
        .collect();
    Ok((Graph::new(n, edges)?, ConcentrationMap::new(values)?))
}

/// Generates an instance and runs the full inference pipeline on it.
pub fn random_metaplex(spec: &RandomCMSpec) -> OracleResult<Metaplex> {
    let (graph, conc) = generate_random_cm(spec)?;
    Ok(infer_metaplex(&graph, &conc, &spec.config())?)
}

/// The `index`-th spec of a reproducible family: sizes cycle through
/// `2..=max_vertices` and edge probabilities through a fixed list.
pub fn family_spec(index: u64, max_vertices: usize, base_seed: u64) -> RandomCMSpec {
    const PROBABILITIES: [f64; 5] = [0.3, 0.5, 0.7, 0.85, 1.0];
    let span = (max_vertices - 1) as u64;
    let n = 2 + (index % span) as usize;
    let p = PROBABILITIES[(index / span) as usize % PROBABILITIES.len()];
    RandomCMSpec::new(n, p, base_seed.wrapping_add(index))
}
