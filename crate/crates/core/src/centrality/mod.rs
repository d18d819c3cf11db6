//! Facet-mediated adjacency and the centralities built on it.
//!
//! Two distinct `q`-simplices are adjacent when some facet properly contains
//! both. The strength of the pair is the largest weight among such facets.
//! Facets at level `q` itself are never adjacent to anything.

mod distance;
mod report;

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::complex::{Simplex, SimplicialComplex};
use crate::concentration::ConcentrationAssignment;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub use distance::{
    closeness, connected_components, farness, harmonic, shortest_distances, shortest_walk,
    step_cost, Components, Direction, DistanceTable, Walk,
};
pub use report::{CentralityReport, CentralityRow, Column};

/// Adjacency at one level, with strengths and mediating facets.
///
/// Simplices are indexed by their position in `S_q` (lexicographic order).
/// Neighbour lists are sorted by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyView {
    q: usize,
    order: Vec<Simplex>,
    weights: Vec<Rational>,
    neighbours: Vec<Vec<Link>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Link {
    to: usize,
    strength: Rational,
    /// Lexicographically smallest facet attaining `strength`.
    mediator: Simplex,
}

impl AdjacencyView {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.order
    }

    pub fn index_of(&self, sigma: &Simplex) -> Option<usize> {
        self.order.binary_search(sigma).ok()
    }

    /// `a(σ_i)`.
    pub fn weight(&self, i: usize) -> &Rational {
        &self.weights[i]
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.link(i, j).is_some()
    }

    fn link(&self, i: usize, j: usize) -> Option<&Link> {
        let row = &self.neighbours[i];
        row.binary_search_by_key(&j, |l| l.to).ok().map(|k| &row[k])
    }

    /// `w_ij`: zero when not adjacent.
    pub fn strength(&self, i: usize, j: usize) -> Rational {
        self.link(i, j)
            .map_or_else(Rational::zero, |l| l.strength.clone())
    }

    pub fn mediator(&self, i: usize, j: usize) -> Option<&Simplex> {
        self.link(i, j).map(|l| &l.mediator)
    }

    /// Adjacent indices with their strengths, ascending by index.
    pub fn neighbours(&self, i: usize) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.neighbours[i].iter().map(|l| (l.to, &l.strength))
    }

    /// `A^(q)`.
    pub fn binary_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.len();
        let mut m = vec![vec![0u8; n]; n];
        for (i, row) in self.neighbours.iter().enumerate() {
            for l in row {
                m[i][l.to] = 1;
            }
        }
        m
    }

    /// `A_w^(q)`.
    pub fn strength_matrix(&self) -> Vec<Vec<Rational>> {
        let n = self.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (i, row) in self.neighbours.iter().enumerate() {
            for l in row {
                m[i][l.to] = l.strength.clone();
            }
        }
        m
    }

    /// Same adjacency with every strength replaced by 1.
    pub fn with_unit_strengths(&self) -> Self {
        let mut view = self.clone();
        for row in &mut view.neighbours {
            for l in row {
                l.strength = rational::from_int(1);
            }
        }
        view
    }

    /// Same adjacency and strengths with every simplex weight replaced by 1.
    pub fn with_unit_weights(&self) -> Self {
        let mut view = self.clone();
        view.weights
            .iter_mut()
            .for_each(|w| *w = rational::from_int(1));
        view
    }
}

/// Builds the adjacency view of `S_q`.
pub fn adjacency_matrices(
    complex: &SimplicialComplex,
    assignment: &ConcentrationAssignment,
    q: usize,
) -> Result<AdjacencyView> {
    let order: Vec<Simplex> = complex.level(q).cloned().collect();
    if order.is_empty() {
        return Err(Error::EmptyLevel(q));
    }
    let weights = order
        .iter()
        .map(|s| assignment.weight(s).cloned())
        .collect::<Result<_>>()?;

    let mut best: BTreeMap<(usize, usize), (Rational, Simplex)> = BTreeMap::new();
    for gamma in complex.facets().iter().filter(|f| f.dim() > q) {
        let weight = assignment.weight(gamma)?;
        let faces: Vec<usize> = gamma
            .faces_of_dim(q)
            .map(|f| order.binary_search(&f).expect("complex is closed"))
            .collect();
        for (a, &i) in faces.iter().enumerate() {
            for &j in &faces[a + 1..] {
                let key = (i.min(j), i.max(j));
                match best.get_mut(&key) {
                    Some((s, m)) => {
                        if weight > s || (weight == s && gamma < m) {
                            *s = weight.clone();
                            *m = gamma.clone();
                        }
                    }
                    None => {
                        best.insert(key, (weight.clone(), gamma.clone()));
                    }
                }
            }
        }
    }

    let mut neighbours: Vec<Vec<Link>> = vec![Vec::new(); order.len()];
    for ((i, j), (strength, mediator)) in best {
        neighbours[i].push(Link {
            to: j,
            strength: strength.clone(),
            mediator: mediator.clone(),
        });
        neighbours[j].push(Link {
            to: i,
            strength,
            mediator,
        });
    }
    for row in &mut neighbours {
        row.sort_by_key(|l| l.to);
    }
    Ok(AdjacencyView {
        q,
        order,
        weights,
        neighbours,
    })
}

fn same_dim(a: &Simplex, b: &Simplex) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.clone(),
            right: b.clone(),
        });
    }
    Ok(())
}

/// `σ_i ~_F σ_j`: distinct, and both properly inside a common facet.
pub fn facet_adjacent(complex: &SimplicialComplex, a: &Simplex, b: &Simplex) -> Result<bool> {
    same_dim(a, b)?;
    Ok(a != b
        && complex
            .facets()
            .iter()
            .any(|g| a.is_proper_face_of(g) && b.is_proper_face_of(g)))
}

/// `S(σ_i, σ_j)`: largest weight of a facet properly containing both; zero
/// when not adjacent or equal.
pub fn strength(
    complex: &SimplicialComplex,
    assignment: &ConcentrationAssignment,
    a: &Simplex,
    b: &Simplex,
) -> Result<Rational> {
    same_dim(a, b)?;
    if a == b {
        return Ok(Rational::zero());
    }
    let mut best = Rational::zero();
    for gamma in complex.facets() {
        if a.is_proper_face_of(gamma) && b.is_proper_face_of(gamma) {
            let w = assignment.weight(gamma)?;
            if *w > best {
                best = w.clone();
            }
        }
    }
    Ok(best)
}

/// `k(σ_i)`: row sum of `A^(q)`.
pub fn simplicial_degree(view: &AdjacencyView, i: usize) -> usize {
    view.neighbours[i].len()
}

/// `D(σ_i) = Σ_j a(σ_j) w_ij`, with `a` read from `assignment`.
pub fn weighted_degree(
    view: &AdjacencyView,
    assignment: &ConcentrationAssignment,
    i: usize,
) -> Result<Rational> {
    view.neighbours[i]
        .iter()
        .try_fold(Rational::zero(), |acc, l| {
            Ok(acc + assignment.weight(&view.order[l.to])? * &l.strength)
        })
}

/// `D(σ_i)` with the weights captured in the view.
pub fn view_weighted_degree(view: &AdjacencyView, i: usize) -> Rational {
    view.neighbours[i].iter().fold(Rational::zero(), |acc, l| {
        acc + &view.weights[l.to] * &l.strength
    })
}

fn check_unit_alpha(alpha: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidAlpha {
            alpha,
            range: "[0, 1]",
        });
    }
    Ok(())
}

/// `D^α` at the endpoints, exactly: `k` for `α = 0`, `D` for `α = 1`, and
/// `None` in between.
pub fn combined_degree_exact(
    view: &AdjacencyView,
    assignment: &ConcentrationAssignment,
    i: usize,
    alpha: f64,
) -> Result<Option<Rational>> {
    check_unit_alpha(alpha)?;
    Ok(if alpha == 0.0 {
        Some(Rational::from_integer(simplicial_degree(view, i).into()))
    } else if alpha == 1.0 {
        Some(weighted_degree(view, assignment, i)?)
    } else {
        None
    })
}

/// `D^α(σ_i) = k^{1-α} · D^α`, zero for isolated simplices.
pub fn combined_degree(
    view: &AdjacencyView,
    assignment: &ConcentrationAssignment,
    i: usize,
    alpha: f64,
) -> Result<f64> {
    if let Some(exact) = combined_degree_exact(view, assignment, i, alpha)? {
        return Ok(rational::to_f64(&exact));
    }
    let k = simplicial_degree(view, i);
    if k == 0 {
        return Ok(0.0);
    }
    let d = rational::to_f64(&weighted_degree(view, assignment, i)?);
    Ok((k as f64).powf(1.0 - alpha) * d.powf(alpha))
}
