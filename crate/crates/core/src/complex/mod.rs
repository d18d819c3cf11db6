//! Finite abstract simplicial complexes.

mod graph;
mod simplex;

use std::collections::BTreeSet;
use std::sync::OnceLock;

pub use graph::{clique_complex, maximal_cliques, Graph};
pub use simplex::{Simplex, VertexId};

use crate::error::{Error, Result};

/// A finite abstract simplicial complex over the vertex set `0..vertex_count`.
///
/// Simplices are stored per dimension (`levels[q]` is `S_q`) in lexicographic
/// order. Facets are computed on first use and cached until the next mutation.
#[derive(Debug, Clone, Default)]
pub struct SimplicialComplex {
    vertex_count: usize,
    levels: Vec<BTreeSet<Simplex>>,
    facets: OnceLock<Vec<Simplex>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.levels == other.levels
    }
}

impl Eq for SimplicialComplex {}

/// A simplex whose codimension-one face is absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureViolation {
    pub simplex: Simplex,
    pub missing_face: Simplex,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClosureReport {
    pub violations: Vec<ClosureViolation>,
}

impl ClosureReport {
    pub fn is_closed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl SimplicialComplex {
    /// An empty complex whose simplices may use vertices `0..vertex_count`.
    pub fn new(vertex_count: usize) -> Self {
        Self {
            vertex_count,
            levels: Vec::new(),
            facets: OnceLock::new(),
        }
    }

    /// The closure of the given simplices.
    pub fn from_simplices(
        vertex_count: usize,
        simplices: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self> {
        let mut complex = Self::new(vertex_count);
        for sigma in simplices {
            complex.insert_with_closure(sigma)?;
        }
        Ok(complex)
    }

    /// Stores the given simplices as-is, without adding missing faces.
    ///
    /// Only useful for building inputs to [`validate_closure`](Self::validate_closure);
    /// everything else in this crate assumes a closed complex.
    pub fn from_simplices_unclosed(
        vertex_count: usize,
        simplices: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self> {
        let mut complex = Self::new(vertex_count);
        for sigma in simplices {
            complex.check_range(&sigma)?;
            complex.insert_raw(sigma);
        }
        Ok(complex)
    }

    fn check_range(&self, sigma: &Simplex) -> Result<()> {
        if sigma.max_vertex() >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: sigma.max_vertex(),
                vertex_count: self.vertex_count,
            });
        }
        Ok(())
    }

    fn insert_raw(&mut self, sigma: Simplex) -> bool {
        let q = sigma.dim();
        if self.levels.len() <= q {
            self.levels.resize_with(q + 1, BTreeSet::new);
        }
        let inserted = self.levels[q].insert(sigma);
        if inserted {
            self.facets = OnceLock::new();
        }
        inserted
    }

    /// Inserts `sigma` together with every face it is missing.
    ///
    /// Returns whether the complex changed. Re-inserting a present simplex is a
    /// no-op.
    pub fn insert_with_closure(&mut self, sigma: Simplex) -> Result<bool> {
        self.check_range(&sigma)?;
        Ok(self.close_from(sigma))
    }

    fn close_from(&mut self, sigma: Simplex) -> bool {
        if self.contains(&sigma) {
            return false;
        }
        if sigma.dim() > 0 {
            for face in sigma.boundary().expect("dim > 0") {
                self.close_from(face);
            }
        }
        self.insert_raw(sigma)
    }

    /// Inserts `sigma` whose boundary is already present. Used by the
    /// inference pipeline, where candidates are boundary-complete by
    /// construction.
    pub(crate) fn insert_boundary_complete(&mut self, sigma: Simplex) {
        debug_assert!(
            sigma.dim() == 0 || sigma.boundary().unwrap().iter().all(|f| self.contains(f))
        );
        self.insert_raw(sigma);
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn contains(&self, sigma: &Simplex) -> bool {
        self.levels
            .get(sigma.dim())
            .is_some_and(|level| level.contains(sigma))
    }

    /// The stored copy of `sigma`, if present.
    pub fn get(&self, sigma: &Simplex) -> Option<&Simplex> {
        self.levels
            .get(sigma.dim())
            .and_then(|level| level.get(sigma))
    }

    pub fn is_empty(&self) -> bool {
        self.levels.iter().all(BTreeSet::is_empty)
    }

    /// Total number of simplices.
    pub fn len(&self) -> usize {
        self.levels.iter().map(BTreeSet::len).sum()
    }

    /// `dim(Δ)`, or `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.levels.iter().rposition(|level| !level.is_empty())
    }

    /// `S_q` in lexicographic order (empty beyond the top dimension).
    pub fn level(&self, q: usize) -> impl ExactSizeIterator<Item = &Simplex> + '_ {
        static EMPTY: BTreeSet<Simplex> = BTreeSet::new();
        self.levels.get(q).unwrap_or(&EMPTY).iter()
    }

    /// `n_q = |S_q|`.
    pub fn count(&self, q: usize) -> usize {
        self.levels.get(q).map_or(0, BTreeSet::len)
    }

    /// Every simplex, by dimension and then lexicographically.
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> + '_ {
        self.levels.iter().flatten()
    }

    /// `V(Δ)`: vertices `v` with `{v} ∈ Δ`.
    pub fn active_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.level(0).map(Simplex::max_vertex)
    }

    /// Simplices not contained in any other simplex, in the complex's
    /// (dimension, lexicographic) order.
    pub fn facets(&self) -> &[Simplex] {
        self.facets.get_or_init(|| {
            self.simplices()
                .filter(|sigma| self.coface_count(sigma) == 0)
                .cloned()
                .collect()
        })
    }

    pub fn is_facet(&self, sigma: &Simplex) -> bool {
        self.contains(sigma) && self.coface_count(sigma) == 0
    }

    fn coface_count(&self, sigma: &Simplex) -> usize {
        self.cofaces(sigma).count()
    }

    /// The `(q+1)`-simplices of the complex containing `sigma`, lexicographically.
    pub fn cofaces<'a>(&'a self, sigma: &'a Simplex) -> impl Iterator<Item = Simplex> + 'a {
        let above = self.levels.get(sigma.dim() + 1);
        (0..self.vertex_count)
            .filter(move |_| above.is_some_and(|l| !l.is_empty()))
            .filter_map(move |v| sigma.with_vertex(v))
            .filter(move |tau| above.is_some_and(|l| l.contains(tau)))
    }

    /// Upper degree `k_σ`: the number of `(q+1)`-simplices containing `sigma`.
    pub fn upper_degree(&self, sigma: &Simplex) -> Result<usize> {
        if !self.contains(sigma) {
            return Err(Error::SimplexNotInComplex(sigma.clone()));
        }
        Ok(self.coface_count(sigma))
    }

    /// All simplices of dimension at most `d`.
    pub fn skeleton(&self, d: usize) -> SimplicialComplex {
        Self {
            vertex_count: self.vertex_count,
            levels: self.levels.iter().take(d + 1).cloned().collect(),
            facets: OnceLock::new(),
        }
    }

    /// Lists every simplex with a missing codimension-one face. A complex is
    /// closed under faces iff this list is empty.
    pub fn validate_closure(&self) -> ClosureReport {
        let violations = self
            .simplices()
            .filter(|sigma| sigma.dim() > 0)
            .flat_map(|sigma| {
                sigma
                    .boundary()
                    .expect("dim > 0")
                    .into_iter()
                    .filter(|face| !self.contains(face))
                    .map(|missing_face| ClosureViolation {
                        simplex: sigma.clone(),
                        missing_face,
                    })
            })
            .collect();
        ClosureReport { violations }
    }
}
