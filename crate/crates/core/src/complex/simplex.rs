use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex index. External labels are mapped onto `0..n` at load time.
pub type VertexId = usize;

/// A simplex in canonical form: distinct vertices in ascending order.
///
/// Ordering is lexicographic on the vertex sequence, so every level of a
/// complex iterates in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Builds the canonical simplex on `vertices`, sorting them.
    ///
    /// Repeated vertices are rejected rather than collapsed.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Result<Self> {
        let mut vertices: Vec<VertexId> = vertices.into_iter().collect();
        if vertices.is_empty() {
            return Err(Error::EmptyVertexList);
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        Ok(Self(vertices))
    }

    pub fn vertex(v: VertexId) -> Self {
        Self(vec![v])
    }

    pub fn edge(u: VertexId, v: VertexId) -> Result<Self> {
        Self::new([u, v])
    }

    /// Caller guarantees `vertices` is strictly increasing and non-empty.
    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Self(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn max_vertex(&self) -> VertexId {
        *self.0.last().expect("simplices are non-empty")
    }

    /// `self ⊆ other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.len() <= other.len() && self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// `self ⊊ other`.
    pub fn is_proper_face_of(&self, other: &Simplex) -> bool {
        self.len() < other.len() && self.is_face_of(other)
    }

    /// The `q + 1` faces of dimension `q - 1`, in lexicographic order.
    pub fn boundary(&self) -> Result<Vec<Simplex>> {
        if self.dim() == 0 {
            return Err(Error::ZeroDimensionalSimplex);
        }
        let mut faces: Vec<Simplex> = (0..self.len())
            .map(|skip| {
                let face = self
                    .0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                Simplex(face)
            })
            .collect();
        faces.sort();
        Ok(faces)
    }

    /// All faces of dimension `d` (including `self` when `d == dim`).
    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = Simplex> + '_ {
        self.0.iter().copied().combinations(d + 1).map(Simplex)
    }

    /// `self ∪ {v}`; returns `None` when `v` is already present.
    pub fn with_vertex(&self, v: VertexId) -> Option<Simplex> {
        match self.0.binary_search(&v) {
            Ok(_) => None,
            Err(pos) => {
                let mut vertices = Vec::with_capacity(self.len() + 1);
                vertices.extend_from_slice(&self.0[..pos]);
                vertices.push(v);
                vertices.extend_from_slice(&self.0[pos..]);
                Some(Simplex(vertices))
            }
        }
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex(
            self.0
                .iter()
                .chain(&other.0)
                .copied()
                .sorted()
                .dedup()
                .collect(),
        )
    }

    /// Joins the given vertex labels with `-`, e.g. `0-1-3`.
    pub fn label_with<S: AsRef<str>>(&self, labels: &[S]) -> String {
        self.0.iter().map(|&v| labels[v].as_ref()).join("-")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.iter().join(","))
    }
}

impl TryFrom<Vec<VertexId>> for Simplex {
    type Error = Error;

    fn try_from(vertices: Vec<VertexId>) -> Result<Self> {
        Simplex::new(vertices)
    }
}

impl From<Simplex> for Vec<VertexId> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}
