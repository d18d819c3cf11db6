use std::collections::BTreeSet;

use crate::error::{Error, Result};

use super::{Simplex, SimplicialComplex, VertexId};

/// A simple undirected graph on `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(VertexId, VertexId)>,
    neighbours: Vec<BTreeSet<VertexId>>,
}

impl Graph {
    /// Builds a simple graph. Loops and repeated edges (in either orientation)
    /// are errors.
    pub fn new(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut graph = Self {
            vertex_count,
            edges: BTreeSet::new(),
            neighbours: vec![BTreeSet::new(); vertex_count],
        };
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            let key = (u.min(v), u.max(v));
            if !graph.edges.insert(key) {
                return Err(Error::DuplicateEdge(key.0, key.1));
            }
            graph.neighbours[u].insert(v);
            graph.neighbours[v].insert(u);
        }
        Ok(graph)
    }

    /// The 1-skeleton of a complex as a graph.
    pub fn one_skeleton(complex: &SimplicialComplex) -> Self {
        let edges = complex.level(1).map(|e| (e.vertices()[0], e.vertices()[1]));
        Self::new(complex.vertex_count(), edges).expect("edges of a complex are simple")
    }

    pub fn complete(vertex_count: usize) -> Self {
        let edges = (0..vertex_count).flat_map(|u| (u + 1..vertex_count).map(move |v| (u, v)));
        Self::new(vertex_count, edges).expect("complete graph is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges as `(u, v)` with `u < v`, lexicographically.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbours(&self, v: VertexId) -> &BTreeSet<VertexId> {
        &self.neighbours[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.neighbours[v].len()
    }
}

/// Maximal cliques, each sorted ascending, listed lexicographically.
///
/// Bron–Kerbosch with Tomita pivoting. Isolated vertices are singleton cliques.
pub fn maximal_cliques(graph: &Graph) -> Vec<Vec<VertexId>> {
    let mut cliques = Vec::new();
    let candidates: BTreeSet<VertexId> = (0..graph.vertex_count()).collect();
    expand(
        graph,
        &mut Vec::new(),
        candidates,
        BTreeSet::new(),
        &mut cliques,
    );
    for clique in &mut cliques {
        clique.sort_unstable();
    }
    cliques.sort();
    cliques
}

fn expand(
    graph: &Graph,
    current: &mut Vec<VertexId>,
    mut candidates: BTreeSet<VertexId>,
    mut excluded: BTreeSet<VertexId>,
    out: &mut Vec<Vec<VertexId>>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() && !current.is_empty() {
            out.push(current.clone());
        }
        return;
    }
    let pivot = candidates
        .iter()
        .chain(&excluded)
        .copied()
        .max_by_key(|&u| candidates.intersection(graph.neighbours(u)).count())
        .expect("candidates is non-empty");
    let branch: Vec<VertexId> = candidates
        .difference(graph.neighbours(pivot))
        .copied()
        .collect();
    for v in branch {
        let nbrs = graph.neighbours(v);
        current.push(v);
        expand(
            graph,
            current,
            candidates.intersection(nbrs).copied().collect(),
            excluded.intersection(nbrs).copied().collect(),
            out,
        );
        current.pop();
        candidates.remove(&v);
        excluded.insert(v);
    }
}

/// The clique complex of `graph`, truncated at dimension `max_dim`.
pub fn clique_complex(graph: &Graph, max_dim: usize) -> Result<SimplicialComplex> {
    if max_dim < 1 {
        return Err(Error::InvalidMaxDim {
            min: 1,
            got: max_dim,
        });
    }
    let mut complex = SimplicialComplex::new(graph.vertex_count());
    for clique in maximal_cliques(graph) {
        let clique = Simplex::from_sorted(clique);
        if clique.dim() <= max_dim {
            complex.insert_with_closure(clique)?;
        } else {
            for face in clique.faces_of_dim(max_dim) {
                complex.insert_with_closure(face)?;
            }
        }
    }
    Ok(complex)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[VertexId]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn graph_rejects_loops_and_repeats() {
        assert_eq!(Graph::new(2, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(
            Graph::new(2, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange {
                vertex: 2,
                vertex_count: 2
            })
        );
    }

    #[test]
    fn triangle_graph() {
        let g = Graph::complete(3);
        let c = clique_complex(&g, 2).unwrap();
        assert_eq!(
            c,
            SimplicialComplex::from_simplices(3, [s(&[0, 1, 2])]).unwrap()
        );
    }

    #[test]
    fn path_graph_has_no_triangle() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let c = clique_complex(&g, 2).unwrap();
        assert_eq!((c.count(1), c.count(2)), (2, 0));
    }

    #[test]
    fn k4_is_capped_at_dimension_two() {
        let c = clique_complex(&Graph::complete(4), 2).unwrap();
        assert_eq!(
            (c.count(0), c.count(1), c.count(2), c.count(3)),
            (4, 6, 4, 0)
        );
        let full = clique_complex(&Graph::complete(4), 3).unwrap();
        assert_eq!(full.facets(), &[s(&[0, 1, 2, 3])]);
    }

    #[test]
    fn isolated_vertices_are_kept() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(maximal_cliques(&g), vec![vec![0, 1], vec![2]]);
        assert_eq!(clique_complex(&g, 1).unwrap().count(0), 3);
        assert_eq!(
            clique_complex(&g, 0),
            Err(Error::InvalidMaxDim { min: 1, got: 0 })
        );
    }

    #[test]
    fn one_skeleton_round_trip() {
        let g = Graph::new(5, [(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let c = clique_complex(&g, 3).unwrap();
        assert_eq!(Graph::one_skeleton(&c), g);
    }
}
