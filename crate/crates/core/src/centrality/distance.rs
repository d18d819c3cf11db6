use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::complex::Simplex;
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

use super::AdjacencyView;

/// Which row of the distance table a closeness-type score reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    /// `d(σ_i, ·)`.
    #[default]
    Outgoing,
    /// `d(·, σ_i)`.
    Incoming,
}

/// All-pairs `d^α` over one adjacency view. Unreachable pairs hold `f64::INFINITY`.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceTable {
    alpha: f64,
    dist: Vec<Vec<f64>>,
}

impl DistanceTable {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    /// `d^α(σ_i, σ_j)`, or `None` when unreachable.
    pub fn get(&self, i: usize, j: usize) -> Option<f64> {
        let d = self.dist[i][j];
        d.is_finite().then_some(d)
    }

    pub fn is_reachable(&self, i: usize, j: usize) -> bool {
        self.dist[i][j].is_finite()
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.dist
    }

    fn directed(&self, i: usize, j: usize, direction: Direction) -> f64 {
        match direction {
            Direction::Outgoing => self.dist[i][j],
            Direction::Incoming => self.dist[j][i],
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::InvalidAlpha {
            alpha,
            range: "[0, inf)",
        });
    }
    Ok(())
}

fn cost_of(strength: &Rational, weight: &Rational, alpha: f64) -> f64 {
    if alpha == 0.0 {
        return 1.0;
    }
    let base = rational::to_f64(&(Rational::one() / (strength * weight)));
    if alpha == 1.0 {
        base
    } else {
        base.powf(alpha)
    }
}

/// `(1 / (w_ij · a(σ_j)))^α` for one step from `σ_i` to an adjacent `σ_j`.
pub fn step_cost(view: &AdjacencyView, i: usize, j: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let strength = view.strength(i, j);
    if strength.is_zero() {
        return Err(Error::NotAdjacent(i, j));
    }
    Ok(cost_of(&strength, view.weight(j), alpha))
}

fn cost_lists(view: &AdjacencyView, alpha: f64) -> Vec<Vec<(usize, f64)>> {
    (0..view.len())
        .map(|i| {
            view.neighbours(i)
                .map(|(j, s)| (j, cost_of(s, view.weight(j), alpha)))
                .collect()
        })
        .collect()
}

#[derive(PartialEq)]
struct Entry {
    dist: f64,
    node: usize,
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(costs: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; costs.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(Entry {
        dist: 0.0,
        node: source,
    });
    while let Some(Entry { dist: d, node }) = heap.pop() {
        if d > dist[node] {
            continue;
        }
        for &(next, c) in &costs[node] {
            let candidate = d + c;
            if candidate < dist[next] {
                dist[next] = candidate;
                heap.push(Entry {
                    dist: candidate,
                    node: next,
                });
            }
        }
    }
    dist
}

/// Directed shortest walk lengths from every source, one Dijkstra run each.
pub fn shortest_distances(view: &AdjacencyView, alpha: f64) -> Result<DistanceTable> {
    check_alpha(alpha)?;
    let costs = cost_lists(view, alpha);
    let dist = (0..view.len())
        .into_par_iter()
        .map(|s| dijkstra(&costs, s))
        .collect();
    Ok(DistanceTable { alpha, dist })
}

/// A reconstructed shortest walk: simplex indices, with the facet mediating each step.
#[derive(Debug, Clone, PartialEq)]
pub struct Walk {
    pub steps: Vec<usize>,
    pub mediators: Vec<Simplex>,
    pub length: f64,
}

/// Rebuilds one optimal walk from `i` to `j`, taking the smallest-index
/// successor that stays on an optimal walk.
pub fn shortest_walk(
    view: &AdjacencyView,
    table: &DistanceTable,
    i: usize,
    j: usize,
) -> Option<Walk> {
    let length = table.get(i, j)?;
    let costs = cost_lists(view, table.alpha);
    let on_path = |u: usize, v: usize, c: f64| {
        let via = c + table.dist[v][j];
        let target = table.dist[u][j];
        (via - target).abs() <= 1e-12 * target.abs().max(1.0)
    };
    let mut steps = vec![i];
    let mut mediators = Vec::new();
    let mut current = i;
    while current != j {
        let &(next, _) = costs[current].iter().find(|&&(v, c)| {
            table.dist[v][j].is_finite()
                && table.dist[v][j] < table.dist[current][j]
                && on_path(current, v, c)
        })?;
        mediators.push(view.mediator(current, next)?.clone());
        steps.push(next);
        current = next;
    }
    Some(Walk {
        steps,
        mediators,
        length,
    })
}

/// Connected components of the undirected adjacency, numbered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    ids: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl Components {
    pub fn id(&self, i: usize) -> usize {
        self.ids[i]
    }

    pub fn members(&self, id: usize) -> &[usize] {
        &self.members[id]
    }

    pub fn count(&self) -> usize {
        self.members.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.members.iter().map(Vec::as_slice)
    }
}

pub fn connected_components(view: &AdjacencyView) -> Components {
    let n = view.len();
    let mut ids = vec![usize::MAX; n];
    let mut members = Vec::new();
    for start in 0..n {
        if ids[start] != usize::MAX {
            continue;
        }
        let id = members.len();
        let mut component = vec![start];
        ids[start] = id;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for (v, _) in view.neighbours(u) {
                if ids[v] == usize::MAX {
                    ids[v] = id;
                    component.push(v);
                    stack.push(v);
                }
            }
        }
        component.sort_unstable();
        members.push(component);
    }
    Components { ids, members }
}

/// `F(σ_i)`: summed distances to the rest of the component.
pub fn farness(
    table: &DistanceTable,
    components: &Components,
    i: usize,
    direction: Direction,
) -> f64 {
    components
        .members(components.id(i))
        .iter()
        .filter(|&&j| j != i)
        .map(|&j| table.directed(i, j, direction))
        .sum()
}

/// `CC(σ_i) = 1 / F(σ_i)`; zero for a singleton component.
pub fn closeness(
    table: &DistanceTable,
    components: &Components,
    i: usize,
    direction: Direction,
) -> f64 {
    let f = farness(table, components, i, direction);
    if f > 0.0 {
        1.0 / f
    } else {
        0.0
    }
}

/// `HC(σ_i) = Σ_{j≠i} 1 / d`, with unreachable pairs contributing nothing.
pub fn harmonic(table: &DistanceTable, i: usize, direction: Direction) -> f64 {
    (0..table.len())
        .filter(|&j| j != i)
        .map(|j| table.directed(i, j, direction))
        .filter(|d| d.is_finite() && *d > 0.0)
        .map(|d| 1.0 / d)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::adjacency_matrices;
    use crate::centrality::tests::k4;
    use crate::complex::{SimplicialComplex, VertexId};
    use crate::concentration::{extend_full, ConcentrationMap, ContributionScheme};
    use crate::rational::from_int;

    fn s(v: &[VertexId]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs().max(1.0)
    }

    fn k4_view() -> AdjacencyView {
        let (c, a) = k4();
        adjacency_matrices(&c, &a, 1).unwrap()
    }

    #[test]
    fn asymmetric_steps() {
        let view = k4_view();
        let (i01, i03) = (
            view.index_of(&s(&[0, 1])).unwrap(),
            view.index_of(&s(&[0, 3])).unwrap(),
        );
        assert!(close(step_cost(&view, i01, i03, 1.0).unwrap(), 3.0 / 40.0));
        assert!(close(step_cost(&view, i03, i01, 1.0).unwrap(), 3.0 / 8.0));
        assert_eq!(step_cost(&view, i03, i01, 0.0).unwrap(), 1.0);
        let i12 = view.index_of(&s(&[1, 2])).unwrap();
        assert_eq!(
            step_cost(&view, i03, i12, 1.0),
            Err(Error::NotAdjacent(i03, i12))
        );
        assert!(step_cost(&view, i01, i03, -1.0).is_err());
    }

    #[test]
    fn k4_distances_and_centralities() {
        let view = k4_view();
        let idx = |v: &[VertexId]| view.index_of(&s(v)).unwrap();
        let table = shortest_distances(&view, 1.0).unwrap();
        assert!(close(
            table.get(idx(&[0, 1]), idx(&[0, 3])).unwrap(),
            3.0 / 40.0
        ));
        assert!(close(
            table.get(idx(&[0, 3]), idx(&[0, 1])).unwrap(),
            3.0 / 8.0
        ));
        assert!(close(
            table.get(idx(&[0, 1]), idx(&[0, 2])).unwrap(),
            9.0 / 20.0
        ));

        let comps = connected_components(&view);
        assert_eq!(comps.count(), 1);
        let i03 = idx(&[0, 3]);
        assert!(close(
            farness(&table, &comps, i03, Direction::Outgoing),
            27.0 / 20.0
        ));
        assert!(close(
            closeness(&table, &comps, i03, Direction::Outgoing),
            20.0 / 27.0
        ));
        let hc = 8.0 / 3.0 + 8.0 / 3.0 + 20.0 / 9.0 + 40.0 / 3.0 + 40.0 / 3.0;
        assert!(close(harmonic(&table, i03, Direction::Outgoing), hc));
        assert!(!close(
            closeness(&table, &comps, i03, Direction::Incoming),
            closeness(&table, &comps, i03, Direction::Outgoing)
        ));
    }

    #[test]
    fn hop_counts_at_alpha_zero() {
        let view = k4_view();
        let table = shortest_distances(&view, 0.0).unwrap();
        let idx = |v: &[VertexId]| view.index_of(&s(v)).unwrap();
        assert_eq!(table.get(idx(&[0, 1]), idx(&[0, 3])), Some(1.0));
        assert_eq!(table.get(idx(&[0, 1]), idx(&[0, 2])), Some(2.0));
        assert_eq!(table.get(idx(&[0, 3]), idx(&[0, 3])), Some(0.0));
    }

    #[test]
    fn walk_reconstruction() {
        let view = k4_view();
        let idx = |v: &[VertexId]| view.index_of(&s(v)).unwrap();
        let table = shortest_distances(&view, 1.0).unwrap();
        let walk = shortest_walk(&view, &table, idx(&[0, 1]), idx(&[0, 2])).unwrap();
        assert_eq!(walk.steps, vec![idx(&[0, 1]), idx(&[0, 3]), idx(&[0, 2])]);
        assert_eq!(walk.mediators, vec![s(&[0, 1, 3]), s(&[0, 2, 3])]);
        assert!(close(walk.length, 9.0 / 20.0));
    }

    #[test]
    fn disjoint_triangles_split() {
        let c = SimplicialComplex::from_simplices(6, [s(&[0, 1, 2]), s(&[3, 4, 5])]).unwrap();
        let m = ConcentrationMap::new((0..6).map(|v| (v, from_int(1)))).unwrap();
        let a = extend_full(&c, &m, &ContributionScheme::Uniform).unwrap();
        let view = adjacency_matrices(&c, &a, 1).unwrap();
        let comps = connected_components(&view);
        assert_eq!(comps.count(), 2);
        let table = shortest_distances(&view, 1.0).unwrap();
        let (i, j) = (
            view.index_of(&s(&[0, 1])).unwrap(),
            view.index_of(&s(&[3, 4])).unwrap(),
        );
        assert!(!table.is_reachable(i, j));
        assert!(!table.is_reachable(j, i));
        assert!(shortest_walk(&view, &table, i, j).is_none());
    }

    #[test]
    fn two_simplex_component() {
        // A single edge at q=0: each vertex is at distance 1/(a(e)·a(other)).
        let c = SimplicialComplex::from_simplices(2, [s(&[0, 1])]).unwrap();
        let m = ConcentrationMap::new([(0, from_int(1)), (1, from_int(1))]).unwrap();
        let a = extend_full(&c, &m, &ContributionScheme::Uniform).unwrap();
        let view = adjacency_matrices(&c, &a, 0).unwrap();
        let table = shortest_distances(&view, 1.0).unwrap();
        let comps = connected_components(&view);
        for i in 0..2 {
            assert!(close(
                closeness(&table, &comps, i, Direction::Outgoing),
                2.0
            ));
            assert!(close(harmonic(&table, i, Direction::Outgoing), 2.0));
        }
    }

    #[test]
    fn isolated_simplices() {
        let (c, a) = k4();
        let view = adjacency_matrices(&c, &a, 2).unwrap();
        let comps = connected_components(&view);
        assert_eq!(comps.count(), 3);
        let table = shortest_distances(&view, 0.5).unwrap();
        for i in 0..3 {
            assert_eq!(closeness(&table, &comps, i, Direction::Outgoing), 0.0);
            assert_eq!(harmonic(&table, i, Direction::Outgoing), 0.0);
        }
    }
}
