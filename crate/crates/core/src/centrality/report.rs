use std::cmp::Ordering;

use serde::Serialize;

use crate::complex::{Simplex, SimplicialComplex};
use crate::concentration::ConcentrationAssignment;
use crate::error::Result;
use crate::rational::Rational;

use super::{
    adjacency_matrices, closeness, combined_degree, connected_components, farness, harmonic,
    shortest_distances, simplicial_degree, view_weighted_degree, Direction,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityRow {
    pub simplex: Simplex,
    pub degree: usize,
    #[serde(serialize_with = "rational_str")]
    pub weighted_degree: Rational,
    pub combined_degree: f64,
    pub closeness: f64,
    pub harmonic: f64,
    pub component: usize,
    pub farness: f64,
}

fn rational_str<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Simplex,
    Degree,
    WeightedDegree,
    CombinedDegree,
    Closeness,
    Harmonic,
    Component,
    Farness,
}

/// Per-simplex centralities at one level and one `α`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CentralityReport {
    pub q: usize,
    pub alpha: f64,
    #[serde(skip)]
    pub direction: Direction,
    pub rows: Vec<CentralityRow>,
}

impl CentralityReport {
    /// `α` must lie in `[0, 1]`. Rows come out in lexicographic simplex order.
    pub fn compute(
        complex: &SimplicialComplex,
        assignment: &ConcentrationAssignment,
        q: usize,
        alpha: f64,
        direction: Direction,
    ) -> Result<Self> {
        let view = adjacency_matrices(complex, assignment, q)?;
        let table = shortest_distances(&view, alpha)?;
        let components = connected_components(&view);
        let rows = view
            .simplices()
            .iter()
            .enumerate()
            .map(|(i, simplex)| {
                Ok(CentralityRow {
                    simplex: simplex.clone(),
                    degree: simplicial_degree(&view, i),
                    weighted_degree: view_weighted_degree(&view, i),
                    combined_degree: combined_degree(&view, assignment, i, alpha)?,
                    closeness: closeness(&table, &components, i, direction),
                    harmonic: harmonic(&table, i, direction),
                    component: components.id(i),
                    farness: farness(&table, &components, i, direction),
                })
            })
            .collect::<Result<_>>()?;
        Ok(CentralityReport {
            q,
            alpha,
            direction,
            rows,
        })
    }

    pub fn row(&self, simplex: &Simplex) -> Option<&CentralityRow> {
        self.rows.iter().find(|r| &r.simplex == simplex)
    }

    /// Sorts by `column`, breaking ties by simplex in ascending order.
    pub fn sort_by(&mut self, column: Column, descending: bool) {
        self.rows.sort_by(|a, b| {
            let primary = compare(a, b, column);
            let primary = if descending {
                primary.reverse()
            } else {
                primary
            };
            primary.then_with(|| a.simplex.cmp(&b.simplex))
        });
    }
}

fn compare(a: &CentralityRow, b: &CentralityRow, column: Column) -> Ordering {
    match column {
        Column::Simplex => a.simplex.cmp(&b.simplex),
        Column::Degree => a.degree.cmp(&b.degree),
        Column::WeightedDegree => a.weighted_degree.cmp(&b.weighted_degree),
        Column::CombinedDegree => a.combined_degree.total_cmp(&b.combined_degree),
        Column::Closeness => a.closeness.total_cmp(&b.closeness),
        Column::Harmonic => a.harmonic.total_cmp(&b.harmonic),
        Column::Component => a.component.cmp(&b.component),
        Column::Farness => a.farness.total_cmp(&b.farness),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::tests::k4;
    use crate::rational::{from_int, ratio};

    fn s(v: &[usize]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn k4_report() {
        let (c, a) = k4();
        let report = CentralityReport::compute(&c, &a, 1, 1.0, Direction::Outgoing).unwrap();
        let row = report.row(&s(&[0, 3])).unwrap();
        assert_eq!(row.degree, 4);
        assert_eq!(row.weighted_degree, from_int(32));
        assert_eq!(row.combined_degree, 32.0);
        assert!((row.closeness - 20.0 / 27.0).abs() < 1e-12);
        assert_eq!(
            report.row(&s(&[0, 1])).unwrap().weighted_degree,
            ratio(80, 3)
        );
        assert!(CentralityReport::compute(&c, &a, 1, 2.0, Direction::Outgoing).is_err());
    }

    #[test]
    fn sorting_breaks_ties_by_simplex() {
        let (c, a) = k4();
        let mut report = CentralityReport::compute(&c, &a, 1, 0.0, Direction::Outgoing).unwrap();
        report.sort_by(Column::Degree, true);
        let order: Vec<_> = report.rows.iter().map(|r| r.simplex.clone()).collect();
        assert_eq!(
            order,
            vec![
                s(&[0, 3]),
                s(&[1, 3]),
                s(&[2, 3]),
                s(&[0, 1]),
                s(&[0, 2]),
                s(&[1, 2])
            ]
        );
    }
}
