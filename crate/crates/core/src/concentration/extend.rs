use num_traits::Zero;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::rational::Rational;

use super::{
    validate_scheme, ConcentrationAssignment, ConcentrationMap, ContributionScheme, LevelFractions,
};

/// `n^σ_τ = a_q(τ, σ) · a(τ)`: the part of `τ`'s weight routed to `σ`.
pub fn contribution_number(
    fractions: &LevelFractions,
    tau: &Simplex,
    sigma: &Simplex,
    assignment: &ConcentrationAssignment,
) -> Result<Rational> {
    let weight = assignment.weight(tau)?;
    Ok(fractions.get(tau, sigma) * weight)
}

/// Weights on `S_q` from the weights on `S_{q-1}`:
/// `a(σ) = Σ_{τ ∈ B(σ)} a_q(τ, σ) · a(τ)`.
///
/// Only boundary faces can contribute, since a valid scheme vanishes off the
/// incidence relation. The result is in lexicographic order of `S_q`.
pub fn extend_one_level(
    complex: &SimplicialComplex,
    assignment: &ConcentrationAssignment,
    fractions: &LevelFractions,
) -> Result<Vec<(Simplex, Rational)>> {
    let q = fractions.coface_dim();
    if q == 0 || fractions.face_dim() + 1 != q {
        return Err(Error::InvalidLevel(q));
    }
    validate_scheme(fractions, complex).into_result()?;
    complex
        .level(q)
        .map(|sigma| {
            let weight = sigma
                .boundary()?
                .iter()
                .try_fold(Rational::zero(), |acc, tau| {
                    Ok::<_, Error>(acc + contribution_number(fractions, tau, sigma, assignment)?)
                })?;
            Ok((sigma.clone(), weight))
        })
        .collect()
}

/// Extends vertex concentrations to every simplex of `complex`, level by
/// level, using `scheme` at each level.
///
/// Every active vertex must have a concentration.
pub fn extend_full(
    complex: &SimplicialComplex,
    concentrations: &ConcentrationMap,
    scheme: &ContributionScheme,
) -> Result<ConcentrationAssignment> {
    let mut assignment =
        ConcentrationAssignment::from_concentrations(complex, concentrations, scheme.kind())?;
    for q in 1..=complex.dim().unwrap_or(0) {
        let fractions = scheme.at_level(complex, q);
        for (sigma, weight) in extend_one_level(complex, &assignment, &fractions)? {
            assignment.insert(sigma, weight);
        }
    }
    Ok(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{Graph, VertexId};
    use crate::concentration::{uniform_fractions, SchemeTable};
    use crate::rational::{from_int, ratio};

    fn s(v: &[VertexId]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    fn conc(values: &[i64]) -> ConcentrationMap {
        ConcentrationMap::new(values.iter().enumerate().map(|(v, &c)| (v, from_int(c)))).unwrap()
    }

    fn triangle() -> SimplicialComplex {
        SimplicialComplex::from_simplices(3, [s(&[0, 1, 2])]).unwrap()
    }

    #[test]
    fn triangle_edges_and_face() {
        let a = extend_full(&triangle(), &conc(&[1, 2, 3]), &ContributionScheme::Uniform).unwrap();
        assert_eq!(a.get(&s(&[0, 1])), Some(&ratio(3, 2)));
        assert_eq!(a.get(&s(&[0, 2])), Some(&ratio(2, 1)));
        assert_eq!(a.get(&s(&[1, 2])), Some(&ratio(5, 2)));
        assert_eq!(a.get(&s(&[0, 1, 2])), Some(&ratio(6, 1)));
    }

    #[test]
    fn k4_skeleton_then_admitted_triangles() {
        let skeleton = crate::complex::clique_complex(&Graph::complete(4), 1).unwrap();
        let a = extend_full(
            &skeleton,
            &conc(&[1, 1, 1, 9]),
            &ContributionScheme::Uniform,
        )
        .unwrap();
        for e in [[0, 1], [0, 2], [1, 2]] {
            assert_eq!(a.get(&s(&e)), Some(&ratio(2, 3)));
        }
        for e in [[0, 3], [1, 3], [2, 3]] {
            assert_eq!(a.get(&s(&e)), Some(&ratio(10, 3)));
        }

        let mut admitted = skeleton.clone();
        for t in [[0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            admitted.insert_with_closure(s(&t)).unwrap();
        }
        let level2 = extend_one_level(&admitted, &a, &uniform_fractions(&admitted, 2)).unwrap();
        assert_eq!(level2.len(), 3);
        assert!(level2.iter().all(|(_, w)| *w == from_int(4)));
    }

    #[test]
    fn contribution_numbers() {
        let k4 =
            SimplicialComplex::from_simplices(4, [s(&[0, 1, 3]), s(&[0, 2, 3]), s(&[1, 2, 3])])
                .unwrap();
        let a = extend_full(&k4, &conc(&[1, 1, 1, 9]), &ContributionScheme::Uniform).unwrap();
        let a2 = uniform_fractions(&k4, 2);
        assert_eq!(a.get(&s(&[0, 3])), Some(&ratio(10, 3)));
        assert_eq!(
            contribution_number(&a2, &s(&[0, 3]), &s(&[0, 1, 3]), &a),
            Ok(ratio(5, 3))
        );
        // A facet routes nothing anywhere.
        assert_eq!(
            contribution_number(&a2, &s(&[0, 1, 3]), &s(&[0, 1, 3]), &a),
            Ok(ratio(0, 1))
        );

        let edge = SimplicialComplex::from_simplices(2, [s(&[0, 1])]).unwrap();
        let a = extend_full(&edge, &conc(&[1, 4]), &ContributionScheme::Uniform).unwrap();
        let a1 = uniform_fractions(&edge, 1);
        assert_eq!(
            contribution_number(&a1, &s(&[0]), &s(&[0, 1]), &a),
            Ok(from_int(1))
        );
        assert_eq!(a.get(&s(&[0, 1])), Some(&from_int(5)));
    }

    #[test]
    fn missing_weight_is_reported() {
        let edge = SimplicialComplex::from_simplices(2, [s(&[0, 1])]).unwrap();
        let empty = ConcentrationAssignment::default();
        assert_eq!(
            extend_one_level(&edge, &empty, &uniform_fractions(&edge, 1)),
            Err(Error::WeightNotAssigned(s(&[0])))
        );
    }

    #[test]
    fn missing_concentration_is_an_error() {
        assert_eq!(
            extend_full(&triangle(), &conc(&[1, 2]), &ContributionScheme::Uniform),
            Err(Error::MissingConcentration(vec![2]))
        );
    }

    #[test]
    fn single_vertex() {
        let c = SimplicialComplex::from_simplices(1, [s(&[0])]).unwrap();
        let a = extend_full(&c, &conc(&[7]), &ContributionScheme::Uniform).unwrap();
        assert_eq!(a.len(), 1);
        assert_eq!(a.get(&s(&[0])), Some(&from_int(7)));
    }

    #[test]
    fn explicit_table_scheme() {
        // Path 0-1-2: vertex 1 splits 1/4 to [0,1] and 3/4 to [1,2].
        let c = SimplicialComplex::from_simplices(3, [s(&[0, 1]), s(&[1, 2])]).unwrap();
        let table = SchemeTable::new([
            (s(&[0]), s(&[0, 1]), ratio(1, 1)),
            (s(&[1]), s(&[0, 1]), ratio(1, 4)),
            (s(&[1]), s(&[1, 2]), ratio(3, 4)),
            (s(&[2]), s(&[1, 2]), ratio(1, 1)),
        ])
        .unwrap();
        let a = extend_full(
            &c,
            &conc(&[1, 4, 2]),
            &ContributionScheme::ExplicitTable(table),
        )
        .unwrap();
        assert_eq!(a.get(&s(&[0, 1])), Some(&from_int(2)));
        assert_eq!(a.get(&s(&[1, 2])), Some(&from_int(5)));
    }

    #[test]
    fn invalid_table_is_rejected_before_weighting() {
        let c = SimplicialComplex::from_simplices(2, [s(&[0, 1])]).unwrap();
        let table = SchemeTable::new([(s(&[0]), s(&[0, 1]), ratio(1, 1))]).unwrap();
        assert!(matches!(
            extend_full(
                &c,
                &conc(&[1, 1]),
                &ContributionScheme::ExplicitTable(table)
            ),
            Err(Error::SchemeInvalid { level: 1, .. })
        ));
    }
}
