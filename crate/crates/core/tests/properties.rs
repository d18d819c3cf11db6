use metaplex::centrality::{
    adjacency_matrices, combined_degree, combined_degree_exact, connected_components,
    shortest_distances, simplicial_degree, weighted_degree, CentralityReport, Direction,
};
use metaplex::concentration::{
    compose_schemes, extend_full, extend_one_level, uniform_fractions, validate_all,
    validate_composition, ConcentrationMap, ContributionScheme, LevelFractions,
};
use metaplex::inference::{infer_metaplex, InferenceConfig, Metaplex};
use metaplex::rational::ratio;
use metaplex::{Graph, Rational, Simplex, SimplicialComplex};
use num_traits::Zero;
use proptest::prelude::*;

fn graph_and_conc() -> impl Strategy<Value = (Graph, ConcentrationMap)> {
    (2usize..=7).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            Just(n),
            prop::collection::vec(prop::bool::weighted(0.6), pairs),
            prop::collection::vec((1i64..=30, 1i64..=8), n),
        )
            .prop_map(|(n, mask, conc)| {
                let all = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                let edges: Vec<_> = all
                    .zip(mask)
                    .filter(|(_, keep)| *keep)
                    .map(|(e, _)| e)
                    .collect();
                let graph = Graph::new(n, edges).unwrap();
                let map = ConcentrationMap::new(
                    conc.into_iter()
                        .enumerate()
                        .map(|(v, (p, q))| (v, ratio(p, q))),
                )
                .unwrap();
                (graph, map)
            })
    })
}

fn metaplex() -> impl Strategy<Value = Metaplex> {
    graph_and_conc().prop_map(|(g, c)| infer_metaplex(&g, &c, &InferenceConfig::default()).unwrap())
}

fn random_complex() -> impl Strategy<Value = (usize, Vec<Simplex>)> {
    (1usize..=6).prop_flat_map(|n| {
        let simplex = prop::collection::btree_set(0..n, 1..=n.min(4))
            .prop_map(|vs| Simplex::new(vs).unwrap());
        (Just(n), prop::collection::vec(simplex, 0..6))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn closure_is_closed_and_idempotent((n, simplices) in random_complex()) {
        let c = SimplicialComplex::from_simplices(n, simplices.clone()).unwrap();
        prop_assert!(c.validate_closure().is_closed());
        let again = SimplicialComplex::from_simplices(n, c.simplices().cloned()).unwrap();
        prop_assert_eq!(&again, &c);
        let from_facets = SimplicialComplex::from_simplices(n, c.facets().iter().cloned()).unwrap();
        prop_assert_eq!(&from_facets, &c);
        for s in &simplices {
            prop_assert!(c.facets().iter().any(|f| s.is_face_of(f)));
        }
    }

    #[test]
    fn upper_degree_counts_cofaces((n, simplices) in random_complex()) {
        let c = SimplicialComplex::from_simplices(n, simplices).unwrap();
        for s in c.simplices() {
            let direct = c.level(s.dim() + 1).filter(|t| s.is_face_of(t)).count();
            prop_assert_eq!(c.upper_degree(s).unwrap(), direct);
            prop_assert_eq!(c.is_facet(s), direct == 0);
        }
    }

    #[test]
    fn pipeline_conserves_exactly(m in metaplex()) {
        m.assignment.check_positive_cover(&m.complex).unwrap();
        for check in validate_all(&m.assignment, &m.complex).unwrap() {
            prop_assert!(check.holds(), "{}", check);
        }
    }

    #[test]
    fn extension_matches_full_weights(m in metaplex()) {
        let conc = ConcentrationMap::new(
            m.complex.level(0).map(|v| (v.vertices()[0], m.assignment.get(v).unwrap().clone())),
        )
        .unwrap();
        let again = extend_full(&m.complex, &conc, &ContributionScheme::Uniform).unwrap();
        prop_assert_eq!(again, m.assignment);
    }

    #[test]
    fn admitted_simplices_beat_the_threshold(m in metaplex()) {
        for level in &m.trace.levels {
            for c in &level.candidates {
                let admitted = level.admitted.contains(&c.simplex);
                prop_assert_eq!(admitted, c.boundary_weight > level.threshold);
                prop_assert_eq!(admitted, m.complex.contains(&c.simplex));
            }
        }
    }

    #[test]
    fn composition_is_a_valid_two_step_scheme(m in metaplex()) {
        let dim = m.complex.dim().unwrap_or(0);
        for q in 1..dim {
            let lower = uniform_fractions(&m.complex, q);
            let upper = uniform_fractions(&m.complex, q + 1);
            let composed = compose_schemes(&lower, &upper, &m.complex).unwrap();
            prop_assert!(validate_composition(&composed, &lower, &m.complex).is_valid());

            for sigma in m.complex.level(q + 1) {
                let direct = m.complex.level(q - 1).fold(Rational::zero(), |acc, tau| {
                    acc + composed.get(tau, sigma) * m.assignment.get(tau).unwrap()
                });
                prop_assert_eq!(&direct, m.assignment.get(sigma).unwrap());
            }
            let two_step = extend_one_level(&m.complex, &m.assignment, &upper).unwrap();
            for (sigma, w) in two_step {
                prop_assert_eq!(&w, m.assignment.get(&sigma).unwrap());
            }
        }
    }

    #[test]
    fn adjacency_is_symmetric_with_positive_strengths(m in metaplex()) {
        for q in 0..=m.complex.dim().unwrap_or(0) {
            let view = adjacency_matrices(&m.complex, &m.assignment, q).unwrap();
            let binary = view.binary_matrix();
            let strengths = view.strength_matrix();
            for i in 0..view.len() {
                prop_assert_eq!(binary[i][i], 0);
                for j in 0..view.len() {
                    prop_assert_eq!(binary[i][j], binary[j][i]);
                    prop_assert_eq!(&strengths[i][j], &strengths[j][i]);
                    prop_assert_eq!(strengths[i][j] > Rational::zero(), binary[i][j] == 1);
                    if let Some(g) = view.mediator(i, j) {
                        let union = view.simplices()[i].union(&view.simplices()[j]);
                        prop_assert!(union.is_face_of(g));
                        prop_assert_eq!(m.assignment.get(g).unwrap(), &strengths[i][j]);
                    }
                }
            }
        }
    }

    #[test]
    fn degree_endpoints_are_exact(m in metaplex(), alpha in 0.0f64..=1.0) {
        for q in 0..=m.complex.dim().unwrap_or(0) {
            let view = adjacency_matrices(&m.complex, &m.assignment, q).unwrap();
            for i in 0..view.len() {
                let k = Rational::from_integer(simplicial_degree(&view, i).into());
                let d = weighted_degree(&view, &m.assignment, i).unwrap();
                prop_assert_eq!(combined_degree_exact(&view, &m.assignment, i, 0.0).unwrap(), Some(k));
                prop_assert_eq!(combined_degree_exact(&view, &m.assignment, i, 1.0).unwrap(), Some(d));
                let mid = combined_degree(&view, &m.assignment, i, alpha).unwrap();
                prop_assert!(mid.is_finite() && mid >= 0.0);
            }
        }
    }

    #[test]
    fn distances_form_a_directed_metric(m in metaplex(), alpha in prop::sample::select(vec![0.0, 0.5, 1.0, 1.7])) {
        for q in 0..=m.complex.dim().unwrap_or(0) {
            let view = adjacency_matrices(&m.complex, &m.assignment, q).unwrap();
            let table = shortest_distances(&view, alpha).unwrap();
            let comps = connected_components(&view);
            let n = view.len();
            for i in 0..n {
                prop_assert_eq!(table.get(i, i), Some(0.0));
                for j in 0..n {
                    prop_assert_eq!(table.is_reachable(i, j), table.is_reachable(j, i));
                    prop_assert_eq!(table.is_reachable(i, j), comps.id(i) == comps.id(j));
                    if i != j {
                        if let Some(d) = table.get(i, j) {
                            prop_assert!(d > 0.0);
                        }
                    }
                    for k in 0..n {
                        if let (Some(a), Some(b), Some(c)) = (table.get(i, j), table.get(j, k), table.get(i, k)) {
                            prop_assert!(c <= a + b + 1e-9 * (a + b).max(1.0));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn heavier_facets_never_lengthen_walks(m in metaplex(), pick in any::<prop::sample::Index>(), bump in 1i64..=5) {
        let facets: Vec<Simplex> = m.complex.facets().iter().filter(|f| f.dim() >= 1).cloned().collect();
        prop_assume!(!facets.is_empty());
        let target = pick.get(&facets).clone();
        let mut heavier = m.assignment.clone();
        let w = heavier.get(&target).unwrap().clone();
        heavier.insert(target, w + Rational::from_integer(bump.into()));
        for q in 0..m.complex.dim().unwrap() {
            let before = shortest_distances(&adjacency_matrices(&m.complex, &m.assignment, q).unwrap(), 1.0).unwrap();
            let after = shortest_distances(&adjacency_matrices(&m.complex, &heavier, q).unwrap(), 1.0).unwrap();
            for i in 0..before.len() {
                for j in 0..before.len() {
                    if let (Some(b), Some(a)) = (before.get(i, j), after.get(i, j)) {
                        prop_assert!(a <= b * (1.0 + 1e-12));
                    }
                }
            }
        }
    }

    #[test]
    fn centrality_values_are_finite(m in metaplex(), alpha in 0.0f64..=1.0, incoming in any::<bool>()) {
        let direction = if incoming { Direction::Incoming } else { Direction::Outgoing };
        for q in 0..=m.complex.dim().unwrap_or(0) {
            let report = CentralityReport::compute(&m.complex, &m.assignment, q, alpha, direction).unwrap();
            for row in &report.rows {
                for x in [row.combined_degree, row.closeness, row.harmonic, row.farness] {
                    prop_assert!(x.is_finite() && x >= 0.0);
                }
            }
        }
    }
}

#[test]
fn composed_fractions_on_k4() {
    let conc = ConcentrationMap::new(
        [1, 1, 1, 9]
            .iter()
            .enumerate()
            .map(|(v, &c)| (v, ratio(c, 1))),
    )
    .unwrap();
    let m = infer_metaplex(&Graph::complete(4), &conc, &InferenceConfig::default()).unwrap();
    let composed: LevelFractions = compose_schemes(
        &uniform_fractions(&m.complex, 1),
        &uniform_fractions(&m.complex, 2),
        &m.complex,
    )
    .unwrap();
    let v3 = Simplex::vertex(3);
    let total: Rational = m.complex.level(2).map(|t| composed.get(&v3, t)).sum();
    assert_eq!(total, ratio(1, 1));
}
