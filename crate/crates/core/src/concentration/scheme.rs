use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Uniform,
    ExplicitTable,
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeKind::Uniform => "uniform",
            SchemeKind::ExplicitTable => "table",
        })
    }
}

/// How a simplex's weight is split among its cofaces one dimension up.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum ContributionScheme {
    /// Each of the `k` cofaces receives `1/k`.
    #[default]
    Uniform,
    ExplicitTable(SchemeTable),
}

/// Explicit fractions for `(face, coface)` pairs.
///
/// Only codimension-one incidences are accepted; anything else is rejected
/// when the table is built.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchemeTable {
    entries: BTreeMap<(Simplex, Simplex), Rational>,
}

impl SchemeTable {
    pub fn new(entries: impl IntoIterator<Item = (Simplex, Simplex, Rational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (tau, sigma, fraction) in entries {
            if tau.dim() + 1 != sigma.dim() || !tau.is_face_of(&sigma) {
                return Err(Error::NotAnIncidence { tau, sigma });
            }
            if map.contains_key(&(tau.clone(), sigma.clone())) {
                return Err(Error::DuplicateSchemeEntry { tau, sigma });
            }
            map.insert((tau, sigma), fraction);
        }
        Ok(Self { entries: map })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &Simplex, &Rational)> {
        self.entries.iter().map(|((t, s), f)| (t, s, f))
    }
}

impl ContributionScheme {
    pub fn kind(&self) -> SchemeKind {
        match self {
            ContributionScheme::Uniform => SchemeKind::Uniform,
            ContributionScheme::ExplicitTable(_) => SchemeKind::ExplicitTable,
        }
    }

    /// Materialises the fractions `a_q` on `S_{q-1} × S_q` of `complex`.
    ///
    /// Table entries whose simplices are not in the complex are skipped, so a
    /// table may describe a larger complex than the one it is applied to.
    pub fn at_level(&self, complex: &SimplicialComplex, q: usize) -> LevelFractions {
        match self {
            ContributionScheme::Uniform => uniform_fractions(complex, q),
            ContributionScheme::ExplicitTable(table) => LevelFractions {
                face_dim: q - 1,
                coface_dim: q,
                entries: table
                    .entries
                    .iter()
                    .filter(|((tau, sigma), _)| {
                        sigma.dim() == q && complex.contains(tau) && complex.contains(sigma)
                    })
                    .map(|(k, v)| (k.clone(), v.clone()))
                    .collect(),
            },
        }
    }

    pub fn validate(&self, complex: &SimplicialComplex, q: usize) -> SchemeReport {
        validate_scheme(&self.at_level(complex, q), complex)
    }
}

/// Fractions from `face_dim`-simplices to `coface_dim`-simplices.
///
/// A contribution scheme at level `q` has `face_dim = q - 1` and
/// `coface_dim = q`; a composition of two consecutive levels spans two
/// dimensions. Absent pairs read as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelFractions {
    face_dim: usize,
    coface_dim: usize,
    entries: BTreeMap<(Simplex, Simplex), Rational>,
}

impl LevelFractions {
    /// Raw fractions, unchecked. See [`validate_scheme`].
    pub fn from_entries(
        face_dim: usize,
        coface_dim: usize,
        entries: impl IntoIterator<Item = (Simplex, Simplex, Rational)>,
    ) -> Self {
        Self {
            face_dim,
            coface_dim,
            entries: entries.into_iter().map(|(t, s, f)| ((t, s), f)).collect(),
        }
    }

    pub fn face_dim(&self) -> usize {
        self.face_dim
    }

    pub fn coface_dim(&self) -> usize {
        self.coface_dim
    }

    pub fn get(&self, tau: &Simplex, sigma: &Simplex) -> Rational {
        // BTreeMap lookups need an owned key tuple.
        self.entries
            .get(&(tau.clone(), sigma.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Stored entries, including explicit zeros.
    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &Simplex, &Rational)> {
        self.entries.iter().map(|((t, s), f)| (t, s, f))
    }
}

/// `1/k` from each `(q-1)`-simplex to each of its `k` cofaces in `S_q`.
pub fn uniform_fractions(complex: &SimplicialComplex, q: usize) -> LevelFractions {
    assert!(q >= 1, "contribution schemes start at level 1");
    let mut entries = BTreeMap::new();
    for tau in complex.level(q - 1) {
        let cofaces: Vec<Simplex> = complex.cofaces(tau).collect();
        if cofaces.is_empty() {
            continue;
        }
        let share = Rational::new(1.into(), cofaces.len().into());
        for sigma in cofaces {
            entries.insert((tau.clone(), sigma), share.clone());
        }
    }
    LevelFractions {
        face_dim: q - 1,
        coface_dim: q,
        entries,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemeViolation {
    /// Axiom (i): a non-zero fraction between simplices that are not incident,
    /// or that are not both in the complex at the expected dimensions.
    OffIncidence {
        tau: Simplex,
        sigma: Simplex,
        fraction: Rational,
    },
    /// Axiom (ii): an incident pair whose fraction is outside `(0, 1]`.
    OutOfRange {
        tau: Simplex,
        sigma: Simplex,
        fraction: Rational,
    },
    /// Axiom (iii): the fractions leaving `tau` do not sum to `expected`,
    /// which is one for a single-level scheme.
    RowSum {
        tau: Simplex,
        sum: Rational,
        expected: Rational,
    },
}

impl SchemeViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            SchemeViolation::OffIncidence { .. } => "i",
            SchemeViolation::OutOfRange { .. } => "ii",
            SchemeViolation::RowSum { .. } => "iii",
        }
    }
}

impl fmt::Display for SchemeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchemeViolation::OffIncidence {
                tau,
                sigma,
                fraction,
            } => {
                write!(
                    f,
                    "axiom (i): fraction {fraction} for non-incident pair ({tau}, {sigma})"
                )
            }
            SchemeViolation::OutOfRange {
                tau,
                sigma,
                fraction,
            } => {
                write!(
                    f,
                    "axiom (ii): fraction {fraction} for ({tau}, {sigma}) not in (0, 1]"
                )
            }
            SchemeViolation::RowSum { tau, sum, expected } => {
                write!(
                    f,
                    "axiom (iii): fractions leaving {tau} sum to {sum}, expected {expected}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeReport {
    pub face_dim: usize,
    pub coface_dim: usize,
    pub violations: Vec<SchemeViolation>,
}

impl SchemeReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(first) => Err(Error::SchemeInvalid {
                level: self.coface_dim,
                detail: format!("{first} ({} violation(s) in total)", self.violations.len()),
            }),
        }
    }
}

/// Checks the three contribution axioms exactly.
///
/// For a pair of dimensions `(p, r)`, with `p < r`:
/// (i) fractions vanish off the inclusion relation between `S_p` and `S_r`;
/// (ii) every included pair has a fraction in `(0, 1]`;
/// (iii) every `τ ∈ S_p` contained in some `σ ∈ S_r` sends out exactly 1.
pub fn validate_scheme(fractions: &LevelFractions, complex: &SimplicialComplex) -> SchemeReport {
    check_axioms(fractions, complex, |_| Rational::one())
}

/// Checks a composed map `a_{q+1} ∘ a_q` against the composition axioms.
///
/// Axioms (i) and (ii) are checked as for a single level. For (iii), the
/// mass leaving `τ` is compared with the part of `a_q(τ, ·)` that reaches
/// non-facet `q`-simplices, since a `q`-dimensional facet forwards nothing.
/// That target is 1 whenever no `q`-coface of `τ` is a facet.
pub fn validate_composition(
    composed: &LevelFractions,
    lower: &LevelFractions,
    complex: &SimplicialComplex,
) -> SchemeReport {
    check_axioms(composed, complex, |tau| forwarded_mass(lower, complex, tau))
}

/// `Σ a_q(τ, ρ)` over the non-facet cofaces `ρ` of `τ`.
pub fn forwarded_mass(
    lower: &LevelFractions,
    complex: &SimplicialComplex,
    tau: &Simplex,
) -> Rational {
    complex
        .cofaces(tau)
        .filter(|rho| !complex.is_facet(rho))
        .map(|rho| lower.get(tau, &rho))
        .sum()
}

fn check_axioms(
    fractions: &LevelFractions,
    complex: &SimplicialComplex,
    target: impl Fn(&Simplex) -> Rational,
) -> SchemeReport {
    let (p, r) = (fractions.face_dim, fractions.coface_dim);
    let mut violations = Vec::new();

    for (tau, sigma, fraction) in fractions.iter() {
        let in_domain = tau.dim() == p
            && sigma.dim() == r
            && complex.contains(tau)
            && complex.contains(sigma)
            && tau.is_face_of(sigma);
        if !in_domain && !fraction.is_zero() {
            violations.push(SchemeViolation::OffIncidence {
                tau: tau.clone(),
                sigma: sigma.clone(),
                fraction: fraction.clone(),
            });
        }
    }

    let mut row_sums: BTreeMap<&Simplex, Rational> = BTreeMap::new();
    for sigma in complex.level(r) {
        for tau in sigma.faces_of_dim(p) {
            let fraction = fractions.get(&tau, sigma);
            if !fraction.is_positive() || fraction > Rational::one() {
                violations.push(SchemeViolation::OutOfRange {
                    tau: tau.clone(),
                    sigma: sigma.clone(),
                    fraction: fraction.clone(),
                });
            }
            if let Some(tau) = complex.get(&tau) {
                *row_sums.entry(tau).or_insert_with(Rational::zero) += fraction;
            }
        }
    }
    for (tau, sum) in row_sums {
        let expected = target(tau);
        if sum != expected {
            violations.push(SchemeViolation::RowSum {
                tau: tau.clone(),
                sum,
                expected,
            });
        }
    }

    SchemeReport {
        face_dim: p,
        coface_dim: r,
        violations,
    }
}

/// `(a_{q+1} ∘ a_q)(τ, σ) = Σ_ρ a_{q+1}(ρ, σ) · a_q(τ, ρ)`.
///
/// Both inputs must be valid schemes on `complex` at consecutive levels.
pub fn compose_schemes(
    lower: &LevelFractions,
    upper: &LevelFractions,
    complex: &SimplicialComplex,
) -> Result<LevelFractions> {
    if upper.face_dim != lower.coface_dim {
        return Err(Error::InvalidLevel(upper.face_dim));
    }
    validate_scheme(lower, complex).into_result()?;
    validate_scheme(upper, complex).into_result()?;

    let mut by_middle: BTreeMap<&Simplex, Vec<(&Simplex, &Rational)>> = BTreeMap::new();
    for (rho, sigma, f) in upper.iter() {
        by_middle.entry(rho).or_default().push((sigma, f));
    }
    let mut entries: BTreeMap<(Simplex, Simplex), Rational> = BTreeMap::new();
    for (tau, rho, f_lower) in lower.iter() {
        for (sigma, f_upper) in by_middle.get(rho).into_iter().flatten() {
            *entries
                .entry(((*tau).clone(), (*sigma).clone()))
                .or_insert_with(Rational::zero) += f_lower * *f_upper;
        }
    }
    Ok(LevelFractions {
        face_dim: lower.face_dim,
        coface_dim: upper.coface_dim,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::VertexId;
    use crate::rational::ratio;

    fn s(v: &[VertexId]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    fn k4_admitted() -> SimplicialComplex {
        SimplicialComplex::from_simplices(4, [s(&[0, 1, 3]), s(&[0, 2, 3]), s(&[1, 2, 3])]).unwrap()
    }

    fn k4_skeleton() -> SimplicialComplex {
        crate::complex::clique_complex(&crate::complex::Graph::complete(4), 1).unwrap()
    }

    #[test]
    fn uniform_splits_evenly() {
        let k4 = k4_admitted();
        let a2 = uniform_fractions(&k4, 2);
        assert_eq!(a2.get(&s(&[0, 3]), &s(&[0, 1, 3])), ratio(1, 2));
        assert_eq!(a2.get(&s(&[0, 3]), &s(&[0, 2, 3])), ratio(1, 2));
        assert_eq!(a2.get(&s(&[0, 1]), &s(&[0, 1, 3])), ratio(1, 1));

        let a1 = uniform_fractions(&k4_skeleton(), 1);
        for sigma in [s(&[0, 1]), s(&[0, 2]), s(&[0, 3])] {
            assert_eq!(a1.get(&s(&[0]), &sigma), ratio(1, 3));
        }
    }

    #[test]
    fn facets_send_nothing() {
        let c = SimplicialComplex::from_simplices(4, [s(&[0, 1, 2]), s(&[2, 3])]).unwrap();
        let a2 = uniform_fractions(&c, 2);
        assert!(a2.iter().all(|(tau, _, _)| *tau != s(&[2, 3])));
        assert!(validate_scheme(&a2, &c).is_valid());
    }

    #[test]
    fn uniform_is_always_valid() {
        let k4 = k4_admitted();
        for q in 1..=2 {
            assert!(ContributionScheme::Uniform.validate(&k4, q).is_valid());
        }
    }

    #[test]
    fn row_sum_violation() {
        let c = SimplicialComplex::from_simplices(3, [s(&[0, 1]), s(&[0, 2])]).unwrap();
        let table = SchemeTable::new([
            (s(&[0]), s(&[0, 1]), ratio(3, 5)),
            (s(&[0]), s(&[0, 2]), ratio(3, 5)),
            (s(&[1]), s(&[0, 1]), ratio(1, 1)),
            (s(&[2]), s(&[0, 2]), ratio(1, 1)),
        ])
        .unwrap();
        let report = ContributionScheme::ExplicitTable(table).validate(&c, 1);
        assert_eq!(
            report.violations,
            vec![SchemeViolation::RowSum {
                tau: s(&[0]),
                sum: ratio(6, 5),
                expected: ratio(1, 1)
            }]
        );
    }

    #[test]
    fn off_incidence_violation() {
        let c = SimplicialComplex::from_simplices(3, [s(&[0, 1]), s(&[2])]).unwrap();
        let mut fractions = uniform_fractions(&c, 1);
        fractions.entries.insert((s(&[2]), s(&[0, 1])), ratio(1, 2));
        let report = validate_scheme(&fractions, &c);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].axiom(), "i");
    }

    #[test]
    fn missing_incidence_is_an_axiom_ii_violation() {
        let c = SimplicialComplex::from_simplices(2, [s(&[0, 1])]).unwrap();
        let table = SchemeTable::new([(s(&[0]), s(&[0, 1]), ratio(1, 1))]).unwrap();
        let report = ContributionScheme::ExplicitTable(table).validate(&c, 1);
        assert_eq!(
            report.violations,
            vec![
                SchemeViolation::OutOfRange {
                    tau: s(&[1]),
                    sigma: s(&[0, 1]),
                    fraction: ratio(0, 1)
                },
                SchemeViolation::RowSum {
                    tau: s(&[1]),
                    sum: ratio(0, 1),
                    expected: ratio(1, 1)
                },
            ]
        );
    }

    #[test]
    fn table_rejects_non_incidences_eagerly() {
        assert_eq!(
            SchemeTable::new([(s(&[2]), s(&[0, 1]), ratio(1, 2))]),
            Err(Error::NotAnIncidence {
                tau: s(&[2]),
                sigma: s(&[0, 1])
            })
        );
        assert!(SchemeTable::new([(s(&[0]), s(&[0, 1, 2]), ratio(1, 2))]).is_err());
        assert!(matches!(
            SchemeTable::new([
                (s(&[0]), s(&[0, 1]), ratio(1, 2)),
                (s(&[0]), s(&[0, 1]), ratio(1, 2))
            ]),
            Err(Error::DuplicateSchemeEntry { .. })
        ));
    }

    #[test]
    fn composition_in_k4() {
        // Full K4 closure of the admitted triangles: vertex 0 has three edges,
        // edge [0,1] one triangle, edge [0,3] two.
        let k4 = k4_admitted();
        let a1 = uniform_fractions(&k4, 1);
        let a2 = uniform_fractions(&k4, 2);
        let comp = compose_schemes(&a1, &a2, &k4).unwrap();
        assert_eq!(comp.get(&s(&[0]), &s(&[0, 1, 3])), ratio(1, 2));
        assert_eq!(comp.get(&s(&[0]), &s(&[1, 2, 3])), ratio(0, 1));
        assert!(validate_scheme(&comp, &k4).is_valid());
    }

    #[test]
    fn composition_through_a_facet_edge() {
        // Vertex 0 splits three ways, but [0,3] is a facet and forwards nothing.
        let c = SimplicialComplex::from_simplices(4, [s(&[0, 1, 2]), s(&[0, 3])]).unwrap();
        let a1 = uniform_fractions(&c, 1);
        let comp = compose_schemes(&a1, &uniform_fractions(&c, 2), &c).unwrap();
        assert_eq!(comp.get(&s(&[0]), &s(&[0, 1, 2])), ratio(2, 3));
        assert_eq!(forwarded_mass(&a1, &c, &s(&[0])), ratio(2, 3));
        assert!(validate_composition(&comp, &a1, &c).is_valid());
        let literal = validate_scheme(&comp, &c);
        assert_eq!(literal.violations.len(), 1);
        assert_eq!(literal.violations[0].axiom(), "iii");
    }

    #[test]
    fn composition_rejects_invalid_input() {
        let k4 = k4_admitted();
        let a1 = uniform_fractions(&k4, 1);
        let bad = LevelFractions::from_entries(1, 2, [(s(&[0, 1]), s(&[0, 1, 3]), ratio(1, 2))]);
        assert!(matches!(
            compose_schemes(&a1, &bad, &k4),
            Err(Error::SchemeInvalid { .. })
        ));
    }
}
