//! Vertex concentrations and their extension to every simplex.
//!
//! Weights are exact rationals throughout. A weight on `S_{q-1}` is split
//! among the `q`-cofaces by a [`ContributionScheme`]; the weight of a
//! `q`-simplex is the sum of what its boundary faces send it.

mod conservation;
mod extend;
mod scheme;

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub use conservation::{
    validate_all, validate_cumulative_decomposition, validate_facet_decomposition,
    validate_global_conservation, validate_level_conservation, ConservationCheck, Identity,
};
pub use extend::{contribution_number, extend_full, extend_one_level};
pub use scheme::{
    compose_schemes, forwarded_mass, uniform_fractions, validate_composition, validate_scheme,
    ContributionScheme, LevelFractions, SchemeKind, SchemeReport, SchemeTable, SchemeViolation,
};

/// A vertex's internal structure: a finite set of labelled elements with
/// non-negative rational weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InternalStructure {
    elements: BTreeMap<String, Rational>,
}

impl InternalStructure {
    pub fn new(elements: impl IntoIterator<Item = (String, Rational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (label, weight) in elements {
            if weight.is_negative() {
                return Err(Error::NegativeWeight { label });
            }
            if map.contains_key(&label) {
                return Err(Error::DuplicateLabel(label));
            }
            map.insert(label, weight);
        }
        if map.is_empty() {
            return Err(Error::AllZeroWeights);
        }
        Ok(Self { elements: map })
    }

    pub fn elements(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.elements.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// `μ(A)`: total weight of the listed elements. Unknown labels count zero.
    pub fn measure<'a>(&self, subset: impl IntoIterator<Item = &'a str>) -> Rational {
        subset
            .into_iter()
            .filter_map(|label| self.elements.get(label))
            .fold(Rational::zero(), |acc, w| acc + w)
    }

    /// The concentration `μ(Y)`.
    pub fn concentration(&self) -> Result<Rational> {
        let total = self
            .elements
            .values()
            .fold(Rational::zero(), |acc, w| acc + w);
        if total.is_zero() {
            return Err(Error::AllZeroWeights);
        }
        Ok(total)
    }
}

pub fn concentration_from_internal(structure: &InternalStructure) -> Result<Rational> {
    structure.concentration()
}

/// Strictly positive concentrations `a(v)` keyed by vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConcentrationMap {
    values: BTreeMap<VertexId, Rational>,
}

impl ConcentrationMap {
    pub fn new(values: impl IntoIterator<Item = (VertexId, Rational)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (vertex, value) in values {
            if !value.is_positive() {
                return Err(Error::NonPositiveConcentration {
                    vertex,
                    value: value.to_string(),
                });
            }
            map.insert(vertex, value);
        }
        Ok(Self { values: map })
    }

    pub fn from_internal(
        structures: impl IntoIterator<Item = (VertexId, InternalStructure)>,
    ) -> Result<Self> {
        let values = structures
            .into_iter()
            .map(|(v, s)| s.concentration().map(|c| (v, c)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(values)
    }

    pub fn get(&self, vertex: VertexId) -> Option<&Rational> {
        self.values.get(&vertex)
    }

    pub fn iter(&self) -> impl Iterator<Item = (VertexId, &Rational)> {
        self.values.iter().map(|(v, c)| (*v, c))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Errors with every listed vertex that has no concentration.
    pub fn check_covers(&self, vertices: impl IntoIterator<Item = VertexId>) -> Result<()> {
        let missing: Vec<VertexId> = vertices
            .into_iter()
            .filter(|v| !self.values.contains_key(v))
            .collect();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::MissingConcentration(missing))
        }
    }
}

/// The weight `a(σ)` of every simplex of a complex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConcentrationAssignment {
    weights: BTreeMap<Simplex, Rational>,
    scheme: Option<SchemeKind>,
}

impl ConcentrationAssignment {
    /// Wraps externally supplied weights (for instance, read back from disk).
    pub fn from_weights(
        weights: impl IntoIterator<Item = (Simplex, Rational)>,
        scheme: Option<SchemeKind>,
    ) -> Self {
        Self {
            weights: weights.into_iter().collect(),
            scheme,
        }
    }

    /// Vertex weights only; higher levels are added by the extension.
    pub(crate) fn from_concentrations(
        complex: &SimplicialComplex,
        concentrations: &ConcentrationMap,
        scheme: SchemeKind,
    ) -> Result<Self> {
        concentrations.check_covers(complex.active_vertices())?;
        let weights = complex
            .active_vertices()
            .map(|v| {
                (
                    Simplex::vertex(v),
                    concentrations.get(v).expect("checked").clone(),
                )
            })
            .collect();
        Ok(Self {
            weights,
            scheme: Some(scheme),
        })
    }

    pub fn scheme(&self) -> Option<SchemeKind> {
        self.scheme
    }

    pub fn get(&self, sigma: &Simplex) -> Option<&Rational> {
        self.weights.get(sigma)
    }

    pub fn weight(&self, sigma: &Simplex) -> Result<&Rational> {
        self.weights
            .get(sigma)
            .ok_or_else(|| Error::WeightNotAssigned(sigma.clone()))
    }

    /// Sets a weight, returning the previous one.
    pub fn insert(&mut self, sigma: Simplex, weight: Rational) -> Option<Rational> {
        self.weights.insert(sigma, weight)
    }

    /// All weights in canonical simplex order.
    pub fn iter(&self) -> impl Iterator<Item = (&Simplex, &Rational)> {
        self.weights.iter()
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Σ_{σ ∈ S_q} a(σ)`.
    pub fn level_sum(&self, complex: &SimplicialComplex, q: usize) -> Result<Rational> {
        self.sum_over(complex.level(q))
    }

    pub(crate) fn sum_over<'a>(
        &self,
        simplices: impl IntoIterator<Item = &'a Simplex>,
    ) -> Result<Rational> {
        simplices
            .into_iter()
            .try_fold(Rational::zero(), |acc, s| Ok(acc + self.weight(s)?))
    }

    /// Every simplex of `complex` carries a strictly positive weight.
    pub fn check_positive_cover(&self, complex: &SimplicialComplex) -> Result<()> {
        for sigma in complex.simplices() {
            if !self.weight(sigma)?.is_positive() {
                return Err(Error::NonPositiveConcentration {
                    vertex: sigma.vertices()[0],
                    value: self.weights[sigma].to_string(),
                });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{from_int, ratio};

    #[test]
    fn concentration_is_total_internal_weight() {
        let y =
            InternalStructure::new([("x".into(), ratio(1, 2)), ("y".into(), ratio(3, 2))]).unwrap();
        assert_eq!(concentration_from_internal(&y), Ok(from_int(2)));
        assert_eq!(y.measure(["x"]), ratio(1, 2));
        let single = InternalStructure::new([("only".into(), from_int(5))]).unwrap();
        assert_eq!(single.concentration(), Ok(from_int(5)));
    }

    #[test]
    fn all_zero_structure_is_rejected() {
        let zero =
            InternalStructure::new([("a".into(), from_int(0)), ("b".into(), from_int(0))]).unwrap();
        assert_eq!(zero.concentration(), Err(Error::AllZeroWeights));
        assert_eq!(
            InternalStructure::new([("a".into(), from_int(-1))]),
            Err(Error::NegativeWeight { label: "a".into() })
        );
    }

    #[test]
    fn concentration_map_checks_positivity_and_cover() {
        assert!(ConcentrationMap::new([(0, from_int(0))]).is_err());
        let map = ConcentrationMap::new([(0, from_int(1)), (1, from_int(2))]).unwrap();
        assert_eq!(
            map.check_covers([0, 1, 2, 5]),
            Err(Error::MissingConcentration(vec![2, 5]))
        );
        assert!(map.check_covers([1]).is_ok());
    }
}
