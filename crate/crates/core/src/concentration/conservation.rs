//! Exact conservation identities for an extended weight map.

use std::fmt;

use num_traits::Zero;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::rational::Rational;

use super::ConcentrationAssignment;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    /// `Σ_{S_q} a = Σ_{non-facet σ ∈ S_{q-1}} a`.
    Level,
    /// `Σ_{S_q} a + Σ_{facets of dim q-1} a = Σ_{S_{q-1}} a`.
    FacetDecomposition,
    /// `Σ_{S_q} a + Σ_{facets of dim < q} a = Σ_{S_0} a`.
    Cumulative,
    /// `Σ_{facets} a = Σ_{S_0} a`.
    Global,
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Identity::Level => "level",
            Identity::FacetDecomposition => "facet-decomposition",
            Identity::Cumulative => "cumulative",
            Identity::Global => "global",
        })
    }
}

/// Both sides of one identity, compared exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConservationCheck {
    pub identity: Identity,
    /// `q`, or `None` for the global identity.
    pub level: Option<usize>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl ConservationCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn discrepancy(&self) -> Rational {
        &self.lhs - &self.rhs
    }
}

impl fmt::Display for ConservationCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.holds() { "ok" } else { "FAIL" };
        match self.level {
            Some(q) => write!(
                f,
                "{status} {} q={q}: {} = {}",
                self.identity, self.lhs, self.rhs
            ),
            None => write!(f, "{status} {}: {} = {}", self.identity, self.lhs, self.rhs),
        }
    }
}

fn check_level(q: usize) -> Result<()> {
    if q == 0 {
        Err(Error::InvalidLevel(0))
    } else {
        Ok(())
    }
}

fn facet_sum(
    assignment: &ConcentrationAssignment,
    complex: &SimplicialComplex,
    keep: impl Fn(usize) -> bool,
) -> Result<Rational> {
    assignment.sum_over(complex.facets().iter().filter(|f| keep(f.dim())))
}

pub fn validate_level_conservation(
    assignment: &ConcentrationAssignment,
    complex: &SimplicialComplex,
    q: usize,
) -> Result<ConservationCheck> {
    check_level(q)?;
    let lhs = assignment.level_sum(complex, q)?;
    let rhs = assignment.sum_over(complex.level(q - 1).filter(|s| !complex.is_facet(s)))?;
    Ok(ConservationCheck {
        identity: Identity::Level,
        level: Some(q),
        lhs,
        rhs,
    })
}

pub fn validate_facet_decomposition(
    assignment: &ConcentrationAssignment,
    complex: &SimplicialComplex,
    q: usize,
) -> Result<ConservationCheck> {
    check_level(q)?;
    let lhs = assignment.level_sum(complex, q)? + facet_sum(assignment, complex, |d| d == q - 1)?;
    let rhs = assignment.level_sum(complex, q - 1)?;
    Ok(ConservationCheck {
        identity: Identity::FacetDecomposition,
        level: Some(q),
        lhs,
        rhs,
    })
}

pub fn validate_cumulative_decomposition(
    assignment: &ConcentrationAssignment,
    complex: &SimplicialComplex,
    q: usize,
) -> Result<ConservationCheck> {
    check_level(q)?;
    let lhs = assignment.level_sum(complex, q)? + facet_sum(assignment, complex, |d| d < q)?;
    let rhs = assignment.level_sum(complex, 0)?;
    Ok(ConservationCheck {
        identity: Identity::Cumulative,
        level: Some(q),
        lhs,
        rhs,
    })
}

/// Total facet weight against total vertex weight.
pub fn validate_global_conservation(
    assignment: &ConcentrationAssignment,
    complex: &SimplicialComplex,
) -> Result<ConservationCheck> {
    let lhs = facet_sum(assignment, complex, |_| true)?;
    let rhs = assignment.level_sum(complex, 0)?;
    Ok(ConservationCheck {
        identity: Identity::Global,
        level: None,
        lhs,
        rhs,
    })
}

/// Every identity at every level `1..=dim(Δ)`, followed by the global one.
pub fn validate_all(
    assignment: &ConcentrationAssignment,
    complex: &SimplicialComplex,
) -> Result<Vec<ConservationCheck>> {
    let mut checks = Vec::new();
    for q in 1..=complex.dim().unwrap_or(0) {
        checks.push(validate_level_conservation(assignment, complex, q)?);
        checks.push(validate_facet_decomposition(assignment, complex, q)?);
        checks.push(validate_cumulative_decomposition(assignment, complex, q)?);
    }
    if !complex.is_empty() {
        checks.push(validate_global_conservation(assignment, complex)?);
    } else {
        let zero = Rational::zero();
        checks.push(ConservationCheck {
            identity: Identity::Global,
            level: None,
            lhs: zero.clone(),
            rhs: zero,
        });
    }
    Ok(checks)
}
