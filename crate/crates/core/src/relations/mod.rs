//! Relation sets `S(a,b)`: the `F_p` coefficients `f_i` and indices `a_i` with
//! `Δ_d(a,b) = Σ f_i S_d(a_i, a+b-a_i)` for every degree `d`.
//!
//! Four independent constructions are provided (partial fractions, the
//! `r_a`-periodic recursion, and two closed formulas) plus a `q = 2` formula,
//! together with verifiers at the level of power sums and of zeta values.

mod closed;
mod identity;
mod initial;
mod recursion;
mod verify;

use std::collections::BTreeMap;
use std::fmt;

use crate::combinatorics::FpCoeff;
use crate::error::{Error, Result};
use crate::field::{prime_power_decomposition, Field};
use crate::limits::Limits;
use crate::powersums::PowerSums;

pub use closed::{
    closed_formula_general, closed_formula_q2, closed_formula_symmetric, closed_formula_symmetric_raw, sigma_general,
    sigma_symmetric, symmetric_h, tau_general,
};
pub use identity::{ShuffleIdentity, ZetaTerm};
pub use initial::solve_initial;
pub use recursion::{g_poly, recursion_increment, relation_by_recursion};
pub use verify::{denominator_degree_bound, verify_depth, verify_depth_exact};

/// One pair `(f_i, a_i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RelationTerm {
    pub coeff: FpCoeff,
    pub index: u64,
}

/// A normalized relation set: nonzero coefficients, strictly descending indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RelationSet {
    q: u64,
    a: u64,
    b: u64,
    terms: Vec<RelationTerm>,
}

impl RelationSet {
    pub fn empty(q: u64, a: u64, b: u64) -> Result<RelationSet> {
        prime_power_decomposition(q)?;
        Ok(RelationSet { q, a, b, terms: Vec::new() })
    }

    /// Sums coefficients of repeated indices in `F_p` and drops zeros.
    pub fn accumulate(q: u64, a: u64, b: u64, terms: impl IntoIterator<Item = (u64, FpCoeff)>) -> Result<RelationSet> {
        let (p, _) = prime_power_decomposition(q)?;
        let mut by_index: BTreeMap<u64, FpCoeff> = BTreeMap::new();
        for (index, coeff) in terms {
            let slot = by_index.entry(index).or_insert(FpCoeff::zero(p as u32));
            *slot = slot.add(coeff);
        }
        let terms = by_index
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(index, coeff)| RelationTerm { coeff, index })
            .collect();
        Ok(RelationSet { q, a, b, terms })
    }

    /// Adds terms whose indices must not already be present.
    pub fn disjoint_union(&self, extra: &[RelationTerm]) -> Result<RelationSet> {
        let mut by_index: BTreeMap<u64, FpCoeff> = self.terms.iter().map(|t| (t.index, t.coeff)).collect();
        for t in extra {
            if by_index.insert(t.index, t.coeff).is_some() {
                return Err(Error::IndexCollision(t.index));
            }
        }
        let terms = by_index
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(index, coeff)| RelationTerm { coeff, index })
            .collect();
        Ok(RelationSet { q: self.q, a: self.a, b: self.b, terms })
    }

    /// Same terms, relabelled as `S(b, a)`.
    pub fn swapped(&self) -> RelationSet {
        RelationSet { q: self.q, a: self.b, b: self.a, terms: self.terms.clone() }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        prime_power_decomposition(self.q).unwrap().0
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn weight(&self) -> u64 {
        self.a + self.b
    }

    pub fn terms(&self) -> &[RelationTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(coefficient value, index)` pairs in canonical order.
    pub fn pairs(&self) -> Vec<(u32, u64)> {
        self.terms.iter().map(|t| (t.coeff.value(), t.index)).collect()
    }

    /// Copy with the coefficient at `index` replaced by `coeff` (zero removes the term).
    pub fn with_coefficient(&self, index: u64, coeff: FpCoeff) -> RelationSet {
        let rest = self.terms.iter().filter(|t| t.index != index).map(|t| (t.index, t.coeff));
        RelationSet::accumulate(self.q, self.a, self.b, rest.chain([(index, coeff)])).unwrap()
    }

    /// Terms whose index `c` violates `(q - 1) | (a + b - c)`.
    pub fn parity_violations(&self) -> Vec<RelationTerm> {
        let w = self.weight();
        self.terms.iter().filter(|t| t.index > w || (w - t.index) % (self.q - 1) != 0).copied().collect()
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.terms.iter().map(|t| format!("({},{})", t.coeff.value(), t.index)).collect();
        write!(f, "{{{}}}", body.join(","))
    }
}

/// The constructions of `S(a,b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Initial,
    Recursion,
    Closed,
    ClosedQ2,
    Symmetric,
}

impl Method {
    pub const ALL: [Method; 5] =
        [Method::Initial, Method::Recursion, Method::Closed, Method::ClosedQ2, Method::Symmetric];

    pub fn name(self) -> &'static str {
        match self {
            Method::Initial => "initial",
            Method::Recursion => "recursion",
            Method::Closed => "closed",
            Method::ClosedQ2 => "closed-q2",
            Method::Symmetric => "symmetric",
        }
    }

    pub fn from_name(name: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == name)
    }

    /// Whether the method is defined for `(q, a, b)`.
    pub fn applies(self, q: u64, a: u64, b: u64) -> bool {
        match self {
            Method::ClosedQ2 => q == 2,
            _ => a >= 1 && b >= 1,
        }
    }
}

/// Shared state for computing and checking relation sets over one field.
pub struct RelationEngine {
    field: Field,
    limits: Limits,
    sums: PowerSums,
}

impl RelationEngine {
    pub fn new(q: u64, limits: &Limits) -> Result<RelationEngine> {
        let field = Field::from_order(q, limits)?;
        let sums = PowerSums::new(&field, limits);
        Ok(RelationEngine { field, limits: *limits, sums })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn sums(&self) -> &PowerSums {
        &self.sums
    }

    pub fn solve_initial(&self, a: u64, b: u64) -> Result<RelationSet> {
        initial::solve_initial_with(&self.sums, a, b)
    }

    pub fn relation_by_recursion(&self, a: u64, b: u64) -> Result<RelationSet> {
        recursion::relation_by_recursion_with(&self.sums, a, b)
    }

    /// `S(a,b)` by the requested method; `a < b` is handled through `S(a,b) = S(b,a)`.
    pub fn relation(&self, method: Method, a: u64, b: u64) -> Result<RelationSet> {
        let q = self.q();
        match method {
            Method::Initial => self.solve_initial(a, b),
            Method::Recursion => self.relation_by_recursion(a, b),
            Method::Closed => closed_formula_general(a, b, q),
            Method::ClosedQ2 => closed_formula_q2(a, b, q),
            Method::Symmetric => closed_formula_symmetric(a, b, q),
        }
    }

    /// Every applicable method, in [`Method::ALL`] order.
    pub fn all_relations(&self, a: u64, b: u64) -> Result<Vec<(Method, RelationSet)>> {
        Method::ALL
            .into_iter()
            .filter(|m| m.applies(self.q(), a, b))
            .map(|m| Ok((m, self.relation(m, a, b)?)))
            .collect()
    }

    pub fn verify_depth(&self, set: &RelationSet, d: usize) -> Result<bool> {
        verify_depth(&self.field, set, d, &self.limits)
    }

    pub fn verify_depth_exact(&self, set: &RelationSet, d: usize) -> Result<bool> {
        verify_depth_exact(&self.sums, set, d)
    }

    pub fn shuffle_identity(&self, a: u64, b: u64) -> Result<ShuffleIdentity> {
        ShuffleIdentity::from_relation(&self.solve_initial(a, b)?)
    }

    pub fn verify_zeta(&self, identity: &ShuffleIdentity, precision: i64) -> Result<bool> {
        identity.verify(&self.field, precision, &self.limits)
    }
}

/// `Δ(a,a) = S(a)^2 - S(2a)` vanishes by Frobenius in characteristic 2; for odd
/// characteristic it generally does not, and the diagonal is computed like any other pair.
pub fn diagonal_vanishes(q: u64, a: u64, b: u64) -> bool {
    a == b && q % 2 == 0
}

pub(crate) fn check_positive(a: u64, b: u64) -> Result<()> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument(format!("a and b must be positive, got ({a}, {b})")));
    }
    Ok(())
}
