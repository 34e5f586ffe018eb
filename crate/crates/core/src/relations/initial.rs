use crate::combinatorics::FpCoeff;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::limits::Limits;
use crate::poly::{bracket, Poly};
use crate::powersums::PowerSums;
use crate::ratfunc::series_inverse;

use super::{check_positive, diagonal_vanishes, RelationSet};

/// `S(a,b)` from the principal part of `Δ_1(a,b)` at `t = 0`.
///
/// With `n = a + b`, the polynomial `X = [1]^n Δ_1(a,b)` divided by the unit
/// `([1]/t)^n` gives `t^n Δ_1(a,b)`, whose low `n` coefficients are the
/// coefficients of `t^(-a_i)` in the expansion of `Δ_1` at zero.
pub fn solve_initial(a: u64, b: u64, q: u64) -> Result<RelationSet> {
    let limits = Limits::default();
    let field = Field::from_order(q, &limits)?;
    solve_initial_with(&PowerSums::new(&field, &limits), a, b)
}

pub(crate) fn solve_initial_with(sums: &PowerSums, a: u64, b: u64) -> Result<RelationSet> {
    check_positive(a, b)?;
    let field = sums.field();
    let q = field.q() as u64;
    if diagonal_vanishes(q, a, b) {
        return RelationSet::empty(q, a, b);
    }
    let n = a + b;
    let len = n as usize;
    let b1 = bracket(1, field);
    let delta = sums.delta(1, a, b)?;
    let x = delta.mul_poly(&b1.pow(n));
    let x = x.as_poly().ok_or_else(|| Error::InvalidArgument("[1]^(a+b) Δ_1(a,b) is not a polynomial".into()))?.clone();
    let unit = b1.div_exact(&Poly::t(field))?.pow(n);
    let h0 = x.mul_trunc(&series_inverse(&unit, len)?, len);
    let p = field.p();
    let mut terms = Vec::new();
    for (k, &c) in h0.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let value = field.to_prime(c).ok_or(Error::CoefficientNotInPrimeField { exponent: k })?;
        terms.push((n - k as u64, FpCoeff::new(value as i64, p)));
    }
    RelationSet::accumulate(q, a, b, terms)
}
