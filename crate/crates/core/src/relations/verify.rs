//! Checking `Δ_d(a,b) = Σ f_i S_d(a_i, a+b-a_i)` at a fixed degree `d`.
//!
//! Both sides are sums of `1/a^s` over monic `a` of degree at most `d`, so
//! their difference `F` has a denominator dividing
//! `L = Π_(π irreducible, deg π <= d) π^(w floor(d / deg π))` with `w = a + b`,
//! and `F L` is a polynomial of degree below `deg L`. If `F` vanishes at points
//! `y` of an extension of `F_q` whose minimal polynomials are distinct, of
//! degree above `d`, and of total degree at least `deg L`, then `F L` has too
//! many roots and `F = 0`. The converse is immediate, so this is an exact test.

use crate::error::{Error, Result};
use crate::extfield::{ExtField, LogElem};
use crate::field::Field;
use crate::limits::Limits;
use crate::poly::monic_count;
use crate::powersums::PowerSums;
use crate::ratfunc::RatFunc;

use super::RelationSet;

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducible polynomials of degree `k` over `F_q`.
fn irreducible_count(q: u64, k: u64) -> Option<u128> {
    let mut total: i128 = 0;
    for e in 1..=k {
        if k % e == 0 {
            let term = (q as i128).checked_pow(e as u32)?;
            total += mobius(k / e) as i128 * term;
        }
    }
    Some((total / k as i128) as u128)
}

/// `deg L` for relation sets of weight `w` checked at degree `d`.
pub fn denominator_degree_bound(q: u64, d: u64, w: u64) -> Option<u128> {
    let mut total: u128 = 0;
    for k in 1..=d {
        total = total.checked_add(irreducible_count(q, k)? * k as u128 * (d / k) as u128)?;
    }
    total.checked_mul(w as u128)
}

fn check_indices(set: &RelationSet) -> Result<()> {
    let w = set.weight();
    if let Some(t) = set.terms().iter().find(|t| t.index == 0 || t.index >= w) {
        return Err(Error::InvalidArgument(format!("index {} outside [1, {}]", t.index, w - 1)));
    }
    Ok(())
}

/// Exact check of the relation at degree `d`.
///
/// Uses the evaluation certificate described in the module documentation when a
/// suitable extension field fits within `limits.max_eval_field`, and falls back
/// to rational-function arithmetic otherwise.
pub fn verify_depth(field: &Field, set: &RelationSet, d: usize, limits: &Limits) -> Result<bool> {
    check_indices(set)?;
    if field.q() as u64 != set.q() {
        return Err(Error::InvalidArgument(format!("relation set over q = {} checked in {field:?}", set.q())));
    }
    if d == 0 {
        // Δ_0 = 1 - 1 and every depth-two sum at degree 0 is empty
        return Ok(true);
    }
    let count = monic_count(d, field)?;
    if count > limits.max_enum {
        return Err(Error::BudgetExceeded { requested: count, budget: limits.max_enum });
    }
    match certificate_field(field, d as u64, set.weight(), limits) {
        Some((n, needed)) => {
            let ext = ExtField::new(field.p(), field.s() * n, limits.max_eval_field)?;
            evaluate_certificate(field, &ext, set, d, needed)
        }
        None => verify_depth_exact(&PowerSums::new(field, limits), set, d),
    }
}

// smallest n > d with enough degree-n points in a field within the size limit
fn certificate_field(field: &Field, d: u64, w: u64, limits: &Limits) -> Option<(u32, u128)> {
    let q = field.q() as u64;
    let needed = denominator_degree_bound(q, d, w)?;
    let mut n = d + 1;
    loop {
        let size = (q as u128).checked_pow(n as u32)?;
        if size > limits.max_eval_field as u128 {
            return None;
        }
        if irreducible_count(q, n)? * n as u128 >= needed {
            return Some((n as u32, needed));
        }
        n += 1;
    }
}

fn evaluate_certificate(field: &Field, ext: &ExtField, set: &RelationSet, d: usize, needed: u128) -> Result<bool> {
    let q = field.q() as u64;
    let n = ext.degree() / field.s();
    let embed = ext.embedding(field)?;
    let constants: Vec<LogElem> = field.elements().map(|c| embed[c.index() as usize]).collect();
    let w = set.weight();
    let (a, b) = (set.a(), set.b());
    let coeffs: Vec<(LogElem, u64)> = set.terms().iter().map(|t| (ext.from_prime(t.coeff.value()), t.index)).collect();
    let group = ext.order() - 1;
    let mut seen = vec![false; group as usize];
    let mut covered: u128 = 0;
    for e in 1..group {
        if covered >= needed {
            break;
        }
        if seen[e as usize] {
            continue;
        }
        let y = ext.power_of_generator(e);
        // mark the orbit under y -> y^q
        let mut k = e;
        loop {
            seen[k as usize] = true;
            k = ((k as u128 * q as u128) % group as u128) as u64;
            if k == e {
                break;
            }
        }
        if ext.frobenius_orbit_len(y, q) != n {
            continue;
        }
        covered += n as u128;
        if !relation_holds_at(ext, y, &constants, d, a, b, w, &coeffs)? {
            return Ok(false);
        }
    }
    if covered < needed {
        return Err(Error::InvalidArgument("not enough evaluation points".into()));
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn relation_holds_at(
    ext: &ExtField,
    y: LogElem,
    constants: &[LogElem],
    d: usize,
    a: u64,
    b: u64,
    w: u64,
    coeffs: &[(LogElem, u64)],
) -> Result<bool> {
    // values of every monic of degree e at y, built as t * (degree e-1 monic) + c
    let mut values = vec![LogElem::ONE];
    // sums[e][s] = S_e(s)(y) for s in 0..=w
    let mut sums: Vec<Vec<LogElem>> = Vec::with_capacity(d + 1);
    for e in 0..=d {
        if e > 0 {
            let mut next = Vec::with_capacity(values.len() * constants.len());
            for &v in &values {
                let vy = ext.mul(v, y);
                for &c in constants {
                    next.push(ext.add(vy, c));
                }
            }
            values = next;
        }
        let mut row = vec![LogElem::ZERO; w as usize + 1];
        for &v in &values {
            for (s, slot) in row.iter_mut().enumerate().skip(1) {
                *slot = ext.add(*slot, ext.pow(v, -(s as i64))?);
            }
        }
        sums.push(row);
    }
    let top = &sums[d];
    let mut lower = vec![LogElem::ZERO; w as usize + 1];
    for row in &sums[..d] {
        for s in 1..=w as usize {
            lower[s] = ext.add(lower[s], row[s]);
        }
    }
    let delta = ext.sub(ext.mul(top[a as usize], top[b as usize]), top[w as usize]);
    let mut rhs = LogElem::ZERO;
    for &(c, index) in coeffs {
        let term = ext.mul(top[index as usize], lower[(w - index) as usize]);
        rhs = ext.add(rhs, ext.mul(c, term));
    }
    Ok(delta == rhs)
}

/// The same check carried out with exact rational functions.
pub fn verify_depth_exact(sums: &PowerSums, set: &RelationSet, d: usize) -> Result<bool> {
    check_indices(set)?;
    let field = sums.field();
    let w = set.weight();
    let lhs = sums.delta(d, set.a(), set.b())?;
    let mut rhs = RatFunc::zero(field);
    for t in set.terms() {
        let c = field.from_int(t.coeff.value() as i64);
        rhs = &rhs + &sums.s_d_depth(d, &[t.index, w - t.index])?.scale(c);
    }
    Ok(lhs == rhs)
}
