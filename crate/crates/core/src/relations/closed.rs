use crate::combinatorics::{
    lucas_binom, lucas_multinom, nonzero_binomial_indices, nonzero_multinomial_tuples, FpCoeff,
};
use crate::error::{Error, Result};
use crate::field::prime_power_decomposition;

use super::{check_positive, diagonal_vanishes, RelationSet};

/// `σ(k) = Σ_(j=2)^(q-1) (j-1) k_j` for `k = (k_1, ..., k_(q-1))`, stored 0-based.
pub fn sigma_general(k: &[u64]) -> u64 {
    k.iter().enumerate().map(|(idx, &kj)| idx as u64 * kj).sum()
}

/// `τ(k) = Σ_(j=1)^(q-2) (q-1-j) k_j` for `k = (k_1, ..., k_(q-1))`, stored 0-based.
pub fn tau_general(k: &[u64]) -> u64 {
    let len = k.len() as u64;
    k.iter().enumerate().map(|(idx, &kj)| (len - 1 - idx as u64) * kj).sum()
}

/// `σ(k) = Σ_(i=1)^(q-1) i k_i`, the weight used by the symmetric formula.
/// Differs from [`sigma_general`] by `Σ k_i`.
pub fn sigma_symmetric(k: &[u64]) -> u64 {
    k.iter().enumerate().map(|(idx, &ki)| (idx as u64 + 1) * ki).sum()
}

fn smallest_power_at_least(p: u64, n: u64) -> Result<u64> {
    let mut p_m = 1u64;
    while p_m < n {
        p_m = p_m.checked_mul(p).ok_or(Error::Overflow("p^m"))?;
    }
    Ok(p_m)
}

/// `S(a,b)` from the explicit four-fold sum for the coefficients `f_i` of
/// `Δ_1(a,b) = Σ_(i<a) f_i S_1(a-i)` when `a >= b`.
pub fn closed_formula_general(a: u64, b: u64, q: u64) -> Result<RelationSet> {
    check_positive(a, b)?;
    if diagonal_vanishes(q, a, b) {
        return RelationSet::empty(q, a, b);
    }
    if a < b {
        return Ok(closed_formula_general(b, a, q)?.swapped());
    }
    let (p, _) = prime_power_decomposition(q)?;
    let pp = p as u32;
    let p_m = smallest_power_at_least(p, a)?;
    let mut f = vec![FpCoeff::zero(pp); a as usize];
    let tuples = nonzero_multinomial_tuples(a, (q - 1) as usize, pp);
    for i3 in nonzero_binomial_indices(p_m - a, pp) {
        let shift = i3 * (q - 1);
        if shift >= a {
            break;
        }
        let c3 = lucas_binom(p_m - a, i3, pp);
        for k in &tuples {
            let sigma = sigma_general(k);
            let tau = tau_general(k);
            let ck = lucas_multinom(a, k, pp)?;
            for i1 in nonzero_binomial_indices(a - b, pp) {
                if (tau + a - b - i1) % (q - 1) != 0 {
                    continue;
                }
                let c1 = lucas_binom(a - b, i1, pp);
                let top = sigma + i1;
                for i2 in nonzero_binomial_indices(top, pp) {
                    if i2 >= top || i2 + shift >= a {
                        break;
                    }
                    if (top - i2) % (q - 1) != 0 {
                        continue;
                    }
                    let term = c3.mul(ck).mul(c1).mul(lucas_binom(top, i2, pp)).mul(FpCoeff::sign(b + i1 + i3, pp));
                    let slot = &mut f[(i2 + shift) as usize];
                    *slot = slot.add(term);
                }
            }
        }
    }
    RelationSet::accumulate(q, a, b, f.into_iter().enumerate().map(|(i, c)| (a - i as u64, c)))
}

/// `S(a,b)` for `q = 2` and `a > b`, with
/// `f_k = Σ_(i+j=k, i <= 2^m-a, j <= a-b-1) binom(2^m-a, i) binom(a-b, j)`.
pub fn closed_formula_q2(a: u64, b: u64, q: u64) -> Result<RelationSet> {
    if q != 2 {
        return Err(Error::QNotTwo(q));
    }
    check_positive(a, b)?;
    if a == b {
        return RelationSet::empty(q, a, b);
    }
    if a < b {
        return Ok(closed_formula_q2(b, a, q)?.swapped());
    }
    let p_m = smallest_power_at_least(2, a)?;
    let mut f = vec![FpCoeff::zero(2); a as usize];
    for i in nonzero_binomial_indices(p_m - a, 2) {
        for j in nonzero_binomial_indices(a - b, 2) {
            if j > a - b - 1 || i + j >= a {
                continue;
            }
            let slot = &mut f[(i + j) as usize];
            *slot = slot.add(FpCoeff::one(2));
        }
    }
    RelationSet::accumulate(q, a, b, f.into_iter().enumerate().map(|(k, c)| (a - k as u64, c)))
}

/// Coefficients `H_(a,b)[0..b]` of the symmetric formula, with `m` the smallest
/// integer such that `a + b <= p^m`.
pub fn symmetric_h(a: u64, b: u64, q: u64) -> Result<Vec<FpCoeff>> {
    check_positive(a, b)?;
    let (p, _) = prime_power_decomposition(q)?;
    let pp = p as u32;
    let p_m = smallest_power_at_least(p, a + b)?;
    let mut h = vec![FpCoeff::zero(pp); b as usize];
    let tuples: Vec<(u64, FpCoeff)> = nonzero_multinomial_tuples(a, (q - 1) as usize, pp)
        .into_iter()
        .filter(|k| sigma_symmetric(k) % (q - 1) == 0)
        .map(|k| Ok((sigma_symmetric(&k), lucas_multinom(a, &k, pp)?)))
        .collect::<Result<_>>()?;
    for j in nonzero_binomial_indices(p_m - a, pp) {
        let cj = lucas_binom(p_m - a, j, pp).mul(FpCoeff::sign(a + j + 1, pp));
        for &(sigma, ck) in &tuples {
            let e = j * (q - 1) + sigma;
            if e >= a + b {
                continue;
            }
            // σ(k) >= Σ k_i = a, so the exponent never drops below a
            let slot = &mut h[(e - a) as usize];
            *slot = slot.add(cj.mul(ck));
        }
    }
    Ok(h)
}

/// `S(a,b)` from `Δ_1(a,b) = Σ_(i<b) H_(a,b)[i] S_1(b-i) + Σ_(j<a) H_(b,a)[j] S_1(a-j)`
/// without the diagonal shortcut.
pub fn closed_formula_symmetric_raw(a: u64, b: u64, q: u64) -> Result<RelationSet> {
    let f = symmetric_h(a, b, q)?;
    let g = symmetric_h(b, a, q)?;
    let from_f = f.into_iter().enumerate().map(|(i, c)| (b - i as u64, c));
    let from_g = g.into_iter().enumerate().map(|(j, c)| (a - j as u64, c));
    RelationSet::accumulate(q, a, b, from_f.chain(from_g))
}

/// `S(a,b)` by the symmetric closed formula.
pub fn closed_formula_symmetric(a: u64, b: u64, q: u64) -> Result<RelationSet> {
    check_positive(a, b)?;
    if diagonal_vanishes(q, a, b) {
        return RelationSet::empty(q, a, b);
    }
    closed_formula_symmetric_raw(a, b, q)
}
