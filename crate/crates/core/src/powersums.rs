//! Power sums `S_d(s)` over monic polynomials of degree `d`, their nested
//! depth-`r` versions, `Δ_d(a,b)`, and truncated multizeta values.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::laurent::LaurentTail;
use crate::limits::Limits;
use crate::poly::{monic_count, monic_polys, Poly};
use crate::ratfunc::{series_inverse, RatFunc};

const CACHE_CAPACITY: usize = 4096;

/// Memoizing evaluator for `S_d(s)` and `S_d(s_1, ..., s_r)` as exact rational functions.
///
/// The caches sit behind mutexes, so one engine may be shared across threads.
/// Results never depend on the interleaving: a cached value is always the value
/// that would have been recomputed.
pub struct PowerSums {
    field: Field,
    limits: Limits,
    single: Mutex<HashMap<(usize, u64), RatFunc>>,
    nested: Mutex<HashMap<(usize, Vec<u64>), RatFunc>>,
}

impl PowerSums {
    pub fn new(field: &Field, limits: &Limits) -> PowerSums {
        PowerSums {
            field: field.clone(),
            limits: *limits,
            single: Mutex::new(HashMap::new()),
            nested: Mutex::new(HashMap::new()),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// `S_d(s) = Σ_{a monic, deg a = d} a^(-s)`.
    pub fn s_d(&self, d: usize, s: u64) -> Result<RatFunc> {
        if let Some(x) = self.single.lock().unwrap().get(&(d, s)) {
            return Ok(x.clone());
        }
        let value = power_sum(&self.field, d, s, &self.limits)?;
        let mut cache = self.single.lock().unwrap();
        if cache.len() >= CACHE_CAPACITY {
            cache.clear();
        }
        cache.insert((d, s), value.clone());
        Ok(value)
    }

    /// `S_d(s_1, ..., s_r) = S_d(s_1) Σ_{d > d_2 > ... > d_r >= 0} S_(d_2)(s_2) ... S_(d_r)(s_r)`.
    pub fn s_d_depth(&self, d: usize, tuple: &[u64]) -> Result<RatFunc> {
        check_tuple(tuple)?;
        if tuple.len() == 1 {
            return self.s_d(d, tuple[0]);
        }
        let key = (d, tuple.to_vec());
        if let Some(x) = self.nested.lock().unwrap().get(&key) {
            return Ok(x.clone());
        }
        let mut inner = RatFunc::zero(&self.field);
        for e in 0..d {
            inner = &inner + &self.s_d_depth(e, &tuple[1..])?;
        }
        let value = &self.s_d(d, tuple[0])? * &inner;
        let mut cache = self.nested.lock().unwrap();
        if cache.len() >= CACHE_CAPACITY {
            cache.clear();
        }
        cache.insert(key, value.clone());
        Ok(value)
    }

    /// `Δ_d(a,b) = S_d(a) S_d(b) - S_d(a+b)`.
    pub fn delta(&self, d: usize, a: u64, b: u64) -> Result<RatFunc> {
        let ab = a.checked_add(b).ok_or(Error::Overflow("a + b"))?;
        Ok(&(&self.s_d(d, a)? * &self.s_d(d, b)?) - &self.s_d(d, ab)?)
    }
}

fn check_tuple(tuple: &[u64]) -> Result<()> {
    if tuple.is_empty() || tuple.contains(&0) {
        return Err(Error::InvalidArgument(format!("exponent tuple {tuple:?} must be nonempty and positive")));
    }
    Ok(())
}

/// Direct evaluation of `S_d(s)` without caching.
pub fn power_sum(field: &Field, d: usize, s: u64, limits: &Limits) -> Result<RatFunc> {
    let mut acc = RatFunc::zero(field);
    for a in monic_polys(d, field, limits.max_enum)? {
        acc = &acc + &RatFunc::inverse_power(&a, s)?;
    }
    Ok(acc)
}

/// Uncached nested power sum, straight from the definition.
pub fn power_sum_depth(field: &Field, d: usize, tuple: &[u64], limits: &Limits) -> Result<RatFunc> {
    check_tuple(tuple)?;
    let head = power_sum(field, d, tuple[0], limits)?;
    if tuple.len() == 1 {
        return Ok(head);
    }
    let mut inner = RatFunc::zero(field);
    for e in 0..d {
        inner = &inner + &power_sum_depth(field, e, &tuple[1..], limits)?;
    }
    Ok(&head * &inner)
}

/// Lower bound for the order of vanishing of `S_d(s)` at infinity.
///
/// Writing a monic `a = t^d (1 + c_1 u + ... + c_d u^d)` with `u = 1/t`, a
/// monomial in the `c_i` survives the sum over `F_q^d` only if every `c_i`
/// occurs to a positive multiple of `q - 1`.
pub fn valuation_bound(q: u64, d: u64, s: u64) -> u64 {
    s * d + (q - 1) * d * (d + 1) / 2
}

/// Smallest `D` such that every `S_d(s)` with `d > D` vanishes through `u^precision`.
pub fn truncation_degree(q: u64, s: u64, precision: i64) -> usize {
    let mut d = 0u64;
    while valuation_bound(q, d + 1, s) as i64 <= precision {
        d += 1;
    }
    d as usize
}

/// Expansions at infinity of power sums and multizeta values, all exact through
/// `u^precision` with `u = 1/t`.
pub struct ZetaTable {
    field: Field,
    limits: Limits,
    precision: i64,
    inverses: Vec<Vec<Poly>>,
    sums: HashMap<(usize, u64), LaurentTail>,
}

impl ZetaTable {
    pub fn new(field: &Field, limits: &Limits, precision: i64) -> Result<ZetaTable> {
        if precision < 1 {
            return Err(Error::InvalidArgument(format!("precision must be at least 1, got {precision}")));
        }
        Ok(ZetaTable { field: field.clone(), limits: *limits, precision, inverses: Vec::new(), sums: HashMap::new() })
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    // 1 / (u^d a(1/u)) as a power series in u, for every monic a of degree d
    fn inverses(&mut self, d: usize) -> Result<&[Poly]> {
        while self.inverses.len() <= d {
            let e = self.inverses.len();
            let len = (self.precision + 1) as usize;
            let mut row = Vec::with_capacity(monic_count(e, &self.field)? as usize);
            for a in monic_polys(e, &self.field, self.limits.max_enum)? {
                let rev = Poly::new(&self.field, a.coeffs().iter().rev().copied().collect());
                row.push(series_inverse(&rev, len)?);
            }
            self.inverses.push(row);
        }
        Ok(&self.inverses[d])
    }

    /// Expansion of `S_d(s)`.
    pub fn power_sum(&mut self, d: usize, s: u64) -> Result<LaurentTail> {
        if let Some(x) = self.sums.get(&(d, s)) {
            return Ok(x.clone());
        }
        let start = s as i64 * d as i64;
        let field = self.field.clone();
        let precision = self.precision;
        let value = if start > precision {
            LaurentTail::zero(&field, precision)
        } else {
            let len = (precision - start + 1) as usize;
            let mut acc = Poly::zero(&field);
            for inv in self.inverses(d)? {
                acc = &acc + &inv.truncate(len).pow_trunc(s, len);
            }
            LaurentTail::new(&field, start, acc.coeffs().to_vec(), precision)
        };
        self.sums.insert((d, s), value.clone());
        Ok(value)
    }

    /// `ζ(s_1, ..., s_r) = Σ_{d_1 > ... > d_r >= 0} S_(d_1)(s_1) ... S_(d_r)(s_r)`, truncated.
    pub fn zeta(&mut self, tuple: &[u64]) -> Result<LaurentTail> {
        check_tuple(tuple)?;
        let top = truncation_degree(self.field.q() as u64, tuple[0], self.precision);
        let count = (top + 1) as u64;
        let needed = monic_count(top, &self.field)?;
        if needed > self.limits.max_enum {
            return Err(Error::BudgetExceeded { requested: needed, budget: self.limits.max_enum });
        }
        // below[e] = Σ over chains of the remaining exponents with leading degree < e
        let r = tuple.len();
        let mut below: Vec<LaurentTail> = vec![LaurentTail::one(&self.field, self.precision); top + 2];
        for k in (1..r).rev() {
            let mut next = Vec::with_capacity(top + 2);
            let mut acc = LaurentTail::zero(&self.field, self.precision);
            next.push(acc.clone());
            for e in 0..=top {
                let term =
                    if k + 1 < r { self.power_sum(e, tuple[k])?.mul(&below[e]) } else { self.power_sum(e, tuple[k])? };
                acc = acc.add(&term);
                next.push(acc.clone());
            }
            below = next;
        }
        let mut total = LaurentTail::zero(&self.field, self.precision);
        for d in 0..count as usize {
            let term = if r > 1 { self.power_sum(d, tuple[0])?.mul(&below[d]) } else { self.power_sum(d, tuple[0])? };
            total = total.add(&term);
        }
        Ok(total.truncate(self.precision))
    }
}

/// `ζ(s_1, ..., s_r)` expanded at infinity through `u^precision`.
pub fn zeta_truncated(field: &Field, tuple: &[u64], precision: i64, limits: &Limits) -> Result<LaurentTail> {
    ZetaTable::new(field, limits, precision)?.zeta(tuple)
}
