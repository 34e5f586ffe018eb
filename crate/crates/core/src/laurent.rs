//! Truncated expansions in `u = 1/t`, the local parameter at infinity.
//!
//! A [`LaurentTail`] stores the coefficients of `u^start, u^(start+1), ...` that
//! are known, together with an explicit precision: the coefficient of `u^k` is
//! known for every `k <= precision` and unknown beyond. Every operation
//! propagates the weakest precision its operands justify.

use std::fmt;

use crate::error::Result;
use crate::field::{Field, FieldElem};
use crate::poly::Poly;
use crate::ratfunc::{series_quotient, RatFunc};

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentTail {
    field: Field,
    start: i64,
    coeffs: Vec<FieldElem>,
    precision: i64,
}

impl LaurentTail {
    /// Series whose coefficient of `u^(start + i)` is `coeffs[i]`, known through `u^precision`.
    pub fn new(field: &Field, start: i64, coeffs: Vec<FieldElem>, precision: i64) -> LaurentTail {
        let mut out = LaurentTail { field: field.clone(), start, coeffs, precision };
        out.normalize();
        out
    }

    pub fn zero(field: &Field, precision: i64) -> LaurentTail {
        LaurentTail::new(field, precision + 1, Vec::new(), precision)
    }

    pub fn one(field: &Field, precision: i64) -> LaurentTail {
        LaurentTail::new(field, 0, vec![field.one()], precision)
    }

    fn normalize(&mut self) {
        let keep = (self.precision - self.start + 1).max(0) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(k) => {
                self.coeffs.drain(..k);
                self.start += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.start = self.precision + 1;
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Exponents `u^k` with `k > precision` are unknown.
    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// Exponent of the first nonzero known coefficient, i.e. the expansion
    /// starts at `t^(-v)`. `None` when every known coefficient vanishes.
    pub fn lead_exponent(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }

    /// A lower bound on the true valuation.
    fn valuation_bound(&self) -> i64 {
        self.start
    }

    /// Coefficient of `u^k = t^(-k)`, or `None` past the precision.
    pub fn coeff(&self, k: i64) -> Option<FieldElem> {
        if k > self.precision {
            return None;
        }
        let idx = k - self.start;
        if idx < 0 {
            return Some(FieldElem::ZERO);
        }
        Some(self.coeffs.get(idx as usize).copied().unwrap_or(FieldElem::ZERO))
    }

    /// True when every coefficient up to the precision is zero.
    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Forgets everything past `u^precision`.
    pub fn truncate(&self, precision: i64) -> LaurentTail {
        LaurentTail::new(&self.field, self.start, self.coeffs.clone(), precision.min(self.precision))
    }

    fn combine(&self, other: &LaurentTail, negate_other: bool) -> LaurentTail {
        assert!(self.field == other.field, "series over different fields");
        let f = &self.field;
        let precision = self.precision.min(other.precision);
        let start = self.start.min(other.start);
        let len = (precision - start + 1).max(0) as usize;
        let coeffs = (0..len)
            .map(|i| {
                let k = start + i as i64;
                let y = other.coeff(k).unwrap();
                let y = if negate_other { f.neg(y) } else { y };
                f.add(self.coeff(k).unwrap(), y)
            })
            .collect();
        LaurentTail::new(f, start, coeffs, precision)
    }

    pub fn add(&self, other: &LaurentTail) -> LaurentTail {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &LaurentTail) -> LaurentTail {
        self.combine(other, true)
    }

    pub fn scale(&self, c: FieldElem) -> LaurentTail {
        let f = &self.field;
        let coeffs = self.coeffs.iter().map(|&x| f.mul(x, c)).collect();
        LaurentTail::new(f, self.start, coeffs, self.precision)
    }

    pub fn mul(&self, other: &LaurentTail) -> LaurentTail {
        assert!(self.field == other.field, "series over different fields");
        let f = &self.field;
        let precision = (self.precision + other.valuation_bound()).min(other.precision + self.valuation_bound());
        let start = self.start + other.start;
        let len = (precision - start + 1).max(0) as usize;
        let a = Poly::new(f, self.coeffs.clone());
        let b = Poly::new(f, other.coeffs.clone());
        let prod = a.mul_trunc(&b, len);
        LaurentTail::new(f, start, prod.coeffs().to_vec(), precision)
    }

    /// Expansion of `1 / a^s` for a monic `a` of degree `d >= 0`; starts at `u^(s d)`.
    pub fn inverse_power_of_monic(a: &Poly, s: u64, precision: i64) -> LaurentTail {
        let f = a.field();
        let d = a.degree().expect("monic polynomial");
        let start = (s * d as u64) as i64;
        let len = (precision - start + 1).max(0) as usize;
        if len == 0 {
            return LaurentTail::zero(f, precision);
        }
        // a(1/u) u^d = 1 + c_(d-1) u + ... + c_0 u^d
        let rev = Poly::new(f, a.coeffs().iter().rev().copied().collect());
        let inv = Poly::new(f, series_quotient(&Poly::one(f), &rev, len).unwrap());
        let acc = inv.pow_trunc(s, len);
        LaurentTail::new(f, start, acc.coeffs().to_vec(), precision)
    }
}

/// Expansion of `x` at infinity, exact through `u^precision`.
pub fn laurent_at_infinity(x: &RatFunc, precision: i64) -> Result<LaurentTail> {
    let f = x.field();
    if x.is_zero() {
        return Ok(LaurentTail::zero(f, precision));
    }
    let (num, den) = (x.num(), x.den());
    let n = num.degree().unwrap() as i64;
    let m = den.degree().unwrap() as i64;
    let start = m - n;
    let len = (precision - start + 1).max(0) as usize;
    let num_rev = Poly::new(f, num.coeffs().iter().rev().copied().collect());
    let den_rev = Poly::new(f, den.coeffs().iter().rev().copied().collect());
    let coeffs = series_quotient(&num_rev, &den_rev, len)?;
    Ok(LaurentTail::new(f, start, coeffs, precision))
}

impl fmt::Debug for LaurentTail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{:?}*u^{}", c, self.start + i as i64))
            .collect();
        write!(f, "{} + O(u^{})", terms.join(" + "), self.precision + 1)
    }
}
