//! Dense univariate polynomials in `t` over `GF(q)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// A polynomial with little-endian coefficients and no trailing zeros.
/// The zero polynomial has an empty coefficient vector and degree `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<FieldElem>) -> Poly {
        let mut poly = Poly { field: field.clone(), coeffs };
        poly.trim();
        poly
    }

    /// Polynomial with integer coefficients mapped into the prime field.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: FieldElem) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn monomial(field: &Field, c: FieldElem, n: usize) -> Poly {
        let mut coeffs = vec![FieldElem::ZERO; n + 1];
        coeffs[n] = c;
        Poly::new(field, coeffs)
    }

    /// The variable `t`.
    pub fn t(field: &Field) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    /// `t - c`.
    pub fn linear(field: &Field, c: FieldElem) -> Poly {
        Poly::new(field, vec![field.neg(c), field.one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn with_coeffs(&self, coeffs: Vec<FieldElem>) -> Poly {
        Poly::new(&self.field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [FieldElem::ONE]
    }

    pub fn lead(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == FieldElem::ONE
    }

    /// Number of trailing zero coefficients, i.e. the `t`-adic valuation.
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn same_field(&self, other: &Poly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn scale(&self, c: FieldElem) -> Poly {
        let f = &self.field;
        self.with_coeffs(self.coeffs.iter().map(|&x| f.mul(x, c)).collect())
    }

    /// `t^k * self`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![FieldElem::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        self.with_coeffs(coeffs)
    }

    /// `self mod t^n`.
    pub fn truncate(&self, n: usize) -> Poly {
        self.with_coeffs(self.coeffs.iter().take(n).copied().collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).unwrap();
        self.scale(inv)
    }

    /// Product truncated modulo `t^n`.
    pub fn mul_trunc(&self, other: &Poly, n: usize) -> Poly {
        self.same_field(other);
        self.with_coeffs(convolve(&self.field, &self.coeffs, &other.coeffs, n))
    }

    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.same_field(divisor);
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv(divisor.lead())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElem::ZERO; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + dd], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[k] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = f.sub(rem[k + i], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((self.with_coeffs(quot), self.with_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Exact quotient; errors when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(divisor)?;
        if !r.is_zero() {
            return Err(Error::InvalidArgument("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.same_field(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self^e mod t^n`.
    pub fn pow_trunc(&self, mut e: u64, n: usize) -> Poly {
        let mut base = self.truncate(n);
        let mut acc = Poly::one(&self.field).truncate(n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_trunc(&base, n);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_trunc(&base, n);
            }
        }
        acc
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self(t + theta)`.
    pub fn compose_shift(&self, theta: FieldElem) -> Poly {
        let f = &self.field;
        let lin = Poly::new(f, vec![theta, f.one()]);
        self.coeffs.iter().rev().fold(Poly::zero(f), |acc, &c| &(&acc * &lin) + &Poly::constant(f, c))
    }

    /// True when every coefficient lies in the prime field.
    pub fn is_over_prime_field(&self) -> bool {
        self.coeffs.iter().all(|&c| self.field.to_prime(c).is_some())
    }
}

/// Schoolbook product, keeping only the first `limit` coefficients.
fn convolve(field: &Field, a: &[FieldElem], b: &[FieldElem], limit: usize) -> Vec<FieldElem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let len = (a.len() + b.len() - 1).min(limit);
    if field.s() == 1 {
        // prime field: accumulate residues, reduce once per coefficient
        let p = field.p() as u64;
        let mut acc = vec![0u64; len];
        for (i, &x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            let xv = x.index() as u64;
            for (j, &y) in b.iter().enumerate().take(len - i) {
                acc[i + j] += xv * y.index() as u64;
            }
            if i % 1024 == 1023 {
                acc.iter_mut().for_each(|v| *v %= p);
            }
        }
        return acc.into_iter().map(|v| field.from_int((v % p) as i64)).collect();
    }
    let mut out = vec![FieldElem::ZERO; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    out
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, other: &Poly) -> Poly {
        self.same_field(other);
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        self.with_coeffs((0..len).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, other: &Poly) -> Poly {
        self.same_field(other);
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        self.with_coeffs((0..len).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = &self.field;
        self.with_coeffs(self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, other: &Poly) -> Poly {
        self.mul_trunc(other, usize::MAX)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Ascending exponents, explicit integer coefficients: `1 + 2*t^72 + t^152`.
/// Coefficients outside the prime field print as their coordinate vector.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, &c)| {
                let coeff = match self.field.to_prime(c) {
                    Some(v) => v.to_string(),
                    None => format!("{:?}", self.field.coords(c)),
                };
                match (e, coeff.as_str()) {
                    (0, _) => coeff,
                    (1, "1") => "t".to_string(),
                    (1, _) => format!("{coeff}*t"),
                    (_, "1") => format!("t^{e}"),
                    _ => format!("{coeff}*t^{e}"),
                }
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// `[n] = t^(q^n) - t`.
pub fn bracket(n: u32, field: &Field) -> Poly {
    assert!(n >= 1, "[n] needs n >= 1");
    let deg = (field.q() as usize).pow(n);
    let mut coeffs = vec![FieldElem::ZERO; deg + 1];
    coeffs[deg] = field.one();
    coeffs[1] = field.neg(field.one());
    Poly::new(field, coeffs)
}

/// The monic polynomials of degree `d`, in the order of their packed tails
/// `c_0 + c_1 q + ... + c_(d-1) q^(d-1)`.
#[derive(Clone)]
pub struct MonicPolys {
    field: Field,
    degree: usize,
    next: u64,
    end: u64,
}

/// Iterator over `A_(d+)`, refusing enumerations larger than `budget`.
pub fn monic_polys(d: usize, field: &Field, budget: u64) -> Result<MonicPolys> {
    let count = monic_count(d, field)?;
    if count > budget {
        return Err(Error::BudgetExceeded { requested: count, budget });
    }
    Ok(MonicPolys { field: field.clone(), degree: d, next: 0, end: count })
}

/// `q^d`, with overflow reported as an error.
pub fn monic_count(d: usize, field: &Field) -> Result<u64> {
    (field.q() as u64).checked_pow(d as u32).ok_or(Error::Overflow("q^d"))
}

impl MonicPolys {
    /// Restricts the iterator to tails with packed index in `range`.
    pub fn with_range(mut self, range: std::ops::Range<u64>) -> MonicPolys {
        self.next = range.start.max(self.next);
        self.end = range.end.min(self.end);
        self
    }

    /// The monic polynomial of degree `d` with packed tail `index`.
    pub fn nth_monic(field: &Field, d: usize, mut index: u64) -> Poly {
        let q = field.q() as u64;
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(field.elem((index % q) as u32));
            index /= q;
        }
        coeffs.push(field.one());
        Poly::new(field, coeffs)
    }
}

impl Iterator for MonicPolys {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.next >= self.end {
            return None;
        }
        let poly = MonicPolys::nth_monic(&self.field, self.degree, self.next);
        self.next += 1;
        Some(poly)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for MonicPolys {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    fn gf(p: u64, s: u32) -> Field {
        make_field(p, s).unwrap()
    }

    #[test]
    fn gcd_of_bracket_and_t() {
        for (p, s) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = gf(p, s);
            assert_eq!(bracket(1, &f).gcd(&Poly::t(&f)), Poly::t(&f));
        }
    }

    #[test]
    fn bracket_one_squared_over_f2() {
        let f = gf(2, 1);
        let b = bracket(1, &f);
        assert_eq!(b, Poly::from_ints(&f, &[0, 1, 1]));
        assert_eq!(b.pow(2), Poly::from_ints(&f, &[0, 0, 1, 0, 1]));
    }

    #[test]
    fn bracket_over_f3() {
        let f = gf(3, 1);
        assert_eq!(bracket(1, &f), Poly::from_ints(&f, &[0, 2, 0, 1]));
        assert_eq!(bracket(2, &f).degree(), Some(9));
        assert!(bracket(2, &f).is_monic());
    }

    #[test]
    fn bracket_splits_into_linear_factors() {
        for (p, s) in [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3)] {
            let f = gf(p, s);
            let prod = f.elements().fold(Poly::one(&f), |acc, mu| &acc * &Poly::linear(&f, mu));
            assert_eq!(prod, bracket(1, &f));
        }
    }

    #[test]
    fn monic_enumeration() {
        let f = gf(3, 1);
        let d0: Vec<Poly> = monic_polys(0, &f, 10).unwrap().collect();
        assert_eq!(d0, vec![Poly::one(&f)]);
        let d1: Vec<Poly> = monic_polys(1, &f, 10).unwrap().collect();
        assert_eq!(d1.len(), 3);
        assert!(d1.iter().all(|m| m.degree() == Some(1) && m.is_monic()));
        let f2 = gf(2, 1);
        let d2: Vec<Poly> = monic_polys(2, &f2, 10).unwrap().collect();
        assert_eq!(d2.len(), 4);
        let distinct: std::collections::HashSet<Vec<FieldElem>> = d2.iter().map(|m| m.coeffs().to_vec()).collect();
        assert_eq!(distinct.len(), 4);
        assert!(matches!(monic_polys(5, &f, 100), Err(Error::BudgetExceeded { .. })));
        let split: Vec<Poly> = monic_polys(2, &f, 100).unwrap().with_range(3..5).collect();
        assert_eq!(split, vec![MonicPolys::nth_monic(&f, 2, 3), MonicPolys::nth_monic(&f, 2, 4)]);
    }

    #[test]
    fn divrem_by_zero_errors() {
        let f = gf(3, 1);
        assert_eq!(Poly::t(&f).divrem(&Poly::zero(&f)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn display_is_ascending() {
        let f = gf(3, 1);
        let p = Poly::from_ints(&f, &[1, 1, 0, 2]);
        assert_eq!(p.to_string(), "1 + t + 2*t^3");
        assert_eq!(Poly::zero(&f).to_string(), "0");
    }

    fn arb_poly(f: Field) -> impl Strategy<Value = Poly> {
        let q = f.q();
        proptest::collection::vec(0..q, 0..8)
            .prop_map(move |cs| Poly::new(&f, cs.into_iter().map(|c| f.elem(c)).collect()))
    }

    proptest! {
        #[test]
        fn ring_laws_gf4(a in arb_poly(gf(2, 2)), b in arb_poly(gf(2, 2)), c in arb_poly(gf(2, 2))) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
        }

        #[test]
        fn divrem_reconstructs(a in arb_poly(gf(3, 2)), b in arb_poly(gf(3, 2))) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(&(&q * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(gf(5, 1)), b in arb_poly(gf(5, 1))) {
            let g = a.gcd(&b);
            if !g.is_zero() {
                prop_assert!(g.is_monic());
                prop_assert!(a.rem(&g).unwrap().is_zero());
                prop_assert!(b.rem(&g).unwrap().is_zero());
            }
        }

        #[test]
        fn shift_is_invertible(a in arb_poly(gf(3, 2)), th in 0u32..9) {
            let f = gf(3, 2);
            let theta = f.elem(th);
            prop_assert_eq!(a.compose_shift(theta).compose_shift(f.neg(theta)), a.clone());
            for x in f.elements() {
                prop_assert_eq!(a.compose_shift(theta).eval(x), a.eval(f.add(x, theta)));
            }
        }
    }
}
