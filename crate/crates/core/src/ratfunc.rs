//! Reduced rational functions over `GF(q)` and their power-series expansions at `t = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::poly::Poly;

/// `num / den` with `den` monic, nonzero and coprime to `num`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> RatFunc {
        let field = num.field().clone();
        if num.is_zero() {
            return RatFunc { num, den: Poly::one(&field) };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) =
            if g.is_one() { (num, den) } else { (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) };
        if !den.is_monic() {
            let inv = field.inv(den.lead()).unwrap();
            num = num.scale(inv);
            den = den.scale(inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> RatFunc {
        let one = Poly::one(p.field());
        RatFunc { num: p, den: one }
    }

    pub fn zero(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Field) -> RatFunc {
        RatFunc::from_poly(Poly::one(field))
    }

    /// `1 / p^s`.
    pub fn inverse_power(p: &Poly, s: u64) -> Result<RatFunc> {
        RatFunc::new(Poly::one(p.field()), p.pow(s))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn scale(&self, c: FieldElem) -> RatFunc {
        RatFunc::reduce(self.num.scale(c), self.den.clone())
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFunc {
        RatFunc::reduce(&self.num * p, self.den.clone())
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> RatFunc {
        let mut base = self.clone();
        let mut acc = RatFunc::one(self.field());
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

    /// Coefficients of `t^0, ..., t^(n-1)` in the expansion at `t = 0`.
    pub fn series_at_zero(&self, n: usize) -> Result<Vec<FieldElem>> {
        series_quotient(&self.num, &self.den, n)
    }
}

/// First `n` power-series coefficients of `num / den`; `den(0)` must be nonzero.
pub fn series_quotient(num: &Poly, den: &Poly, n: usize) -> Result<Vec<FieldElem>> {
    let f = num.field();
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Err(Error::PoleAtZero);
    }
    let inv0 = f.inv(d0)?;
    let dc = den.coeffs();
    let mut out: Vec<FieldElem> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = num.coeff(k);
        for i in 1..dc.len().min(k + 1) {
            acc = f.sub(acc, f.mul(dc[i], out[k - i]));
        }
        out.push(f.mul(acc, inv0));
    }
    Ok(out)
}

/// Inverse of a unit power series modulo `t^n`.
pub fn series_inverse(p: &Poly, n: usize) -> Result<Poly> {
    let coeffs = series_quotient(&Poly::one(p.field()), p, n)?;
    Ok(Poly::new(p.field(), coeffs))
}

fn cross(a: &RatFunc, b: &RatFunc, add: bool) -> RatFunc {
    if a.den == b.den {
        let num = if add { &a.num + &b.num } else { &a.num - &b.num };
        return RatFunc::reduce(num, a.den.clone());
    }
    let g = a.den.gcd(&b.den);
    let (ad, bd) = (a.den.div_exact(&g).unwrap(), b.den.div_exact(&g).unwrap());
    let (l, r) = (&a.num * &bd, &b.num * &ad);
    let num = if add { &l + &r } else { &l - &r };
    RatFunc::reduce(num, &a.den * &bd)
}

impl Add for &RatFunc {
    type Output = RatFunc;

    fn add(self, other: &RatFunc) -> RatFunc {
        cross(self, other, true)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;

    fn sub(self, other: &RatFunc) -> RatFunc {
        cross(self, other, false)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;

    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;

    fn mul(self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero(self.field());
        }
        // cancel crosswise first so the products stay small
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let inv = self.field().inv(den.lead()).unwrap();
        RatFunc { num: num.scale(inv), den: den.scale(inv) }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}
