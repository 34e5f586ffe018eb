//! Exact arithmetic in `GF(q)`, `q = p^s`.
//!
//! Elements are stored as their coordinate vector in the power basis of the
//! defining modulus, packed into a single integer `c_0 + c_1 p + ... + c_{s-1} p^{s-1}`.
//! Addition and multiplication go through precomputed tables, which is cheap
//! for the field sizes used here (`q <= 64` by default).

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Hard ceiling on table-backed fields regardless of configured limits.
const TABLE_CEILING: u64 = 1 << 12;

/// An element of `GF(q)`. Only meaningful together with the [`Field`] it came from.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Packed coordinate index in `[0, q)`.
    pub fn index(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Parameters and operation tables for `GF(p^s)`.
pub struct FieldParams {
    p: u32,
    s: u32,
    q: u32,
    /// Monic modulus over `F_p`, little-endian, length `s + 1`.
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// Shared handle to a finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldParams>);

impl Deref for Field {
    type Target = FieldParams;

    fn deref(&self) -> &FieldParams {
        &self.0
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p == other.p && self.modulus == other.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.s)
    }
}

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, s)` with `q = p^s`, or reports that it is not a prime power.
pub fn prime_power_decomposition(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotAPrimePower(q));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut rest = q;
    let mut s = 0;
    while rest % p == 0 {
        rest /= p;
        s += 1;
    }
    if rest != 1 {
        return Err(Error::NotAPrimePower(q));
    }
    Ok((p, s))
}

/// Builds `GF(p^s)` with the default [`Limits`].
pub fn make_field(p: u64, s: u32) -> Result<Field> {
    Field::with_limits(p, s, &Limits::default())
}

impl Field {
    pub fn new(p: u64, s: u32) -> Result<Field> {
        make_field(p, s)
    }

    /// Builds the field of order `q`, factoring `q` first.
    pub fn from_order(q: u64, limits: &Limits) -> Result<Field> {
        let (p, s) = prime_power_decomposition(q)?;
        Field::with_limits(p, s, limits)
    }

    pub fn with_limits(p: u64, s: u32, limits: &Limits) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        if s == 0 {
            return Err(Error::InvalidArgument("field degree s must be at least 1".into()));
        }
        let q = p
            .checked_pow(s)
            .filter(|&q| q <= limits.max_q && p <= limits.max_p && q <= TABLE_CEILING)
            .ok_or(Error::UnsupportedSize { p, s })?;
        let (p, q) = (p as u32, q as u32);
        let modulus = first_irreducible(p, s);
        Ok(Field(Arc::new(FieldParams::build(p, s, q, modulus))))
    }
}

impl FieldParams {
    fn build(p: u32, s: u32, q: u32, modulus: Vec<u32>) -> FieldParams {
        let n = q as usize;
        let coords: Vec<Vec<u32>> = (0..q).map(|x| unpack(x, p, s)).collect();
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let sum: Vec<u32> = coords[x].iter().zip(&coords[y]).map(|(a, b)| (a + b) % p).collect();
                add[x * n + y] = pack(&sum, p);
                mul[x * n + y] = pack(&mul_mod(&coords[x], &coords[y], &modulus, p), p);
            }
        }
        let neg = (0..n).map(|x| (0..n).find(|&y| add[x * n + y] == 0).unwrap() as u32).collect();
        let inv = (0..n).map(|x| (0..n).find(|&y| mul[x * n + y] == 1).unwrap_or(0) as u32).collect();
        FieldParams { p, s, q, modulus, add, mul, neg, inv }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Defining modulus over `F_p`, little-endian coefficients, monic of degree `s`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// Image of an integer under `Z -> F_p -> GF(q)`.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.p as i64) as u32)
    }

    /// The residue in `[0, p)` when `x` lies in the prime field.
    pub fn to_prime(&self, x: FieldElem) -> Option<u32> {
        (x.0 < self.p).then_some(x.0)
    }

    pub fn coords(&self, x: FieldElem) -> Vec<u32> {
        unpack(x.0, self.p, self.s)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElem> {
        if coords.len() != self.s as usize || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!(
                "coordinates {coords:?} do not describe an element of GF({}^{})",
                self.p, self.s
            )));
        }
        Ok(FieldElem(pack(coords, self.p)))
    }

    /// Element with packed index `i`.
    pub fn elem(&self, i: u32) -> FieldElem {
        debug_assert!(i < self.q);
        FieldElem(i)
    }

    #[inline]
    fn slot(&self, x: FieldElem, y: FieldElem) -> usize {
        debug_assert!(x.0 < self.q && y.0 < self.q, "element from a different field");
        (x.0 * self.q + y.0) as usize
    }

    #[inline]
    pub fn add(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        FieldElem(self.add[self.slot(x, y)])
    }

    #[inline]
    pub fn neg(&self, x: FieldElem) -> FieldElem {
        FieldElem(self.neg[x.0 as usize])
    }

    #[inline]
    pub fn sub(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        self.add(x, self.neg(y))
    }

    #[inline]
    pub fn mul(&self, x: FieldElem, y: FieldElem) -> FieldElem {
        FieldElem(self.mul[self.slot(x, y)])
    }

    pub fn inv(&self, x: FieldElem) -> Result<FieldElem> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElem(self.inv[x.0 as usize]))
    }

    pub fn div(&self, x: FieldElem, y: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: FieldElem, mut e: u64) -> FieldElem {
        let mut base = x;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// All `q` elements, zero first, in lexicographic order of the coordinate
    /// vectors read from the highest coordinate down.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q).map(FieldElem)
    }

    /// The nonzero elements.
    pub fn units(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (1..self.q).map(FieldElem)
    }
}

/// Ordered list of every element of the field.
pub fn enumerate_field(field: &Field) -> Vec<FieldElem> {
    field.elements().collect()
}

fn unpack(mut x: u32, p: u32, s: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(s as usize);
    for _ in 0..s {
        out.push(x % p);
        x /= p;
    }
    out
}

fn pack(coords: &[u32], p: u32) -> u32 {
    coords.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two coordinate vectors reduced by the monic `modulus`.
fn mul_mod(x: &[u32], y: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let s = modulus.len() - 1;
    let mut prod = vec![0u32; x.len() + y.len()];
    for (i, &a) in x.iter().enumerate() {
        for (j, &b) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + a * b) % p;
        }
    }
    reduce(&mut prod, modulus, p);
    prod.resize(s, 0);
    prod
}

/// In-place remainder of `f` by the monic `g`, leaving `deg < deg g`.
fn reduce(f: &mut Vec<u32>, g: &[u32], p: u32) {
    let dg = g.len() - 1;
    while f.len() > dg {
        let lead = f.pop().unwrap();
        if lead != 0 {
            let off = f.len() - dg;
            for (k, &gk) in g[..dg].iter().enumerate() {
                f[off + k] = (f[off + k] + (p - lead) * gk) % p;
            }
        }
    }
}

/// Lexicographically first monic irreducible polynomial of degree `s` over `F_p`,
/// found by trial division with every monic polynomial of degree at most `s / 2`.
fn first_irreducible(p: u32, s: u32) -> Vec<u32> {
    let count = p.pow(s);
    for tail in 0..count {
        let mut f = unpack(tail, p, s);
        f.push(1);
        let has_factor = (1..=s / 2).any(|deg| {
            (0..p.pow(deg)).any(|gtail| {
                let mut g = unpack(gtail, p, deg);
                g.push(1);
                let mut r = f.clone();
                reduce(&mut r, &g, p);
                r.iter().all(|&c| c == 0)
            })
        });
        if !has_factor {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fields() -> Vec<Field> {
        [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (2, 4)]
            .into_iter()
            .map(|(p, s)| make_field(p, s).unwrap())
            .collect()
    }

    #[test]
    fn prime_field_is_residues() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(enumerate_field(&f), vec![FieldElem::ZERO, FieldElem::ONE]);
    }

    #[test]
    fn gf4_modulus_is_x2_x_1() {
        // the only monic irreducible quadratic over F_2
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn gf9_modulus_is_first_rootless_quadratic() {
        let f = make_field(3, 2).unwrap();
        // exhaustive oracle: first monic quadratic (ordered by (c1, c0)) with no root in F_3
        let expected = (0..9u32)
            .map(|i| (i % 3, i / 3))
            .find(|&(c0, c1)| (0..3u32).all(|x| (x * x + c1 * x + c0) % 3 != 0))
            .unwrap();
        assert_eq!(f.modulus(), &[expected.0, expected.1, 1]);
    }

    #[test]
    fn gf5_inverse_of_two() {
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.inv(f.from_int(2)).unwrap(), f.from_int(3));
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NonPrimeP(4));
        assert_eq!(make_field(2, 7).unwrap_err(), Error::UnsupportedSize { p: 2, s: 7 });
        assert_eq!(make_field(37, 1).unwrap_err(), Error::UnsupportedSize { p: 37, s: 1 });
        assert!(prime_power_decomposition(12).is_err());
        assert_eq!(prime_power_decomposition(9).unwrap(), (3, 2));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in fields() {
            let els = enumerate_field(&f);
            assert_eq!(els.len() as u32, f.q());
            assert_eq!(els[0], FieldElem::ZERO);
            for &x in &els {
                assert_eq!(f.add(x, f.neg(x)), f.zero());
                if !x.is_zero() {
                    assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
                }
                for &y in &els {
                    assert_eq!(f.add(x, y), f.add(y, x));
                    assert_eq!(f.mul(x, y), f.mul(y, x));
                    for &z in &els {
                        assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                        assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                        assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        for f in fields() {
            let p = f.p() as u64;
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(f.pow(f.add(x, y), p), f.add(f.pow(x, p), f.pow(y, p)));
                }
            }
        }
    }

    #[test]
    fn character_sums_over_units() {
        for f in fields() {
            let q1 = (f.q() - 1) as u64;
            for l in 0..=3 * q1 {
                let sum = f.units().fold(f.zero(), |acc, x| f.add(acc, f.pow(x, l)));
                let expected = if l % q1 == 0 { f.from_int(-1) } else { f.zero() };
                assert_eq!(sum, expected, "{f:?}, l = {l}");
            }
        }
    }

    #[test]
    fn coordinates_round_trip() {
        let f = make_field(3, 2).unwrap();
        for x in f.elements() {
            assert_eq!(f.from_coords(&f.coords(x)).unwrap(), x);
        }
        assert!(f.from_coords(&[3, 0]).is_err());
    }
}
