//! Log-table arithmetic in a moderately sized extension `GF(p^n)`.
//!
//! Elements are stored as discrete logarithms to a fixed primitive element `g`,
//! so multiplication and powers are index arithmetic and addition goes through
//! a Zech table `log(1 + g^k)`.

use crate::error::{Error, Result};
use crate::field::{make_field, Field, FieldElem};
use crate::poly::Poly;

/// An element of the extension, as `g^k` or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LogElem(u32);

impl LogElem {
    pub const ZERO: LogElem = LogElem(u32::MAX);
    pub const ONE: LogElem = LogElem(0);

    pub fn is_zero(self) -> bool {
        self == LogElem::ZERO
    }

    pub fn log(self) -> Option<u32> {
        (!self.is_zero()).then_some(self.0)
    }
}

pub struct ExtField {
    p: u32,
    n: u32,
    order: u64,
    modulus: Vec<u32>,
    // exp[k] is g^k as a packed base-p coordinate vector
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    minus_one: LogElem,
}

impl ExtField {
    /// Builds `GF(p^n)` from the lexicographically first primitive polynomial.
    pub fn new(p: u32, n: u32, max_order: u64) -> Result<ExtField> {
        let order = (p as u64).checked_pow(n).ok_or(Error::Overflow("p^n"))?;
        if order > max_order || order > u32::MAX as u64 {
            return Err(Error::UnsupportedSize { p: p as u64, s: n });
        }
        let base = make_field(p as u64, 1)?;
        let modulus = first_primitive(&base, n, order - 1);
        let group = (order - 1) as usize;
        let mut exp = vec![0u32; group];
        let mut log = vec![u32::MAX; order as usize];
        let mut cur = vec![0u32; n as usize];
        cur[0] = 1;
        for (k, slot) in exp.iter_mut().enumerate() {
            let packed = pack(&cur, p);
            *slot = packed;
            log[packed as usize] = k as u32;
            times_x(&mut cur, &modulus, p);
        }
        let mut zech = vec![u32::MAX; group];
        for (k, z) in zech.iter_mut().enumerate() {
            let mut digits = unpack(exp[k], p, n);
            digits[0] = (digits[0] + 1) % p;
            let packed = pack(&digits, p);
            if packed != 0 {
                *z = log[packed as usize];
            }
        }
        let minus_one = LogElem(log[(p - 1) as usize]);
        Ok(ExtField { p, n, order, modulus, exp, log, zech, minus_one })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn group(&self) -> u64 {
        self.order - 1
    }

    /// `g^k`.
    pub fn power_of_generator(&self, k: u64) -> LogElem {
        LogElem((k % self.group()) as u32)
    }

    /// The prime-field constant `c mod p`.
    pub fn from_prime(&self, c: u32) -> LogElem {
        let c = c % self.p;
        if c == 0 {
            LogElem::ZERO
        } else {
            LogElem(self.log[c as usize])
        }
    }

    /// Coordinates of `x` in the basis `1, g, ..., g^(n-1)`.
    pub fn coords(&self, x: LogElem) -> Vec<u32> {
        match x.log() {
            None => vec![0; self.n as usize],
            Some(k) => unpack(self.exp[k as usize], self.p, self.n),
        }
    }

    pub fn mul(&self, x: LogElem, y: LogElem) -> LogElem {
        if x.is_zero() || y.is_zero() {
            return LogElem::ZERO;
        }
        let s = x.0 as u64 + y.0 as u64;
        LogElem((s % self.group()) as u32)
    }

    pub fn add(&self, x: LogElem, y: LogElem) -> LogElem {
        if x.is_zero() {
            return y;
        }
        if y.is_zero() {
            return x;
        }
        let g = self.group();
        let diff = (y.0 as u64 + g - x.0 as u64) % g;
        let z = self.zech[diff as usize];
        if z == u32::MAX {
            return LogElem::ZERO;
        }
        LogElem(((x.0 as u64 + z as u64) % g) as u32)
    }

    pub fn neg(&self, x: LogElem) -> LogElem {
        self.mul(x, self.minus_one)
    }

    pub fn sub(&self, x: LogElem, y: LogElem) -> LogElem {
        self.add(x, self.neg(y))
    }

    /// `x^e` for any integer `e`; errors on a negative power of zero.
    pub fn pow(&self, x: LogElem, e: i64) -> Result<LogElem> {
        match x.log() {
            None if e > 0 => Ok(LogElem::ZERO),
            None if e == 0 => Ok(LogElem::ONE),
            None => Err(Error::DivisionByZero),
            Some(k) => {
                let g = self.group() as i128;
                Ok(LogElem(((k as i128 * e as i128).rem_euclid(g)) as u32))
            }
        }
    }

    /// Size of the orbit of `x` under `y -> y^q`.
    pub fn frobenius_orbit_len(&self, x: LogElem, q: u64) -> u32 {
        let Some(k) = x.log() else { return 1 };
        let g = self.group();
        let start = k as u64;
        let mut cur = (start * (q % g)) % g;
        let mut len = 1;
        while cur != start {
            cur = (cur * (q % g)) % g;
            len += 1;
        }
        len
    }

    /// An embedding of `small` into this field, as the images of the elements of `small`
    /// indexed by [`FieldElem::index`]. Requires `small.s()` to divide the degree.
    pub fn embedding(&self, small: &Field) -> Result<Vec<LogElem>> {
        if small.p() != self.p || self.n % small.s() != 0 {
            return Err(Error::InvalidArgument(format!("{small:?} does not embed in GF({}^{})", self.p, self.n)));
        }
        let s = small.s();
        let q = small.q() as u64;
        // a root of the defining polynomial of `small` is zero or lies in the subgroup of order q - 1
        let step = self.group() / (q - 1);
        let root = std::iter::once(LogElem::ZERO)
            .chain((0..q - 1).map(|k| self.power_of_generator(k * step)))
            .find(|&rho| {
                let value = small
                    .modulus()
                    .iter()
                    .rev()
                    .fold(LogElem::ZERO, |acc, &c| self.add(self.mul(acc, rho), self.from_prime(c)));
                value.is_zero()
            })
            .ok_or_else(|| Error::InvalidArgument("no root of the defining polynomial".into()))?;
        let mut image = Vec::with_capacity(small.q() as usize);
        for x in small.elements() {
            let coords = small.coords(x);
            let mut acc = LogElem::ZERO;
            for i in (0..s as usize).rev() {
                acc = self.add(self.mul(acc, root), self.from_prime(coords[i]));
            }
            image.push(acc);
        }
        Ok(image)
    }
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn unpack(mut x: u32, p: u32, n: u32) -> Vec<u32> {
    let mut out = vec![0; n as usize];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

// cur <- x * cur mod (monic modulus of degree n)
fn times_x(cur: &mut [u32], modulus: &[u32], p: u32) {
    let n = cur.len();
    let top = cur[n - 1];
    for i in (1..n).rev() {
        cur[i] = cur[i - 1];
    }
    cur[0] = 0;
    if top != 0 {
        for i in 0..n {
            cur[i] = (cur[i] + (p - top) * modulus[i] % p) % p;
        }
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(base: &Poly, mut e: u64, modulus: &Poly) -> Poly {
    let mut acc = Poly::one(base.field());
    let mut b = base.rem(modulus).unwrap();
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &b).rem(modulus).unwrap();
        }
        e >>= 1;
        if e > 0 {
            b = (&b * &b).rem(modulus).unwrap();
        }
    }
    acc
}

// x has multiplicative order p^n - 1 modulo f only when F_p[x]/(f) is a field
// generated by x, so no separate irreducibility test is needed
fn first_primitive(base: &Field, n: u32, group: u64) -> Vec<u32> {
    let p = base.p();
    let factors = prime_factors(group);
    let x = Poly::t(base);
    let total = (p as u64).pow(n);
    for idx in 0..total {
        let mut coeffs: Vec<FieldElem> = unpack(idx as u32, p, n).into_iter().map(|c| base.elem(c)).collect();
        if coeffs[0].is_zero() {
            continue;
        }
        coeffs.push(base.one());
        let f = Poly::new(base, coeffs);
        if !pow_mod(&x, group, &f).is_one() {
            continue;
        }
        if factors.iter().all(|&r| !pow_mod(&x, group / r, &f).is_one()) {
            return f.coeffs()[..n as usize].iter().map(|&c| c.index()).collect();
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_is_built_from_x3_x_1() {
        let e = ExtField::new(2, 3, 1 << 20).unwrap();
        assert_eq!(e.modulus(), &[1, 1, 0]);
        assert_eq!(e.order(), 8);
    }

    #[test]
    fn arithmetic_matches_the_table_field() {
        for (p, n) in [(2u32, 4u32), (3, 2), (5, 2), (3, 3)] {
            let e = ExtField::new(p, n, 1 << 20).unwrap();
            let elems: Vec<LogElem> =
                std::iter::once(LogElem::ZERO).chain((0..e.order() - 1).map(|k| e.power_of_generator(k))).collect();
            for &x in &elems {
                assert!(e.add(x, e.neg(x)).is_zero());
                for &y in &elems {
                    assert_eq!(e.add(x, y), e.add(y, x));
                    for &z in elems.iter().step_by(3) {
                        assert_eq!(e.mul(x, e.add(y, z)), e.add(e.mul(x, y), e.mul(x, z)));
                        assert_eq!(e.add(e.add(x, y), z), e.add(x, e.add(y, z)));
                    }
                }
            }
            let mut acc = LogElem::ZERO;
            for _ in 0..p {
                acc = e.add(acc, LogElem::ONE);
            }
            assert!(acc.is_zero());
        }
    }

    #[test]
    fn embedding_is_a_ring_homomorphism() {
        let small = make_field(3, 2).unwrap();
        let e = ExtField::new(3, 4, 1 << 20).unwrap();
        let image = e.embedding(&small).unwrap();
        for x in small.elements() {
            for y in small.elements() {
                let (ix, iy) = (image[x.index() as usize], image[y.index() as usize]);
                assert_eq!(image[small.add(x, y).index() as usize], e.add(ix, iy));
                assert_eq!(image[small.mul(x, y).index() as usize], e.mul(ix, iy));
            }
        }
    }

    #[test]
    fn frobenius_orbits() {
        let e = ExtField::new(2, 6, 1 << 20).unwrap();
        assert_eq!(e.frobenius_orbit_len(LogElem::ONE, 2), 1);
        // g^9 has order 7 and lies in GF(8)
        assert_eq!(e.frobenius_orbit_len(e.power_of_generator(9), 2), 3);
        assert_eq!(e.frobenius_orbit_len(e.power_of_generator(1), 2), 6);
        assert_eq!(e.frobenius_orbit_len(e.power_of_generator(1), 4), 3);
    }
}
