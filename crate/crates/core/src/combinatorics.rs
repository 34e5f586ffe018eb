//! Base-`p` digit machinery, binomial and multinomial coefficients modulo `p`
//! through Lucas' theorem, and the index quantities that drive the recursion
//! for the relation sets: `r_a`, `j_max`, `phi`, `i_j`, `l_j`, `t_a`, `f_(a,j)`
//! and `c_(a,j)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power_decomposition};

/// A residue in `[0, p)`.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpCoeff {
    value: u32,
    p: u32,
}

impl FpCoeff {
    pub fn new(value: i64, p: u32) -> FpCoeff {
        FpCoeff { value: value.rem_euclid(p as i64) as u32, p }
    }

    pub fn zero(p: u32) -> FpCoeff {
        FpCoeff { value: 0, p }
    }

    pub fn one(p: u32) -> FpCoeff {
        FpCoeff::new(1, p)
    }

    /// `(-1)^e`, taken as `p - 1` rather than a signed integer.
    pub fn sign(e: u64, p: u32) -> FpCoeff {
        if e % 2 == 0 {
            FpCoeff::one(p)
        } else {
            FpCoeff::new(p as i64 - 1, p)
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, other: FpCoeff) -> FpCoeff {
        debug_assert_eq!(self.p, other.p);
        FpCoeff { value: (self.value + other.value) % self.p, p: self.p }
    }

    pub fn mul(self, other: FpCoeff) -> FpCoeff {
        debug_assert_eq!(self.p, other.p);
        FpCoeff { value: (self.value * other.value) % self.p, p: self.p }
    }

    pub fn neg(self) -> FpCoeff {
        FpCoeff { value: (self.p - self.value) % self.p, p: self.p }
    }

    pub fn inv(self) -> Result<FpCoeff> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // p is prime, so x^(p-2) is the inverse
        let mut acc = 1u64;
        for _ in 0..self.p - 2 {
            acc = acc * self.value as u64 % self.p as u64;
        }
        Ok(FpCoeff { value: acc as u32, p: self.p })
    }
}

impl fmt::Debug for FpCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.p)
    }
}

impl fmt::Display for FpCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Little-endian base-`p` digits of `n`; `[0]` for `n = 0`.
pub fn base_p_digits(n: u64, p: u64) -> Vec<u64> {
    if n == 0 {
        return vec![0];
    }
    let mut digits = Vec::new();
    let mut rest = n;
    while rest > 0 {
        digits.push(rest % p);
        rest /= p;
    }
    digits
}

/// Sum of the base-`base` digits of `n`.
pub fn digit_sum(n: u64, base: u64) -> u64 {
    base_p_digits(n, base).iter().sum()
}

/// `binom(n, k) mod p`, digit by digit.
pub fn lucas_binom(n: u64, k: u64, p: u32) -> FpCoeff {
    if k > n {
        return FpCoeff::zero(p);
    }
    let pp = p as u64;
    let (mut n, mut k) = (n, k);
    let mut acc = FpCoeff::one(p);
    while k > 0 {
        let (nd, kd) = (n % pp, k % pp);
        if kd > nd {
            return FpCoeff::zero(p);
        }
        acc = acc.mul(small_binom(nd, kd, p));
        n /= pp;
        k /= pp;
    }
    acc
}

/// `binom(n, k) mod p` for `k <= n < p` via Pascal's rule.
fn small_binom(n: u64, k: u64, p: u32) -> FpCoeff {
    let k = k.min(n - k) as usize;
    let mut row = vec![0u64; k + 1];
    row[0] = 1;
    for i in 1..=n as usize {
        for j in (1..=k.min(i)).rev() {
            row[j] = (row[j] + row[j - 1]) % p as u64;
        }
    }
    FpCoeff::new(row[k] as i64, p)
}

/// Multinomial coefficient `n! / (parts_1! ... parts_r!) mod p`, as a product of
/// binomials over prefix sums.
pub fn lucas_multinom(n: u64, parts: &[u64], p: u32) -> Result<FpCoeff> {
    let total: u64 = parts.iter().sum();
    if total != n {
        return Err(Error::PartsSumMismatch { expected: n, got: total });
    }
    let mut acc = FpCoeff::one(p);
    let mut prefix = 0;
    for &part in parts {
        prefix += part;
        acc = acc.mul(lucas_binom(prefix, part, p));
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// Every `k` in `[0, n]` with `binom(n, k) != 0 mod p`, ascending.
pub fn nonzero_binomial_indices(n: u64, p: u32) -> Vec<u64> {
    let pp = p as u64;
    let mut out = vec![0u64];
    let mut place = 1u64;
    let mut rest = n;
    while rest > 0 {
        let digit = rest % pp;
        let current = out.clone();
        for d in 1..=digit {
            out.extend(current.iter().map(|&k| k + d * place));
        }
        rest /= pp;
        place *= pp;
    }
    out.sort_unstable();
    out
}

/// Every `parts`-tuple of non-negative integers summing to `n` whose multinomial
/// coefficient is nonzero mod `p`: exactly those obtained by splitting each
/// base-`p` digit of `n` without carries.
pub fn nonzero_multinomial_tuples(n: u64, parts: usize, p: u32) -> Vec<Vec<u64>> {
    assert!(parts >= 1);
    let pp = p as u64;
    let mut out = vec![vec![0u64; parts]];
    let mut place = 1u64;
    let mut rest = n;
    while rest > 0 {
        let digit = rest % pp;
        let splits = weak_compositions(digit, parts);
        out = out
            .iter()
            .flat_map(|base| {
                splits.iter().map(move |split| base.iter().zip(split).map(|(b, d)| b + d * place).collect())
            })
            .collect();
        rest /= pp;
        place *= pp;
    }
    out
}

/// All ways to write `n` as an ordered sum of `parts` non-negative integers.
pub fn weak_compositions(n: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![n]];
    }
    (0..=n)
        .flat_map(|first| {
            weak_compositions(n - first, parts - 1).into_iter().map(move |mut tail| {
                tail.insert(0, first);
                tail
            })
        })
        .collect()
}

/// Index data attached to a positive integer `a` and a field order `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexProfile {
    pub a: u64,
    pub q: u64,
    pub p: u64,
    pub s: u32,
    /// Smallest `m` with `a <= p^m`.
    pub m: u32,
    /// `p^m`.
    pub p_m: u64,
    /// Recursion length `r_a = (q - 1) p^m`.
    pub r_a: u64,
    /// `floor((r_a - a) / (q - 1))`.
    pub j_max: u64,
    /// Number of terms added per recursion step.
    pub t_a: u64,
    /// The `m` base-`p` digits of `a - 1`, little-endian, zero padded.
    pub digits_a_minus_1: Vec<u64>,
}

impl IndexProfile {
    pub fn new(a: u64, q: u64) -> Result<IndexProfile> {
        if a == 0 {
            return Err(Error::InvalidArgument("a must be positive".into()));
        }
        let (p, s) = prime_power_decomposition(q)?;
        let mut m = 0u32;
        let mut p_m = 1u64;
        while p_m < a {
            p_m = p_m.checked_mul(p).ok_or(Error::Overflow("p^m"))?;
            m += 1;
        }
        let r_a = (q - 1).checked_mul(p_m).ok_or(Error::Overflow("r_a"))?;
        let j_max = (r_a - a) / (q - 1);
        let mut digits_a_minus_1 = Vec::with_capacity(m as usize);
        let mut rest = a - 1;
        for _ in 0..m {
            digits_a_minus_1.push(rest % p);
            rest /= p;
        }
        let t_a = digits_a_minus_1
            .iter()
            .filter(|&&d| d <= p - 2)
            .map(|&d| p - d)
            .try_fold(1u64, |acc, f| acc.checked_mul(f))
            .ok_or(Error::Overflow("t_a"))?;
        Ok(IndexProfile { a, q, p, s, m, p_m, r_a, j_max, t_a, digits_a_minus_1 })
    }

    fn prime(&self) -> u32 {
        self.p as u32
    }

    /// Largest admissible `j` for the `i_j`, `l_j`, `f_(a,j)` family.
    pub fn j_top(&self) -> u64 {
        self.p_m - self.a
    }

    fn check_top(&self, j: u64) -> Result<()> {
        if j > self.j_top() {
            return Err(Error::JOutOfRange { j, max: self.j_top() });
        }
        Ok(())
    }

    /// `phi(j) = r_a - a - j (q - 1)` for `0 <= j <= j_max`.
    pub fn phi(&self, j: u64) -> Result<u64> {
        if j > self.j_max {
            return Err(Error::JOutOfRange { j, max: self.j_max });
        }
        Ok(self.r_a - self.a - j * (self.q - 1))
    }

    /// The unique `0 <= i < q - 1` with `j + i p^m = 0 mod (q - 1)`.
    pub fn i_of_j(&self, j: u64) -> Result<u64> {
        self.check_top(j)?;
        let modulus = self.q - 1;
        let step = self.p_m % modulus;
        Ok((0..modulus).find(|&i| (j + i * step) % modulus == 0).expect("p^m is a unit modulo q - 1"))
    }

    /// `l_j = (j + i_j p^m) / (q - 1)`.
    pub fn l_of_j(&self, j: u64) -> Result<u64> {
        Ok(self.shifted_index(j)? / (self.q - 1))
    }

    /// `j + i_j p^m`, always a multiple of `q - 1` and at most `r_a - a`.
    pub fn shifted_index(&self, j: u64) -> Result<u64> {
        Ok(j + self.i_of_j(j)? * self.p_m)
    }

    /// `f_(a,j) = binom(p^m - a, j) (-1)^j`.
    pub fn f_aj(&self, j: u64) -> Result<FpCoeff> {
        self.check_top(j)?;
        let p = self.prime();
        Ok(lucas_binom(self.j_top(), j, p).mul(FpCoeff::sign(j, p)))
    }

    /// Every `j` with `f_(a,j) != 0`, ascending.
    pub fn nonzero_f_indices(&self) -> Vec<u64> {
        nonzero_binomial_indices(self.j_top(), self.prime())
    }

    /// `c_(a,j)`, defined for prime `q` only.
    pub fn c_aj(&self, j: u64) -> Result<FpCoeff> {
        if self.s != 1 || !is_prime(self.q) {
            return Err(Error::NonPrimeQ(self.q));
        }
        if j > self.j_max {
            return Err(Error::JOutOfRange { j, max: self.j_max });
        }
        let p = self.prime();
        if j == 0 {
            return Ok(FpCoeff::one(p));
        }
        let num = j * (self.q - 1);
        let ceil = num.div_ceil(self.j_max);
        let scale = FpCoeff::new(ceil as i64, p).inv()?;
        Ok(scale.mul(lucas_binom(self.r_a - self.a, num, p)))
    }
}
