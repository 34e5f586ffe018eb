use std::collections::BTreeMap;
use std::fmt;

use crate::combinatorics::FpCoeff;
use crate::error::Result;
use crate::field::Field;
use crate::laurent::LaurentTail;
use crate::limits::Limits;
use crate::powersums::ZetaTable;

use super::RelationSet;

/// `coeff * ζ(tuple)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaTerm {
    pub coeff: FpCoeff,
    pub tuple: Vec<u64>,
}

/// `ζ(a) ζ(b) = ζ(a+b) + ζ(a,b) + ζ(b,a) + Σ f_i ζ(a_i, a+b-a_i)`, with equal tuples merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShuffleIdentity {
    q: u64,
    a: u64,
    b: u64,
    rhs: Vec<ZetaTerm>,
}

impl ShuffleIdentity {
    pub fn from_relation(set: &RelationSet) -> Result<ShuffleIdentity> {
        let p = set.p() as u32;
        let (a, b, w) = (set.a(), set.b(), set.weight());
        let one = FpCoeff::one(p);
        let mut merged: BTreeMap<Vec<u64>, FpCoeff> = BTreeMap::new();
        let base = [(vec![w], one), (vec![a, b], one), (vec![b, a], one)];
        let extra = set.terms().iter().map(|t| (vec![t.index, w - t.index], t.coeff));
        for (tuple, c) in base.into_iter().chain(extra) {
            let slot = merged.entry(tuple).or_insert(FpCoeff::zero(p));
            *slot = slot.add(c);
        }
        let rhs =
            merged.into_iter().filter(|(_, c)| !c.is_zero()).map(|(tuple, coeff)| ZetaTerm { coeff, tuple }).collect();
        Ok(ShuffleIdentity { q: set.q(), a, b, rhs })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn lhs(&self) -> (u64, u64) {
        (self.a, self.b)
    }

    pub fn rhs(&self) -> &[ZetaTerm] {
        &self.rhs
    }

    /// Copy with the `i`-th right-hand term removed.
    pub fn without_term(&self, i: usize) -> ShuffleIdentity {
        let mut out = self.clone();
        out.rhs.remove(i);
        out
    }

    /// `ζ(a) ζ(b) - rhs`, expanded at infinity.
    pub fn defect(&self, field: &Field, precision: i64, limits: &Limits) -> Result<LaurentTail> {
        let mut table = ZetaTable::new(field, limits, precision)?;
        let mut diff = table.zeta(&[self.a])?.mul(&table.zeta(&[self.b])?);
        for term in &self.rhs {
            let c = field.from_int(term.coeff.value() as i64);
            diff = diff.sub(&table.zeta(&term.tuple)?.scale(c));
        }
        Ok(diff.truncate(precision))
    }

    /// True when both sides agree through `t^(-precision)`.
    pub fn verify(&self, field: &Field, precision: i64, limits: &Limits) -> Result<bool> {
        let diff = self.defect(field, precision, limits)?;
        Ok(diff.precision() >= precision && diff.is_zero_to_precision())
    }
}

impl fmt::Display for ShuffleIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ({})ζ({}) = ", self.a, self.b)?;
        let terms: Vec<String> = self
            .rhs
            .iter()
            .map(|t| {
                let args: Vec<String> = t.tuple.iter().map(u64::to_string).collect();
                if t.coeff.value() == 1 {
                    format!("ζ({})", args.join(","))
                } else {
                    format!("{}*ζ({})", t.coeff.value(), args.join(","))
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
