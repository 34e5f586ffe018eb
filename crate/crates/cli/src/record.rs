use fqzeta::relations::{Method, RelationSet};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: u32,
    pub index: u64,
}

/// One relation set on the wire. Field order is part of the format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub q: u64,
    pub p: u64,
    pub s: u32,
    pub a: u64,
    pub b: u64,
    pub weight: u64,
    pub method: String,
    pub terms: Vec<TermRecord>,
    pub verified_depths: Vec<usize>,
}

impl RelationRecord {
    pub fn new(set: &RelationSet, s: u32, method: Method, verified_depths: Vec<usize>) -> RelationRecord {
        RelationRecord {
            q: set.q(),
            p: set.p(),
            s,
            a: set.a(),
            b: set.b(),
            weight: set.weight(),
            method: method.name().to_string(),
            terms: set.terms().iter().map(|t| TermRecord { coeff: t.coeff.value(), index: t.index }).collect(),
            verified_depths,
        }
    }
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTable {
    pub schema_version: u32,
    pub records: Vec<RelationRecord>,
}

#[derive(Debug, Serialize)]
pub struct AgreementReport {
    pub schema_version: u32,
    pub records: Vec<RelationRecord>,
    pub agree: bool,
}

#[derive(Debug, Serialize)]
pub struct MonomialRecord {
    pub coeff: u32,
    pub exponent: usize,
}

#[derive(Debug, Serialize)]
pub struct GRecord {
    pub q: u64,
    pub a: u64,
    pub terms: Vec<MonomialRecord>,
}

#[derive(Debug, Serialize)]
pub struct CheckRecord {
    pub check: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub q: u64,
    pub a: u64,
    pub b: u64,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}
