/// Size limits shared by every layer that enumerates or tabulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible field order `q = p^s`.
    pub max_q: u64,
    /// Largest admissible characteristic.
    pub max_p: u64,
    /// Largest number of monic polynomials a single enumeration may visit.
    pub max_enum: u64,
    /// Largest extension field (number of elements) built for evaluation certificates.
    pub max_eval_field: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_q: 64, max_p: 31, max_enum: 1_000_000, max_eval_field: 1 << 22 }
    }
}

impl Limits {
    pub fn with_max_enum(mut self, max_enum: u64) -> Self {
        self.max_enum = max_enum;
        self
    }
}
