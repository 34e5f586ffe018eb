//! Exact arithmetic over `F_q[t]` and the relation sets that express products
//! of Carlitz zeta values as sums of multizeta values.

pub mod combinatorics;
pub mod error;
pub mod extfield;
pub mod field;
pub mod laurent;
pub mod limits;
pub mod poly;
pub mod powersums;
pub mod ratfunc;
pub mod relations;

pub use error::{Error, Result};
pub use field::{Field, FieldElem};
pub use limits::Limits;
pub use poly::Poly;
pub use ratfunc::RatFunc;
