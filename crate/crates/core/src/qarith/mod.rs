//! Exact arithmetic in `Z[v, v^-1]` and `Q(v)`.

mod laurent;
pub mod linalg;
mod qnum;
mod ratfunc;

pub use laurent::LaurentPoly;
pub use linalg::{poly_rank, poly_solve, rf_rank, rf_solve};
pub use qnum::{qbinom, qfact, qint};
pub use ratfunc::RatFunc;
