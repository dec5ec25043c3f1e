//! Exact computations in integrable highest weight modules `L(Lambda)` of
//! quantum groups attached to loop-free quivers: contravariant forms,
//! weight spaces, canonical bases, the crystal (left) graph and the
//! monomial bases read off from it.

pub mod canonical;
pub mod cartan;
pub mod crystal;
pub mod error;
pub mod hwmodule;
pub mod qarith;
pub mod report;
pub mod uminus;
pub mod verify;

pub use error::{Error, Result};
