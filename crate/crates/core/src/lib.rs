//! Hilbert–Samuel functions, Hilbert coefficients, arithmetic degrees and
//! dimension filtrations of finitely generated graded modules over
//! polynomial rings, with tests for sequential (generalized) Cohen–Macaulayness.

pub mod cli;
pub mod corpus;
pub mod error;
pub mod filtration;
pub mod groebner;
pub mod hilbert;
pub mod laurent;
pub mod modpres;
pub mod parameters;
pub mod monideal;
pub mod poly;
pub mod report;
pub mod repro;
pub mod session;

pub use error::{Error, Result};
