//! Exact symbolic engine for double brackets, double Lie algebroids and
//! their differential calculus over path algebras of quivers.

pub mod algebroid;
pub mod calculus;
pub mod cli;
pub mod dbracket;
pub mod error;
pub mod gerstenhaber;
pub mod linalg;
pub mod ncalg;
pub mod polyvect;
pub mod repn;

pub use error::{DpcError, Result};
