//! Exact arithmetic around the generalized pentagonal numbers.
//!
//! - [`pentagonal`]: the numbers `(3k^2 -/+ k)/2`, their merged ordering and the signed term stream
//! - [`sigma`]: divisor sums by trial division and by the pentagonal recurrence
//! - [`qseries`]: truncated expansion of `prod (1 - x^k)`, Newton's identities
//! - [`cyclotomic`]: the stream reduced modulo `m`, period and basis cancellation
//! - [`summation`]: finite-difference summation of alternating series and damped (Abel) evaluation
//! - [`verification`]: the end-to-end checks behind `pentafold report`

pub mod cyclotomic;
pub mod error;
pub mod pentagonal;
pub mod qseries;
pub mod sigma;
pub mod summation;
pub mod verification;

pub use cyclotomic::{CycVec, RootOfUnity};
pub use error::{Error, Result};
pub use pentagonal::{Branch, PentagonalTerm, Sign};
pub use qseries::DenseSeries;
pub use sigma::SigmaTable;
pub use summation::{DifferenceTable, Rational};
