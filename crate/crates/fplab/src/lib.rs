//! Hilbert functions and graded Betti numbers of fat-point schemes
//! supported on unions of lines in the projective plane.
//!
//! The crate has two halves that deliberately know nothing about each
//! other's internals:
//!
//! * a combinatorial half ([`typevec`]) that predicts invariants of a
//!   configuration straight from its type vector — difference Hilbert
//!   functions, regularity, Betti tables built through chains of basic
//!   double links, and the uniqueness tests that say when those
//!   predictions are forced;
//! * a linear-algebra half ([`oracle`]) that computes the same invariants
//!   from actual coordinates by rank computations on interpolation
//!   matrices, either exactly over the rationals or modulo random large
//!   primes.
//!
//! Agreement between the two is the whole point: the oracle keeps the
//! combinatorics honest, and the test suite leans on that.

pub mod commands;
pub mod config;
pub mod report;
pub mod error;
pub mod oracle;
pub mod typevec;

pub use error::{Error, Result};
