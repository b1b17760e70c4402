//! Exact computation of Stirling numbers with arbitrary level `s`,
//! poly-Bernoulli and poly-Cauchy numbers with level 2, and mechanical
//! verification of the identities, generating functions and congruences that
//! connect them.
//!
//! All arithmetic is exact ([`arith::Rat`] over arbitrary-precision integers).

pub mod arith;
pub mod cli;
pub mod error;
pub mod numbertheory;
pub mod polynum;
pub mod series;
pub mod stirling;
pub mod verify;

pub use arith::{BigInt, Rat};
pub use error::{Error, Result};
