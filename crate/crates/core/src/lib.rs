//! Exact decision procedures for prime avoidance on computable rings.
//!
//! Every decision comes with a witness that can be checked independently:
//! containing primes, escape elements, finite subcovers, non-compactness
//! covers, Davis elements, valuation elements and principal generators.

pub mod arith;
pub mod avoidance;
pub mod bigpoly;
pub mod error;
pub mod finring;
pub mod fpoly;
pub mod pid;
pub mod quadlab;
pub mod spectra;
pub mod valuation;

pub use error::{Error, Result};
