//! Independent reference computations used to check the library.

pub mod finite;
pub mod poly;
pub mod quad;
pub mod valuation;
