pub mod avoid;
pub mod quad;
pub mod ring;
pub mod selftest;
pub mod valuation;

use std::sync::Arc;

use avoidlab::finring::{FiniteRing, Ideal};
use avoidlab::spectra::{Member, PrimeFamily};
use serde_json::Value;

use crate::{CliError, Settings};

pub(crate) fn parse_ring(spec: &str, s: &Settings) -> Result<Arc<FiniteRing>, CliError> {
    Ok(FiniteRing::parse_with_cap(spec, s.cap)?)
}

pub(crate) fn parse_family(spec: &str, s: &Settings) -> Result<PrimeFamily, CliError> {
    Ok(PrimeFamily::parse_with_cap(spec, s.cap)?)
}

pub(crate) fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(xs.into_iter().map(|x| Value::String(x.to_string())).collect())
}

pub(crate) fn members(ms: &[Member]) -> Value {
    strings(ms.iter())
}

pub(crate) fn ideals(is: &[Ideal]) -> Value {
    strings(is.iter())
}

/// `1 prime`, `3 primes`.
pub(crate) fn count(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

/// Fail with exit code 2 unless an independent re-check holds.
pub(crate) fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::internal(format!("certificate failed its check: {}", what())))
    }
}
