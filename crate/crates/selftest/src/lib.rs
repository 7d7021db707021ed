//! Acceptance suite for `avoidlab`: the finite-ring corpus, reference
//! oracles that recompute results from definitions, and the nine
//! acceptance criteria.

pub mod corpus;
pub mod criteria;
pub mod oracle;

pub use criteria::{CriterionReport, Context, TITLES};

/// Run every criterion in order.
pub fn run_all(seed: u64) -> avoidlab::Result<Vec<CriterionReport>> {
    let ctx = Context::new(seed)?;
    Ok((1..=TITLES.len() as u8).map(|id| criteria::run(&ctx, id)).collect())
}

/// Run the listed criteria.
pub fn run_selected(seed: u64, ids: &[u8]) -> avoidlab::Result<Vec<CriterionReport>> {
    let ctx = Context::new(seed)?;
    Ok(ids.iter().map(|&id| criteria::run(&ctx, id)).collect())
}
