use std::sync::Arc;

use avoidlab::finring::{FiniteRing, Ideal};

use super::{count, ensure, ideals as ideal_list, parse_ring};
use crate::{CliError, Certificate, Report, Settings};

fn closed(ring: &Arc<FiniteRing>, i: &Ideal) -> bool {
    i.elements().all(|a| {
        i.elements().all(|b| i.contains(ring.add(a, b))) && ring.elements().all(|r| i.contains(ring.mul(r, a)))
    })
}

/// Proper, and `ab ∈ P` forces `a ∈ P` or `b ∈ P`, checked pair by pair.
fn prime_by_definition(ring: &Arc<FiniteRing>, p: &Ideal) -> bool {
    p.is_proper()
        && ring.elements().all(|a| p.contains(a) || ring.elements().all(|b| p.contains(b) || !p.contains(ring.mul(a, b))))
}

fn header(scenario: &str, ring: &Arc<FiniteRing>) -> Report {
    Report::new(scenario).input("ring", ring.expr().to_string())
}

pub fn info(spec: &str, s: &Settings) -> Result<Report, CliError> {
    let ring = parse_ring(spec, s)?;
    let nil = ring.nilradical();
    ensure(nil.elements().all(|a| ring.is_nilpotent(a)) && closed(&ring, &nil), || format!("nilradical {nil}"))?;
    let units = ring.units();
    ensure(units.iter().all(|&u| ring.inverse(u).is_some_and(|v| ring.mul(u, v) == ring.one())), || {
        "unit inverses".to_string()
    })?;
    let c = Certificate::new("structure")
        .with("order", ring.order())
        .with("units", units.len())
        .with("nilradical", nil.to_string())
        .with("reduced", ring.is_reduced())
        .with("domain", ring.is_domain())
        .with("field", ring.is_field())
        .with("von_neumann_regular", ring.is_vnr())
        .with("bezout", ring.is_bezout())
        .with("primes", ring.spec().len());
    Ok(header("ring info", &ring).verdict(format!("ring of order {}", ring.order())).certificate(c))
}

pub fn ideals(spec: &str, s: &Settings) -> Result<Report, CliError> {
    let ring = parse_ring(spec, s)?;
    let all = ring.enumerate_ideals();
    let mut report = header("ring ideals", &ring).verdict(count(all.len(), "ideal"));
    for i in &all {
        ensure(closed(&ring, i), || format!("{i} is not closed"))?;
        report = report.certificate(
            Certificate::new("ideal")
                .with("ideal", i.to_string())
                .with("size", i.len())
                .with("prime", i.is_prime())
                .with("maximal", i.is_maximal()),
        );
    }
    Ok(report)
}

pub fn primes(spec: &str, s: &Settings) -> Result<Report, CliError> {
    let ring = parse_ring(spec, s)?;
    let spec_list = ring.spec();
    for p in &spec_list {
        ensure(prime_by_definition(&ring, p), || format!("{p} is not prime"))?;
    }
    let c = Certificate::new("spectrum")
        .with("spec", ideal_list(&spec_list))
        .with("max", ideal_list(&ring.max_spec()))
        .with("min", ideal_list(&ring.min_spec()))
        .with("nilradical", ring.nilradical().to_string());
    Ok(header("ring primes", &ring).verdict(count(spec_list.len(), "prime")).certificate(c))
}
