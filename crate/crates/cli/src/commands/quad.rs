use avoidlab::quadlab::{self, QuadIdeal, QuadOrder, Splitting};

use super::{count, ensure, strings};
use crate::{CliError, Certificate, Report, Settings};

fn order(d: i64) -> Result<QuadOrder, CliError> {
    Ok(QuadOrder::new(d)?)
}

pub fn factor(d: i64, p: u64) -> Result<Report, CliError> {
    let o = order(d)?;
    let f = quadlab::factor_prime(o, p)?;
    // N((p)) = p² is the product of the norms, counted with ramification.
    let e = if f.splitting == Splitting::Ramified { 2 } else { 1 };
    let total: i128 = f.primes.iter().map(|q| q.norm().pow(e)).product();
    ensure(f.primes.iter().all(QuadIdeal::is_prime) && total == (p as i128).pow(2), || format!("primes above {p}"))?;
    Ok(Report::new("quad factor")
        .input("order", o.to_string())
        .input("p", p)
        .verdict(f.splitting.to_string())
        .certificate(
            Certificate::new("factorization")
                .with("splitting", f.splitting.to_string())
                .with("primes", strings(&f.primes))
                .with("norms", f.primes.iter().map(|q| q.norm() as i64).collect::<Vec<_>>()),
        ))
}

pub fn class(d: i64) -> Result<Report, CliError> {
    let o = order(d)?;
    let forms = quadlab::reduced_forms(o.discriminant());
    let h = quadlab::class_number(o);
    ensure(h as usize == forms.len() && h >= 1, || format!("h = {h} with {} forms", forms.len()))?;
    Ok(Report::new("quad class")
        .input("order", o.to_string())
        .verdict(format!("h = {h}"))
        .certificate(
            Certificate::new("class-group")
                .with("discriminant", o.discriminant())
                .with("class_number", h)
                .with("reduced_forms", forms.iter().map(|f| format!("({},{},{})", f.a, f.b, f.c)).collect::<Vec<_>>()),
        ))
}

pub fn smith(d: i64, ideal: Option<&str>, p: Option<u64>) -> Result<Report, CliError> {
    let o = order(d)?;
    let primes = match (ideal, p) {
        (Some(text), None) => vec![QuadIdeal::parse(o, text)?],
        (None, Some(p)) => quadlab::factor_prime(o, p)?.primes,
        _ => return Err(CliError::input("give exactly one of --ideal and --p")),
    };
    let mut report = Report::new("quad smith").input("order", o.to_string()).input("primes", strings(&primes));
    for q in &primes {
        let cert = quadlab::smith_x(q)?;
        ensure(q.contains(cert.x), || format!("{} is not in {q}", cert.x))?;
        ensure(QuadIdeal::principal(o, cert.x)? == q.pow(cert.exponent), || format!("({}) differs from {q}^h", cert.x))?;
        report = report.certificate(
            Certificate::new("smith")
                .with("prime", q.to_string())
                .with("x", cert.x.to_string())
                .with("exponent", cert.exponent)
                .with("class_number", cert.class_number),
        );
    }
    Ok(report.verdict(format!("radical generators for {}", count(primes.len(), "prime"))))
}

pub fn qr(d: i64, ideal: &str) -> Result<Report, CliError> {
    let o = order(d)?;
    let i = QuadIdeal::parse(o, ideal)?;
    let (n, a) = quadlab::qr_power(&i)?;
    ensure(i.contains(a) && i.pow(n).is_subset(&QuadIdeal::principal(o, a)?), || format!("({a}) for {i}^{n}"))?;
    Ok(Report::new("quad qr")
        .input("order", o.to_string())
        .input("ideal", i.to_string())
        .verdict(format!("{i}^{n} = ({a})"))
        .certificate(Certificate::new("qr-power").with("n", n).with("a", a.to_string()).with("norm_of_a", o.norm(a) as i64)))
}

pub fn pa(d: i64, p: Option<u64>, s: &Settings) -> Result<Report, CliError> {
    let o = order(d)?;
    let spec = match p {
        Some(p) => format!("quad:{}:all\\{p}", o.d()),
        None => format!("quad:{}:all", o.d()),
    };
    let mut report = super::avoid::pa(&spec, s)?;
    report.scenario = "quad pa".to_string();
    Ok(report)
}
