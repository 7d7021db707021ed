use avoidlab::avoidance::{self, AnnBranch, Coverage, PaVerdict, SuppBranch};
use avoidlab::bigpoly::{CoeffField, CounterexampleBundle};
use avoidlab::spectra::{CompactnessCertificate, Member, SymbolicIdeal, UElem, NONCOMPACT_PREFIXES_CHECKED};
use serde_json::Value;

use super::{ensure, ideals, members, parse_family, parse_ring, strings};
use crate::{CliError, Certificate, Report, Settings};

pub fn check(family: &str, ideal: &str, s: &Settings) -> Result<Report, CliError> {
    let family = parse_family(family, s)?;
    let ideal = SymbolicIdeal::parse_for(&family, ideal)?;
    let report = avoidance::covers(&ideal, &family)?;
    report.validate(&family)?;
    let fg = report.fg_witness.as_ref().map(|xs| strings(xs.iter().map(|x| family.fmt_elem(x))));
    let (verdict, c) = match &report.outcome {
        Coverage::Contained(m) => {
            ("covered", Certificate::new("coverage").with("outcome", "contained").with("containing_prime", m.to_string()))
        }
        Coverage::Escape(x) => (
            "not covered",
            Certificate::new("coverage")
                .with("outcome", "escape")
                .with("escape_element", family.fmt_elem(x))
                .with("fg_witness", fg.unwrap_or(Value::Null)),
        ),
        Coverage::Uncontained(chain) => {
            ensure(chain.verify(NONCOMPACT_PREFIXES_CHECKED), || chain.describe())?;
            (
                "covered, contained in no member",
                Certificate::new("coverage")
                    .with("outcome", "uncontained")
                    .with("witness", chain.describe())
                    .with("prefixes_checked", NONCOMPACT_PREFIXES_CHECKED),
            )
        }
    };
    Ok(Report::new("avoid check")
        .input("family", family.to_string())
        .input("ideal", ideal.to_string())
        .verdict(verdict)
        .certificate(c))
}

pub fn pa(family: &str, s: &Settings) -> Result<Report, CliError> {
    let family = parse_family(family, s)?;
    let cert = avoidance::has_pa(&family)?;
    let mut report = Report::new("avoid pa").input("family", family.to_string());
    match &cert.verdict {
        PaVerdict::HasPa { compact, fg } => {
            report = report
                .verdict("has P.A.")
                .certificate(Certificate::new("compactness").with("compact", true).with("reason", compact.to_string()))
                .certificate(
                    Certificate::new("fg-pa")
                        .with("holds", fg.holds)
                        .with("justification", fg.justification.to_string())
                        .with("checked", fg.checked),
                );
        }
        PaVerdict::LacksPa { counterexample, cover } => {
            ensure(cover.verify(NONCOMPACT_PREFIXES_CHECKED)?, || cover.describe())?;
            report = report
                .verdict("lacks P.A.")
                .certificate(
                    Certificate::new("compactness")
                        .with("compact", false)
                        .with("cover", cover.describe())
                        .with("prefixes_checked", NONCOMPACT_PREFIXES_CHECKED),
                )
                .certificate(
                    Certificate::new("counterexample")
                        .with("ideal", counterexample.ideal.to_string())
                        .with("outcome", "covered, contained in no member"),
                );
        }
    }
    if let Some(n) = cert.exhaustive_ideals {
        report = report.certificate(Certificate::new("exhaustive").with("ideals_checked", n).with("agrees", true));
    }
    Ok(report)
}

pub fn davis(family: &str, ideal: &str, a: &str, q_list: &str, s: &Settings) -> Result<Report, CliError> {
    let family = parse_family(family, s)?;
    let ideal = SymbolicIdeal::parse_for(&family, ideal)?;
    let a = UElem::parse_for(&family, a)?;
    let extra = Member::parse_list_for(&family, q_list)?;
    let cert = avoidance::davis(&family, &ideal, &a, &extra)?;
    for c in [&cert.c, &cert.cross_check.1] {
        ensure(ideal.contains_elem(c)?, || format!("{} is not in {ideal}", family.fmt_elem(c)))?;
    }
    for q in &extra {
        ensure(!family.member_contains_elem(q, &cert.a_plus_c)?, || format!("a + c lies in {q}"))?;
    }
    let c = Certificate::new("davis")
        .with("c", family.fmt_elem(&cert.c))
        .with("a_plus_c", family.fmt_elem(&cert.a_plus_c))
        .with("route", cert.route.to_string())
        .with("cross_check_route", cert.cross_check.0.to_string())
        .with("cross_check_c", family.fmt_elem(&cert.cross_check.1))
        .with("primes_through_a", cert.closed_at_a.as_deref().map_or(Value::Null, members));
    Ok(Report::new("avoid davis")
        .input("family", family.to_string())
        .input("ideal", ideal.to_string())
        .input("a", family.fmt_elem(&a))
        .input("q_list", members(&extra))
        .verdict(format!("c = {}", family.fmt_elem(&cert.c)))
        .certificate(c))
}

pub fn mincert(ring: &str, s: &Settings) -> Result<Report, CliError> {
    let ring = parse_ring(ring, s)?;
    let cert = avoidance::min_finiteness_certificate(&ring)?;
    let mins = ring.min_spec();
    let mut report = Report::new("avoid mincert")
        .input("ring", ring.expr().to_string())
        .verdict(if cert.reduced { "reduced" } else { "not reduced" });
    for e in &cert.entries {
        let others_ok = mins.iter().filter(|q| **q != e.prime).all(|q| q.contains(e.x));
        ensure(!e.prime.contains(e.x) && others_ok, || format!("x = {} for {}", ring.fmt_elem(e.x), e.prime))?;
        if cert.reduced {
            ensure(e.ann == e.prime, || format!("ann({}) differs from {}", ring.fmt_elem(e.x), e.prime))?;
        }
        report = report.certificate(
            Certificate::new("minimal-prime")
                .with("prime", e.prime.to_string())
                .with("x", ring.fmt_elem(e.x))
                .with("ann", e.ann.to_string())
                .with("ann_is_prime", e.ann == e.prime),
        );
    }
    Ok(report.input("minimal_primes", ideals(&mins)))
}

pub fn dichotomy(family: &str, ideal: &str, s: &Settings) -> Result<Report, CliError> {
    let family = parse_family(family, s)?;
    let ideal = SymbolicIdeal::parse_for(&family, ideal)?;
    let ann = avoidance::ann_dichotomy(&ideal, &family)?;
    let supp = avoidance::supp_dichotomy(&ideal, &family)?;
    let (verdict, ann_cert) = match &ann {
        AnnBranch::Containment(m) => {
            ("containment", Certificate::new("ann-dichotomy").with("branch", "containment").with("prime", m.to_string()))
        }
        AnnBranch::Strict { annihilator, witness, sum_proper } => (
            "strict inclusion",
            Certificate::new("ann-dichotomy")
                .with("branch", "strict")
                .with("annihilator", annihilator.to_string())
                .with("outside_prime", witness.to_string())
                .with("sum_proper", *sum_proper),
        ),
    };
    let supp_cert = match &supp {
        SuppBranch::Containment(m) => {
            Certificate::new("supp-dichotomy").with("branch", "containment").with("prime", m.to_string())
        }
        SuppBranch::InSupport { annihilator } => Certificate::new("supp-dichotomy")
            .with("branch", "in-support")
            .with("annihilator", annihilator.to_string()),
    };
    Ok(Report::new("avoid dichotomy")
        .input("family", family.to_string())
        .input("ideal", ideal.to_string())
        .verdict(verdict)
        .certificate(ann_cert)
        .certificate(supp_cert))
}

fn coeff_field(text: &str) -> Result<CoeffField, CliError> {
    let t = text.trim();
    if t == "Q" {
        return Ok(CoeffField::Rational);
    }
    t.strip_prefix('F')
        .and_then(|p| p.parse::<u64>().ok())
        .filter(|&p| avoidlab::arith::is_prime(p))
        .map(CoeffField::Prime)
        .ok_or_else(|| CliError::input(format!("expected Q or F<prime>, got {text:?}")))
}

pub fn chain(n: u32, field: &str) -> Result<Report, CliError> {
    if n == 0 {
        return Err(CliError::input("--n must be at least 1"));
    }
    let field = coeff_field(field)?;
    let bundle = CounterexampleBundle::new(field);
    let family = bundle.family();
    let w = bundle.witness(n);
    ensure(bundle.verify_witness(n) && w.in_pn(n + 1), || format!("witness {w} for P_{n}"))?;
    let CompactnessCertificate::NonCompact(cover) = family.is_compact() else {
        return Err(CliError::internal(format!("{family} is reported compact")));
    };
    ensure(cover.verify_prefix(n)?, || format!("cover prefix {n}"))?;
    let report = avoidance::covers(&SymbolicIdeal::parse_for(&family, "I_omega")?, &family)?;
    ensure(matches!(report.outcome, Coverage::Uncontained(_)), || "I_omega is contained in a member".to_string())?;
    Ok(Report::new("counterexample chain")
        .input("family", family.to_string())
        .input("n", n)
        .verdict(format!("{w} lies in I_omega but not in P_{n}"))
        .certificate(
            Certificate::new("escape")
                .with("witness", w.to_string())
                .with("in_I_omega", true)
                .with(&format!("in_P_{n}"), false)
                .with("containing_index", bundle.containing_index(&w)),
        )
        .certificate(
            Certificate::new("noncompact-cover")
                .with("cover", cover.describe())
                .with("prefix", (1..=n).map(|k| format!("U_{k}")).collect::<Vec<_>>())
                .with("missed_member", cover.missed_member(n).to_string()),
        ))
}
