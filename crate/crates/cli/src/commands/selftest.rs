use crate::{CliError, Certificate, Report, Settings};

/// Exit 0 when every criterion passes, 2 otherwise.
pub fn run(s: &Settings) -> Result<(Report, i32), CliError> {
    let reports = avoidlab_selftest::run_all(s.seed)?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let mut report = Report::new("selftest").input("seed", s.seed).verdict(if failed == 0 {
        format!("all {} criteria pass", reports.len())
    } else {
        format!("{failed} of {} criteria fail", reports.len())
    });
    for r in &reports {
        report = report.certificate(
            Certificate::new(format!("criterion {}", r.id))
                .with("title", r.title)
                .with("passed", r.passed())
                .with("checks", r.checks)
                .with("failures", r.failures)
                .with("notes", r.notes.clone())
                .with("first_failures", r.first_failures.clone()),
        );
    }
    Ok((report, if failed == 0 { 0 } else { 2 }))
}
