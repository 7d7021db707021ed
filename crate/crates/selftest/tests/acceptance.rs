//! Runs all nine acceptance criteria and prints one line per criterion.
//! `cargo test -p avoidlab-selftest --test acceptance -- --nocapture`

use avoidlab_selftest::{criteria, Context, TITLES};

#[test]
fn acceptance() {
    let seed = std::env::var("AVOIDLAB_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    let ctx = Context::new(seed).expect("corpus builds");
    let mut failed = Vec::new();
    for id in 1..=TITLES.len() as u8 {
        let report = criteria::run(&ctx, id);
        println!("{report}");
        if !report.passed() {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
