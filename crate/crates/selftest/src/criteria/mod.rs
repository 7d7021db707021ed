//! The nine acceptance criteria. Each one returns a [`CriterionReport`]
//! built from many individual checks.

mod classic;
mod davis;
mod finite_oracle;
mod homs;
mod min_certs;
mod pa;
mod quad;
mod real;
mod valuation;

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use avoidlab::finring::{FiniteRing, Ideal};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Failure messages kept per criterion.
const KEPT_FAILURES: usize = 5;

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub first_failures: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {}: {} ({} checks, {} failures, {:.2}s)",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.checks,
            self.failures,
            self.elapsed.as_secs_f64()
        )?;
        for n in &self.notes {
            write!(f, "\n    note: {n}")?;
        }
        for m in &self.first_failures {
            write!(f, "\n    failure: {m}")?;
        }
        Ok(())
    }
}

/// Accumulates check outcomes for one criterion.
#[derive(Default)]
pub(crate) struct Tally {
    checks: usize,
    failures: usize,
    first: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.fail(what());
        }
    }

    pub fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.first.len() < KEPT_FAILURES {
            self.first.push(msg);
        }
    }

    /// Record a library error as a failed check.
    pub fn ok<T, E: fmt::Display>(&mut self, r: Result<T, E>, context: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.fail(format!("{}: {e}", context()));
                None
            }
        }
    }

    pub fn note(&mut self, n: String) {
        self.notes.push(n);
    }

    fn finish(self, id: u8, title: &'static str, elapsed: Duration) -> CriterionReport {
        CriterionReport {
            id,
            title,
            checks: self.checks,
            failures: self.failures,
            first_failures: self.first,
            notes: self.notes,
            elapsed,
        }
    }
}

/// Shared inputs: the finite corpus and the run's seed.
pub struct Context {
    pub corpus: Vec<Arc<FiniteRing>>,
    pub seed: u64,
}

impl Context {
    pub fn new(seed: u64) -> avoidlab::Result<Context> {
        Ok(Context { corpus: crate::corpus::corpus()?, seed })
    }

    pub(crate) fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

/// Nonempty subfamilies of `primes`: all of them when there are at most
/// five primes, otherwise the full list plus 30 random subsets.
pub(crate) fn subfamilies(primes: &[Ideal], rng: &mut ChaCha8Rng) -> Vec<Vec<Ideal>> {
    let k = primes.len();
    if k <= 5 {
        return (1u32..(1 << k))
            .map(|mask| (0..k).filter(|i| mask & (1 << i) != 0).map(|i| primes[i].clone()).collect())
            .collect();
    }
    let mut out = vec![primes.to_vec()];
    for _ in 0..30 {
        let size = rng.gen_range(1..=k);
        let mut pick: Vec<Ideal> = primes.choose_multiple(rng, size).cloned().collect();
        pick.sort();
        out.push(pick);
    }
    out
}

pub const TITLES: [&str; 9] = [
    "finite-ring oracle equivalence",
    "classic prime avoidance",
    "P.A. as compactness plus finitely generated P.A.",
    "Davis construction",
    "valuation theorem",
    "quadratic suite",
    "minimal-prime certificates",
    "homomorphism theorems",
    "formally-real corollary",
];

/// Run criterion `id` (1 to 9).
pub fn run(ctx: &Context, id: u8) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    match id {
        1 => finite_oracle::run(ctx, &mut t),
        2 => classic::run(ctx, &mut t),
        3 => pa::run(ctx, &mut t),
        4 => davis::run(ctx, &mut t),
        5 => valuation::run(ctx, &mut t),
        6 => quad::run(ctx, &mut t),
        7 => min_certs::run(ctx, &mut t),
        8 => homs::run(ctx, &mut t),
        9 => real::run(ctx, &mut t),
        _ => t.fail(format!("no criterion {id}")),
    }
    let title = (id as usize).checked_sub(1).and_then(|i| TITLES.get(i)).copied().unwrap_or("unknown");
    t.finish(id, title, start.elapsed())
}
