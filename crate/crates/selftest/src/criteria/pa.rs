use avoidlab::avoidance::{fg_pa, has_pa, PaVerdict};
use avoidlab::spectra::{ChainIdeal, Member, PrimeFamily, SymbolicIdeal, NONCOMPACT_PREFIXES_CHECKED};

use super::{subfamilies, Context, Tally};
use crate::oracle::finite::{ones, Brute, Mask};

/// Prefixes of the non-compactness cover re-checked here.
const COVER_PREFIXES: u32 = 20;

pub(super) fn run(ctx: &Context, t: &mut Tally) {
    let mut rng = ctx.rng(3);
    let mut families = 0;
    for ring in &ctx.corpus {
        let b = Brute::new(ring);
        let ideals = b.ideals();
        for primes in subfamilies(&ring.spec(), &mut rng) {
            families += 1;
            let masks: Vec<Mask> = primes.iter().map(Brute::mask_of).collect();
            let name = format!("{} {:?}", ring.expr(), primes.iter().map(|p| p.to_string()).collect::<Vec<_>>());
            let Some(family) = t.ok(PrimeFamily::finite(ring, primes), || name.clone()) else { continue };
            let exhaustive = ideals.iter().all(|&i| {
                let covered = ones(i).all(|x| masks.iter().any(|&p| Brute::has(p, x)));
                !covered || masks.iter().any(|&p| i & p == i)
            });
            let Some(cert) = t.ok(has_pa(&family), || name.clone()) else { continue };
            let Some(fg) = t.ok(fg_pa(&family), || name.clone()) else { continue };
            let decomposed = family.is_compact().is_compact() && fg.holds;
            t.check(cert.has_pa() == decomposed && decomposed == exhaustive, || {
                format!("{name}: has_pa {} vs compact and fg {decomposed} vs exhaustive {exhaustive}", cert.has_pa())
            });
        }
    }
    t.note(format!("{families} finite families"));
    described(t);
}

enum Expect {
    /// The full chain: covered-but-uncontained `I_ω` and a subcover-free cover.
    Lacks,
    /// Has P.A. and is compact.
    Has,
}

fn described(t: &mut Tally) {
    use Expect::*;
    let cases = [
        ("chain:Q:all", Lacks),
        ("chain:F2:all", Lacks),
        ("chain:F3:all", Lacks),
        ("chain:Q:all:top", Has),
        ("chain:F2:all:top", Has),
        ("chain:Q:1,2,5", Has),
        ("chain:F2:1,3,4", Has),
        ("chain:Q:1", Has),
        ("Spec(Z)", Has),
        ("Max(Z)", Has),
        ("Max(Z)\\2,3", Has),
        ("Z:(0),(5)", Has),
        ("Z:(2),(3),(7)", Has),
        ("Spec(F3[x])", Has),
        ("Max(F2[x])\\x+1", Has),
        ("F2[x]:(x+1),(x^2+x+1)", Has),
        ("quad:-5:all", Has),
        ("quad:-5:all\\2", Has),
        ("quad:-5:2,(3,1+w)", Has),
        ("quad:-1:all", Has),
        ("quad:-6:all\\5", Has),
        ("quad:-23:3", Has),
    ];
    for (text, expect) in cases {
        let Some(family) = t.ok(PrimeFamily::parse(text), || text.to_string()) else { continue };
        let Some(cert) = t.ok(has_pa(&family), || text.to_string()) else { continue };
        let compact = family.is_compact().is_compact();
        match (expect, &cert.verdict) {
            (Has, PaVerdict::HasPa { .. }) => t.check(compact, || format!("{text}: HasPA without compactness")),
            (Lacks, PaVerdict::LacksPa { counterexample, cover }) => {
                t.check(!compact, || format!("{text}: LacksPA yet compact"));
                t.check(counterexample.validate(&family).is_ok(), || format!("{text}: counterexample invalid"));
                t.check(
                    counterexample.ideal == SymbolicIdeal::Chain(ChainIdeal::IOmega)
                        && counterexample.covered()
                        && counterexample.containing_prime().is_none(),
                    || format!("{text}: counterexample is not the covered, uncontained I_omega"),
                );
                t.check(cover.verify(COVER_PREFIXES.max(NONCOMPACT_PREFIXES_CHECKED)).unwrap_or(false), || {
                    format!("{text}: cover has a finite subcover")
                });
                // x_{k+1} lies in I_omega and P_{k+1} but not in P_k.
                for k in 1..=COVER_PREFIXES {
                    t.check(cover.missed_member(k) == Member::Chain(k + 1), || format!("{text}: prefix {k}"));
                }
            }
            (_, v) => t.fail(format!("{text}: unexpected verdict {}", verdict_name(v))),
        }
        if let PrimeFamily::Chain { include_top, .. } = &family {
            // The union of the chain is a member exactly when a top is present.
            if let Some((_, top)) = t.ok(family.chain_union(), || text.to_string()) {
                let has_top = matches!(top, Some(Member::ChainTop));
                if text.contains("all") {
                    t.check(has_top == *include_top, || format!("{text}: chain union membership"));
                }
            }
        }
    }
}

fn verdict_name(v: &PaVerdict) -> &'static str {
    match v {
        PaVerdict::HasPa { .. } => "HasPA",
        PaVerdict::LacksPa { .. } => "LacksPA",
    }
}
