use avoidlab::avoidance::{covers, Coverage};
use avoidlab::finring::{Elem, Ideal};
use avoidlab::spectra::{Member, PrimeFamily, SymbolicIdeal, UElem};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{Context, Tally};
use crate::oracle::finite::{ones, Brute};

const INSTANCES: usize = 500;

pub(super) fn run(ctx: &Context, t: &mut Tally) {
    let mut rng = ctx.rng(2);
    let mut covered = 0;
    let mut uncontained = 0;
    for _ in 0..INSTANCES {
        let ring = ctx.corpus.choose(&mut rng).expect("nonempty corpus");
        let b = Brute::new(ring);
        let spec = ring.spec();
        let size = rng.gen_range(1..=spec.len());
        let primes: Vec<Ideal> = spec.choose_multiple(&mut rng, size).cloned().collect();
        let ideal = if rng.gen_bool(0.5) {
            ring.enumerate_ideals().choose(&mut rng).expect("(0) is an ideal").clone()
        } else {
            let gens: Vec<Elem> = (0..rng.gen_range(1..=2)).map(|_| Elem(rng.gen_range(0..ring.order() as u32))).collect();
            Ideal::generated(ring, &gens)
        };
        let name = format!("{} I={ideal}", ring.expr());
        let Some(family) = t.ok(PrimeFamily::finite(ring, primes.clone()), || name.clone()) else { continue };
        let Some(report) = t.ok(covers(&SymbolicIdeal::Finite(ideal.clone()), &family), || name.clone()) else {
            continue;
        };
        let i = Brute::mask_of(&ideal);
        let masks: Vec<_> = primes.iter().map(Brute::mask_of).collect();
        let in_union = ones(i).all(|x| masks.iter().any(|&p| Brute::has(p, x)));
        t.check(report.covered() == in_union, || format!("{name}: coverage verdict"));
        match &report.outcome {
            Coverage::Contained(Member::Finite(p)) => {
                covered += 1;
                let pm = Brute::mask_of(p);
                t.check(i & pm == i && b.is_prime(pm) && primes.contains(p), || format!("{name}: containing prime {p}"));
            }
            Coverage::Escape(UElem::Finite(x)) => {
                let x = x.idx();
                t.check(Brute::has(i, x) && masks.iter().all(|&p| !Brute::has(p, x)), || format!("{name}: escape"));
            }
            Coverage::Uncontained(_) => {
                uncontained += 1;
                t.fail(format!("{name}: covered without a containing prime"));
            }
            other => t.fail(format!("{name}: unexpected outcome {other:?}")),
        }
    }
    t.note(format!("{covered} of {INSTANCES} instances covered, {uncontained} uncontained"));
}
