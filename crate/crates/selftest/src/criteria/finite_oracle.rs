use std::collections::BTreeSet;

use avoidlab::finring::Elem;

use super::{Context, Tally};
use crate::oracle::finite::{ones, Brute, Mask};

/// Fraction classes are counted pairwise, so only on small rings.
const FRACTION_CLASS_MAX_ORDER: usize = 16;

pub(super) fn run(ctx: &Context, t: &mut Tally) {
    for ring in &ctx.corpus {
        let b = Brute::new(ring);
        let name = ring.expr().to_string();
        let lib_ideals = ring.enumerate_ideals();
        let lib_masks: BTreeSet<Mask> = lib_ideals.iter().map(Brute::mask_of).collect();
        let oracle_masks: BTreeSet<Mask> = b.ideals().into_iter().collect();
        t.check(lib_masks == oracle_masks, || format!("{name}: ideal lists differ"));
        for i in &lib_ideals {
            let m = Brute::mask_of(i);
            t.check(i.is_prime() == b.is_prime(m), || format!("{name}: is_prime({i})"));
            t.check(Brute::mask_of(&i.annihilator()) == b.annihilator(m), || format!("{name}: Ann({i})"));
        }
        t.check(Brute::mask_of(&ring.nilradical()) == b.nilradical(), || format!("{name}: nilradical"));
        let spec: BTreeSet<Mask> = ring.spec().iter().map(Brute::mask_of).collect();
        t.check(spec == b.primes().into_iter().collect(), || format!("{name}: spec"));
        t.check(ring.is_vnr() == b.is_vnr(), || format!("{name}: is_vnr"));
        t.check(ring.is_bezout() == b.is_bezout(), || format!("{name}: is_bezout"));
        check_localizations(ring, &b, &name, t);
    }
    t.note(format!("{} corpus rings", ctx.corpus.len()));
}

/// Localize at the powers of every non-nilpotent element.
fn check_localizations(ring: &std::sync::Arc<avoidlab::finring::FiniteRing>, b: &Brute, name: &str, t: &mut Tally) {
    let mut seen = BTreeSet::new();
    for s in 0..b.order() {
        if b.is_nilpotent(s) {
            continue;
        }
        let x = b.powers(s);
        if !seen.insert(x) {
            continue;
        }
        let elems: Vec<Elem> = ones(x).map(|i| Elem(i as u32)).collect();
        let Some(loc) = t.ok(ring.localize(&elems), || format!("{name}: localize at powers of {s}")) else {
            continue;
        };
        let what = || format!("{name}: localization at powers of {}", ring.fmt_elem(Elem(s as u32)));
        t.check(loc.map.verify().is_ok(), || format!("{}: not a ring map", what()));
        let kernel = b.localization_kernel(x);
        t.check(Brute::mask_of(&loc.map.kernel()) == kernel, || format!("{}: kernel", what()));
        t.check(loc.map.is_surjective(), || format!("{}: not onto the corner ring", what()));
        t.check(elems.iter().all(|&e| loc.ring.is_unit(loc.map.apply(e))), || format!("{}: X not inverted", what()));
        // R_X is R modulo the X-torsion, so its order is |R|/|K|.
        t.check(loc.ring.order() * ones(kernel).count() == b.order(), || format!("{}: order", what()));
        if b.order() <= FRACTION_CLASS_MAX_ORDER {
            t.check(b.fraction_classes(x) == loc.ring.order(), || format!("{}: fraction classes", what()));
        }
    }
}
