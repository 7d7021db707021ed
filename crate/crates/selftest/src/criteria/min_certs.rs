use std::collections::BTreeSet;

use avoidlab::avoidance::min_finiteness_certificate;

use super::{Context, Tally};
use crate::oracle::finite::{Brute, Mask};

pub(super) fn run(ctx: &Context, t: &mut Tally) {
    let mut reduced = 0;
    for ring in &ctx.corpus {
        let b = Brute::new(ring);
        if b.nilradical() != b.zero_mask() {
            continue;
        }
        reduced += 1;
        let name = ring.expr().to_string();
        let Some(cert) = t.ok(min_finiteness_certificate(ring), || name.clone()) else { continue };
        let mins: BTreeSet<Mask> = b.minimal_primes().into_iter().collect();
        let listed: BTreeSet<Mask> = cert.entries.iter().map(|e| Brute::mask_of(&e.prime)).collect();
        t.check(listed == mins, || format!("{name}: minimal primes"));
        for e in &cert.entries {
            let p = Brute::mask_of(&e.prime);
            let x = e.x.idx();
            // The minimal primes avoiding x are exactly {P}.
            let avoiding: Vec<Mask> = mins.iter().copied().filter(|&q| !Brute::has(q, x)).collect();
            t.check(avoiding == [p], || format!("{name}: V_m({})^c for {}", ring.fmt_elem(e.x), e.prime));
            let ann = b.annihilator(1 << x);
            t.check(ann == p && Brute::mask_of(&e.ann) == p, || format!("{name}: ann({}) = {}", ring.fmt_elem(e.x), e.prime));
        }
    }
    t.note(format!("{reduced} reduced corpus rings"));
}
