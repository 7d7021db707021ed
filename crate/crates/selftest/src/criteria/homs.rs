use std::collections::BTreeSet;
use std::sync::Arc;

use avoidlab::avoidance::{hom_pa_criterion, lying_over_pa, pullback_realization, subring1_contraction_property};
use avoidlab::finring::{FiniteRing, RingHom};
use avoidlab::fpoly::FpPoly;
use avoidlab::spectra::PrimeFamily;

use super::{subfamilies, Context, Tally};
use crate::oracle::finite::{Brute, Mask};

/// Diagonals `R → R × R` are generated for rings up to this order.
const DIAGONAL_MAX_ORDER: usize = 16;
const SUBRING_MAX_ORDER: usize = 16;

pub(super) fn run(ctx: &Context, t: &mut Tally) {
    let mut rng = ctx.rng(8);
    let mut antichains = 0;
    for ring in &ctx.corpus {
        for primes in subfamilies(&ring.spec(), &mut rng) {
            antichains += 1;
            realization(ring, primes, t);
        }
    }
    let mut homs = 0;
    let mut lying_over = 0;
    for ring in &ctx.corpus {
        for (label, f) in generated_homs(ring, t) {
            homs += 1;
            if let Some(r) = t.ok(hom_pa_criterion(&f), || label.clone()) {
                t.check(r.equivalent(), || format!("{label}: P.A. {} vs extension {}", r.pa_side, r.extension_side));
            }
            if let Some(r) = t.ok(lying_over_pa(&f), || label.clone()) {
                lying_over += r.lying_over as usize;
                t.check(!r.lying_over || r.pa, || format!("{label}: lying-over without P.A."));
            }
        }
    }
    for (p, deg) in [(2u32, 2usize), (2, 3), (3, 2), (3, 3)] {
        for f in FpPoly::monics_of_degree(p, deg).filter(|f| f.is_irreducible().unwrap_or(false)) {
            let label = format!("F{p} -> F{p}[x]/({})", f.fmt_var("x"));
            let Some(target) = t.ok(FiniteRing::poly_quotient(p, &f), || label.clone()) else { continue };
            let Some(hom) = t.ok(FiniteRing::from_integers(p, &target), || label.clone()) else { continue };
            homs += 1;
            if let (Some(h), Some(l)) = (t.ok(hom_pa_criterion(&hom), || label.clone()), t.ok(lying_over_pa(&hom), || label.clone())) {
                lying_over += l.lying_over as usize;
                t.check(h.equivalent() && (!l.lying_over || l.pa), || format!("{label}: hom criteria"));
            }
        }
    }
    t.note(format!("{antichains} antichains, {homs} homomorphisms ({lying_over} with lying-over)"));
    subrings(ctx, t);
}

fn realization(ring: &Arc<FiniteRing>, primes: Vec<avoidlab::finring::Ideal>, t: &mut Tally) {
    let name = format!("{} [{}]", ring.expr(), primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","));
    let expected: BTreeSet<Mask> = primes.iter().map(Brute::mask_of).collect();
    let Some(family) = t.ok(PrimeFamily::finite(ring, primes), || name.clone()) else { return };
    let Some(real) = t.ok(pullback_realization(&family), || name.clone()) else { return };
    t.check(real.map.verify().is_ok(), || format!("{name}: realization map is not a ring map"));
    let target = Brute::new(&real.target);
    let preimages: BTreeSet<Mask> = target
        .maximal_ideals()
        .into_iter()
        .map(|m| {
            ring.elements().filter(|&e| Brute::has(m, real.map.apply(e).idx())).fold(0, |acc, e| acc | (1 << e.idx()))
        })
        .collect();
    t.check(preimages == expected, || format!("{name}: contracted maximal ideals differ from the family"));
}

/// Quotients, projections, diagonals and the identity.
fn generated_homs(ring: &Arc<FiniteRing>, t: &mut Tally) -> Vec<(String, RingHom)> {
    let name = ring.expr().to_string();
    let mut out = vec![(format!("id {name}"), RingHom::identity(ring))];
    for i in ring.enumerate_ideals().into_iter().filter(|i| i.is_proper() && !i.is_zero()) {
        if let Some((_, q)) = t.ok(ring.quotient(&i), || format!("{name} / {i}")) {
            out.push((format!("{name} -> {name}/{i}"), q));
        }
    }
    if let Some((p1, p2)) = ring.projections() {
        out.push((format!("{name} -> first factor"), p1));
        out.push((format!("{name} -> second factor"), p2));
    }
    if ring.order() <= DIAGONAL_MAX_ORDER {
        if let Some(d) = t.ok(ring.diagonal(DIAGONAL_MAX_ORDER * DIAGONAL_MAX_ORDER), || format!("{name} diagonal")) {
            out.push((format!("{name} -> {name} x {name}"), d));
        }
    }
    out
}

/// The subring-without-identity property on rings of order at most 16,
/// pulled back along the identity and every quotient map.
fn subrings(ctx: &Context, t: &mut Tally) {
    let mut rng = ctx.rng(88);
    let mut instances = 0;
    for ring in ctx.corpus.iter().filter(|r| r.order() <= SUBRING_MAX_ORDER) {
        let mut maps = vec![RingHom::identity(ring)];
        for i in ring.enumerate_ideals().into_iter().filter(|i| i.is_proper() && !i.is_zero()) {
            if let Ok((_, q)) = ring.quotient(&i) {
                maps.push(q);
            }
        }
        for f in maps {
            for primes in subfamilies(&f.target().spec(), &mut rng) {
                let label = format!("{} -> {}", ring.expr(), f.target().expr());
                let Some(family) = t.ok(PrimeFamily::finite(f.target(), primes), || label.clone()) else { continue };
                let Some(r) = t.ok(subring1_contraction_property(&f, &family), || label.clone()) else { continue };
                instances += 1;
                t.check(r.target_holds, || format!("{label}: subring property fails on the target"));
                t.check(r.holds, || format!("{label}: subring property fails on the contraction"));
            }
        }
    }
    t.note(format!("{instances} subring-without-identity instances"));
}
