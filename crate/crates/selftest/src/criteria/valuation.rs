use avoidlab::fpoly::FpPoly;
use avoidlab::valuation::{davis_valuation, FieldElem, Place, RatFunc};
use avoidlab::Error;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Context, Tally};
use crate::oracle::valuation::{brute_escape, in_ring};

const RATIONAL_INSTANCES: usize = 300;
const FUNCTION_INSTANCES: usize = 100;
const PRIMES_BELOW_100: [u64; 25] =
    [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

pub(super) fn run(ctx: &Context, t: &mut Tally) {
    let mut rng = ctx.rng(5);
    let mut witnessed = 0;
    for _ in 0..RATIONAL_INSTANCES {
        let places: Vec<Place> = PRIMES_BELOW_100.iter().map(|&p| Place::padic(p).expect("prime")).collect();
        let x = FieldElem::ratio(rng.gen_range(-60..=60), rng.gen_range(1..=60));
        witnessed += instance(&places, x, &mut rng, t) as usize;
    }
    for _ in 0..FUNCTION_INSTANCES {
        let p = *[2u32, 3].choose(&mut rng).expect("nonempty");
        let mut places: Vec<Place> = FpPoly::irreducibles(p)
            .take_while(|f| f.degree().is_some_and(|d| d <= 4))
            .map(|f| Place::poly(f).expect("irreducible"))
            .collect();
        places.push(Place::infinity(p).expect("prime"));
        let x = random_function(p, &mut rng);
        witnessed += instance(&places, x, &mut rng, t) as usize;
    }
    t.note(format!("grid search found a witness on {witnessed} instances"));
}

fn random_function(p: u32, rng: &mut ChaCha8Rng) -> FieldElem {
    let poly = |rng: &mut ChaCha8Rng| FpPoly::new(p, (0..=rng.gen_range(0..=3)).map(|_| rng.gen_range(0..p as i64)));
    let num = poly(rng);
    let mut den = poly(rng);
    while den.is_zero() {
        den = poly(rng);
    }
    FieldElem::Function(RatFunc::new(num, den).expect("nonzero denominator"))
}

/// Returns whether the grid search found a witness.
fn instance(places: &[Place], x: FieldElem, rng: &mut ChaCha8Rng, t: &mut Tally) -> bool {
    let v = places.choose(rng).expect("nonempty").clone();
    let n = rng.gen_range(1..=4);
    let mut others: Vec<Place> = places.choose_multiple(rng, n).cloned().collect();
    if rng.gen_bool(0.2) {
        others.push(v.clone());
    }
    let names: Vec<String> = others.iter().map(|o| o.to_string()).collect();
    let name = format!("V={v} others={names:?} x={x}");
    let brute = brute_escape(&v, &others, &x);
    // V[x] is V or the whole field; only V itself can cover V.
    let violated = in_ring(&v, &x) && others.contains(&v);
    match davis_valuation(&v, &others, &x) {
        Ok(d) => {
            t.check(!violated, || format!("{name}: hypothesis fails yet an element was returned"));
            let sum = d.v.add(&x).ok();
            t.check(
                in_ring(&v, &d.v) && sum.as_ref() == Some(&d.v_plus_x) && others.iter().all(|w| !in_ring(w, &d.v_plus_x)),
                || format!("{name}: v={} fails membership", d.v),
            );
        }
        Err(Error::HypothesisViolated { .. }) => {
            t.check(violated && brute.is_none(), || format!("{name}: hypothesis rejected, grid witness {brute:?}"));
        }
        Err(e) => t.fail(format!("{name}: {e}")),
    }
    brute.is_some()
}
