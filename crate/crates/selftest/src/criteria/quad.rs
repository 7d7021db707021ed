use avoidlab::arith::is_prime;
use avoidlab::quadlab::{class_number, factor_prime, qr_power, smith_x, QuadElem, QuadIdeal, QuadOrder};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{Context, Tally};
use crate::oracle::quad::{class_number_by_enumeration, contains, ideal_in_principal};

const DISCRIMINANT_SEEDS: [i64; 10] = [-1, -2, -3, -5, -6, -7, -10, -11, -13, -15];
const SMITH_NORM_MAX: i128 = 50;
const QR_IDEALS: usize = 100;
const QR_NORM_MAX: i128 = 10_000;

pub(super) fn run(ctx: &Context, t: &mut Tally) {
    let mut primes_checked = 0;
    for d in DISCRIMINANT_SEEDS {
        let Some(o) = t.ok(QuadOrder::new(d), || format!("d={d}")) else { continue };
        if let Some(h) = t.ok(class_number_by_enumeration(o), || format!("d={d}: class oracle")) {
            let lib = class_number(o);
            t.check(lib == h, || format!("d={d}: class number {lib}, enumeration {h}"));
        }
        for p in (2..=SMITH_NORM_MAX as u64).filter(|&p| is_prime(p)) {
            let Some(above) = t.ok(factor_prime(o, p), || format!("d={d} p={p}")) else { continue };
            for prime in above.primes.iter().filter(|q| q.norm() <= SMITH_NORM_MAX) {
                primes_checked += 1;
                let Some(cert) = t.ok(smith_x(prime), || format!("d={d}: smith_x({prime})")) else { continue };
                // x ∈ P and P^h ⊆ (x) together give √(x) = P.
                t.check(contains(prime, cert.x) && ideal_in_principal(&prime.pow(cert.exponent), cert.x), || {
                    format!("d={d}: sqrt(({})) != {prime}", cert.x)
                });
            }
        }
    }
    t.note(format!("{primes_checked} primes of norm <= {SMITH_NORM_MAX}"));
    let mut rng = ctx.rng(6);
    let mut accepted = 0;
    while accepted < QR_IDEALS {
        let d = *DISCRIMINANT_SEEDS.choose(&mut rng).expect("nonempty");
        let o = QuadOrder::new(d).expect("squarefree");
        let mut elem = || QuadElem::new(rng.gen_range(-40..=40), rng.gen_range(-40..=40));
        let gens = [elem(), elem()];
        if gens.iter().all(QuadElem::is_zero) {
            continue;
        }
        let Ok(ideal) = QuadIdeal::from_generators(o, &gens) else { continue };
        if ideal.norm() > QR_NORM_MAX {
            continue;
        }
        accepted += 1;
        let Some((n, a)) = t.ok(qr_power(&ideal), || format!("d={d}: qr_power({ideal})")) else { continue };
        t.check(n >= 1 && contains(&ideal, a) && ideal_in_principal(&ideal.pow(n), a), || {
            format!("d={d}: {ideal}^{n} not inside ({a})")
        });
    }
}
