use avoidlab::avoidance::{davis, DavisCertificate};
use avoidlab::finring::Elem;
use avoidlab::pid::{Pid, PidElem};
use avoidlab::spectra::{Member, PrimeFamily, SymbolicIdeal, UElem};
use avoidlab::Error;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Context, Tally};
use crate::oracle::finite::{Brute, Mask};

const INTEGER_INSTANCES: usize = 300;
const FINITE_INSTANCES: usize = 200;
const PRIMES_BELOW_50: [i128; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

pub(super) fn run(ctx: &Context, t: &mut Tally) {
    let mut rng = ctx.rng(4);
    let (mut built, mut refused) = (0, 0);
    for _ in 0..INTEGER_INSTANCES {
        match integer_instance(&mut rng, t) {
            Some(true) => built += 1,
            Some(false) => refused += 1,
            None => {}
        }
    }
    for _ in 0..FINITE_INSTANCES {
        match finite_instance(ctx, &mut rng, t) {
            Some(true) => built += 1,
            Some(false) => refused += 1,
            None => {}
        }
    }
    t.note(format!("{built} elements built, {refused} instances correctly refused"));
}

/// Primes of `Z` that `a + c` must avoid.
struct IntegerRequirements {
    /// Listed maximal primes.
    listed: Vec<i128>,
    /// All maximal primes except these, when `a = 0` in a cofinite family.
    all_but: Option<Vec<i128>>,
    generic: bool,
}

impl IntegerRequirements {
    fn avoided_by(&self, y: i128) -> bool {
        if self.generic && y == 0 {
            return false;
        }
        if self.listed.iter().any(|p| y % p == 0) {
            return false;
        }
        match &self.all_but {
            None => true,
            Some(ex) => y != 0 && prime_factors(y).iter().all(|p| ex.contains(p)),
        }
    }

    /// Some required prime contains `(g) = Ra + I`.
    fn blocks(&self, g: i128) -> bool {
        (self.generic && g == 0)
            || self.listed.iter().any(|p| g % p == 0)
            || self.all_but.as_ref().is_some_and(|ex| g != 1 && prime_factors(g).iter().any(|p| !ex.contains(p)))
    }
}

fn prime_factors(n: i128) -> Vec<i128> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn int(c: &UElem) -> Option<i128> {
    match c {
        UElem::Pid(PidElem::Int(n)) => Some(*n),
        _ => None,
    }
}

/// `Some(true)` when an element was built and checked, `Some(false)` when
/// the precondition failure was confirmed.
fn integer_instance(rng: &mut ChaCha8Rng, t: &mut Tally) -> Option<bool> {
    let k = rng.gen_range(1..=4);
    let mut chosen: Vec<i128> = PRIMES_BELOW_50.choose_multiple(rng, k).copied().collect();
    chosen.sort();
    let list = chosen.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
    let (text, cofinite, generic) = match rng.gen_range(0..4) {
        0 => (format!("Max(Z)\\{list}"), true, false),
        1 => (format!("Z:(0),{}", paren(&chosen)), false, true),
        _ => (format!("Z:{}", paren(&chosen)), false, false),
    };
    let m: i128 = rng.gen_range(1..1000);
    let a: i128 = if rng.gen_bool(0.1) { 0 } else { rng.gen_range(-500..500) };
    let n = rng.gen_range(0..=3);
    let q_list: Vec<i128> = PRIMES_BELOW_50.choose_multiple(rng, n).copied().collect();
    let name = format!("{text} I=({m}) a={a} Q={q_list:?}");
    let family = t.ok(PrimeFamily::parse(&text), || name.clone())?;
    let extra: Vec<Member> = q_list
        .iter()
        .map(|&q| Pid::Integers.prime(&PidElem::Int(q)).map(Member::PidMaximal))
        .collect::<avoidlab::Result<_>>()
        .ok()?;
    let mut listed: Vec<i128> = if cofinite && a == 0 {
        Vec::new()
    } else if cofinite {
        prime_factors(a).into_iter().filter(|p| !chosen.contains(p)).collect()
    } else {
        chosen.iter().copied().filter(|p| a % p == 0).collect()
    };
    listed.extend(&q_list);
    let req = IntegerRequirements {
        listed,
        all_but: (cofinite && a == 0).then(|| chosen.clone()),
        generic: generic && a == 0,
    };
    let ideal = SymbolicIdeal::Pid(vec![PidElem::Int(m)]);
    let result = davis(&family, &ideal, &UElem::Pid(PidElem::Int(a)), &extra);
    let blocked = req.blocks(a.gcd(&m));
    match result {
        Ok(cert) => {
            t.check(!blocked, || format!("{name}: built an element although Ra+I is inside a required prime"));
            for (route, c) in routes(&cert) {
                let c = int(c);
                t.check(c.is_some_and(|c| c % m == 0 && req.avoided_by(a + c)), || {
                    format!("{name}: {route} element {c:?} fails membership")
                });
            }
            Some(true)
        }
        Err(Error::Precondition { .. }) => {
            t.check(blocked, || format!("{name}: refused although no required prime contains Ra+I"));
            Some(false)
        }
        Err(e) => {
            t.fail(format!("{name}: {e}"));
            None
        }
    }
}

fn paren(ps: &[i128]) -> String {
    ps.iter().map(|p| format!("({p})")).collect::<Vec<_>>().join(",")
}

fn routes(cert: &DavisCertificate) -> [(String, &UElem); 2] {
    [(cert.route.to_string(), &cert.c), (cert.cross_check.0.to_string(), &cert.cross_check.1)]
}

fn finite_instance(ctx: &Context, rng: &mut ChaCha8Rng, t: &mut Tally) -> Option<bool> {
    let ring = ctx.corpus.choose(rng).expect("nonempty corpus");
    let b = Brute::new(ring);
    let spec = ring.spec();
    let n = rng.gen_range(1..=spec.len());
    let primes: Vec<_> = spec.choose_multiple(rng, n).cloned().collect();
    let n = rng.gen_range(0..=spec.len().min(3));
    let q_list: Vec<_> = spec.choose_multiple(rng, n).cloned().collect();
    let ideal = ring.enumerate_ideals().choose(rng).expect("(0) is an ideal").clone();
    let a = rng.gen_range(0..ring.order());
    let name = format!("{} family={} I={ideal} a={} Q={}", ring.expr(), primes.len(), ring.fmt_elem(Elem(a as u32)), q_list.len());
    let family = t.ok(PrimeFamily::finite(ring, primes.clone()), || name.clone())?;
    let mut required: Vec<Mask> =
        primes.iter().map(Brute::mask_of).filter(|&p| Brute::has(p, a)).collect();
    required.extend(q_list.iter().map(Brute::mask_of));
    let i = Brute::mask_of(&ideal);
    let blocked = required.iter().any(|&p| Brute::has(p, a) && i & p == i);
    let extra: Vec<Member> = q_list.into_iter().map(Member::Finite).collect();
    match davis(&family, &SymbolicIdeal::Finite(ideal), &UElem::Finite(Elem(a as u32)), &extra) {
        Ok(cert) => {
            t.check(!blocked, || format!("{name}: built an element although Ra+I is inside a required prime"));
            for (route, c) in routes(&cert) {
                let ok = match c {
                    UElem::Finite(c) => {
                        let y = b.add(a, c.idx());
                        Brute::has(i, c.idx()) && required.iter().all(|&p| !Brute::has(p, y))
                    }
                    _ => false,
                };
                t.check(ok, || format!("{name}: {route} element fails membership"));
            }
            Some(true)
        }
        Err(Error::Precondition { .. }) => {
            t.check(blocked, || format!("{name}: refused although no required prime contains Ra+I"));
            Some(false)
        }
        Err(e) => {
            t.fail(format!("{name}: {e}"));
            None
        }
    }
}
