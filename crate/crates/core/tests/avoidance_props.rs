use avoidlab::avoidance::{classic_pal, covers, davis, ClassicOutcome, Coverage};
use avoidlab::finring::{Elem, FiniteRing, Ideal};
use avoidlab::pid::{Pid, PidElem};
use avoidlab::spectra::{Member, PidMaximal, PrimeFamily, SymbolicIdeal, UElem};
use avoidlab::Error;
use proptest::prelude::*;

const SMALL_PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn prime_member(p: i64) -> Member {
    Member::PidMaximal(Pid::Integers.prime(&Pid::Integers.int(p)).unwrap())
}

fn int_value(x: &UElem) -> i64 {
    match x {
        UElem::Pid(PidElem::Int(n)) => *n as i64,
        other => panic!("not an integer: {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// Over `Max(Z)` with `I = (m)`, `a ≠ 0`: a Davis element exists exactly
    /// when no prime divides both `a` and `m` and no listed prime does either.
    #[test]
    fn davis_over_the_integers(
        a in 1i64..500,
        m in 1i64..500,
        extra in prop::sample::subsequence(&SMALL_PRIMES[..], 0..3),
    ) {
        let family = PrimeFamily::pid(Pid::Integers, false, PidMaximal::CofiniteAll(Vec::new())).unwrap();
        let extra_members: Vec<Member> = extra.iter().map(|&p| prime_member(p)).collect();
        let ideal = SymbolicIdeal::Pid(vec![PidElem::Int(m as i128)]);
        let blocked = gcd(a, m) != 1 || extra.iter().any(|&p| a % p == 0 && m % p == 0);
        match davis(&family, &ideal, &UElem::Pid(PidElem::Int(a as i128)), &extra_members) {
            Err(Error::Precondition { .. }) => prop_assert!(blocked, "a = {}, m = {}", a, m),
            Err(e) => prop_assert!(false, "unexpected error {}", e),
            Ok(cert) => {
                prop_assert!(!blocked);
                let mut avoid: Vec<i64> = (2..=a).filter(|&p| a % p == 0 && (2..p).all(|q| p % q != 0)).collect();
                avoid.extend(&extra);
                for c in [int_value(&cert.c), int_value(&cert.cross_check.1)] {
                    prop_assert_eq!(c % m, 0);
                    for &p in &avoid {
                        prop_assert!((a + c) % p != 0, "{} + {} lies in ({})", a, c, p);
                    }
                }
                prop_assert_eq!(int_value(&cert.a_plus_c), a + int_value(&cert.c));
            }
        }
    }

    #[test]
    fn davis_over_finite_spectra(
        n in 2u32..40,
        a in any::<u32>(),
        g in any::<u32>(),
    ) {
        let ring = FiniteRing::residue(n).unwrap();
        let family = PrimeFamily::finite_spec(&ring);
        let a = Elem(a % n);
        let i = Ideal::principal(&ring, Elem(g % n));
        let through_a: Vec<Ideal> = ring.spec().into_iter().filter(|p| p.contains(a)).collect();
        let joint = Ideal::principal(&ring, a).sum(&i).unwrap();
        let blocked = ring.spec().iter().any(|p| joint.is_subset(p));
        match davis(&family, &SymbolicIdeal::Finite(i.clone()), &UElem::Finite(a), &[]) {
            Err(Error::Precondition { .. }) => prop_assert!(blocked),
            Err(e) => prop_assert!(false, "unexpected error {}", e),
            Ok(cert) => {
                prop_assert!(!blocked);
                for c in [&cert.c, &cert.cross_check.1] {
                    let UElem::Finite(c) = c else { unreachable!() };
                    prop_assert!(i.contains(*c));
                    let s = ring.add(a, *c);
                    prop_assert!(through_a.iter().all(|p| !p.contains(s)));
                }
            }
        }
    }

    /// Classic avoidance: the verdict agrees with an element-by-element
    /// look at the union.
    #[test]
    fn classic_avoidance_against_the_union(n in 2u32..60, g in any::<u32>()) {
        let ring = FiniteRing::residue(n).unwrap();
        let primes = ring.spec();
        let i = Ideal::principal(&ring, Elem(g % n));
        let in_union = i.elements().all(|x| primes.iter().any(|p| p.contains(x)));
        match classic_pal(&i, &primes).unwrap() {
            ClassicOutcome::Contained(p) => {
                prop_assert!(in_union);
                prop_assert!(primes.contains(&p) && i.is_subset(&p));
            }
            ClassicOutcome::Escape(x) => {
                prop_assert!(!in_union);
                prop_assert!(i.contains(x));
                prop_assert!(primes.iter().all(|p| !p.contains(x)));
            }
        }
    }

    #[test]
    fn finite_coverage_never_uncontained(n in 2u32..60, g in any::<u32>(), mask in any::<u8>()) {
        let ring = FiniteRing::residue(n).unwrap();
        let primes: Vec<Ideal> =
            ring.spec().into_iter().enumerate().filter(|(k, _)| mask & (1 << (k % 8)) != 0).map(|(_, p)| p).collect();
        let family = PrimeFamily::finite(&ring, primes).unwrap();
        let report = covers(&SymbolicIdeal::Finite(Ideal::principal(&ring, Elem(g % n))), &family).unwrap();
        prop_assert!(!matches!(report.outcome, Coverage::Uncontained(_)));
        report.validate(&family).unwrap();
    }
}
