use avoidlab::avoidance::{covers, Coverage};
use avoidlab::quadlab::{class_number, factor_prime, qr_power, smith_x, QuadElem, QuadIdeal, QuadOrder, Splitting};
use avoidlab::spectra::{PrimeFamily, QuadMaximal, SymbolicIdeal};
use proptest::prelude::*;

const DS: [i64; 12] = [-1, -2, -3, -5, -6, -7, -10, -13, -14, -15, -21, -23];
const PRIMES_TO_50: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

fn order(k: usize) -> QuadOrder {
    QuadOrder::new(DS[k % DS.len()]).unwrap()
}

/// Roots of the minimal polynomial of `ω` modulo `p`, counted directly.
fn roots_mod(o: QuadOrder, p: u64) -> usize {
    let (t, n) = o.min_poly();
    let p = p as i128;
    (0..p).filter(|&r| (r * r - t * r + n).rem_euclid(p) == 0).count()
}

fn ideal(o: QuadOrder, gens: &[(i8, i8)]) -> Option<QuadIdeal> {
    let gens: Vec<QuadElem> = gens.iter().map(|&(u, v)| QuadElem::new(u as i128, v as i128)).collect();
    QuadIdeal::from_generators(o, &gens).ok()
}

#[test]
fn primes_below_fifty_factor_consistently() {
    for k in 0..DS.len() {
        let o = order(k);
        let disc = o.discriminant();
        for p in PRIMES_TO_50 {
            let f = factor_prime(o, p).unwrap();
            let expected = if disc % p as i64 == 0 {
                Splitting::Ramified
            } else if roots_mod(o, p) == 2 {
                Splitting::Split
            } else {
                Splitting::Inert
            };
            assert_eq!(f.splitting, expected, "p = {p} over d = {}", o.d());
            let norms: Vec<i128> = f.primes.iter().map(QuadIdeal::norm).collect();
            let pi = p as i128;
            match f.splitting {
                Splitting::Split => assert_eq!(norms, [pi, pi]),
                Splitting::Ramified => assert_eq!(norms, [pi]),
                Splitting::Inert => assert_eq!(norms, [pi * pi]),
            }
            for q in &f.primes {
                assert!(q.is_prime());
                assert!(q.contains(QuadElem::int(pi)));
            }
        }
    }
}

#[test]
fn smith_elements_generate_a_power_supported_on_one_prime() {
    for k in 0..DS.len() {
        let o = order(k);
        for p in [2u64, 3, 5, 7] {
            for q in factor_prime(o, p).unwrap().primes {
                let cert = smith_x(&q).unwrap();
                assert!(q.contains(cert.x));
                let principal = QuadIdeal::principal(o, cert.x).unwrap();
                assert_eq!(principal, q.pow(cert.class_number));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn qr_power_generates_the_least_principal_power(
        k in 0usize..DS.len(),
        gens in prop::collection::vec((-12i8..13, -12i8..13), 1..3),
    ) {
        let o = order(k);
        let Some(i) = ideal(o, &gens) else { return Ok(()) };
        let (n, a) = qr_power(&i).unwrap();
        let h = class_number(o);
        prop_assert!(i.contains(a));
        prop_assert_eq!(QuadIdeal::principal(o, a).unwrap(), i.pow(n));
        prop_assert_eq!(h % n, 0);
        for m in 1..n {
            prop_assert!(i.pow(m).principal_generator().is_none());
        }
    }

    #[test]
    fn ideal_norm_is_multiplicative(
        k in 0usize..DS.len(),
        a in prop::collection::vec((-9i8..10, -9i8..10), 1..3),
        b in prop::collection::vec((-9i8..10, -9i8..10), 1..3),
    ) {
        let o = order(k);
        let (Some(i), Some(j)) = (ideal(o, &a), ideal(o, &b)) else { return Ok(()) };
        prop_assert_eq!(i.multiply(&j).unwrap().norm(), i.norm() * j.norm());
    }

    #[test]
    fn quadratic_families_are_never_covered_without_containment(
        k in 0usize..DS.len(),
        gens in prop::collection::vec((-12i8..13, -12i8..13), 1..3),
        excluded in prop::sample::subsequence(&PRIMES_TO_50[..6], 0..3),
    ) {
        let o = order(k);
        let Some(i) = ideal(o, &gens) else { return Ok(()) };
        let family = PrimeFamily::quad(o, QuadMaximal::CofiniteAll(excluded)).unwrap();
        let report = covers(&SymbolicIdeal::Quad(o, Some(i.clone())), &family).unwrap();
        match &report.outcome {
            Coverage::Uncontained(_) => prop_assert!(false, "{} covered but uncontained", i),
            Coverage::Contained(m) => prop_assert!(family.member_contains(m, &report.ideal).unwrap()),
            Coverage::Escape(x) => {
                prop_assert!(report.ideal.contains_elem(x).unwrap());
                prop_assert!(family.avoids_all(x).unwrap());
            }
        }
    }
}
