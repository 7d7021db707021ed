//! Discrete valuations of `Q` and `F_p(t)`, valuation avoidance, and the
//! valuation form of Davis's theorem.

mod field;
mod lemma;
mod place;

pub use field::{Field, FieldElem, RatFunc};
pub use lemma::{
    adjoin, avoidance_check, davis_valuation, element_with_signs, ring_subset, Adjoined, AvoidanceOutcome, DavisCase,
    Sign, SubsetVerdict, ValuationDavis, WholeField,
};
pub use place::{Place, Value};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::fpoly::FpPoly;
    use proptest::prelude::*;

    fn q(s: &str) -> FieldElem {
        FieldElem::parse(Field::Rationals, s).unwrap()
    }

    fn f2(s: &str) -> FieldElem {
        FieldElem::parse(Field::Function(2), s).unwrap()
    }

    fn pl(field: Field, s: &str) -> Place {
        Place::parse(field, s).unwrap()
    }

    const F2: Field = Field::Function(2);

    #[test]
    fn values() {
        assert_eq!(pl(Field::Rationals, "p=2").value(&q("1/2")).unwrap(), Value::Finite(-1));
        assert_eq!(pl(Field::Rationals, "p=7").value(&q("0")).unwrap(), Value::Infinity);
        assert_eq!(pl(F2, "inf").value(&f2("(t^2+1)/t^3")).unwrap(), Value::Finite(1));
        assert!(matches!(pl(F2, "inf").value(&q("1")), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn parse_rejects_non_places() {
        assert!(Place::parse(Field::Rationals, "p=4").is_err());
        assert!(Place::parse(F2, "pi=t^2+1").is_err());
        assert_eq!(pl(F2, "pi=t^2+t+1").to_string(), "pi=t^2+t+1");
        assert_eq!(Field::parse("F3(t)").unwrap(), Field::Function(3));
        assert!(Field::parse("F4(t)").is_err());
    }

    #[test]
    fn subset_witnesses() {
        let z2 = pl(Field::Rationals, "p=2");
        let z3 = pl(Field::Rationals, "p=3");
        let r = ring_subset(&z2, &z3).unwrap();
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().to_string(), "1/3");
        assert!(ring_subset(&z2, &z2).unwrap().holds);
        let r = ring_subset(&pl(F2, "pi=t"), &pl(F2, "inf")).unwrap();
        assert_eq!(r.witness.unwrap().to_string(), "t");
    }

    #[test]
    fn adjoin_cases() {
        let z2 = pl(Field::Rationals, "p=2");
        assert_eq!(adjoin(&z2, &q("3")).unwrap(), Adjoined::Same);
        let Adjoined::WholeField(w) = adjoin(&z2, &q("1/2")).unwrap() else { panic!("expected whole field") };
        assert_eq!(w.represent(&q("1/3")).unwrap(), (q("1/3"), 0));
        assert_eq!(w.represent(&q("3/8")).unwrap(), (q("3"), 3));
        assert_eq!(adjoin(&pl(F2, "inf"), &f2("1/t")).unwrap(), Adjoined::Same);
    }

    #[test]
    fn avoidance_examples() {
        let z5 = pl(Field::Rationals, "p=5");
        let others = [pl(Field::Rationals, "p=2"), pl(Field::Rationals, "p=3")];
        assert_eq!(avoidance_check(&z5, &others).unwrap(), AvoidanceOutcome::Escape(q("1/6")));
        assert_eq!(avoidance_check(&others[1], &others).unwrap(), AvoidanceOutcome::Covered(1));
        let out = avoidance_check(&pl(F2, "pi=t"), &[pl(F2, "inf"), pl(F2, "pi=t+1")]).unwrap();
        assert_eq!(out, AvoidanceOutcome::Escape(f2("t^2/(t+1)")));
        assert!(avoidance_check(&z5, &[]).is_err());
    }

    #[test]
    fn signs_examples() {
        let table = [
            (pl(Field::Rationals, "p=5"), Sign::NonNegative),
            (pl(Field::Rationals, "p=2"), Sign::Negative),
            (pl(Field::Rationals, "p=3"), Sign::Negative),
        ];
        assert_eq!(element_with_signs(Field::Rationals, &table).unwrap(), q("1/6"));
        assert_eq!(element_with_signs(Field::Rationals, &[]).unwrap(), q("1"));
        let table = [(pl(F2, "inf"), Sign::NonNegative), (pl(F2, "pi=t"), Sign::Negative)];
        assert_eq!(element_with_signs(F2, &table).unwrap(), f2("1/t"));
        let dup = [(pl(F2, "inf"), Sign::NonNegative), (pl(F2, "inf"), Sign::Negative)];
        assert!(matches!(element_with_signs(F2, &dup), Err(Error::DuplicatePlace(_))));
    }

    #[test]
    fn infinity_negative_with_t_negative() {
        // t itself is a negative place, so the numerator must use t+1.
        let table = [(pl(F2, "inf"), Sign::Negative), (pl(F2, "pi=t"), Sign::Negative)];
        let e = element_with_signs(F2, &table).unwrap();
        assert_eq!(e, f2("(t^2+1)/t"));
    }

    #[test]
    fn davis_examples() {
        let z5 = pl(Field::Rationals, "p=5");
        let z2 = pl(Field::Rationals, "p=2");
        let z3 = pl(Field::Rationals, "p=3");
        let d = davis_valuation(&z5, &[z3.clone(), z2.clone()], &q("1/2")).unwrap();
        assert_eq!((d.v.clone(), d.v_plus_x.clone()), (q("1/3"), q("5/6")));
        assert_eq!(d.case, DavisCase::Mixed { containing: 1 });

        let d = davis_valuation(&z5, &[z2.clone(), z3.clone()], &q("1/6")).unwrap();
        assert_eq!((d.v, d.case), (q("0"), DavisCase::NoneContain));

        let d = davis_valuation(&z5, &[z2.clone(), z3.clone()], &q("6")).unwrap();
        assert_eq!((d.v, d.v_plus_x, d.case), (q("1/6"), q("37/6"), DavisCase::AllContain));
    }

    #[test]
    fn davis_hypothesis_violation_names_the_place() {
        let z2 = pl(Field::Rationals, "p=2");
        let z3 = pl(Field::Rationals, "p=3");
        match davis_valuation(&z2, &[z3, z2.clone()], &q("3")) {
            Err(Error::HypothesisViolated { index, place }) => assert_eq!((index, place.as_str()), (1, "p=2")),
            other => panic!("unexpected {other:?}"),
        }
        // x outside V makes V[x] the whole field, so V may appear among the others.
        let d = davis_valuation(&z2, &[z2.clone()], &q("1/2")).unwrap();
        assert!(d.adjoined_whole_field);
    }

    #[test]
    fn davis_dedupes_repeated_places() {
        let z5 = pl(Field::Rationals, "p=5");
        let z2 = pl(Field::Rationals, "p=2");
        let d = davis_valuation(&z5, &[z2.clone(), z2], &q("1")).unwrap();
        assert_eq!(d.v, q("1/2"));
    }

    const SMALL_PRIMES: [u64; 25] =
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

    fn rational() -> impl Strategy<Value = FieldElem> {
        (-2000i64..2000, 1i64..2000).prop_map(|(n, d)| FieldElem::ratio(n, d))
    }

    fn fp_poly(p: u32) -> impl Strategy<Value = FpPoly> {
        prop::collection::vec(0i64..p as i64, 0..6).prop_map(move |c| FpPoly::new(p, c))
    }

    fn rat_func(p: u32) -> impl Strategy<Value = FieldElem> {
        (fp_poly(p), fp_poly(p).prop_filter("nonzero", |d| !d.is_zero()))
            .prop_map(|(n, d)| FieldElem::Function(RatFunc::new(n, d).unwrap()))
    }

    fn fp_places(p: u32) -> Vec<Place> {
        let mut out: Vec<Place> = FpPoly::irreducibles(p)
            .take_while(|f| f.degree().unwrap() <= 4)
            .map(|f| Place::poly(f).unwrap())
            .collect();
        out.push(Place::infinity(p).unwrap());
        out
    }

    fn check_laws(place: &Place, x: &FieldElem, y: &FieldElem) {
        let (vx, vy) = (place.value(x).unwrap(), place.value(y).unwrap());
        let vxy = place.value(&x.mul(y).unwrap()).unwrap();
        match (vx, vy) {
            (Value::Finite(a), Value::Finite(b)) => assert_eq!(vxy, Value::Finite(a + b)),
            _ => assert_eq!(vxy, Value::Infinity),
        }
        let vsum = place.value(&x.add(y).unwrap()).unwrap();
        assert!(vsum >= vx.min(vy));
        if vx != vy {
            assert_eq!(vsum, vx.min(vy));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn rational_valuation_laws(x in rational(), y in rational(), i in 0usize..25) {
            check_laws(&Place::padic(SMALL_PRIMES[i]).unwrap(), &x, &y);
        }

        #[test]
        fn function_valuation_laws(x in rat_func(3), y in rat_func(3), i in 0usize..64) {
            let places = fp_places(3);
            check_laws(&places[i % places.len()], &x, &y);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn rational_davis_validates(
            v in 0usize..25,
            others in prop::collection::vec(0usize..25, 1..5),
            x in rational(),
        ) {
            let v = Place::padic(SMALL_PRIMES[v]).unwrap();
            let others: Vec<Place> = others.iter().map(|&i| Place::padic(SMALL_PRIMES[i]).unwrap()).collect();
            check_davis(&v, &others, &x);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn function_davis_validates(
            (p, x) in prop::sample::select(vec![2u32, 3]).prop_flat_map(|p| (Just(p), rat_func(p))),
            v in 0usize..64,
            others in prop::collection::vec(0usize..64, 1..4),
        ) {
            let places = fp_places(p);
            let v = places[v % places.len()].clone();
            let others: Vec<Place> = others.iter().map(|&i| places[i % places.len()].clone()).collect();
            check_davis(&v, &others, &x);
        }

        #[test]
        fn rational_product_formula(n in 1i64..100_000, d in 1i64..100_000, neg in any::<bool>()) {
            let x = FieldElem::ratio(if neg { -n } else { n }, d);
            let FieldElem::Rational(r) = &x else { unreachable!() };
            // Reconstruct |x| from its valuations over the primes dividing n·d.
            let mut acc = num_rational::BigRational::from_integer(1.into());
            for p in 2..=(n.max(d) as u64) {
                if (n as u64 % p == 0 || d as u64 % p == 0) && crate::arith::is_prime(p) {
                    let e = Place::padic(p).unwrap().value(&x).unwrap().finite().unwrap();
                    let pp = num_rational::BigRational::from_integer((p as i64).into());
                    acc *= num_traits::pow::Pow::pow(&pp, e as i32);
                }
            }
            prop_assert_eq!(acc, num_traits::Signed::abs(r));
        }

        #[test]
        fn function_product_formula(x in rat_func(2).prop_filter("nonzero", |x| !x.is_zero())) {
            let FieldElem::Function(r) = &x else { unreachable!() };
            let mut total = 0i64;
            for poly in [r.num(), r.den()] {
                let (_, factors) = poly.factor().unwrap();
                for (f, _) in factors {
                    let place = Place::poly(f).unwrap();
                    total += place.value(&x).unwrap().finite().unwrap() * place.degree() as i64;
                }
            }
            total += Place::infinity(2).unwrap().value(&x).unwrap().finite().unwrap();
            prop_assert_eq!(total, 0);
        }

        #[test]
        fn adjoin_reconstructs(i in 0usize..25, x in rational(), y in rational()) {
            let v = Place::padic(SMALL_PRIMES[i]).unwrap();
            if let Adjoined::WholeField(w) = adjoin(&v, &x).unwrap() {
                let (c, j) = w.represent(&y).unwrap();
                prop_assert!(v.contains(&c).unwrap());
                prop_assert_eq!(c.mul(&x.pow(j as i64).unwrap()).unwrap(), y);
            }
        }

        #[test]
        fn incomparability_both_directions(i in 0usize..25, j in 0usize..25) {
            let (a, b) = (Place::padic(SMALL_PRIMES[i]).unwrap(), Place::padic(SMALL_PRIMES[j]).unwrap());
            for (v, w) in [(&a, &b), (&b, &a)] {
                let r = ring_subset(v, w).unwrap();
                prop_assert_eq!(r.holds, v == w);
                if let Some(x) = r.witness {
                    prop_assert!(v.contains(&x).unwrap() && !w.contains(&x).unwrap());
                }
            }
        }
    }

    fn check_davis(v: &Place, others: &[Place], x: &FieldElem) {
        match davis_valuation(v, others, x) {
            Ok(d) => {
                assert!(v.contains(&d.v).unwrap());
                assert_eq!(d.v_plus_x, d.v.add(x).unwrap());
                for w in others {
                    assert!(!w.contains(&d.v_plus_x).unwrap(), "{} in {w}", d.v_plus_x);
                }
            }
            Err(Error::HypothesisViolated { place, .. }) => {
                assert!(v.contains(x).unwrap());
                assert!(others.iter().any(|w| w == v && w.to_string() == place));
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }
}
