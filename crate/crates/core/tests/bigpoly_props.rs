use avoidlab::bigpoly::{formally_real_cover, CoeffField, CounterexampleBundle, Monomial, PointQ, RealCover, SparsePoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

const VARS: u32 = 5;

fn field_strategy() -> impl Strategy<Value = CoeffField> {
    prop_oneof![Just(CoeffField::Rational), Just(CoeffField::Prime(2)), Just(CoeffField::Prime(5))]
}

fn term_strategy() -> impl Strategy<Value = (Vec<(u32, u32)>, i64)> {
    (prop::collection::vec((1..=VARS, 1u32..3), 0..3), -6i64..7)
}

fn poly(field: CoeffField, terms: &[(Vec<(u32, u32)>, i64)]) -> SparsePoly {
    SparsePoly::from_terms(
        field,
        terms.iter().map(|(m, c)| (Monomial::from_pairs(m.iter().copied()), BigRational::from_integer(BigInt::from(*c)))),
    )
    .unwrap()
}

fn polys() -> impl Strategy<Value = (CoeffField, [Vec<(Vec<(u32, u32)>, i64)>; 3])> {
    let terms = || prop::collection::vec(term_strategy(), 0..5);
    (field_strategy(), [terms(), terms(), terms()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring_axioms((field, [a, b, c]) in polys()) {
        let (f, g, h) = (poly(field, &a), poly(field, &b), poly(field, &c));
        prop_assert_eq!(f.add(&g).unwrap(), g.add(&f).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
        prop_assert_eq!(f.add(&g).unwrap().add(&h).unwrap(), f.add(&g.add(&h).unwrap()).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
        prop_assert!(f.sub(&f).unwrap().is_zero());
        prop_assert_eq!(f.mul(&SparsePoly::one(field)).unwrap(), f.clone());
        prop_assert_eq!(f.pow(2), f.mul(&f).unwrap());
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        (_, [a, b, _]) in polys(),
        coords in prop::collection::vec(-4i64..5, VARS as usize),
    ) {
        let (f, g) = (poly(CoeffField::Rational, &a), poly(CoeffField::Rational, &b));
        let pt = PointQ::from_ints(&coords);
        let (fv, gv) = (f.eval(&pt).unwrap(), g.eval(&pt).unwrap());
        prop_assert_eq!(f.add(&g).unwrap().eval(&pt).unwrap(), &fv + &gv);
        prop_assert_eq!(f.mul(&g).unwrap().eval(&pt).unwrap(), fv * gv);
    }

    #[test]
    fn chain_membership_is_monotone(
        (field, [a, _, _]) in polys(),
        n in 1u32..=VARS,
    ) {
        let f = poly(field, &a);
        if f.in_pn(n) {
            prop_assert!(f.in_pn(n + 1));
            prop_assert!(f.in_iomega());
        }
    }

    #[test]
    fn members_of_pn_vanish_when_the_first_n_variables_do(
        (_, [a, _, _]) in polys(),
        n in 1u32..=VARS,
        rest in prop::collection::vec(-4i64..5, VARS as usize),
    ) {
        let f = poly(CoeffField::Rational, &a);
        let coords: Vec<i64> = rest.iter().enumerate().map(|(i, &c)| if (i as u32) < n { 0 } else { c }).collect();
        if f.in_pn(n) {
            prop_assert!(f.eval(&PointQ::from_ints(&coords)).unwrap().is_zero());
        }
    }

    #[test]
    fn containing_index_is_least((field, [a, _, _]) in polys()) {
        let f = poly(field, &a);
        match f.containing_index() {
            None => prop_assert!(!f.in_iomega()),
            Some(k) => {
                prop_assert!(f.in_pn(k));
                prop_assert!(k == 1 || !f.in_pn(k - 1));
            }
        }
    }

    #[test]
    fn sum_of_squares_witness_is_a_common_zero(
        (_, [a, b, _]) in polys(),
        pts in prop::collection::vec(prop::collection::vec(-2i64..3, VARS as usize), 1..20),
    ) {
        let fs = [poly(CoeffField::Rational, &a), poly(CoeffField::Rational, &b)];
        let points: Vec<PointQ> = pts.iter().map(|c| PointQ::from_ints(c)).collect();
        let first_common = points.iter().position(|p| fs.iter().all(|f| f.eval(p).unwrap().is_zero()));
        match formally_real_cover(&fs, &points).unwrap() {
            RealCover::Witness { index, .. } => prop_assert_eq!(Some(index), first_common),
            RealCover::NoWitness => prop_assert_eq!(None, first_common),
        }
    }
}

#[test]
fn omega_ideal_is_covered_but_uncontained() {
    let bundle = CounterexampleBundle::new(CoeffField::Rational);
    for n in 1..=20 {
        assert!(bundle.verify_witness(n));
        let w = bundle.witness(n);
        assert_eq!(bundle.containing_index(&w), Some(n + 1));
    }
}
