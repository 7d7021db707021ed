use super::*;
use crate::bigpoly::CoeffField;
use crate::finring::{FiniteRing, RingHom};
use crate::pid::{Pid, PidElem};
use crate::quadlab::{QuadElem, QuadIdeal, QuadOrder};
use crate::spectra::{ChainIdeal, ChainIndexSet, Member, PrimeFamily, SymbolicIdeal, UElem};

fn fam(s: &str) -> PrimeFamily {
    PrimeFamily::parse(s).unwrap()
}

fn ideal(f: &PrimeFamily, s: &str) -> SymbolicIdeal {
    SymbolicIdeal::parse_for(f, s).unwrap()
}

fn ring(s: &str) -> std::sync::Arc<FiniteRing> {
    FiniteRing::parse(s).unwrap()
}

fn int(n: i128) -> UElem {
    UElem::Pid(PidElem::Int(n))
}

fn zprime(p: &str) -> Member {
    Member::PidMaximal(Pid::Integers.parse_prime(p).unwrap())
}

fn full_chain() -> PrimeFamily {
    PrimeFamily::chain(CoeffField::Rational, ChainIndexSet::AllNaturals, false)
}

#[test]
fn finite_coverage_reports_containing_prime() {
    let f = fam("finite:Z/6:(2),(3)");
    let r = covers(&ideal(&f, "(2)"), &f).unwrap();
    assert_eq!(r.containing_prime().unwrap().to_string(), "(2)");
    r.validate(&f).unwrap();
}

#[test]
fn unit_ideal_escapes_with_one() {
    for s in ["finite:Z/6:(2),(3)", "Max(Z)", "Spec(F3[x])", "quad:-5:all"] {
        let f = fam(s);
        let r = covers(&f.unit_ideal(), &f).unwrap();
        assert!(!r.covered(), "{s}");
        assert_eq!(f.fmt_elem(r.escape_witness().unwrap()), "1", "{s}");
        r.validate(&f).unwrap();
    }
}

#[test]
fn omega_ideal_is_covered_but_uncontained() {
    let f = full_chain();
    let r = covers(&SymbolicIdeal::Chain(ChainIdeal::IOmega), &f).unwrap();
    assert!(r.covered());
    assert!(r.containing_prime().is_none());
    let Coverage::Uncontained(w) = &r.outcome else { panic!("expected the uncontained state") };
    assert_eq!(w.witness(3).to_string(), "x4");
    assert!(w.verify(25));
    r.validate(&f).unwrap();
}

#[test]
fn omega_ideal_against_truncated_chains() {
    let f = fam("chain:Q:1,2,5");
    let r = covers(&SymbolicIdeal::Chain(ChainIdeal::IOmega), &f).unwrap();
    assert_eq!(f.fmt_elem(r.escape_witness().unwrap()), "x6");
    let f = fam("chain:Q:all:top");
    let r = covers(&SymbolicIdeal::Chain(ChainIdeal::IOmega), &f).unwrap();
    assert_eq!(r.containing_prime(), Some(&Member::ChainTop));
}

#[test]
fn zero_ideal_without_generic_point() {
    let f = fam("Max(Z)");
    let r = covers(&f.zero_ideal(), &f).unwrap();
    assert_eq!(r.containing_prime().unwrap().to_string(), "(2)");
    let f = fam("Spec(Z)");
    let r = covers(&f.zero_ideal(), &f).unwrap();
    assert_eq!(r.containing_prime(), Some(&Member::PidGeneric));
}

#[test]
fn empty_family_covers_nothing() {
    let r6 = ring("Z/6");
    let f = PrimeFamily::finite(&r6, vec![]).unwrap();
    let r = covers(&f.zero_ideal(), &f).unwrap();
    assert!(!r.covered());
    assert!(has_pa(&f).unwrap().has_pa());
}

#[test]
fn pid_and_quad_coverage() {
    let f = fam("Max(Z)\\2,3");
    let r = covers(&ideal(&f, "(12,18)"), &f).unwrap();
    assert_eq!(f.fmt_elem(r.escape_witness().unwrap()), "6");
    r.validate(&f).unwrap();
    let r = covers(&ideal(&f, "(10)"), &f).unwrap();
    assert_eq!(r.containing_prime().unwrap().to_string(), "(5)");

    let q = fam("quad:-5:all");
    let r = covers(&ideal(&q, "(3,1+w)"), &q).unwrap();
    assert_eq!(r.containing_prime().unwrap().to_string(), "(3, 1+w)");
    let q = fam("quad:-5:all\\3");
    let r = covers(&ideal(&q, "(3,1+w)"), &q).unwrap();
    // (3, 1+w) has order 2 in the class group and its square is (2-w).
    assert_eq!(q.fmt_elem(r.escape_witness().unwrap()), "2-w");
    r.validate(&q).unwrap();
}

#[test]
fn finite_escape_carries_finitely_generated_witness() {
    let f = fam("finite:Z/30:(2),(3),(5)");
    let r = covers(&f.unit_ideal(), &f).unwrap();
    let gens = r.fg_witness.clone().unwrap();
    assert!(!gens.is_empty() && gens.len() <= 3);
    r.validate(&f).unwrap();
}

#[test]
fn classic_avoidance_examples() {
    let r6 = ring("Z/6");
    let ps = r6.parse_ideal_list("(2),(3)").unwrap();
    let one = r6.parse_ideal("(1)").unwrap();
    assert_eq!(classic_pal(&one, &ps).unwrap(), ClassicOutcome::Escape(r6.one()));

    let r12 = ring("Z/12");
    let ps = r12.parse_ideal_list("(2),(3)").unwrap();
    let i = r12.parse_ideal("(2)").unwrap();
    assert_eq!(classic_pal(&i, &ps).unwrap(), ClassicOutcome::Contained(ps[0].clone()));

    let r30 = ring("Z/30");
    let ps = r30.parse_ideal_list("(5)").unwrap();
    let i = r30.parse_ideal("(6)").unwrap();
    assert_eq!(classic_pal(&i, &ps).unwrap(), ClassicOutcome::Escape(r30.parse_elem("6").unwrap()));

    let not_prime = r12.parse_ideal_list("(4)").unwrap();
    let i = r12.parse_ideal("(2)").unwrap();
    assert!(matches!(classic_pal(&i, &not_prime), Err(crate::Error::NotPrime(_))));
}

#[test]
fn pa_verdicts() {
    let f = PrimeFamily::finite_spec(&ring("Z/12"));
    let c = has_pa(&f).unwrap();
    assert!(c.has_pa());
    assert!(c.exhaustive_ideals.unwrap() >= 6);

    assert!(has_pa(&fam("Max(Z)")).unwrap().has_pa());
    assert!(has_pa(&fam("chain:Q:all:top")).unwrap().has_pa());

    let c = has_pa(&full_chain()).unwrap();
    let PaVerdict::LacksPa { counterexample, cover } = &c.verdict else { panic!("expected LacksPA") };
    assert_eq!(counterexample.ideal, SymbolicIdeal::Chain(ChainIdeal::IOmega));
    assert!(cover.verify(10).unwrap());
}

#[test]
fn fg_justifications() {
    assert_eq!(fg_pa(&fam("Max(Z)")).unwrap().justification, FgJustification::Bezout);
    let chain = fg_pa(&full_chain()).unwrap();
    assert!(chain.holds);
    assert_eq!(chain.justification, FgJustification::Chain);
    let quad = fg_pa(&fam("quad:-5:all")).unwrap();
    assert!(quad.holds);
    assert_eq!(quad.justification, FgJustification::QrClassPower);
    assert!(quad.checked >= 6);
}

#[test]
fn davis_over_the_integers() {
    let f = fam("Max(Z)");
    let i = ideal(&f, "(4)");
    let cert = davis(&f, &i, &int(3), &[zprime("7")]).unwrap();
    assert_eq!(cert.c, int(8));
    assert_eq!(cert.a_plus_c, int(11));
    assert_eq!(cert.cross_check.0, DavisRoute::Residue);
    // Unit a: nothing to avoid through a.
    let cert = davis(&f, &i, &int(1), &[]).unwrap();
    assert_eq!(cert.c, int(0));
}

#[test]
fn davis_precondition_reports_covering_prime() {
    let f = fam("Max(Z)");
    let err = davis(&f, &ideal(&f, "(6)"), &int(3), &[]).unwrap_err();
    let crate::Error::Precondition { covering_prime, .. } = err else { panic!("expected a precondition error") };
    assert_eq!(covering_prime.as_deref(), Some("(3)"));
    let err = davis(&f, &ideal(&f, "(7)"), &int(14), &[zprime("7")]).unwrap_err();
    assert!(matches!(err, crate::Error::Precondition { .. }));
}

#[test]
fn davis_when_a_listed_prime_contains_a() {
    // A = {(5)}, a = 3 in (3): the construction has to treat (3) like a
    // prime through a.
    let f = fam("Z:(5)");
    let cert = davis(&f, &ideal(&f, "(2)"), &int(3), &[zprime("3")]).unwrap();
    assert_eq!(cert.c, int(2));
    let (_, other) = &cert.cross_check;
    let UElem::Pid(PidElem::Int(c)) = other else { panic!() };
    assert!(c % 2 == 0 && (3 + c) % 3 != 0);

    let r30 = ring("Z/30");
    let f = fam("finite:Z/30:(5)");
    let three = Member::Finite(r30.parse_ideal("(3)").unwrap());
    let a = UElem::Finite(r30.parse_elem("3").unwrap());
    let cert = davis(&f, &ideal(&f, "(2)"), &a, &[three]).unwrap();
    assert_eq!(cert.cross_check.0, DavisRoute::ProofConstruction);
    let UElem::Finite(c) = cert.cross_check.1 else { panic!() };
    let c: u32 = r30.fmt_elem(c).parse().unwrap();
    assert!(c % 2 == 0 && (3 + c) % 3 != 0);
}

#[test]
fn davis_in_finite_rings() {
    let r6 = ring("Z/6");
    let f = PrimeFamily::finite_spec(&r6);
    let i = ideal(&f, "(3)");
    let cert = davis(&f, &i, &UElem::Finite(r6.parse_elem("2").unwrap()), &[]).unwrap();
    assert_eq!(f.fmt_elem(&cert.c), "3");
    assert!(r6.is_unit(match cert.a_plus_c {
        UElem::Finite(e) => e,
        _ => unreachable!(),
    }));
    assert_eq!(cert.cross_check.0, DavisRoute::ProofConstruction);
}

#[test]
fn davis_with_zero_over_a_cofinite_family() {
    let f = fam("Max(Z)\\2,3");
    let cert = davis(&f, &ideal(&f, "(6)"), &int(0), &[]).unwrap();
    assert_eq!(cert.c, int(6));
    assert!(cert.closed_at_a.is_none());
}

#[test]
fn davis_in_a_quadratic_order() {
    let q = fam("quad:-5:all");
    let o = QuadOrder::new(-5).unwrap();
    let p3 = Member::Quad(QuadIdeal::parse(o, "(3,1+w)").unwrap());
    let i = ideal(&q, "(2,1+w)");
    let cert = davis(&q, &i, &UElem::Quad(QuadElem::int(3)), &[p3]).unwrap();
    let UElem::Quad(s) = cert.a_plus_c else { panic!() };
    let sum = QuadIdeal::principal(o, s).unwrap();
    for p in ["(3,1+w)", "(3,2+w)"] {
        assert!(!sum.is_subset(&QuadIdeal::parse(o, p).unwrap()));
    }
}

#[test]
fn davis_rejects_the_chain() {
    let f = full_chain();
    let x = UElem::Chain(crate::bigpoly::SparsePoly::var(CoeffField::Rational, 1));
    assert!(matches!(
        davis(&f, &SymbolicIdeal::Chain(ChainIdeal::IOmega), &x, &[]),
        Err(crate::Error::Unsupported(_))
    ));
}

#[test]
fn min_certificates() {
    let r6 = ring("Z/6");
    let c = min_finiteness_certificate(&r6).unwrap();
    assert!(c.reduced);
    let shown: Vec<(String, String, String)> =
        c.entries.iter().map(|e| (e.prime.to_string(), r6.fmt_elem(e.x), e.ann.to_string())).collect();
    assert_eq!(
        shown,
        [("(2)".into(), "3".into(), "(2)".into()), ("(3)".into(), "2".into(), "(3)".into())]
    );

    let r30 = ring("Z/30");
    let c = min_finiteness_certificate(&r30).unwrap();
    let two = c.entries.iter().find(|e| e.prime.to_string() == "(2)").unwrap();
    assert_eq!(r30.fmt_elem(two.x), "15");

    let field = ring("Z/7");
    let c = min_finiteness_certificate(&field).unwrap();
    assert_eq!(c.entries.len(), 1);
    assert_eq!(c.entries[0].x, field.one());
    assert!(c.entries[0].ann.is_zero());

    let r4 = ring("Z/4");
    let c = min_finiteness_certificate(&r4).unwrap();
    assert!(!c.reduced);
    assert_eq!(c.entries[0].x, r4.one());
}

#[test]
fn dichotomies() {
    let f = fam("finite:Z/6:(2),(3)");
    assert_eq!(
        ann_dichotomy(&ideal(&f, "(2)"), &f).unwrap(),
        AnnBranch::Containment(Member::Finite(ring("Z/6").parse_ideal("(2)").unwrap()))
    );
    assert!(matches!(ann_dichotomy(&f.unit_ideal(), &f), Err(crate::Error::NotCovered)));
    assert!(matches!(ann_dichotomy(&f.zero_ideal(), &f).unwrap(), AnnBranch::Containment(_)));

    let chain = full_chain();
    let omega = SymbolicIdeal::Chain(ChainIdeal::IOmega);
    let AnnBranch::Strict { annihilator, witness, sum_proper } = ann_dichotomy(&omega, &chain).unwrap() else {
        panic!("expected the strict branch")
    };
    assert_eq!(annihilator.to_string(), "(0)");
    assert_eq!(witness, Member::ChainTop);
    assert!(sum_proper);

    let f12 = fam("finite:Z/12:(2)");
    assert!(matches!(supp_dichotomy(&ideal(&f12, "(2)"), &f12).unwrap(), SuppBranch::Containment(_)));
    assert!(matches!(supp_dichotomy(&omega, &chain).unwrap(), SuppBranch::InSupport { .. }));
    assert!(matches!(supp_dichotomy(&f12.zero_ideal(), &f12).unwrap(), SuppBranch::Containment(_)));
}

#[test]
fn cyclic_supports() {
    let r12 = ring("Z/12");
    let f = PrimeFamily::finite_spec(&r12);
    let qs = r12.parse_ideal_list("(4),(3)").unwrap();
    let s = cyclic_support(&f, &qs).unwrap();
    assert_eq!(s.len(), 2);
}

#[test]
fn localization_examples() {
    let r = localization_check(&fam("finite:Z/12:(3)")).unwrap();
    assert!(r.inclusion && r.exhaustive_pa && r.equivalent());
    assert_eq!(r.max_local.len(), 1);

    let r6 = localization_check(&fam("finite:Z/6:(2)")).unwrap();
    assert_eq!(r6.local_ring.as_ref().unwrap().order(), 2);
    assert!(r6.inclusion);

    let z6 = ring("Z/6");
    let all_max = PrimeFamily::finite(&z6, z6.max_spec()).unwrap();
    let r = localization_check(&all_max).unwrap();
    assert_eq!(r.local_ring.unwrap().order(), 6);

    let empty = PrimeFamily::finite(&z6, vec![]).unwrap();
    assert!(localization_check(&empty).unwrap().vacuous);
}

#[test]
fn pullback_examples() {
    let r = pullback_realization(&fam("finite:Z/6:(2),(3)")).unwrap();
    assert_eq!(r.target.order(), 6);
    let r = pullback_realization(&fam("finite:Z/12:(2)")).unwrap();
    assert_eq!(r.target.order(), 4);
    assert_eq!(r.contracted[0].to_string(), "(2)");
    let r = pullback_realization(&fam("finite:Z/7:(0)")).unwrap();
    assert_eq!(r.target.max_spec().len(), 1);

    let z4x2 = ring("Z/4 x Z/2");
    let primes = z4x2.spec();
    assert!(primes.len() >= 2);
    let f8 = PrimeFamily::finite(&z4x2, primes).unwrap();
    // Both primes are maximal, so they are incomparable.
    assert!(pullback_realization(&f8).is_ok());
}

#[test]
fn comparable_members_are_rejected() {
    let z3x3 = ring("Z/3 x Z/3");
    let f = PrimeFamily::finite_spec(&z3x3);
    assert!(pullback_realization(&f).is_ok());
    let z4 = ring("Z/4");
    let f = PrimeFamily::finite_spec(&z4);
    assert!(pullback_realization(&f).is_ok());
}

#[test]
fn homomorphism_criterion() {
    let z3 = ring("Z/3");
    let f = FiniteRing::from_integers(6, &z3).unwrap();
    let r = hom_pa_criterion(&f).unwrap();
    assert!(r.pa_side && r.extension_side && r.equivalent());

    let z6 = ring("Z/6");
    assert!(hom_pa_criterion(&RingHom::identity(&z6)).unwrap().equivalent());

    let z2 = ring("Z/2");
    let f = FiniteRing::from_integers(4, &z2).unwrap();
    assert!(hom_pa_criterion(&f).unwrap().equivalent());
}

#[test]
fn lying_over_examples() {
    let f4 = ring("F2[x]/(x^2+x+1)");
    let f = FiniteRing::from_integers(2, &f4).unwrap();
    let r = lying_over_pa(&f).unwrap();
    assert!(r.lying_over && r.pa);
    assert_eq!(r.family.len(), 1);
    assert!(r.family[0].is_zero());

    let z3 = ring("Z/3");
    let d = z3.diagonal(64).unwrap();
    let r = lying_over_pa(&d).unwrap();
    assert_eq!(r.family.len(), 1);
    assert!(r.pa && r.lying_over);
}

#[test]
fn subring_contraction() {
    let z2 = ring("Z/2");
    let f = FiniteRing::from_integers(4, &z2).unwrap();
    let target = PrimeFamily::finite_spec(&z2);
    let r = subring1_contraction_property(&f, &target).unwrap();
    assert_eq!((r.subrings, r.covered), (2, 2));
    assert!(r.holds && r.target_holds);

    let z6 = ring("Z/6");
    let fam6 = fam("finite:Z/6:(2),(3)");
    let r = subring1_contraction_property(&RingHom::identity(&z6), &fam6).unwrap();
    assert_eq!(r.subrings, 3);
    assert!(r.holds);

    let z17 = ring("Z/17");
    let r = subring1_contraction_property(&RingHom::identity(&z17), &PrimeFamily::finite_spec(&z17));
    assert!(matches!(r, Err(crate::Error::CapExceeded { .. })));
}

#[test]
fn quentel_examples() {
    for s in ["Z/6", "Z/30", "F2[x]/(x^2+x+1)"] {
        let r = quentel_check(&ring(s)).unwrap();
        assert!(r.quotients_vnr && r.min_pa && r.min_compact_fg_pa && r.ring_vnr && r.consistent(), "{s}");
    }
    assert!(matches!(quentel_check(&ring("Z/4")), Err(crate::Error::NotReduced)));
}
