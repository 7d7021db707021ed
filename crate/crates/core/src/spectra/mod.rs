//! Finitely described families of primes in four universes (finite rings,
//! `Z` and `F_p[x]`, the chain `P_1 ⊂ P_2 ⊂ ...` in `K[x_1, x_2, ...]`,
//! imaginary quadratic orders), their Zariski closed and open sets, and
//! compactness certificates.

mod family;
mod zariski;

pub use family::{ChainIdeal, ChainIndexSet, Member, PidMaximal, PrimeFamily, QuadMaximal, SymbolicIdeal, UElem};
pub use zariski::{CompactReason, CompactnessCertificate, NonCompactCover, ZariskiSet, NONCOMPACT_PREFIXES_CHECKED};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigpoly::{parse_poly, CoeffField};
    use crate::finring::{FiniteRing, RingHom};

    fn fam(s: &str) -> PrimeFamily {
        PrimeFamily::parse(s).unwrap()
    }

    fn ideal(f: &PrimeFamily, s: &str) -> SymbolicIdeal {
        SymbolicIdeal::parse_for(f, s).unwrap()
    }

    fn shown(ms: Vec<Member>) -> Vec<String> {
        ms.iter().map(|m| m.to_string()).collect()
    }

    #[test]
    fn closed_sets_in_z6() {
        let f = fam("finite:Z/6:(2),(3)");
        assert_eq!(shown(f.v(&ideal(&f, "(2)")).unwrap().members().unwrap()), ["(2)"]);
        assert_eq!(f.v(&ideal(&f, "(0)")).unwrap().members().unwrap().len(), 2);
        assert_eq!(shown(f.d(&ideal(&f, "(2)")).unwrap().members().unwrap()), ["(3)"]);
    }

    #[test]
    fn chain_tail() {
        let f = fam("chain:Q:all");
        let v = f.v(&ideal(&f, "(x3)")).unwrap();
        assert!(!v.contains(&Member::Chain(2)));
        assert!(v.contains(&Member::Chain(3)));
        assert!(v.contains(&Member::Chain(300)));
        assert!(v.members().is_none());
        let d = f.d(&ideal(&f, "(x3)")).unwrap();
        assert_eq!(shown(d.members().unwrap()), ["P_1", "P_2"]);
        assert!(f.v(&ideal(&f, "(x1 + 1)")).unwrap().is_empty());
    }

    #[test]
    fn compactness_rules() {
        assert_eq!(fam("Max(Z)").is_compact(), CompactnessCertificate::Compact(CompactReason::NoetherianSpectrum));
        assert_eq!(fam("chain:Q:1..5").is_compact(), CompactnessCertificate::Compact(CompactReason::FiniteSpace));
        assert_eq!(fam("chain:Q:all:top").is_compact(), CompactnessCertificate::Compact(CompactReason::TopElementChain));
        let CompactnessCertificate::NonCompact(cover) = fam("chain:Q:all").is_compact() else { panic!() };
        assert!(cover.verify(NONCOMPACT_PREFIXES_CHECKED).unwrap());
        assert!((1..=20).all(|k| cover.verify_prefix(k).unwrap()));
    }

    #[test]
    fn chain_unions() {
        let (u, m) = fam("chain:Q:1,2,3,4,5").chain_union().unwrap();
        assert_eq!(m, Some(Member::Chain(5)));
        assert_eq!(u.to_string(), "(x1,x2,x3,x4,x5)");
        let (u, m) = fam("chain:Q:all").chain_union().unwrap();
        assert_eq!((u, m), (SymbolicIdeal::Chain(ChainIdeal::IOmega), None));
        let (_, m) = fam("chain:F2:all:top").chain_union().unwrap();
        assert_eq!(m, Some(Member::ChainTop));
    }

    #[test]
    fn subcovers() {
        let f = fam("Max(Z)");
        let cover = [ideal(&f, "(6)"), ideal(&f, "(10)"), ideal(&f, "(15)"), ideal(&f, "(7)")];
        assert_eq!(f.subcover(&cover).unwrap(), Some(vec![2, 3]));
        assert_eq!(f.subcover(&cover[..1]).unwrap(), None);
        let g = fam("finite:Z/6:(2),(3)");
        assert_eq!(g.subcover(&[ideal(&g, "(2)"), ideal(&g, "(3)")]).unwrap(), Some(vec![0, 1]));
        let top = fam("chain:Q:all:top");
        // Only the whole space is an open neighbourhood of P_omega.
        assert_eq!(top.subcover(&[ideal(&top, "(x2)"), ideal(&top, "(1)")]).unwrap(), Some(vec![1]));
    }

    #[test]
    fn pullbacks() {
        let z6 = FiniteRing::parse("Z/6").unwrap();
        let z3 = FiniteRing::parse("Z/3").unwrap();
        let f = FiniteRing::from_integers(6, &z3).unwrap();
        let fam3 = PrimeFamily::finite_spec(&z3);
        assert_eq!(fam3.pullback(&f).unwrap().to_string(), "finite:Z/6:(3)");
        let id = RingHom::identity(&z6);
        let fam6 = PrimeFamily::finite_spec(&z6);
        assert_eq!(fam6.pullback(&id).unwrap(), fam6);
        let z2 = FiniteRing::parse("Z/2").unwrap();
        let g = FiniteRing::from_integers(4, &z2).unwrap();
        assert_eq!(PrimeFamily::finite_spec(&z2).pullback(&g).unwrap().to_string(), "finite:Z/4:(2)");
    }

    #[test]
    fn grammar_round_trips() {
        for s in [
            "finite:Z/6:(2),(3)",
            "finite:Z/4 x Z/3:",
            "Spec(Z)",
            "Max(Z)\\2,3",
            "Spec(F3[x])\\x+1",
            "Z:(0),(5),(7)",
            "F2[x]:(x^2+x+1)",
            "chain:Q:all",
            "chain:F2:1,2,5:top",
            "quad:-5:all\\2",
            "quad:-5:(2,1+w),(3,1+w)",
        ] {
            let f = fam(s);
            assert_eq!(f.to_string(), s);
            assert_eq!(fam(&f.to_string()), f);
        }
        assert_eq!(fam("quad:-5:2").to_string(), "quad:-5:(2,1+w)");
    }

    #[test]
    fn grammar_rejections() {
        assert!(matches!(PrimeFamily::parse("finite:Z/6:(2)(3)"), Err(_)));
        assert!(matches!(PrimeFamily::parse("finite:Z/6:(1)"), Err(crate::Error::NotPrime(_))));
        assert!(matches!(PrimeFamily::parse("Z:(3),(3)"), Err(crate::Error::DuplicateMember(_))));
        assert!(matches!(PrimeFamily::parse("Max(Z)\\4"), Err(crate::Error::NotPrime(_))));
        assert!(PrimeFamily::parse("chain:Q:0").is_err());
        assert!(PrimeFamily::parse("quad:5:all").is_err());
        assert!(PrimeFamily::parse("nonsense").is_err());
    }

    #[test]
    fn pid_closed_sets() {
        let f = fam("Spec(Z)\\5");
        let v = f.v(&ideal(&f, "(10, 30)")).unwrap();
        assert_eq!(shown(v.members().unwrap()), ["(2)"]);
        assert!(f.v(&ideal(&f, "(0)")).unwrap().contains(&Member::PidGeneric));
        assert!(f.v(&ideal(&f, "(1)")).unwrap().is_empty());
    }

    #[test]
    fn quad_closed_sets() {
        let f = fam("quad:-5:all\\3");
        let v = f.v(&ideal(&f, "(6)")).unwrap();
        assert_eq!(shown(v.members().unwrap()), ["(2, 1+w)"]);
    }

    #[test]
    fn universe_checks() {
        let f = fam("Max(Z)");
        let chain = fam("chain:Q:all");
        let x = SymbolicIdeal::Chain(ChainIdeal::Generated(vec![parse_poly(CoeffField::Rational, "x1").unwrap()]));
        assert!(matches!(f.v(&x), Err(crate::Error::UniverseMismatch(_))));
        assert!(chain.v(&x).is_ok());
    }

    #[test]
    fn members_and_elements_parse_per_universe() {
        let z = fam("Max(Z)");
        assert_eq!(shown(Member::parse_list_for(&z, "(3),(7)").unwrap()), ["(3)", "(7)"]);
        assert_eq!(Member::parse_for(&z, "(0)").unwrap(), Member::PidGeneric);
        assert!(matches!(Member::parse_for(&z, "(6)"), Err(crate::Error::NotPrime(_))));
        assert_eq!(UElem::parse_for(&z, "-14").unwrap(), UElem::Pid(crate::pid::PidElem::Int(-14)));
        let chain = fam("chain:Q:all");
        assert_eq!(Member::parse_for(&chain, "P_4").unwrap(), Member::Chain(4));
        assert_eq!(Member::parse_for(&chain, "P_omega").unwrap(), Member::ChainTop);
        assert!(Member::parse_for(&chain, "P_0").is_err());
        let q = fam("quad:-5:all");
        assert_eq!(Member::parse_for(&q, "(2,1+w)").unwrap().to_string(), "(2, 1+w)");
        assert!(Member::parse_list_for(&fam("finite:Z/6:(2)"), "").unwrap().is_empty());
    }
}
