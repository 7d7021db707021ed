use std::collections::BTreeMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::ideal::Ideal;
use super::ring::{Elem, FiniteRing};
use crate::error::{Error, Result};

/// A unital ring homomorphism between finite rings, stored as its graph.
#[derive(Clone, Debug)]
pub struct RingHom {
    source: Arc<FiniteRing>,
    target: Arc<FiniteRing>,
    map: Vec<Elem>,
}

impl RingHom {
    /// Build and exhaustively verify a homomorphism.
    pub fn new(source: &Arc<FiniteRing>, target: &Arc<FiniteRing>, map: Vec<Elem>) -> Result<RingHom> {
        let hom = RingHom { source: source.clone(), target: target.clone(), map };
        hom.verify()?;
        Ok(hom)
    }

    pub fn from_fn(
        source: &Arc<FiniteRing>,
        target: &Arc<FiniteRing>,
        f: impl Fn(Elem) -> Elem,
    ) -> Result<RingHom> {
        let map = source.elements().map(f).collect();
        RingHom::new(source, target, map)
    }

    pub fn identity(ring: &Arc<FiniteRing>) -> RingHom {
        RingHom { source: ring.clone(), target: ring.clone(), map: ring.elements().collect() }
    }

    pub fn verify(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.map.len() != s.order() || self.map.iter().any(|e| e.idx() >= t.order()) {
            return Err(Error::Validation("map is not a total function on the source".into()));
        }
        if self.apply(s.one()) != t.one() {
            return Err(Error::Validation("map does not preserve one".into()));
        }
        for a in s.elements() {
            for b in s.elements() {
                if self.apply(s.add(a, b)) != t.add(self.apply(a), self.apply(b)) {
                    return Err(Error::Validation(format!(
                        "map does not preserve the sum {} + {}",
                        s.fmt_elem(a),
                        s.fmt_elem(b)
                    )));
                }
                if self.apply(s.mul(a, b)) != t.mul(self.apply(a), self.apply(b)) {
                    return Err(Error::Validation(format!(
                        "map does not preserve the product {} * {}",
                        s.fmt_elem(a),
                        s.fmt_elem(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FiniteRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteRing> {
        &self.target
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a.idx()]
    }

    pub fn kernel(&self) -> Ideal {
        let mut m = FixedBitSet::with_capacity(self.source.order());
        for a in self.source.elements() {
            if self.apply(a) == self.target.zero() {
                m.insert(a.idx());
            }
        }
        Ideal::from_members(&self.source, m)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = FixedBitSet::with_capacity(self.target.order());
        for &e in &self.map {
            hit.insert(e.idx());
        }
        hit.count_ones(..) == self.target.order()
    }

    /// `f⁻¹(J)`.
    pub fn contract(&self, j: &Ideal) -> Result<Ideal> {
        if **j.ring() != *self.target {
            return Err(Error::RingMismatch);
        }
        let mut m = FixedBitSet::with_capacity(self.source.order());
        for a in self.source.elements() {
            if j.contains(self.apply(a)) {
                m.insert(a.idx());
            }
        }
        Ok(Ideal::from_members(&self.source, m))
    }

    /// `I^e`, the ideal of the target generated by `f(I)`.
    pub fn extend(&self, i: &Ideal) -> Result<Ideal> {
        if **i.ring() != *self.source {
            return Err(Error::RingMismatch);
        }
        let image: Vec<Elem> = i.elements().map(|a| self.apply(a)).collect();
        let e = Ideal::generated(&self.target, &image);
        Ok(Ideal::from_members(&self.target, e.members().clone()))
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &RingHom) -> Result<RingHom> {
        if *self.target != **g.source() {
            return Err(Error::RingMismatch);
        }
        Ok(RingHom {
            source: self.source.clone(),
            target: g.target.clone(),
            map: self.map.iter().map(|&a| g.apply(a)).collect(),
        })
    }
}

/// `R_X` realized as the corner ring `eR`, with the canonical map.
#[derive(Clone, Debug)]
pub struct Localization {
    pub ring: Arc<FiniteRing>,
    pub map: RingHom,
    /// The idempotent power of `∏X`, as an element of the source ring.
    pub idempotent: Elem,
}

impl FiniteRing {
    /// Localize at a multiplicatively closed set `X` (1 ∈ X, 0 ∉ X).
    ///
    /// Some power `e` of `t = ∏X` is idempotent; the corner ring `eR` with
    /// identity `e` and the map `r ↦ er` is the localization.
    pub fn localize(self: &Arc<Self>, x: &[Elem]) -> Result<Localization> {
        let mut set = FixedBitSet::with_capacity(self.order());
        for &s in x {
            set.insert(s.idx());
        }
        if set.contains(self.zero().idx()) {
            return Err(Error::NotMultiplicative("0 lies in X".into()));
        }
        if !set.contains(self.one().idx()) {
            return Err(Error::NotMultiplicative("1 does not lie in X".into()));
        }
        for a in set.ones() {
            for b in set.ones() {
                let ab = self.mul(Elem(a as u32), Elem(b as u32));
                if !set.contains(ab.idx()) {
                    return Err(Error::NotMultiplicative(format!(
                        "{} * {} = {} leaves X",
                        self.fmt_elem(Elem(a as u32)),
                        self.fmt_elem(Elem(b as u32)),
                        self.fmt_elem(ab)
                    )));
                }
            }
        }
        let t = set.ones().fold(self.one(), |acc, s| self.mul(acc, Elem(s as u32)));
        let e = self.idempotent_power(t);
        if e == self.one() {
            return Ok(Localization { ring: self.clone(), map: RingHom::identity(self), idempotent: e });
        }
        let corner: Vec<Elem> = {
            let mut m = FixedBitSet::with_capacity(self.order());
            for r in self.elements() {
                m.insert(self.mul(e, r).idx());
            }
            m.ones().map(|i| Elem(i as u32)).collect()
        };
        let label = format!("({})_{{e={}}}", self.expr(), self.fmt_elem(e));
        let sub = self.subring_table(&corner, e, label);
        let position: BTreeMap<Elem, Elem> =
            corner.iter().enumerate().map(|(i, &c)| (c, Elem(i as u32))).collect();
        let map = self.elements().map(|r| position[&self.mul(e, r)]).collect();
        let hom = RingHom { source: self.clone(), target: sub.clone(), map };
        Ok(Localization { ring: sub, map: hom, idempotent: e })
    }

    /// The idempotent among the powers of `t`.
    pub fn idempotent_power(&self, t: Elem) -> Elem {
        let mut u = t;
        for _ in 0..self.order() {
            if self.mul(u, u) == u {
                return u;
            }
            u = self.mul(u, t);
        }
        unreachable!("some power of an element of a finite ring is idempotent")
    }

    /// Table ring on `elems` (closed under + and ·) with identity `one`.
    fn subring_table(&self, elems: &[Elem], one: Elem, label: String) -> Arc<FiniteRing> {
        let n = elems.len();
        let pos: BTreeMap<Elem, u32> = elems.iter().enumerate().map(|(i, &c)| (c, i as u32)).collect();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                add[i * n + j] = pos[&self.add(a, b)];
                mul[i * n + j] = pos[&self.mul(a, b)];
            }
        }
        let labels = elems.iter().map(|&a| self.fmt_elem(a)).collect();
        FiniteRing::derived(
            label,
            n,
            Elem(pos[&self.zero()]),
            Elem(pos[&one]),
            add,
            mul,
            labels,
        )
    }

    /// `R/I` as a table ring (cosets labelled by their least element) with
    /// the quotient map. The unit ideal would give the zero ring and is
    /// rejected.
    pub fn quotient(self: &Arc<Self>, i: &Ideal) -> Result<(Arc<FiniteRing>, RingHom)> {
        if **i.ring() != **self {
            return Err(Error::RingMismatch);
        }
        if i.is_unit_ideal() {
            return Err(Error::Unsupported("quotient by the unit ideal is the zero ring".into()));
        }
        let mut rep = vec![Elem(u32::MAX); self.order()];
        let mut reps = Vec::new();
        for a in self.elements() {
            if rep[a.idx()].0 != u32::MAX {
                continue;
            }
            let class = reps.len() as u32;
            reps.push(a);
            for x in i.elements() {
                rep[self.add(a, x).idx()] = Elem(class);
            }
        }
        let n = reps.len();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for (ci, &a) in reps.iter().enumerate() {
            for (cj, &b) in reps.iter().enumerate() {
                add[ci * n + cj] = rep[self.add(a, b).idx()].0;
                mul[ci * n + cj] = rep[self.mul(a, b).idx()].0;
            }
        }
        let labels = reps.iter().map(|&a| format!("{}+I", self.fmt_elem(a))).collect();
        let q = FiniteRing::derived(
            format!("({})/{}", self.expr(), i),
            n,
            rep[self.zero().idx()],
            rep[self.one().idx()],
            add,
            mul,
            labels,
        );
        let hom = RingHom { source: self.clone(), target: q.clone(), map: rep };
        Ok((q, hom))
    }

    /// Projections of a product ring onto its factors.
    pub fn projections(self: &Arc<Self>) -> Option<(RingHom, RingHom)> {
        let (a, b) = self.factors()?;
        let (a, b) = (a.clone(), b.clone());
        let first = self.elements().map(|e| self.split(e).unwrap().0).collect();
        let second = self.elements().map(|e| self.split(e).unwrap().1).collect();
        Some((
            RingHom { source: self.clone(), target: a, map: first },
            RingHom { source: self.clone(), target: b, map: second },
        ))
    }

    /// The diagonal `R → R × R`.
    pub fn diagonal(self: &Arc<Self>, cap: usize) -> Result<RingHom> {
        let prod = FiniteRing::product(self, self, cap)?;
        let map = self.elements().map(|e| prod.pair(e, e).unwrap()).collect();
        Ok(RingHom { source: self.clone(), target: prod, map })
    }

    /// The unique unital map from `Z/n`, if it exists (the characteristic of
    /// the target divides `n`).
    pub fn from_integers(n: u32, target: &Arc<FiniteRing>) -> Result<RingHom> {
        let source = FiniteRing::residue(n)?;
        let mut map = Vec::with_capacity(n as usize);
        let mut acc = target.zero();
        for _ in 0..n {
            map.push(acc);
            acc = target.add(acc, target.one());
        }
        RingHom::new(&source, target, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Arc<FiniteRing> {
        FiniteRing::parse(s).unwrap()
    }

    fn reduction(n: u32, m: u32) -> RingHom {
        let (s, t) = (ring(&format!("Z/{n}")), ring(&format!("Z/{m}")));
        RingHom::from_fn(&s, &t, |a| Elem(a.0 % m)).unwrap()
    }

    #[test]
    fn crt_map_is_an_isomorphism() {
        let z12 = ring("Z/12");
        let prod = ring("Z/4 x Z/3");
        let f = RingHom::from_fn(&z12, &prod, |a| prod.pair(Elem(a.0 % 4), Elem(a.0 % 3)).unwrap())
            .unwrap();
        assert!(f.is_surjective());
        assert!(f.kernel().is_zero());
    }

    #[test]
    fn non_homomorphism_rejected() {
        let (s, t) = (ring("Z/6"), ring("Z/3"));
        assert!(RingHom::from_fn(&s, &t, |a| Elem((a.0 * 2) % 3)).is_err());
    }

    #[test]
    fn contraction_and_extension() {
        let f = reduction(6, 3);
        let zero = Ideal::zero(f.target());
        assert_eq!(f.contract(&zero).unwrap().to_string(), "(3)");
        assert!(f.contract(&Ideal::unit(f.target())).unwrap().is_unit_ideal());
        let two = f.source().parse_ideal("(2)").unwrap();
        assert!(f.extend(&two).unwrap().is_unit_ideal());
        assert_eq!(f.contract(&two), Err(Error::RingMismatch));
    }

    #[test]
    fn localization_corner_ring() {
        let z6 = ring("Z/6");
        // Multiplicative closure of {2} together with the units.
        let x: Vec<Elem> = [1, 2, 4, 5].into_iter().map(Elem).collect();
        let loc = z6.localize(&x).unwrap();
        assert_eq!(loc.idempotent, Elem(4));
        assert_eq!(loc.ring.order(), 3);
        assert_eq!(loc.ring.fmt_elem(loc.ring.one()), "4");
        assert!(loc.ring.is_field());
        for &s in &x {
            assert!(loc.ring.is_unit(loc.map.apply(s)));
        }
        assert!(loc.map.is_surjective());
    }

    #[test]
    fn localization_at_units_is_identity() {
        let z12 = ring("Z/12");
        let units = z12.units();
        let loc = z12.localize(&units).unwrap();
        assert_eq!(*loc.ring, *z12);
    }

    #[test]
    fn localization_at_prime_complement() {
        let z12 = ring("Z/12");
        let p = z12.parse_ideal("(3)").unwrap();
        let x: Vec<Elem> = z12.elements().filter(|&a| !p.contains(a)).collect();
        let loc = z12.localize(&x).unwrap();
        assert_eq!(loc.ring.order(), 3);
        assert!(loc.ring.is_field());
    }

    #[test]
    fn localization_errors() {
        let z6 = ring("Z/6");
        assert!(matches!(z6.localize(&[Elem(0), Elem(1)]), Err(Error::NotMultiplicative(_))));
        assert!(matches!(z6.localize(&[Elem(1), Elem(2)]), Err(Error::NotMultiplicative(_))));
    }

    #[test]
    fn quotient_ring() {
        let z12 = ring("Z/12");
        let (q, f) = z12.quotient(&z12.parse_ideal("(4)").unwrap()).unwrap();
        assert_eq!(q.order(), 4);
        q.verify_axioms().unwrap();
        f.verify().unwrap();
        assert!(z12.quotient(&Ideal::unit(&z12)).is_err());
    }

    #[test]
    fn projections_and_diagonal() {
        let r = ring("Z/2 x Z/3");
        let (p1, p2) = r.projections().unwrap();
        p1.verify().unwrap();
        p2.verify().unwrap();
        let d = ring("Z/3").diagonal(4096).unwrap();
        d.verify().unwrap();
        assert!(FiniteRing::from_integers(2, &ring("F2[x]/(x^2+x+1)")).is_ok());
        assert!(FiniteRing::from_integers(3, &ring("Z/6")).is_err());
    }
}
