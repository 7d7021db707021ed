use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::ring::{Elem, FiniteRing};
use crate::error::{Error, Result};

/// A materialized ideal. Generators are kept for reporting only; equality,
/// ordering and hashing look at the element set.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    generators: Vec<Elem>,
    members: FixedBitSet,
}

impl Ideal {
    pub(crate) fn from_members(ring: &Arc<FiniteRing>, members: FixedBitSet) -> Ideal {
        let mut ideal = Ideal { ring: ring.clone(), generators: Vec::new(), members };
        ideal.generators = ideal.canonical_generators();
        ideal
    }

    /// The ideal generated by `gens`.
    pub fn generated(ring: &Arc<FiniteRing>, gens: &[Elem]) -> Ideal {
        let mut members = FixedBitSet::with_capacity(ring.order());
        members.insert(ring.zero().idx());
        for &g in gens {
            let principal = principal_members(ring, g);
            members = sum_members(ring, &members, &principal);
        }
        Ideal { ring: ring.clone(), generators: gens.to_vec(), members }
    }

    pub fn principal(ring: &Arc<FiniteRing>, a: Elem) -> Ideal {
        Ideal { ring: ring.clone(), generators: vec![a], members: principal_members(ring, a) }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Ideal {
        Ideal::generated(ring, &[])
    }

    pub fn unit(ring: &Arc<FiniteRing>) -> Ideal {
        Ideal::principal(ring, ring.one())
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.ones().map(|i| Elem(i as u32))
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(a.idx())
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.contains(self.ring.one())
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit_ideal()
    }

    /// Greedy generating set: scan elements in canonical order and keep
    /// each one not already in the ideal generated so far.
    pub fn canonical_generators(&self) -> Vec<Elem> {
        let ring = &self.ring;
        let mut gens = Vec::new();
        let mut span = FixedBitSet::with_capacity(ring.order());
        span.insert(ring.zero().idx());
        for a in self.elements() {
            if !span.contains(a.idx()) {
                gens.push(a);
                span = sum_members(ring, &span, &principal_members(ring, a));
                if span == self.members {
                    break;
                }
            }
        }
        gens
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        Ok(Ideal::from_members(&self.ring, sum_members(&self.ring, &self.members, &other.members)))
    }

    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut m = self.members.clone();
        m.intersect_with(&other.members);
        Ok(Ideal::from_members(&self.ring, m))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let ring = &self.ring;
        let mut gens = FixedBitSet::with_capacity(ring.order());
        for a in self.elements() {
            for b in other.elements() {
                gens.insert(ring.mul(a, b).idx());
            }
        }
        let gens: Vec<Elem> = gens.ones().map(|i| Elem(i as u32)).collect();
        let closure = Ideal::generated(ring, &gens);
        Ok(Ideal::from_members(ring, closure.members))
    }

    /// `Ann(I) = {r : rI = 0}`.
    pub fn annihilator(&self) -> Ideal {
        let ring = &self.ring;
        let mut m = FixedBitSet::with_capacity(ring.order());
        for r in ring.elements() {
            if self.elements().all(|i| ring.mul(r, i) == ring.zero()) {
                m.insert(r.idx());
            }
        }
        Ideal::from_members(ring, m)
    }

    /// Proper, and `ab ∈ I` forces `a ∈ I` or `b ∈ I`.
    pub fn is_prime(&self) -> bool {
        if !self.is_proper() {
            return false;
        }
        let ring = &self.ring;
        let outside: Vec<Elem> = ring.elements().filter(|&a| !self.contains(a)).collect();
        outside
            .iter()
            .all(|&a| outside.iter().all(|&b| !self.contains(ring.mul(a, b))))
    }

    /// Maximal among proper ideals (the quotient is a field).
    pub fn is_maximal(&self) -> bool {
        if !self.is_proper() {
            return false;
        }
        let ring = &self.ring;
        ring.elements()
            .filter(|&a| !self.contains(a))
            .all(|a| self.sum(&Ideal::principal(ring, a)).map(|s| s.is_unit_ideal()).unwrap_or(false))
    }

    /// `√I = {r : r^k ∈ I}`.
    pub fn radical(&self) -> Ideal {
        let ring = &self.ring;
        let mut m = FixedBitSet::with_capacity(ring.order());
        for r in ring.elements() {
            let mut x = r;
            for _ in 0..=ring.order() {
                if self.contains(x) {
                    m.insert(r.idx());
                    break;
                }
                x = ring.mul(x, r);
            }
        }
        Ideal::from_members(ring, m)
    }

    pub fn sorted_elements(&self) -> Vec<Elem> {
        self.elements().collect()
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.members == other.members
    }
}

impl Eq for Ideal {}

impl Hash for Ideal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl PartialOrd for Ideal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical ideal order: proper ideals first, then lexicographic on the
/// sorted element lists.
impl Ord for Ideal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.is_unit_ideal()
            .cmp(&other.is_unit_ideal())
            .then_with(|| self.elements().cmp(other.elements()))
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.canonical_generators();
        if gens.is_empty() {
            return f.write_str("(0)");
        }
        let parts: Vec<String> = gens.iter().map(|&g| self.ring.fmt_elem(g)).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ring.expr())
    }
}

pub(crate) fn principal_members(ring: &FiniteRing, a: Elem) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(ring.order());
    for r in ring.elements() {
        m.insert(ring.mul(r, a).idx());
    }
    m
}

pub(crate) fn sum_members(ring: &FiniteRing, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut m = FixedBitSet::with_capacity(ring.order());
    for x in a.ones() {
        for y in b.ones() {
            m.insert(ring.add(Elem(x as u32), Elem(y as u32)).idx());
        }
    }
    m
}

impl FiniteRing {
    /// Every ideal, sorted canonically. Each ideal of a finite ring is a
    /// finite sum of principal ideals, so closing the principal ones under
    /// binary sums reaches all of them.
    pub fn enumerate_ideals(self: &Arc<Self>) -> Vec<Ideal> {
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let mut all: Vec<FixedBitSet> = Vec::new();
        for a in self.elements() {
            let m = principal_members(self, a);
            if seen.insert(m.clone()) {
                all.push(m);
            }
        }
        let mut next = 0;
        while next < all.len() {
            let current = all[next].clone();
            let mut j = 0;
            while j < all.len() {
                let s = sum_members(self, &current, &all[j]);
                if seen.insert(s.clone()) {
                    all.push(s);
                }
                j += 1;
            }
            next += 1;
        }
        let mut ideals: Vec<Ideal> = all.into_iter().map(|m| Ideal::from_members(self, m)).collect();
        ideals.sort();
        ideals
    }

    pub fn spec(self: &Arc<Self>) -> Vec<Ideal> {
        self.enumerate_ideals().into_iter().filter(Ideal::is_prime).collect()
    }

    pub fn max_spec(self: &Arc<Self>) -> Vec<Ideal> {
        let proper: Vec<Ideal> = self.enumerate_ideals().into_iter().filter(Ideal::is_proper).collect();
        proper
            .iter()
            .filter(|i| !proper.iter().any(|j| j != *i && i.is_subset(j)))
            .cloned()
            .collect()
    }

    pub fn min_spec(self: &Arc<Self>) -> Vec<Ideal> {
        let primes = self.spec();
        primes
            .iter()
            .filter(|p| !primes.iter().any(|q| q != *p && q.is_subset(p)))
            .cloned()
            .collect()
    }

    pub fn nilradical(self: &Arc<Self>) -> Ideal {
        let mut m = FixedBitSet::with_capacity(self.order());
        for a in self.elements().filter(|&a| self.is_nilpotent(a)) {
            m.insert(a.idx());
        }
        Ideal::from_members(self, m)
    }

    pub fn is_reduced(self: &Arc<Self>) -> bool {
        self.nilradical().is_zero()
    }

    /// Von Neumann regular: every `a` has `x` with `a = a²x`.
    pub fn is_vnr(&self) -> bool {
        self.elements().all(|a| {
            let a2 = self.mul(a, a);
            self.elements().any(|x| self.mul(a2, x) == a)
        })
    }

    /// Every ideal is principal (all ideals are finitely generated here).
    pub fn is_bezout(self: &Arc<Self>) -> bool {
        let principal: HashSet<FixedBitSet> =
            self.elements().map(|a| principal_members(self, a)).collect();
        self.enumerate_ideals().iter().all(|i| principal.contains(i.members()))
    }

    pub fn is_domain(&self) -> bool {
        self.elements().all(|a| {
            a == self.zero() || self.elements().all(|b| b == self.zero() || self.mul(a, b) != self.zero())
        })
    }

    pub fn is_field(&self) -> bool {
        self.elements().all(|a| a == self.zero() || self.is_unit(a))
    }

    /// The ideal of `R` with the given element set; `None` if the set is not
    /// an ideal.
    pub fn ideal_from_set(self: &Arc<Self>, elems: &[Elem]) -> Option<Ideal> {
        let mut m = FixedBitSet::with_capacity(self.order());
        for e in elems {
            m.insert(e.idx());
        }
        let closure = Ideal::generated(self, elems);
        (closure.members == m).then(|| Ideal::from_members(self, m))
    }

    /// Parse an ideal given as `(g1,g2,...)`.
    pub fn parse_ideal(self: &Arc<Self>, text: &str) -> Result<Ideal> {
        let text = text.trim();
        let inner = text
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, format!("expected (g1,...), got {text:?}")))?;
        let mut gens = Vec::new();
        for g in super::ring::split_top_level(inner, ',') {
            gens.push(self.parse_elem(g)?);
        }
        Ok(Ideal::generated(self, &gens))
    }

    /// Parse a comma-separated list of parenthesized ideals `(a),(b,c)`.
    pub fn parse_ideal_list(self: &Arc<Self>, text: &str) -> Result<Vec<Ideal>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        super::ring::split_top_level(text, ',').into_iter().map(|t| self.parse_ideal(t)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> Arc<FiniteRing> {
        FiniteRing::parse(s).unwrap()
    }

    fn names(ideals: &[Ideal]) -> Vec<String> {
        ideals.iter().map(|i| i.to_string()).collect()
    }

    #[test]
    fn ideals_of_z6_z4_f4() {
        assert_eq!(names(&ring("Z/6").enumerate_ideals()), vec!["(0)", "(2)", "(3)", "(1)"]);
        assert_eq!(names(&ring("Z/4").enumerate_ideals()), vec!["(0)", "(2)", "(1)"]);
        assert_eq!(ring("F2[x]/(x^2+x+1)").enumerate_ideals().len(), 2);
    }

    #[test]
    fn spectra_of_small_rings() {
        let z6 = ring("Z/6");
        assert_eq!(names(&z6.spec()), vec!["(2)", "(3)"]);
        assert_eq!(z6.spec(), z6.max_spec());
        assert_eq!(z6.spec(), z6.min_spec());
        assert_eq!(names(&ring("Z/4").spec()), vec!["(2)"]);
        assert_eq!(names(&ring("F2[x]/(x^2+x+1)").spec()), vec!["(0)"]);
    }

    #[test]
    fn annihilators_and_nilradical() {
        let z6 = ring("Z/6");
        assert_eq!(Ideal::principal(&z6, Elem(2)).annihilator().to_string(), "(3)");
        assert!(Ideal::unit(&z6).annihilator().is_zero());
        let z4 = ring("Z/4");
        let two = Ideal::principal(&z4, Elem(2));
        assert_eq!(two.annihilator(), two);
        assert_eq!(z4.nilradical(), two);
    }

    #[test]
    fn sum_product_intersection() {
        let z12 = ring("Z/12");
        let i = z12.parse_ideal("(4)").unwrap();
        let j = z12.parse_ideal("(6)").unwrap();
        assert_eq!(i.sum(&j).unwrap().to_string(), "(2)");
        assert_eq!(i.intersect(&j).unwrap(), z12.parse_ideal("(0)").unwrap());
        assert_eq!(i.product(&j).unwrap(), z12.parse_ideal("(0)").unwrap());
        let z6 = ring("Z/6");
        assert_eq!(i.sum(&Ideal::zero(&z6)), Err(Error::RingMismatch));
    }

    #[test]
    fn vnr_and_bezout() {
        let f4 = ring("F2[x]/(x^2+x+1)");
        assert!(f4.is_vnr() && f4.is_bezout());
        let z4 = ring("Z/4");
        assert!(!z4.is_vnr() && z4.is_bezout());
        assert!(ring("Z/30").is_vnr());
    }

    #[test]
    fn radical_and_maximality() {
        let z12 = ring("Z/12");
        assert_eq!(z12.parse_ideal("(4)").unwrap().radical().to_string(), "(2)");
        assert!(z12.parse_ideal("(3)").unwrap().is_maximal());
        assert!(!z12.parse_ideal("(6)").unwrap().is_maximal());
    }
}
