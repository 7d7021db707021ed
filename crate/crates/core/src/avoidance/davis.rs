use std::fmt;

use super::coverage::principal_sum;
use super::{elem_add, elem_mul};
use crate::error::{Error, Result};
use crate::finring::Ideal;
use crate::pid::Pid;
use crate::quadlab::{qr_power, QuadElem, QuadIdeal};
use crate::spectra::{Member, PrimeFamily, SymbolicIdeal, UElem};

/// Candidates tried by the search route before giving up.
pub const DAVIS_SEARCH_CAP: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DavisRoute {
    /// Smallest `c` in the canonical search order.
    Search,
    /// `c = m·k` with `k` fixed by congruences at each relevant prime.
    Residue,
    /// `c = d·b` with `d` in the extra primes and `b ∈ I`, both outside the
    /// primes through `a`.
    ProofConstruction,
}

impl fmt::Display for DavisRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DavisRoute::Search => "search",
            DavisRoute::Residue => "residue",
            DavisRoute::ProofConstruction => "proof-construction",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DavisCertificate {
    pub c: UElem,
    pub a_plus_c: UElem,
    pub route: DavisRoute,
    /// A second element from an independent route, validated the same way.
    pub cross_check: (DavisRoute, UElem),
    /// `V_A(a)` when it is finite.
    pub closed_at_a: Option<Vec<Member>>,
}

struct Instance<'a> {
    family: &'a PrimeFamily,
    ideal: &'a SymbolicIdeal,
    a: &'a UElem,
    extra: &'a [Member],
    closed_at_a: Option<Vec<Member>>,
}

impl Instance<'_> {
    fn avoids(&self, y: &UElem) -> Result<bool> {
        let through_a = match &self.closed_at_a {
            Some(ms) => {
                let mut hit = false;
                for m in ms {
                    hit |= self.family.member_contains_elem(m, y)?;
                }
                !hit
            }
            // V_A(a) = A when a = 0 in an infinite family.
            None => self.family.avoids_all(y)?,
        };
        if !through_a {
            return Ok(false);
        }
        for q in self.extra {
            if self.family.member_contains_elem(q, y)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn accepts(&self, c: &UElem) -> Result<bool> {
        Ok(self.ideal.contains_elem(c)? && self.avoids(&elem_add(self.family, self.a, c)?)?)
    }

    fn contains_a(&self, m: &Member) -> Result<bool> {
        self.family.member_contains_elem(m, self.a)
    }

    /// The primes through `a` (members of `V_A(a)` and listed primes
    /// containing `a`) and the listed primes that miss `a` and sit inside
    /// none of the former.
    fn split(&self) -> Result<(Vec<Member>, Vec<Member>)> {
        let mut through = self.closed_at_a.clone().unwrap_or_default();
        let mut missing = Vec::new();
        for q in self.extra {
            if self.contains_a(q)? {
                if !through.contains(q) {
                    through.push(q.clone());
                }
            } else {
                missing.push(q.clone());
            }
        }
        let mut kept = Vec::new();
        for q in missing {
            let mut inside = false;
            for p in &through {
                inside |= member_subset(&q, p);
            }
            if !inside {
                kept.push(q);
            }
        }
        Ok((through, kept))
    }
}

fn member_subset(q: &Member, p: &Member) -> bool {
    match (q, p) {
        (Member::Finite(a), Member::Finite(b)) => a.is_subset(b),
        (Member::PidGeneric, _) => true,
        _ => q == p,
    }
}

fn check_prime(family: &PrimeFamily, q: &Member) -> Result<()> {
    let ok = match (family, q) {
        (PrimeFamily::Finite { ring, .. }, Member::Finite(p)) => {
            if **p.ring() != **ring {
                return Err(Error::RingMismatch);
            }
            if !p.is_prime() {
                return Err(Error::NotPrime(p.to_string()));
            }
            true
        }
        (PrimeFamily::Pid { .. }, Member::PidGeneric | Member::PidMaximal(_)) => true,
        (PrimeFamily::Quad { order, .. }, Member::Quad(p)) => {
            if !p.is_prime() {
                return Err(Error::NotPrime(p.to_string()));
            }
            p.order() == *order
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::UniverseMismatch(format!("{q} is not a prime of {}", family.universe())))
    }
}

/// Find `c ∈ I` with `a + c` outside every prime of `V_A(a)` and every
/// listed prime, provided no single such prime contains `Ra + I`.
pub fn davis(family: &PrimeFamily, i: &SymbolicIdeal, a: &UElem, extra: &[Member]) -> Result<DavisCertificate> {
    family.check_universe(i)?;
    family.check_elem(a)?;
    if matches!(family, PrimeFamily::Chain { .. }) {
        return Err(Error::Unsupported("Davis elements in the polynomial chain universe".into()));
    }
    for q in extra {
        check_prime(family, q)?;
    }
    let closed_at_a = family.v(&principal_sum(family, std::slice::from_ref(a)))?.members();

    let joint = family.ideal_sum(&[principal_sum(family, std::slice::from_ref(a)), i.clone()])?;
    let covering = match family.v(&joint)?.first() {
        Some(m) => Some(m),
        None => {
            let mut found = None;
            for q in extra {
                if family.member_contains(q, &joint)? {
                    found = Some(q.clone());
                    break;
                }
            }
            found
        }
    };
    if let Some(p) = covering {
        return Err(Error::Precondition {
            reason: format!("{p} contains Ra + I"),
            covering_prime: Some(p.to_string()),
        });
    }

    let inst = Instance { family, ideal: i, a, extra, closed_at_a };
    let searched = search(&inst)?;
    let (other_route, other) = match family {
        PrimeFamily::Pid { pid, .. } => (DavisRoute::Residue, residue(&inst, *pid)?),
        _ => (DavisRoute::ProofConstruction, construction(&inst)?),
    };
    for c in [&searched, &other] {
        if !inst.accepts(c)? {
            return Err(Error::Validation(format!("Davis candidate {} fails", family.fmt_elem(c))));
        }
    }
    Ok(DavisCertificate {
        a_plus_c: elem_add(family, a, &searched)?,
        c: searched,
        route: DavisRoute::Search,
        cross_check: (other_route, other),
        closed_at_a: inst.closed_at_a,
    })
}

fn not_found() -> Error {
    Error::Validation(format!("no Davis element among the first {DAVIS_SEARCH_CAP} candidates"))
}

fn search(inst: &Instance<'_>) -> Result<UElem> {
    match (inst.family, inst.ideal) {
        (PrimeFamily::Finite { .. }, SymbolicIdeal::Finite(j)) => {
            for c in j.sorted_elements() {
                let c = UElem::Finite(c);
                if inst.accepts(&c)? {
                    return Ok(c);
                }
            }
            Err(not_found())
        }
        (PrimeFamily::Pid { pid, .. }, SymbolicIdeal::Pid(gens)) => {
            let m = pid.gcd_all(gens)?;
            let count = if pid.is_zero(&m) { 1 } else { DAVIS_SEARCH_CAP };
            for idx in 0..count {
                let c = UElem::Pid(pid.mul(&m, &pid.nth_elem(idx))?);
                if inst.accepts(&c)? {
                    return Ok(c);
                }
            }
            Err(not_found())
        }
        (PrimeFamily::Quad { order, .. }, SymbolicIdeal::Quad(_, j)) => {
            let Some(j) = j else {
                let zero = UElem::Quad(QuadElem::int(0));
                return if inst.accepts(&zero)? { Ok(zero) } else { Err(not_found()) };
            };
            let [alpha, beta] = j.basis();
            let mut tried = 0;
            for r in 0i128.. {
                for s in -r..=r {
                    for t in -r..=r {
                        if s.abs().max(t.abs()) != r {
                            continue;
                        }
                        let c = order.add(order.scale(s, alpha), order.scale(t, beta));
                        let c = UElem::Quad(c);
                        if inst.accepts(&c)? {
                            return Ok(c);
                        }
                        tried += 1;
                        if tried >= DAVIS_SEARCH_CAP {
                            return Err(not_found());
                        }
                    }
                }
            }
            unreachable!("the shell loop is unbounded")
        }
        _ => Err(Error::Unsupported(format!("Davis search over {}", inst.family))),
    }
}

/// `c = m·k` with `k ≡ 1` modulo the primes through `a` and `k ≡ 0` modulo
/// the listed primes missing `a` and `m`.
fn residue(inst: &Instance<'_>, pid: Pid) -> Result<UElem> {
    let SymbolicIdeal::Pid(gens) = inst.ideal else { unreachable!("checked by the caller") };
    let UElem::Pid(a) = inst.a else { unreachable!("checked by the caller") };
    let m = pid.gcd_all(gens)?;
    if pid.is_zero(a) {
        // Every prime through 0 must miss c = m, which the precondition gives.
        return Ok(UElem::Pid(m));
    }
    let (through, missing) = inst.split()?;
    let generator = |q: &Member| match q {
        Member::PidMaximal(p) => Some(p.generator().clone()),
        _ => None,
    };
    let mut m1 = pid.one();
    for p in through.iter().filter_map(generator) {
        m1 = pid.mul(&m1, &p)?;
    }
    let mut m0 = pid.one();
    for q in missing.iter().filter_map(generator) {
        if !pid.divides(&q, &m) {
            m0 = pid.mul(&m0, &q)?;
        }
    }
    let (g, s, _) = pid.bezout(&m0, &m1)?;
    if g != pid.one() {
        return Err(Error::Validation(format!("moduli {m0} and {m1} are not coprime")));
    }
    let modulus = pid.mul(&m0, &m1)?;
    let mut k = pid.rem(&pid.mul(&s, &m0)?, &modulus)?;
    // The generic prime asks for a + mk ≠ 0; shifting k by the modulus keeps
    // every congruence.
    if missing.contains(&Member::PidGeneric) && pid.is_zero(&pid.add(a, &pid.mul(&m, &k)?)?) {
        k = pid.add(&k, &modulus)?;
    }
    Ok(UElem::Pid(pid.mul(&m, &k)?))
}

/// `c = d·b`: `d` lies in every listed prime missing `a` but in no prime
/// through `a`, and `b ∈ I` is the `I`-part of an element of `Ra + I`
/// outside all of them.
fn construction(inst: &Instance<'_>) -> Result<UElem> {
    let (through, missing) = inst.split()?;
    match (inst.family, inst.ideal) {
        (PrimeFamily::Finite { ring, .. }, SymbolicIdeal::Finite(j)) => {
            let ideal = |m: &Member| match m {
                Member::Finite(p) => p.clone(),
                _ => unreachable!("finite families hold finite members"),
            };
            let through: Vec<Ideal> = through.iter().map(ideal).collect();
            let missing: Vec<Ideal> = missing.iter().map(ideal).collect();
            let d = ring
                .elements()
                .find(|&x| missing.iter().all(|q| q.contains(x)) && through.iter().all(|p| !p.contains(x)))
                .ok_or_else(|| Error::Validation("no d in the listed primes outside the primes through a".into()))?;
            let UElem::Finite(a) = inst.a else { unreachable!("checked by the caller") };
            let outside = |y| through.iter().chain(&missing).all(|p: &Ideal| !p.contains(y));
            let b = ring
                .elements()
                .flat_map(|r| j.sorted_elements().into_iter().map(move |b| (r, b)))
                .find(|&(r, b)| outside(ring.add(ring.mul(r, *a), b)))
                .map(|(_, b)| b)
                .ok_or_else(|| Error::Validation("Ra + I lies in the union".into()))?;
            Ok(UElem::Finite(ring.mul(d, b)))
        }
        (PrimeFamily::Quad { .. }, SymbolicIdeal::Quad(_, j)) => {
            let Some(j) = j else { return Ok(UElem::Quad(QuadElem::int(0))) };
            let mut d = UElem::Quad(QuadElem::int(1));
            for q in &missing {
                let Member::Quad(q) = q else { unreachable!("quad families hold quad members") };
                d = elem_mul(inst.family, &d, &UElem::Quad(power_generator(q)?))?;
            }
            let b = UElem::Quad(power_generator(j)?);
            elem_mul(inst.family, &d, &b)
        }
        _ => Err(Error::Unsupported(format!("Davis construction over {}", inst.family))),
    }
}

/// A generator of a principal power of `j`; it lies in exactly the primes
/// dividing `j`.
fn power_generator(j: &QuadIdeal) -> Result<QuadElem> {
    if j.is_unit_ideal() {
        return Ok(QuadElem::int(1));
    }
    Ok(qr_power(j)?.1)
}
