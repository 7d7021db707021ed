use std::collections::BTreeSet;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::coverage::exhaustive_pa;
use crate::error::{Error, Result};
use crate::finring::{Elem, FiniteRing, Ideal, RingHom};
use crate::spectra::PrimeFamily;

/// Largest ring order for which subrings without identity are enumerated.
pub const SUBRING_ENUMERATION_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct MinEntry {
    pub prime: Ideal,
    /// Smallest element of `⋂_{other minimal primes} ∖ prime`.
    pub x: Elem,
    /// `ann(x)`, which equals `prime` when the ring is reduced.
    pub ann: Ideal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinCertificate {
    pub reduced: bool,
    pub entries: Vec<MinEntry>,
}

/// For each minimal prime `P`, an element lying in every other minimal
/// prime but not in `P`; in a reduced ring its annihilator is exactly `P`.
pub fn min_finiteness_certificate(ring: &Arc<FiniteRing>) -> Result<MinCertificate> {
    let mins = ring.min_spec();
    let reduced = ring.is_reduced();
    let mut entries = Vec::with_capacity(mins.len());
    for (b, p) in mins.iter().enumerate() {
        let x = ring
            .elements()
            .find(|&x| !p.contains(x) && mins.iter().enumerate().all(|(a, q)| a == b || q.contains(x)))
            .ok_or_else(|| Error::Validation(format!("no element separates the minimal prime {p}")))?;
        // V_m(x)^c = {P}.
        for (a, q) in mins.iter().enumerate() {
            if q.contains(x) == (a == b) {
                return Err(Error::Validation(format!("co-zero set of {} is not {{{p}}}", ring.fmt_elem(x))));
            }
        }
        let ann = Ideal::principal(ring, x).annihilator();
        if reduced && ann != *p {
            return Err(Error::Validation(format!("ann({}) = {ann} differs from {p}", ring.fmt_elem(x))));
        }
        entries.push(MinEntry { prime: p.clone(), x, ann });
    }
    Ok(MinCertificate { reduced, entries })
}

fn finite_parts(family: &PrimeFamily) -> Result<(&Arc<FiniteRing>, &[Ideal])> {
    match family {
        PrimeFamily::Finite { ring, primes } => Ok((ring, primes)),
        _ => Err(Error::UniverseMismatch(format!("{family} is not a finite-ring family"))),
    }
}

/// `R ∖ ⋃A`.
fn complement_of_union(ring: &Arc<FiniteRing>, primes: &[Ideal]) -> Vec<Elem> {
    ring.elements().filter(|&x| primes.iter().all(|p| !p.contains(x))).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalizationReport {
    /// The family is empty, so `X = R` is not multiplicative and the check
    /// holds vacuously.
    pub vacuous: bool,
    pub local_ring: Option<Arc<FiniteRing>>,
    /// `Max(R_X)`, as ideals of the local ring.
    pub max_local: Vec<Ideal>,
    /// `P_X` for each member.
    pub extensions: Vec<Ideal>,
    pub inclusion: bool,
    pub exhaustive_pa: bool,
}

impl LocalizationReport {
    pub fn equivalent(&self) -> bool {
        self.inclusion == self.exhaustive_pa
    }
}

/// Localize at `X = R ∖ ⋃A` and test `Max(R_X) ⊆ {P_X : P ∈ A}` against the
/// direct P.A. check.
pub fn localization_check(family: &PrimeFamily) -> Result<LocalizationReport> {
    let (ring, primes) = finite_parts(family)?;
    let ideals = ring.enumerate_ideals();
    let pa = exhaustive_pa(family, &ideals)?;
    if primes.is_empty() {
        return Ok(LocalizationReport {
            vacuous: true,
            local_ring: None,
            max_local: Vec::new(),
            extensions: Vec::new(),
            inclusion: true,
            exhaustive_pa: pa,
        });
    }
    let loc = ring.localize(&complement_of_union(ring, primes))?;
    let extensions = primes.iter().map(|p| loc.map.extend(p)).collect::<Result<Vec<_>>>()?;
    let max_local = loc.ring.max_spec();
    let inclusion = max_local.iter().all(|m| extensions.contains(m));
    Ok(LocalizationReport {
        vacuous: false,
        local_ring: Some(loc.ring),
        max_local,
        extensions,
        inclusion,
        exhaustive_pa: pa,
    })
}

#[derive(Debug, Clone)]
pub struct Realization {
    pub target: Arc<FiniteRing>,
    pub map: RingHom,
    /// `{f⁻¹(M) : M ∈ Max(T)}`, sorted.
    pub contracted: Vec<Ideal>,
}

/// For pairwise incomparable members, `T = R_X` with the canonical map
/// realizes the family as the contractions of `Max(T)`.
pub fn pullback_realization(family: &PrimeFamily) -> Result<Realization> {
    let (ring, primes) = finite_parts(family)?;
    for p in primes {
        for q in primes {
            if p != q && p.is_subset(q) {
                return Err(Error::Comparable(p.to_string(), q.to_string()));
            }
        }
    }
    if primes.is_empty() {
        return Err(Error::Precondition {
            reason: "the empty family is realized only by the zero ring".into(),
            covering_prime: None,
        });
    }
    let loc = ring.localize(&complement_of_union(ring, primes))?;
    let contracted = contracted_maximals(&loc.map)?;
    if contracted != primes {
        return Err(Error::Validation("contractions of Max(R_X) differ from the family".into()));
    }
    Ok(Realization { target: loc.ring, map: loc.map, contracted })
}

fn contracted_maximals(f: &RingHom) -> Result<Vec<Ideal>> {
    let mut out = f.target().max_spec().iter().map(|m| f.contract(m)).collect::<Result<Vec<_>>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HomPaReport {
    pub family: Vec<Ideal>,
    /// The contracted family has P.A.
    pub pa_side: bool,
    /// Every ideal missing `X` extends to a proper ideal.
    pub extension_side: bool,
}

impl HomPaReport {
    pub fn equivalent(&self) -> bool {
        self.pa_side == self.extension_side
    }
}

/// Compare P.A. of `{f⁻¹(M)}` with properness of `I^e` for ideals `I`
/// disjoint from `X = R ∖ ⋃{f⁻¹(M)}`.
pub fn hom_pa_criterion(f: &RingHom) -> Result<HomPaReport> {
    let source = f.source();
    let family = PrimeFamily::finite(source, contracted_maximals(f)?)?;
    let (_, primes) = finite_parts(&family)?;
    let ideals = source.enumerate_ideals();
    let pa_side = exhaustive_pa(&family, &ideals)?;
    let outside = complement_of_union(source, primes);
    let mut extension_side = true;
    for i in &ideals {
        if outside.iter().all(|&x| !i.contains(x)) {
            extension_side &= f.extend(i)?.is_proper();
        }
    }
    Ok(HomPaReport { family: primes.to_vec(), pa_side, extension_side })
}

#[derive(Debug, Clone, PartialEq)]
pub struct LyingOverReport {
    pub family: Vec<Ideal>,
    /// Every prime containing `ker f` is the contraction of a prime of `T`.
    pub lying_over: bool,
    pub pa: bool,
}

/// Check lying-over for `Im(f) ⊆ T` and P.A. of `{f⁻¹(M) : M ∈ Max(T)}`.
pub fn lying_over_pa(f: &RingHom) -> Result<LyingOverReport> {
    let source = f.source();
    let family = PrimeFamily::finite(source, contracted_maximals(f)?)?;
    let kernel = f.kernel();
    let contracted_primes = f.target().spec().iter().map(|q| f.contract(q)).collect::<Result<Vec<_>>>()?;
    let lying_over = source.spec().iter().filter(|p| kernel.is_subset(p)).all(|p| contracted_primes.contains(p));
    let pa = exhaustive_pa(&family, &source.enumerate_ideals())?;
    let (_, primes) = finite_parts(&family)?;
    Ok(LyingOverReport { family: primes.to_vec(), lying_over, pa })
}

/// All subrings without identity: additive subgroups closed under
/// multiplication and missing 1.
fn subrings_without_one(ring: &Arc<FiniteRing>) -> Result<Vec<FixedBitSet>> {
    if ring.order() > SUBRING_ENUMERATION_CAP {
        return Err(Error::CapExceeded { order: ring.order(), cap: SUBRING_ENUMERATION_CAP });
    }
    let n = ring.order();
    let close = |seed: &FixedBitSet| -> FixedBitSet {
        let mut set = seed.clone();
        set.insert(ring.zero().idx());
        loop {
            let members: Vec<usize> = set.ones().collect();
            let mut grew = false;
            for &a in &members {
                for &b in &members {
                    let s = ring.add(Elem(a as u32), Elem(b as u32)).idx();
                    if !set.contains(s) {
                        set.insert(s);
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    };
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![close(&FixedBitSet::with_capacity(n))];
    let mut groups = Vec::new();
    while let Some(g) = frontier.pop() {
        if !seen.insert(g.ones().collect()) {
            continue;
        }
        for x in 0..n {
            if !g.contains(x) {
                let mut seed = g.clone();
                seed.insert(x);
                frontier.push(close(&seed));
            }
        }
        groups.push(g);
    }
    let closed_under_mul = |g: &FixedBitSet| {
        g.ones().all(|a| g.ones().all(|b| g.contains(ring.mul(Elem(a as u32), Elem(b as u32)).idx())))
    };
    let mut out: Vec<FixedBitSet> =
        groups.into_iter().filter(|g| !g.contains(ring.one().idx()) && closed_under_mul(g)).collect();
    out.sort_by_key(|g| (g.count_ones(..), g.ones().collect::<Vec<_>>()));
    Ok(out)
}

/// Subring-without-identity avoidance: `S ⊆ ⋃A` implies `S ⊆` some member.
fn subring_property(primes: &[Ideal], subrings: &[FixedBitSet]) -> (usize, bool) {
    let mut covered = 0;
    let mut holds = true;
    for s in subrings {
        let in_union = s.ones().all(|x| primes.iter().any(|p| p.contains(Elem(x as u32))));
        if in_union {
            covered += 1;
            holds &= primes.iter().any(|p| s.ones().all(|x| p.contains(Elem(x as u32))));
        }
    }
    (covered, holds)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Subring1Report {
    pub subrings: usize,
    pub covered: usize,
    pub target_holds: bool,
    pub holds: bool,
}

/// Transfer of the subring-without-identity avoidance property along `f`
/// from a family of the target to its contraction.
pub fn subring1_contraction_property(f: &RingHom, family: &PrimeFamily) -> Result<Subring1Report> {
    let (ring, primes) = finite_parts(family)?;
    if **ring != **f.target() {
        return Err(Error::RingMismatch);
    }
    let target_subrings = subrings_without_one(ring)?;
    let (_, target_holds) = subring_property(primes, &target_subrings);
    let contracted = family.pullback(f)?;
    let (_, source_primes) = finite_parts(&contracted)?;
    let source_subrings = subrings_without_one(f.source())?;
    let (covered, holds) = subring_property(source_primes, &source_subrings);
    Ok(Subring1Report { subrings: source_subrings.len(), covered, target_holds, holds })
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuentelReport {
    /// The classical ring of quotients is von Neumann regular.
    pub quotients_vnr: bool,
    /// `Min(R)` has P.A. for every ideal.
    pub min_pa: bool,
    /// `Min(R)` is compact and has P.A. for finitely generated ideals.
    pub min_compact_fg_pa: bool,
    pub ring_vnr: bool,
}

impl QuentelReport {
    pub fn consistent(&self) -> bool {
        self.quotients_vnr == self.min_pa && self.min_pa == self.min_compact_fg_pa
    }
}

/// The three equivalent conditions on a reduced ring, each decided directly.
pub fn quentel_check(ring: &Arc<FiniteRing>) -> Result<QuentelReport> {
    if !ring.is_reduced() {
        return Err(Error::NotReduced);
    }
    let regular: Vec<Elem> =
        ring.elements().filter(|&x| ring.elements().all(|y| y == ring.zero() || ring.mul(x, y) != ring.zero())).collect();
    let quotients = ring.localize(&regular)?;
    let min_family = PrimeFamily::finite(ring, ring.min_spec())?;
    let ideals = ring.enumerate_ideals();
    let min_pa = exhaustive_pa(&min_family, &ideals)?;
    let fg = super::fg_pa(&min_family)?;
    let min_compact_fg_pa = min_family.is_compact().is_compact() && fg.holds;
    Ok(QuentelReport { quotients_vnr: quotients.ring.is_vnr(), min_pa, min_compact_fg_pa, ring_vnr: ring.is_vnr() })
}
