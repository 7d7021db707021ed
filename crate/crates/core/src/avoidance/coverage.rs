use std::fmt;
use std::sync::Arc;

use crate::bigpoly::{CoeffField, SparsePoly};
use crate::error::{Error, Result};
use crate::finring::{Elem, FiniteRing, Ideal};
use crate::quadlab::{factor_prime, qr_power, QuadElem};
use crate::spectra::{
    ChainIdeal, ChainIndexSet, CompactReason, CompactnessCertificate, Member, NonCompactCover, PrimeFamily,
    SymbolicIdeal, UElem, NONCOMPACT_PREFIXES_CHECKED,
};

/// How an ideal sits against the union of a family.
#[derive(Debug, Clone, PartialEq)]
pub enum Coverage {
    /// A single member contains the ideal.
    Contained(Member),
    /// An element of the ideal outside every member.
    Escape(UElem),
    /// Inside the union but inside no member.
    Uncontained(UncontainedChain),
}

/// `I_ω` against the full chain without its top: `x_{n+1} ∈ I_ω ∖ P_n`
/// for every `n`, while each element of `I_ω` lies in some `P_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UncontainedChain {
    field: CoeffField,
}

impl UncontainedChain {
    /// The element of `I_ω` that escapes `P_n`.
    pub fn witness(&self, n: u32) -> SparsePoly {
        SparsePoly::var(self.field, n + 1)
    }

    pub fn describe(&self) -> String {
        "x_{n+1} lies in I_omega but not in P_n".to_string()
    }

    /// Check the witness map on `P_1, ..., P_count`.
    pub fn verify(&self, count: u32) -> bool {
        (1..=count).all(|n| {
            let w = self.witness(n);
            w.in_iomega() && !w.in_pn(n) && w.in_pn(n + 1)
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub ideal: SymbolicIdeal,
    pub outcome: Coverage,
    /// When no member contains the ideal: finitely many elements of it whose
    /// common closed set `V_A(x_1, ..., x_n)` is empty.
    pub fg_witness: Option<Vec<UElem>>,
}

impl CoverageReport {
    pub fn covered(&self) -> bool {
        !matches!(self.outcome, Coverage::Escape(_))
    }

    pub fn containing_prime(&self) -> Option<&Member> {
        match &self.outcome {
            Coverage::Contained(m) => Some(m),
            _ => None,
        }
    }

    pub fn escape_witness(&self) -> Option<&UElem> {
        match &self.outcome {
            Coverage::Escape(x) => Some(x),
            _ => None,
        }
    }

    /// Re-check every witness with membership tests.
    pub fn validate(&self, family: &PrimeFamily) -> Result<()> {
        let fail = |msg: String| Err(Error::Validation(msg));
        match &self.outcome {
            Coverage::Contained(m) => {
                if !family.has_member(m) || !family.member_contains(m, &self.ideal)? {
                    return fail(format!("{m} does not contain {}", self.ideal));
                }
            }
            Coverage::Escape(x) => {
                if !self.ideal.contains_elem(x)? || !family.avoids_all(x)? {
                    return fail(format!("escape witness {} is not valid", family.fmt_elem(x)));
                }
            }
            Coverage::Uncontained(w) => {
                let is_full_chain = matches!(
                    family,
                    PrimeFamily::Chain { index: ChainIndexSet::AllNaturals, include_top: false, .. }
                );
                if !is_full_chain
                    || self.ideal != SymbolicIdeal::Chain(ChainIdeal::IOmega)
                    || !w.verify(NONCOMPACT_PREFIXES_CHECKED)
                {
                    return fail("uncontained-cover witness does not check".into());
                }
            }
        }
        if let Some(gens) = &self.fg_witness {
            for g in gens {
                if !self.ideal.contains_elem(g)? {
                    return fail(format!("{} is not in {}", family.fmt_elem(g), self.ideal));
                }
            }
            if !family.v(&principal_sum(family, gens))?.is_empty() {
                return fail("finitely generated witness has a nonempty closed set".into());
            }
        }
        Ok(())
    }
}

fn principal(family: &PrimeFamily, x: &UElem) -> SymbolicIdeal {
    match (family, x) {
        (PrimeFamily::Finite { ring, .. }, UElem::Finite(a)) => SymbolicIdeal::Finite(Ideal::principal(ring, *a)),
        (_, UElem::Pid(a)) => SymbolicIdeal::Pid(vec![a.clone()]),
        (_, UElem::Chain(f)) => SymbolicIdeal::Chain(ChainIdeal::Generated(vec![f.clone()])),
        (PrimeFamily::Quad { order, .. }, UElem::Quad(a)) => {
            SymbolicIdeal::quad(*order, &[*a]).expect("one generator is always accepted")
        }
        _ => family.zero_ideal(),
    }
}

pub(crate) fn principal_sum(family: &PrimeFamily, xs: &[UElem]) -> SymbolicIdeal {
    let parts: Vec<SymbolicIdeal> = xs.iter().map(|x| principal(family, x)).collect();
    family.ideal_sum(&parts).unwrap_or_else(|_| family.zero_ideal())
}

/// Decide whether `I ⊆ ⋃A`, with a containing member, an escape element, or
/// the uncontained-cover witness.
pub fn covers(i: &SymbolicIdeal, family: &PrimeFamily) -> Result<CoverageReport> {
    let closed = family.v(i)?;
    let report = |outcome, fg_witness| CoverageReport { ideal: i.clone(), outcome, fg_witness };
    if let Some(m) = closed.first() {
        return Ok(report(Coverage::Contained(m), None));
    }
    if family.is_empty() {
        let zero = match family {
            PrimeFamily::Finite { ring, .. } => UElem::Finite(ring.zero()),
            PrimeFamily::Pid { pid, .. } => UElem::Pid(pid.zero()),
            PrimeFamily::Chain { field, .. } => UElem::Chain(SparsePoly::zero(*field)),
            PrimeFamily::Quad { .. } => UElem::Quad(QuadElem::int(0)),
        };
        return Ok(report(Coverage::Escape(zero), None));
    }
    let out = match (family, i) {
        (PrimeFamily::Finite { ring, primes }, SymbolicIdeal::Finite(j)) => {
            let escape = j
                .sorted_elements()
                .into_iter()
                .find(|&x| primes.iter().all(|p| !p.contains(x)))
                .ok_or_else(|| Error::Validation(format!("{j} is covered by finitely many primes yet in none")))?;
            let fg = finite_fg_witness(family, ring, primes, j)?;
            report(Coverage::Escape(UElem::Finite(escape)), Some(fg))
        }
        (PrimeFamily::Pid { pid, .. }, SymbolicIdeal::Pid(gens)) => {
            let g = pid.gcd_all(gens)?;
            let x = UElem::Pid(g);
            report(Coverage::Escape(x.clone()), Some(vec![x]))
        }
        (PrimeFamily::Chain { field, index, .. }, SymbolicIdeal::Chain(ChainIdeal::IOmega)) => match index {
            ChainIndexSet::AllNaturals => report(Coverage::Uncontained(UncontainedChain { field: *field }), None),
            ChainIndexSet::Finite(s) => {
                let top = *s.last().expect("family is nonempty");
                let x = UElem::Chain(SparsePoly::var(*field, top + 1));
                report(Coverage::Escape(x.clone()), Some(vec![x]))
            }
        },
        (PrimeFamily::Chain { .. }, SymbolicIdeal::Chain(ChainIdeal::Generated(gens))) => {
            let mut found = None;
            for g in gens {
                let x = UElem::Chain(g.clone());
                if family.avoids_all(&x)? {
                    found = Some(x);
                    break;
                }
            }
            let x = found.ok_or_else(|| Error::Validation(format!("no generator of {i} escapes the chain")))?;
            report(Coverage::Escape(x.clone()), Some(vec![x]))
        }
        (PrimeFamily::Quad { .. }, SymbolicIdeal::Quad(_, Some(j))) => {
            let (_, a) = qr_power(j)?;
            let x = UElem::Quad(a);
            report(Coverage::Escape(x.clone()), Some(vec![x]))
        }
        _ => return Err(Error::Validation(format!("{i} over {family} has an empty closed set unexpectedly"))),
    };
    out.validate(family)?;
    Ok(out)
}

/// Pick `x_P ∈ J ∖ P` for each member, then keep a sub-list whose basic
/// opens still cover the family.
fn finite_fg_witness(family: &PrimeFamily, ring: &Arc<FiniteRing>, primes: &[Ideal], j: &Ideal) -> Result<Vec<UElem>> {
    let elems = j.sorted_elements();
    let mut xs = Vec::with_capacity(primes.len());
    for p in primes {
        let x = elems
            .iter()
            .copied()
            .find(|&x| !p.contains(x))
            .ok_or_else(|| Error::Validation(format!("{p} contains {j}")))?;
        xs.push(x);
    }
    xs.sort();
    xs.dedup();
    let opens: Vec<SymbolicIdeal> = xs.iter().map(|&x| SymbolicIdeal::Finite(Ideal::principal(ring, x))).collect();
    let keep = family.subcover(&opens)?.ok_or_else(|| Error::Validation("x_P do not cover the family".into()))?;
    Ok(keep.into_iter().map(|k| UElem::Finite(xs[k])).collect())
}

/// Classic prime avoidance over a finite ring: given a finite list of primes.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassicOutcome {
    Contained(Ideal),
    Escape(Elem),
}

/// The first listed prime containing `i`, else the smallest element of `i`
/// outside all of them.
pub fn classic_pal(i: &Ideal, primes: &[Ideal]) -> Result<ClassicOutcome> {
    for p in primes {
        if **p.ring() != **i.ring() {
            return Err(Error::RingMismatch);
        }
        if !p.is_prime() {
            return Err(Error::NotPrime(p.to_string()));
        }
    }
    if let Some(p) = primes.iter().find(|p| i.is_subset(p)) {
        return Ok(ClassicOutcome::Contained(p.clone()));
    }
    i.sorted_elements()
        .into_iter()
        .find(|&x| primes.iter().all(|p| !p.contains(x)))
        .map(ClassicOutcome::Escape)
        .ok_or_else(|| Error::Validation(format!("{i} is covered by finitely many primes yet in none")))
}

/// Why every finitely generated ideal in the union lies in one member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgJustification {
    /// All ideals of the finite ring were checked.
    Exhaustive,
    /// Finitely generated ideals are principal.
    Bezout,
    /// Finitely many generators land in one member of a chain.
    Chain,
    /// Some power of each ideal sits inside a principal ideal it contains.
    QrClassPower,
}

impl fmt::Display for FgJustification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FgJustification::Exhaustive => "exhaustive",
            FgJustification::Bezout => "bezout",
            FgJustification::Chain => "chain",
            FgJustification::QrClassPower => "qr-class-power",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FgPa {
    pub holds: bool,
    pub justification: FgJustification,
    /// Number of ideals or identities actually checked.
    pub checked: usize,
}

/// Small samples used to back the closed-form justifications.
const FG_SAMPLE: usize = 8;
const QUAD_SAMPLE_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// P.A. for finitely generated ideals, with the universe's justification.
pub fn fg_pa(family: &PrimeFamily) -> Result<FgPa> {
    match family {
        PrimeFamily::Finite { ring, .. } => {
            let ideals = ring.enumerate_ideals();
            let holds = exhaustive_pa(family, &ideals)?;
            Ok(FgPa { holds, justification: FgJustification::Exhaustive, checked: ideals.len() })
        }
        PrimeFamily::Pid { pid, .. } => {
            let mut checked = 0;
            for x in 1..=FG_SAMPLE {
                for y in 1..=FG_SAMPLE {
                    let (a, b) = (pid.nth_elem(x), pid.nth_elem(y));
                    let (g, s, t) = pid.bezout(&a, &b)?;
                    if pid.add(&pid.mul(&s, &a)?, &pid.mul(&t, &b)?)? != g {
                        return Err(Error::Validation(format!("bezout identity fails for ({a}, {b})")));
                    }
                    checked += 1;
                }
            }
            Ok(FgPa { holds: true, justification: FgJustification::Bezout, checked })
        }
        PrimeFamily::Chain { field, .. } => {
            let mut holds = true;
            let mut checked = 0;
            for k in 1..=FG_SAMPLE as u32 {
                let gens = (1..=k).map(|n| SparsePoly::var(*field, n)).collect();
                let r = covers(&SymbolicIdeal::Chain(ChainIdeal::Generated(gens)), family)?;
                holds &= !matches!(r.outcome, Coverage::Uncontained(_));
                checked += 1;
            }
            Ok(FgPa { holds, justification: FgJustification::Chain, checked })
        }
        PrimeFamily::Quad { order, .. } => {
            let mut checked = 0;
            for p in QUAD_SAMPLE_PRIMES {
                for prime in factor_prime(*order, p)?.primes {
                    let (n, a) = qr_power(&prime)?;
                    let cyclic = crate::quadlab::QuadIdeal::principal(*order, a)?;
                    if !prime.contains(a) || !prime.pow(n).is_subset(&cyclic) {
                        return Err(Error::Validation(format!("power property fails for {prime}")));
                    }
                    checked += 1;
                }
            }
            Ok(FgPa { holds: true, justification: FgJustification::QrClassPower, checked })
        }
    }
}

/// Every listed ideal inside the union lies in a single member.
pub(crate) fn exhaustive_pa(family: &PrimeFamily, ideals: &[Ideal]) -> Result<bool> {
    let PrimeFamily::Finite { primes, .. } = family else {
        return Err(Error::UniverseMismatch(format!("{family} is not a finite-ring family")));
    };
    Ok(ideals.iter().all(|i| {
        let in_union = i.elements().all(|x| primes.iter().any(|p| p.contains(x)));
        !in_union || primes.iter().any(|p| i.is_subset(p))
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub enum PaVerdict {
    HasPa { compact: CompactReason, fg: FgPa },
    LacksPa { counterexample: CoverageReport, cover: NonCompactCover },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PaCertificate {
    pub verdict: PaVerdict,
    /// For finite rings, how many ideals the exhaustive cross-check covered.
    pub exhaustive_ideals: Option<usize>,
}

impl PaCertificate {
    pub fn has_pa(&self) -> bool {
        matches!(self.verdict, PaVerdict::HasPa { .. })
    }
}

/// Decide the P.A. property as compactness plus P.A. for finitely generated
/// ideals. Finite rings are also checked over every ideal.
pub fn has_pa(family: &PrimeFamily) -> Result<PaCertificate> {
    let fg = fg_pa(family)?;
    let compact = family.is_compact();
    let verdict = match compact {
        CompactnessCertificate::Compact(reason) if fg.holds => PaVerdict::HasPa { compact: reason, fg },
        CompactnessCertificate::Compact(_) => {
            return Err(Error::Validation(format!("{family} is compact but fails P.A. on a finitely generated ideal")))
        }
        CompactnessCertificate::NonCompact(cover) => {
            if !cover.verify(NONCOMPACT_PREFIXES_CHECKED)? {
                return Err(Error::Validation("non-compactness cover does not check".into()));
            }
            let counterexample = covers(&SymbolicIdeal::Chain(ChainIdeal::IOmega), family)?;
            if !matches!(counterexample.outcome, Coverage::Uncontained(_)) {
                return Err(Error::Validation("I_omega is expected to be covered yet uncontained".into()));
            }
            PaVerdict::LacksPa { counterexample, cover }
        }
    };
    let exhaustive_ideals = match family {
        PrimeFamily::Finite { ring, .. } => {
            let ideals = ring.enumerate_ideals();
            let direct = exhaustive_pa(family, &ideals)?;
            if direct != matches!(verdict, PaVerdict::HasPa { .. }) {
                return Err(Error::Validation(format!("exhaustive P.A. check disagrees for {family}")));
            }
            Some(ideals.len())
        }
        _ => None,
    };
    Ok(PaCertificate { verdict, exhaustive_ideals })
}
