use std::fmt;
use std::sync::Arc;

use super::family::{pid_of, ChainIdeal, ChainIndexSet, Member, PidMaximal, PrimeFamily, QuadMaximal, SymbolicIdeal, UElem};
use crate::bigpoly::SparsePoly;
use crate::error::{Error, Result};
use crate::finring::{Ideal, RingHom};
use crate::quadlab::{QuadElem, QuadIdeal};

/// Number of finite prefixes of a non-compactness cover that are checked.
pub const NONCOMPACT_PREFIXES_CHECKED: u32 = 10;

impl PrimeFamily {
    pub(crate) fn check_universe(&self, i: &SymbolicIdeal) -> Result<()> {
        let ok = match (self, i) {
            (PrimeFamily::Finite { ring, .. }, SymbolicIdeal::Finite(j)) => **j.ring() == **ring,
            (PrimeFamily::Pid { pid, .. }, SymbolicIdeal::Pid(gens)) => gens.iter().all(|g| pid_of(g) == *pid),
            (PrimeFamily::Chain { field, .. }, SymbolicIdeal::Chain(ChainIdeal::Generated(gens))) => {
                gens.iter().all(|g| g.field() == *field)
            }
            (PrimeFamily::Chain { .. }, SymbolicIdeal::Chain(ChainIdeal::IOmega)) => true,
            (PrimeFamily::Quad { order, .. }, SymbolicIdeal::Quad(o, _)) => o == order,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UniverseMismatch(format!("ideal {i} over family {self}")))
        }
    }

    pub(crate) fn check_elem(&self, x: &UElem) -> Result<()> {
        let ok = match (self, x) {
            (PrimeFamily::Finite { ring, .. }, UElem::Finite(e)) => e.idx() < ring.order(),
            (PrimeFamily::Pid { pid, .. }, UElem::Pid(a)) => pid_of(a) == *pid,
            (PrimeFamily::Chain { field, .. }, UElem::Chain(f)) => f.field() == *field,
            (PrimeFamily::Quad { .. }, UElem::Quad(_)) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::UniverseMismatch(format!("element {x} over family {self}")))
        }
    }

    /// Does the member prime contain the ideal?
    pub fn member_contains(&self, m: &Member, i: &SymbolicIdeal) -> Result<bool> {
        self.check_universe(i)?;
        Ok(match (m, i) {
            (Member::Finite(p), SymbolicIdeal::Finite(j)) => j.is_subset(p),
            (Member::PidGeneric, SymbolicIdeal::Pid(gens)) => gens.iter().all(|g| pid_of(g).is_zero(g)),
            (Member::PidMaximal(p), SymbolicIdeal::Pid(gens)) => {
                gens.iter().all(|g| pid_of(g).prime_contains(p, g))
            }
            (Member::Chain(n), SymbolicIdeal::Chain(ChainIdeal::Generated(gens))) => gens.iter().all(|g| g.in_pn(*n)),
            (Member::Chain(_), SymbolicIdeal::Chain(ChainIdeal::IOmega)) => false,
            (Member::ChainTop, SymbolicIdeal::Chain(ChainIdeal::Generated(gens))) => gens.iter().all(SparsePoly::in_iomega),
            (Member::ChainTop, SymbolicIdeal::Chain(ChainIdeal::IOmega)) => true,
            (Member::Quad(_), SymbolicIdeal::Quad(_, None)) => true,
            (Member::Quad(p), SymbolicIdeal::Quad(_, Some(j))) => j.is_subset(p),
            _ => return Err(Error::UniverseMismatch(format!("member {m} against ideal {i}"))),
        })
    }

    /// Does the member prime contain the element?
    pub fn member_contains_elem(&self, m: &Member, x: &UElem) -> Result<bool> {
        self.check_elem(x)?;
        Ok(match (m, x) {
            (Member::Finite(p), UElem::Finite(a)) => p.contains(*a),
            (Member::PidGeneric, UElem::Pid(a)) => pid_of(a).is_zero(a),
            (Member::PidMaximal(p), UElem::Pid(a)) => pid_of(a).prime_contains(p, a),
            (Member::Chain(n), UElem::Chain(f)) => f.in_pn(*n),
            (Member::ChainTop, UElem::Chain(f)) => f.in_iomega(),
            (Member::Quad(p), UElem::Quad(a)) => p.contains(*a),
            _ => return Err(Error::UniverseMismatch(format!("member {m} against element {x}"))),
        })
    }

    /// Is `x` outside every member? Decided in closed form for the
    /// infinite families.
    pub fn avoids_all(&self, x: &UElem) -> Result<bool> {
        self.check_elem(x)?;
        if let Some(ms) = self.members() {
            for m in &ms {
                if self.member_contains_elem(m, x)? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        let principal = match x {
            UElem::Pid(a) => SymbolicIdeal::Pid(vec![a.clone()]),
            UElem::Chain(f) => SymbolicIdeal::Chain(ChainIdeal::Generated(vec![f.clone()])),
            UElem::Quad(a) => match self {
                PrimeFamily::Quad { order, .. } => SymbolicIdeal::quad(*order, &[*a])?,
                _ => unreachable!("checked above"),
            },
            UElem::Finite(_) => unreachable!("finite families are finite"),
        };
        Ok(self.v(&principal)?.is_empty())
    }

    /// The closed set `V_A(I)`.
    pub fn v(&self, i: &SymbolicIdeal) -> Result<ZariskiSet> {
        self.check_universe(i)?;
        let shape = match self {
            PrimeFamily::Finite { .. } => {
                let ms = self.members().expect("finite");
                let mut out = Vec::new();
                for m in ms {
                    if self.member_contains(&m, i)? {
                        out.push(m);
                    }
                }
                Shape::Finite(out)
            }
            PrimeFamily::Pid { pid, maximal, .. } => {
                let SymbolicIdeal::Pid(gens) = i else { unreachable!("checked") };
                let g = pid.gcd_all(gens)?;
                if pid.is_zero(&g) {
                    match self.members() {
                        Some(ms) => Shape::Finite(ms),
                        None => Shape::Whole,
                    }
                } else {
                    let mut out = Vec::new();
                    match maximal {
                        PidMaximal::FiniteList(ps) => {
                            out.extend(ps.iter().filter(|p| pid.prime_contains(p, &g)).cloned().map(Member::PidMaximal))
                        }
                        PidMaximal::CofiniteAll(ex) => {
                            if !pid.is_unit(&g) {
                                out.extend(
                                    pid.factor(&g)?
                                        .into_iter()
                                        .map(|(p, _)| p)
                                        .filter(|p| !ex.contains(p))
                                        .map(Member::PidMaximal),
                                );
                            }
                        }
                    }
                    Shape::Finite(out)
                }
            }
            PrimeFamily::Chain { index, include_top, .. } => {
                let (from, top_ok) = match i {
                    SymbolicIdeal::Chain(ChainIdeal::IOmega) => (None, true),
                    SymbolicIdeal::Chain(ChainIdeal::Generated(gens)) => {
                        if gens.iter().all(SparsePoly::in_iomega) {
                            let k = gens.iter().filter_map(SparsePoly::containing_index).max().unwrap_or(1);
                            (Some(k), true)
                        } else {
                            (None, false)
                        }
                    }
                    _ => unreachable!("checked"),
                };
                let top = *include_top && top_ok;
                match (index, from) {
                    (ChainIndexSet::AllNaturals, Some(k)) => Shape::ChainTail { from: k, top },
                    (ChainIndexSet::Finite(s), Some(k)) => {
                        let mut out: Vec<Member> = s.range(k..).map(|&n| Member::Chain(n)).collect();
                        if top {
                            out.push(Member::ChainTop);
                        }
                        Shape::Finite(out)
                    }
                    (_, None) => Shape::Finite(if top { vec![Member::ChainTop] } else { Vec::new() }),
                }
            }
            PrimeFamily::Quad { maximal, .. } => {
                let SymbolicIdeal::Quad(_, j) = i else { unreachable!("checked") };
                match j {
                    None => match self.members() {
                        Some(ms) => Shape::Finite(ms),
                        None => Shape::Whole,
                    },
                    Some(j) => {
                        let factors: Vec<QuadIdeal> = if j.is_unit_ideal() {
                            Vec::new()
                        } else {
                            j.factor()?.into_iter().map(|(p, _)| p).collect()
                        };
                        let keep = |p: &QuadIdeal| match maximal {
                            QuadMaximal::FiniteList(ps) => ps.contains(p),
                            QuadMaximal::CofiniteAll(ex) => !ex.contains(&(p.hnf().0 as u64)),
                        };
                        Shape::Finite(factors.into_iter().filter(keep).map(Member::Quad).collect())
                    }
                }
            }
        };
        Ok(ZariskiSet { family: self.clone(), ideal: i.clone(), open: false, shape })
    }

    /// The basic open set `A ∖ V_A(I)`.
    pub fn d(&self, i: &SymbolicIdeal) -> Result<ZariskiSet> {
        let mut z = self.v(i)?;
        z.open = true;
        Ok(z)
    }

    /// The zero ideal of the family's universe.
    pub fn zero_ideal(&self) -> SymbolicIdeal {
        match self {
            PrimeFamily::Finite { ring, .. } => SymbolicIdeal::Finite(Ideal::zero(ring)),
            PrimeFamily::Pid { .. } => SymbolicIdeal::Pid(Vec::new()),
            PrimeFamily::Chain { .. } => SymbolicIdeal::Chain(ChainIdeal::Generated(Vec::new())),
            PrimeFamily::Quad { order, .. } => SymbolicIdeal::Quad(*order, None),
        }
    }

    /// The unit ideal of the family's universe.
    pub fn unit_ideal(&self) -> SymbolicIdeal {
        match self {
            PrimeFamily::Finite { ring, .. } => SymbolicIdeal::Finite(Ideal::unit(ring)),
            PrimeFamily::Pid { pid, .. } => SymbolicIdeal::Pid(vec![pid.one()]),
            PrimeFamily::Chain { field, .. } => {
                SymbolicIdeal::Chain(ChainIdeal::Generated(vec![SparsePoly::one(*field)]))
            }
            PrimeFamily::Quad { order, .. } => SymbolicIdeal::Quad(*order, Some(QuadIdeal::unit(*order))),
        }
    }

    /// `Σ I_j`.
    pub fn ideal_sum(&self, ideals: &[SymbolicIdeal]) -> Result<SymbolicIdeal> {
        let mut acc = self.zero_ideal();
        for i in ideals {
            self.check_universe(i)?;
            acc = match (acc, i) {
                (SymbolicIdeal::Finite(a), SymbolicIdeal::Finite(b)) => SymbolicIdeal::Finite(a.sum(b)?),
                (SymbolicIdeal::Pid(mut a), SymbolicIdeal::Pid(b)) => {
                    a.extend(b.iter().cloned());
                    SymbolicIdeal::Pid(a)
                }
                (SymbolicIdeal::Chain(a), SymbolicIdeal::Chain(b)) => {
                    let in_iomega = |c: &ChainIdeal| match c {
                        ChainIdeal::IOmega => true,
                        ChainIdeal::Generated(g) => g.iter().all(SparsePoly::in_iomega),
                    };
                    match (a, b) {
                        (ChainIdeal::Generated(mut a), ChainIdeal::Generated(b)) => {
                            a.extend(b.iter().cloned());
                            SymbolicIdeal::Chain(ChainIdeal::Generated(a))
                        }
                        // I_ω plus an element with nonzero constant term is the unit ideal.
                        (a, b) if in_iomega(&a) && in_iomega(b) => SymbolicIdeal::Chain(ChainIdeal::IOmega),
                        _ => self.unit_ideal(),
                    }
                }
                (SymbolicIdeal::Quad(o, a), SymbolicIdeal::Quad(_, b)) => match (a, b) {
                    (None, b) => SymbolicIdeal::Quad(o, b.clone()),
                    (a, None) => SymbolicIdeal::Quad(o, a),
                    (Some(a), Some(b)) => {
                        let gens: Vec<QuadElem> = a.basis().into_iter().chain(b.basis()).collect();
                        SymbolicIdeal::Quad(o, Some(QuadIdeal::from_generators(o, &gens)?))
                    }
                },
                _ => unreachable!("checked"),
            };
        }
        Ok(acc)
    }

    /// Decide compactness by the closed-form rule of each universe.
    pub fn is_compact(&self) -> CompactnessCertificate {
        match self {
            PrimeFamily::Finite { .. } => CompactnessCertificate::Compact(CompactReason::FiniteSpace),
            PrimeFamily::Pid { .. } | PrimeFamily::Quad { .. } => {
                CompactnessCertificate::Compact(CompactReason::NoetherianSpectrum)
            }
            PrimeFamily::Chain { index: ChainIndexSet::Finite(_), .. } => {
                CompactnessCertificate::Compact(CompactReason::FiniteSpace)
            }
            PrimeFamily::Chain { index: ChainIndexSet::AllNaturals, include_top: true, .. } => {
                CompactnessCertificate::Compact(CompactReason::TopElementChain)
            }
            PrimeFamily::Chain { field, index: ChainIndexSet::AllNaturals, include_top: false } => {
                CompactnessCertificate::NonCompact(NonCompactCover { family: self.clone(), field: *field })
            }
        }
    }

    /// Given basic opens `D(I_j)`, return a minimal sub-list (by index) that
    /// still covers the family, or `None` when the list is not a cover.
    pub fn subcover(&self, cover: &[SymbolicIdeal]) -> Result<Option<Vec<usize>>> {
        let covers = |idx: &[usize]| -> Result<bool> {
            let chosen: Vec<SymbolicIdeal> = idx.iter().map(|&k| cover[k].clone()).collect();
            Ok(self.v(&self.ideal_sum(&chosen)?)?.is_empty())
        };
        let mut keep: Vec<usize> = (0..cover.len()).collect();
        if !covers(&keep)? {
            return Ok(None);
        }
        let mut k = 0;
        while k < keep.len() {
            let mut trial = keep.clone();
            trial.remove(k);
            if covers(&trial)? {
                keep = trial;
            } else {
                k += 1;
            }
        }
        // Independent check: every member of a finite family lies in a chosen open.
        if let Some(ms) = self.members() {
            for m in &ms {
                let mut hit = false;
                for &j in &keep {
                    if !self.member_contains(m, &cover[j])? {
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    return Err(Error::Validation(format!("subcover misses {m}")));
                }
            }
        }
        Ok(Some(keep))
    }

    /// `⋃A` for a chain family, and the member equal to it if there is one.
    pub fn chain_union(&self) -> Result<(SymbolicIdeal, Option<Member>)> {
        let PrimeFamily::Chain { field, index, include_top } = self else {
            return Err(Error::UniverseMismatch(format!("{self} is not a chain family")));
        };
        if *include_top || *index == ChainIndexSet::AllNaturals {
            let top = include_top.then_some(Member::ChainTop);
            return Ok((SymbolicIdeal::Chain(ChainIdeal::IOmega), top));
        }
        let ChainIndexSet::Finite(s) = index else { unreachable!() };
        match s.last() {
            None => Ok((self.zero_ideal(), None)),
            Some(&n) => {
                let gens = (1..=n).map(|i| SparsePoly::var(*field, i)).collect();
                Ok((SymbolicIdeal::Chain(ChainIdeal::Generated(gens)), Some(Member::Chain(n))))
            }
        }
    }

    /// Contract every member of a finite family along `f`.
    pub fn pullback(&self, f: &RingHom) -> Result<PrimeFamily> {
        let PrimeFamily::Finite { ring, primes } = self else {
            return Err(Error::UniverseMismatch(format!("{self} is not a finite-ring family")));
        };
        if **f.target() != **ring {
            return Err(Error::RingMismatch);
        }
        let mut out = primes.iter().map(|p| f.contract(p)).collect::<Result<Vec<_>>>()?;
        out.sort();
        out.dedup();
        PrimeFamily::finite(f.source(), out)
    }

    pub fn ring(&self) -> Option<&Arc<crate::finring::FiniteRing>> {
        match self {
            PrimeFamily::Finite { ring, .. } => Some(ring),
            _ => None,
        }
    }

    /// Render an element in the family's notation.
    pub fn fmt_elem(&self, x: &UElem) -> String {
        match (self, x) {
            (PrimeFamily::Finite { ring, .. }, UElem::Finite(e)) => ring.fmt_elem(*e),
            _ => x.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Finite(Vec<Member>),
    /// Every member of an infinite family.
    Whole,
    /// `{P_n : n ≥ from}`, plus `P_ω` when `top`.
    ChainTail { from: u32, top: bool },
}

/// A closed set `V_A(I)` or its open complement.
#[derive(Debug, Clone, PartialEq)]
pub struct ZariskiSet {
    family: PrimeFamily,
    ideal: SymbolicIdeal,
    open: bool,
    shape: Shape,
}

impl ZariskiSet {
    pub fn is_open(&self) -> bool {
        self.open
    }

    pub fn ideal(&self) -> &SymbolicIdeal {
        &self.ideal
    }

    pub fn family(&self) -> &PrimeFamily {
        &self.family
    }

    pub fn contains(&self, m: &Member) -> bool {
        if !self.family.has_member(m) {
            return false;
        }
        let closed = match &self.shape {
            Shape::Finite(ms) => ms.contains(m),
            Shape::Whole => true,
            Shape::ChainTail { from, top } => match m {
                Member::Chain(n) => n >= from,
                Member::ChainTop => *top,
                _ => false,
            },
        };
        closed != self.open
    }

    /// The members, when the set is finite.
    pub fn members(&self) -> Option<Vec<Member>> {
        if !self.open {
            return match &self.shape {
                Shape::Finite(ms) => Some(ms.clone()),
                _ => None,
            };
        }
        match (&self.shape, &self.family) {
            (Shape::Finite(ms), fam) => Some(fam.members()?.into_iter().filter(|m| !ms.contains(m)).collect()),
            (Shape::Whole, _) => Some(Vec::new()),
            (Shape::ChainTail { from, .. }, PrimeFamily::Chain { .. }) => {
                Some((1..*from).map(Member::Chain).collect())
            }
            _ => None,
        }
    }

    /// The canonically first member of the set, if any.
    pub fn first(&self) -> Option<Member> {
        if let Some(ms) = self.members() {
            return ms.into_iter().next();
        }
        match (&self.shape, self.open) {
            (Shape::Whole, false) => self.family.first_member(),
            (Shape::ChainTail { from, .. }, false) => Some(Member::Chain(*from)),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self.members() {
            Some(ms) => ms.is_empty(),
            None => false,
        }
    }
}

impl fmt::Display for ZariskiSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match (self.members(), &self.shape) {
            (Some(ms), _) => {
                let parts: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
                format!("{{{}}}", parts.join(", "))
            }
            (None, Shape::ChainTail { from, top }) => {
                format!("{{P_n : n >= {from}}}{}", if *top { " + {P_omega}" } else { "" })
            }
            (None, _) => if self.open { "cofinite subset of A" } else { "all of A" }.to_string(),
        };
        f.write_str(&body)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CompactReason {
    FiniteSpace,
    NoetherianSpectrum,
    TopElementChain,
}

impl fmt::Display for CompactReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CompactReason::FiniteSpace => "finite space",
            CompactReason::NoetherianSpectrum => "noetherian spectrum",
            CompactReason::TopElementChain => "top-element chain",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CompactnessCertificate {
    Compact(CompactReason),
    NonCompact(NonCompactCover),
}

impl CompactnessCertificate {
    pub fn is_compact(&self) -> bool {
        matches!(self, CompactnessCertificate::Compact(_))
    }
}

/// The cover `U_n = A ∖ V_A(x_{n+1}) = {P_1, ..., P_n}` of the full chain.
/// Any finite subfamily with largest index `k` misses `P_{k+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct NonCompactCover {
    family: PrimeFamily,
    field: crate::bigpoly::CoeffField,
}

impl NonCompactCover {
    pub fn describe(&self) -> String {
        "U_n = complement of V_A(x_{n+1}) = {P_1..P_n}, n >= 1".to_string()
    }

    /// The `n`-th cover element.
    pub fn open(&self, n: u32) -> Result<ZariskiSet> {
        let gen = SparsePoly::var(self.field, n + 1);
        self.family.d(&SymbolicIdeal::Chain(ChainIdeal::Generated(vec![gen])))
    }

    /// The member missed by `U_1, ..., U_k`.
    pub fn missed_member(&self, k: u32) -> Member {
        Member::Chain(k + 1)
    }

    /// Check that `P_{k+1}` is a member outside `U_1 ∪ ... ∪ U_k`, and that
    /// every `P_m` with `m ≤ k` is caught by `U_m`.
    pub fn verify_prefix(&self, k: u32) -> Result<bool> {
        let missed = self.missed_member(k);
        if !self.family.has_member(&missed) {
            return Ok(false);
        }
        for n in 1..=k {
            let u = self.open(n)?;
            if u.contains(&missed) || !u.contains(&Member::Chain(n)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Run [`NonCompactCover::verify_prefix`] for the first `count` prefixes.
    pub fn verify(&self, count: u32) -> Result<bool> {
        for k in 1..=count {
            if !self.verify_prefix(k)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
