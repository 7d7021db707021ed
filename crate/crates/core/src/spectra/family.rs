use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::bigpoly::{CoeffField, SparsePoly};
use crate::error::{Error, Result};
use crate::finring::{split_top_level, Elem, FiniteRing, Ideal};
use crate::pid::{Pid, PidElem, PidPrime};
use crate::quadlab::{factor_prime, QuadElem, QuadIdeal, QuadOrder};

/// Which naturals index the chain `P_n = (x_1, ..., x_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ChainIndexSet {
    Finite(BTreeSet<u32>),
    AllNaturals,
}

/// Maximal primes of a PID family: an explicit list, or every prime except
/// an explicit list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PidMaximal {
    FiniteList(Vec<PidPrime>),
    CofiniteAll(Vec<PidPrime>),
}

/// Primes of a quadratic family. `CofiniteAll` excludes every prime lying
/// above the listed rational primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum QuadMaximal {
    FiniteList(Vec<QuadIdeal>),
    CofiniteAll(Vec<u64>),
}

/// A finitely described set of prime ideals.
#[derive(Debug, Clone, PartialEq)]
pub enum PrimeFamily {
    Finite { ring: Arc<FiniteRing>, primes: Vec<Ideal> },
    Pid { pid: Pid, include_generic: bool, maximal: PidMaximal },
    Chain { field: CoeffField, index: ChainIndexSet, include_top: bool },
    Quad { order: QuadOrder, maximal: QuadMaximal },
}

/// A single prime of a family.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Member {
    Finite(Ideal),
    PidGeneric,
    PidMaximal(PidPrime),
    /// `P_n`.
    Chain(u32),
    /// `P_ω = ⋃ P_n`.
    ChainTop,
    Quad(QuadIdeal),
}

impl fmt::Display for Member {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Member::Finite(i) => i.fmt(f),
            Member::PidGeneric => f.write_str("(0)"),
            Member::PidMaximal(p) => write!(f, "({p})"),
            Member::Chain(n) => write!(f, "P_{n}"),
            Member::ChainTop => f.write_str("P_omega"),
            Member::Quad(q) => q.fmt(f),
        }
    }
}

/// An ideal in one of the four universes.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolicIdeal {
    Finite(Ideal),
    /// Generators in `Z` or `F_p[x]`.
    Pid(Vec<PidElem>),
    Chain(ChainIdeal),
    /// `None` is the zero ideal.
    Quad(QuadOrder, Option<QuadIdeal>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainIdeal {
    Generated(Vec<SparsePoly>),
    /// `I_ω = (x_1, x_2, ...)`.
    IOmega,
}

/// An element of one of the four universes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UElem {
    Finite(Elem),
    Pid(PidElem),
    Chain(SparsePoly),
    Quad(QuadElem),
}

impl PrimeFamily {
    pub fn finite(ring: &Arc<FiniteRing>, primes: Vec<Ideal>) -> Result<PrimeFamily> {
        for p in &primes {
            if !Arc::ptr_eq(p.ring(), ring) && **p.ring() != **ring {
                return Err(Error::RingMismatch);
            }
            if !p.is_prime() {
                return Err(Error::NotPrime(p.to_string()));
            }
        }
        let primes = sorted_distinct(primes)?;
        Ok(PrimeFamily::Finite { ring: ring.clone(), primes })
    }

    pub fn pid(pid: Pid, include_generic: bool, maximal: PidMaximal) -> Result<PrimeFamily> {
        let maximal = match maximal {
            PidMaximal::FiniteList(ps) => PidMaximal::FiniteList(sorted_distinct(ps)?),
            PidMaximal::CofiniteAll(ps) => PidMaximal::CofiniteAll(sorted_distinct(ps)?),
        };
        Ok(PrimeFamily::Pid { pid, include_generic, maximal })
    }

    pub fn chain(field: CoeffField, index: ChainIndexSet, include_top: bool) -> PrimeFamily {
        let index = match index {
            ChainIndexSet::Finite(s) => ChainIndexSet::Finite(s.into_iter().filter(|&n| n >= 1).collect()),
            all => all,
        };
        PrimeFamily::Chain { field, index, include_top }
    }

    pub fn quad(order: QuadOrder, maximal: QuadMaximal) -> Result<PrimeFamily> {
        let maximal = match maximal {
            QuadMaximal::FiniteList(ps) => {
                for p in &ps {
                    if p.order() != order {
                        return Err(Error::UniverseMismatch(format!("{p} is not an ideal of {order}")));
                    }
                    if !p.is_prime() {
                        return Err(Error::NotPrime(p.to_string()));
                    }
                }
                QuadMaximal::FiniteList(sorted_distinct(ps)?)
            }
            QuadMaximal::CofiniteAll(ps) => {
                if let Some(&p) = ps.iter().find(|&&p| !crate::arith::is_prime(p)) {
                    return Err(Error::NotPrime(p.to_string()));
                }
                QuadMaximal::CofiniteAll(sorted_distinct(ps)?)
            }
        };
        Ok(PrimeFamily::Quad { order, maximal })
    }

    /// Every prime of a finite ring.
    pub fn finite_spec(ring: &Arc<FiniteRing>) -> PrimeFamily {
        PrimeFamily::Finite { ring: ring.clone(), primes: ring.spec() }
    }

    /// All members in canonical order, when there are finitely many.
    pub fn members(&self) -> Option<Vec<Member>> {
        match self {
            PrimeFamily::Finite { primes, .. } => Some(primes.iter().cloned().map(Member::Finite).collect()),
            PrimeFamily::Pid { include_generic, maximal: PidMaximal::FiniteList(ps), .. } => {
                let mut out = Vec::new();
                if *include_generic {
                    out.push(Member::PidGeneric);
                }
                out.extend(ps.iter().cloned().map(Member::PidMaximal));
                Some(out)
            }
            PrimeFamily::Chain { index: ChainIndexSet::Finite(s), include_top, .. } => {
                let mut out: Vec<Member> = s.iter().map(|&n| Member::Chain(n)).collect();
                if *include_top {
                    out.push(Member::ChainTop);
                }
                Some(out)
            }
            PrimeFamily::Quad { maximal: QuadMaximal::FiniteList(ps), .. } => {
                Some(ps.iter().cloned().map(Member::Quad).collect())
            }
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.members().is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.members().is_some_and(|m| m.is_empty())
    }

    /// The canonically first member. Infinite families always have one.
    pub fn first_member(&self) -> Option<Member> {
        match self {
            PrimeFamily::Pid { pid, include_generic, maximal: PidMaximal::CofiniteAll(ex) } => {
                if *include_generic {
                    return Some(Member::PidGeneric);
                }
                first_pid_prime_outside(*pid, ex).map(Member::PidMaximal)
            }
            PrimeFamily::Chain { index: ChainIndexSet::AllNaturals, .. } => Some(Member::Chain(1)),
            PrimeFamily::Quad { order, maximal: QuadMaximal::CofiniteAll(ex) } => (2u64..)
                .filter(|&p| crate::arith::is_prime(p) && !ex.contains(&p))
                .find_map(|p| factor_prime(*order, p).ok().map(|f| Member::Quad(f.primes[0].clone()))),
            _ => self.members()?.into_iter().next(),
        }
    }

    /// Is `m` a member of the family?
    pub fn has_member(&self, m: &Member) -> bool {
        match (self, m) {
            (PrimeFamily::Finite { primes, .. }, Member::Finite(i)) => primes.contains(i),
            (PrimeFamily::Pid { include_generic, .. }, Member::PidGeneric) => *include_generic,
            (PrimeFamily::Pid { pid, maximal, .. }, Member::PidMaximal(p)) => {
                pid.prime(p.generator()).is_ok()
                    && match maximal {
                        PidMaximal::FiniteList(ps) => ps.contains(p),
                        PidMaximal::CofiniteAll(ex) => !ex.contains(p),
                    }
            }
            (PrimeFamily::Chain { index, .. }, Member::Chain(n)) => match index {
                ChainIndexSet::Finite(s) => s.contains(n),
                ChainIndexSet::AllNaturals => *n >= 1,
            },
            (PrimeFamily::Chain { include_top, .. }, Member::ChainTop) => *include_top,
            (PrimeFamily::Quad { order, maximal }, Member::Quad(q)) => {
                q.order() == *order
                    && q.is_prime()
                    && match maximal {
                        QuadMaximal::FiniteList(ps) => ps.contains(q),
                        QuadMaximal::CofiniteAll(ex) => !ex.contains(&(q.hnf().0 as u64)),
                    }
            }
            _ => false,
        }
    }

    /// Short name of the universe, for error messages and reports.
    pub fn universe(&self) -> String {
        match self {
            PrimeFamily::Finite { ring, .. } => ring.expr().to_string(),
            PrimeFamily::Pid { pid, .. } => pid.to_string(),
            PrimeFamily::Chain { field, .. } => format!("{field}[x1,x2,...]"),
            PrimeFamily::Quad { order, .. } => order.to_string(),
        }
    }

    /// Parse the family grammar, see [`PrimeFamily::parse_with_cap`].
    pub fn parse(text: &str) -> Result<PrimeFamily> {
        PrimeFamily::parse_with_cap(text, crate::finring::DEFAULT_CAP)
    }

    /// Parse `finite:RING:(g),(h)`, `Spec(Z)`, `Max(Z)\2,3`, `Spec(F3[x])`,
    /// `Max(F3[x])\x+1`, the explicit lists `Z:(0),(5)` and `F2[x]:(x+1)`,
    /// `chain:Q:all:top`, `chain:F2:1,2,5`, `quad:-5:all\2` and
    /// `quad:-5:2,(3,1+w)`.
    pub fn parse_with_cap(text: &str, cap: usize) -> Result<PrimeFamily> {
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("finite:") {
            let offset = "finite:".len();
            let (ring_text, primes_text) = match rest.find(":(") {
                Some(i) => (&rest[..i], &rest[i + 1..]),
                None => match rest.strip_suffix(':') {
                    Some(r) => (r, ""),
                    None => return Err(Error::parse(offset, "expected ':' before the prime list")),
                },
            };
            let ring = FiniteRing::parse_with_cap(ring_text, cap)?;
            let primes = ring.parse_ideal_list(primes_text)?;
            return PrimeFamily::finite(&ring, primes);
        }
        if let Some(rest) = text.strip_prefix("chain:") {
            return parse_chain(rest);
        }
        if let Some(rest) = text.strip_prefix("quad:") {
            return parse_quad(rest);
        }
        for (prefix, generic) in [("Spec(", true), ("Max(", false)] {
            if let Some(rest) = text.strip_prefix(prefix) {
                let close = rest.find(')').ok_or_else(|| Error::parse(prefix.len(), "missing ')'"))?;
                // F_p[x] contains no ')' so the first one closes the ring.
                let pid = parse_pid(&rest[..close])?;
                let mods = rest[close + 1..].trim();
                let excluded = match mods.strip_prefix('\\') {
                    Some(list) => parse_pid_primes(pid, list)?,
                    None if mods.is_empty() => Vec::new(),
                    None => return Err(Error::parse(prefix.len() + close + 1, "expected '\\' before exclusions")),
                };
                return PrimeFamily::pid(pid, generic, PidMaximal::CofiniteAll(excluded));
            }
        }
        if let Some((ring, list)) = text.split_once(':') {
            if let Ok(pid) = parse_pid(ring) {
                let mut generic = false;
                let mut primes = Vec::new();
                for entry in split_list(list) {
                    let e = pid.parse_elem(entry)?;
                    if pid.is_zero(&e) {
                        if generic {
                            return Err(Error::DuplicateMember("(0)".into()));
                        }
                        generic = true;
                    } else {
                        primes.push(pid.prime(&e)?);
                    }
                }
                return PrimeFamily::pid(pid, generic, PidMaximal::FiniteList(primes));
            }
        }
        Err(Error::parse(0, format!("unrecognised family {text:?}")))
    }
}

fn sorted_distinct<T: Ord + fmt::Display>(mut v: Vec<T>) -> Result<Vec<T>> {
    v.sort();
    if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateMember(w[0].to_string()));
    }
    Ok(v)
}

pub(crate) fn first_pid_prime_outside(pid: Pid, excluded: &[PidPrime]) -> Option<PidPrime> {
    match pid {
        Pid::Integers => (2i128..)
            .filter(|&n| crate::arith::is_prime(n as u64))
            .map(|n| pid.prime(&PidElem::Int(n)).expect("prime"))
            .find(|p| !excluded.contains(p)),
        Pid::Poly(p) => crate::fpoly::FpPoly::irreducibles(p)
            .map(|f| pid.prime(&PidElem::Poly(f)).expect("irreducible"))
            .find(|q| !excluded.contains(q)),
    }
}

fn parse_pid(text: &str) -> Result<Pid> {
    let t = text.trim();
    if t == "Z" {
        return Ok(Pid::Integers);
    }
    let p = t
        .strip_prefix('F')
        .and_then(|r| r.strip_suffix("[x]"))
        .and_then(|p| p.parse::<u32>().ok())
        .ok_or_else(|| Error::parse(0, format!("expected Z or Fp[x], got {t:?}")))?;
    Pid::poly(p)
}

/// Split a comma list whose entries may be parenthesised.
fn split_list(text: &str) -> Vec<&str> {
    let text = text.trim();
    if text.is_empty() {
        return Vec::new();
    }
    split_top_level(text, ',')
        .into_iter()
        .map(|e| {
            let e = e.trim();
            e.strip_prefix('(').and_then(|e| e.strip_suffix(')')).unwrap_or(e)
        })
        .collect()
}

fn parse_pid_primes(pid: Pid, text: &str) -> Result<Vec<PidPrime>> {
    split_list(text).into_iter().map(|e| pid.parse_prime(e)).collect()
}

fn parse_chain(rest: &str) -> Result<PrimeFamily> {
    let mut parts = rest.split(':');
    let field = match parts.next().map(str::trim) {
        Some("Q") => CoeffField::Rational,
        Some(f) => {
            let p = f
                .strip_prefix('F')
                .and_then(|p| p.parse::<u64>().ok())
                .ok_or_else(|| Error::parse(0, format!("bad coefficient field {f:?}")))?;
            if !crate::arith::is_prime(p) {
                return Err(Error::NotPrime(p.to_string()));
            }
            CoeffField::Prime(p)
        }
        None => return Err(Error::parse(0, "missing field")),
    };
    let index = match parts.next().map(str::trim) {
        Some("all") => ChainIndexSet::AllNaturals,
        Some(list) => {
            let mut set = BTreeSet::new();
            for entry in list.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                if let Some((lo, hi)) = entry.split_once("..") {
                    let lo: u32 = lo.parse().map_err(|_| Error::parse(0, format!("bad range {entry:?}")))?;
                    let hi: u32 = hi.parse().map_err(|_| Error::parse(0, format!("bad range {entry:?}")))?;
                    set.extend(lo..=hi);
                } else {
                    let n: u32 = entry.parse().map_err(|_| Error::parse(0, format!("bad index {entry:?}")))?;
                    if n == 0 {
                        return Err(Error::parse(0, "chain indices start at 1"));
                    }
                    if !set.insert(n) {
                        return Err(Error::DuplicateMember(format!("P_{n}")));
                    }
                }
            }
            if set.contains(&0) {
                return Err(Error::parse(0, "chain indices start at 1"));
            }
            ChainIndexSet::Finite(set)
        }
        None => return Err(Error::parse(0, "missing index set")),
    };
    let include_top = match parts.next().map(str::trim) {
        None => false,
        Some("top") => true,
        Some(other) => return Err(Error::parse(0, format!("expected 'top', got {other:?}"))),
    };
    if parts.next().is_some() {
        return Err(Error::parse(0, "trailing input after chain family"));
    }
    Ok(PrimeFamily::chain(field, index, include_top))
}

fn parse_quad(rest: &str) -> Result<PrimeFamily> {
    let (d, list) = rest.split_once(':').ok_or_else(|| Error::parse(0, "expected quad:d:primes"))?;
    let order = QuadOrder::parse(d)?;
    let list = list.trim();
    if let Some(ex) = list.strip_prefix("all") {
        let ex = ex.trim();
        let excluded = match ex.strip_prefix('\\') {
            Some(l) => l
                .split(',')
                .map(|p| p.trim().parse::<u64>().map_err(|_| Error::parse(0, format!("bad prime {p:?}"))))
                .collect::<Result<Vec<_>>>()?,
            None if ex.is_empty() => Vec::new(),
            None => return Err(Error::parse(0, "expected '\\' before exclusions")),
        };
        return PrimeFamily::quad(order, QuadMaximal::CofiniteAll(excluded));
    }
    let mut primes = Vec::new();
    if !list.is_empty() {
        for entry in split_top_level(list, ',') {
            let entry = entry.trim();
            if entry.starts_with('(') {
                primes.push(QuadIdeal::parse(order, entry)?);
            } else {
                let p: u64 = entry.parse().map_err(|_| Error::parse(0, format!("bad prime {entry:?}")))?;
                primes.extend(factor_prime(order, p)?.primes);
            }
        }
    }
    PrimeFamily::quad(order, QuadMaximal::FiniteList(primes))
}

impl fmt::Display for PrimeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeFamily::Finite { ring, primes } => {
                let ps: Vec<String> = primes.iter().map(|p| p.to_string()).collect();
                write!(f, "finite:{}:{}", ring.expr(), ps.join(","))
            }
            PrimeFamily::Pid { pid, include_generic, maximal: PidMaximal::CofiniteAll(ex) } => {
                write!(f, "{}({pid})", if *include_generic { "Spec" } else { "Max" })?;
                if !ex.is_empty() {
                    let ps: Vec<String> = ex.iter().map(|p| p.to_string()).collect();
                    write!(f, "\\{}", ps.join(","))?;
                }
                Ok(())
            }
            PrimeFamily::Pid { pid, include_generic, maximal: PidMaximal::FiniteList(ps) } => {
                let mut parts: Vec<String> = Vec::new();
                if *include_generic {
                    parts.push("(0)".into());
                }
                parts.extend(ps.iter().map(|p| format!("({p})")));
                write!(f, "{pid}:{}", parts.join(","))
            }
            PrimeFamily::Chain { field, index, include_top } => {
                let field = match field {
                    CoeffField::Rational => "Q".to_string(),
                    CoeffField::Prime(p) => format!("F{p}"),
                };
                let idx = match index {
                    ChainIndexSet::AllNaturals => "all".to_string(),
                    ChainIndexSet::Finite(s) => s.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(","),
                };
                write!(f, "chain:{field}:{idx}{}", if *include_top { ":top" } else { "" })
            }
            PrimeFamily::Quad { order, maximal } => {
                let list = match maximal {
                    QuadMaximal::CofiniteAll(ex) if ex.is_empty() => "all".to_string(),
                    QuadMaximal::CofiniteAll(ex) => {
                        format!("all\\{}", ex.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","))
                    }
                    QuadMaximal::FiniteList(ps) => ps
                        .iter()
                        .map(|p| {
                            let (a, b, c) = p.hnf();
                            format!("({a},{})", QuadElem::new(b, c))
                        })
                        .collect::<Vec<_>>()
                        .join(","),
                };
                write!(f, "quad:{}:{list}", order.d())
            }
        }
    }
}

impl SymbolicIdeal {
    /// Parse an ideal written for the universe of `family`: `(g1,g2)` with
    /// ring elements, integers, polynomials in `x`, polynomials in
    /// `x1, x2, ...`, or `u+v*w`; `I_omega` names `(x_1, x_2, ...)`.
    pub fn parse_for(family: &PrimeFamily, text: &str) -> Result<SymbolicIdeal> {
        let text = text.trim();
        match family {
            PrimeFamily::Finite { ring, .. } => Ok(SymbolicIdeal::Finite(ring.parse_ideal(text)?)),
            PrimeFamily::Pid { pid, .. } => {
                let gens = split_list(strip_parens(text)?).into_iter().map(|g| pid.parse_elem(g)).collect::<Result<_>>()?;
                Ok(SymbolicIdeal::Pid(gens))
            }
            PrimeFamily::Chain { field, .. } => {
                if text == "I_omega" {
                    return Ok(SymbolicIdeal::Chain(ChainIdeal::IOmega));
                }
                let gens = split_list(strip_parens(text)?)
                    .into_iter()
                    .map(|g| crate::bigpoly::parse_poly(*field, g))
                    .collect::<Result<_>>()?;
                Ok(SymbolicIdeal::Chain(ChainIdeal::Generated(gens)))
            }
            PrimeFamily::Quad { order, .. } => {
                let gens: Vec<QuadElem> =
                    split_list(strip_parens(text)?).into_iter().map(|g| order.parse_elem(g)).collect::<Result<_>>()?;
                SymbolicIdeal::quad(*order, &gens)
            }
        }
    }

    pub fn quad(order: QuadOrder, gens: &[QuadElem]) -> Result<SymbolicIdeal> {
        match QuadIdeal::from_generators(order, gens) {
            Ok(i) => Ok(SymbolicIdeal::Quad(order, Some(i))),
            Err(Error::ZeroIdeal) => Ok(SymbolicIdeal::Quad(order, None)),
            Err(e) => Err(e),
        }
    }

    /// Membership of an element. In the chain universe only `I_ω` and
    /// listed generators are decidable.
    pub fn contains_elem(&self, x: &UElem) -> Result<bool> {
        match (self, x) {
            (SymbolicIdeal::Finite(i), UElem::Finite(a)) => Ok(i.contains(*a)),
            (SymbolicIdeal::Pid(gens), UElem::Pid(a)) => {
                let pid = pid_of(a);
                let g = pid.gcd_all(gens)?;
                Ok(pid.divides(&g, a))
            }
            (SymbolicIdeal::Chain(ChainIdeal::IOmega), UElem::Chain(f)) => Ok(f.in_iomega()),
            (SymbolicIdeal::Chain(ChainIdeal::Generated(gens)), UElem::Chain(f)) => {
                if f.is_zero() || gens.contains(f) {
                    Ok(true)
                } else {
                    Err(Error::Unsupported("general membership in a polynomial ideal".into()))
                }
            }
            (SymbolicIdeal::Quad(_, None), UElem::Quad(a)) => Ok(a.is_zero()),
            (SymbolicIdeal::Quad(_, Some(i)), UElem::Quad(a)) => Ok(i.contains(*a)),
            _ => Err(Error::UniverseMismatch("element and ideal live in different universes".into())),
        }
    }
}

impl UElem {
    /// Parse an element of the universe of `family`.
    pub fn parse_for(family: &PrimeFamily, text: &str) -> Result<UElem> {
        match family {
            PrimeFamily::Finite { ring, .. } => ring.parse_elem(text).map(UElem::Finite),
            PrimeFamily::Pid { pid, .. } => pid.parse_elem(text).map(UElem::Pid),
            PrimeFamily::Chain { field, .. } => crate::bigpoly::parse_poly(*field, text).map(UElem::Chain),
            PrimeFamily::Quad { order, .. } => order.parse_elem(text).map(UElem::Quad),
        }
    }
}

impl Member {
    /// Parse a prime of the universe of `family`: a parenthesised ideal, or
    /// `P_n` / `P_omega` in the chain universe. The prime need not belong
    /// to the family.
    pub fn parse_for(family: &PrimeFamily, text: &str) -> Result<Member> {
        let text = text.trim();
        if let PrimeFamily::Chain { .. } = family {
            return match text {
                "P_omega" => Ok(Member::ChainTop),
                _ => text
                    .strip_prefix("P_")
                    .and_then(|n| n.parse::<u32>().ok())
                    .filter(|&n| n >= 1)
                    .map(Member::Chain)
                    .ok_or_else(|| Error::parse(0, format!("expected P_n or P_omega, got {text:?}"))),
            };
        }
        match SymbolicIdeal::parse_for(family, text)? {
            SymbolicIdeal::Finite(i) if i.is_prime() => Ok(Member::Finite(i)),
            SymbolicIdeal::Pid(gens) => {
                let pid = match family {
                    PrimeFamily::Pid { pid, .. } => *pid,
                    _ => unreachable!("parsed for a PID family"),
                };
                let g = pid.gcd_all(&gens)?;
                if pid.is_zero(&g) {
                    Ok(Member::PidGeneric)
                } else {
                    pid.prime(&g).map(Member::PidMaximal)
                }
            }
            SymbolicIdeal::Quad(_, Some(q)) if q.is_prime() => Ok(Member::Quad(q)),
            _ => Err(Error::NotPrime(text.to_string())),
        }
    }

    /// Parse a comma-separated list of primes, such as `(2),(3)`.
    pub fn parse_list_for(family: &PrimeFamily, text: &str) -> Result<Vec<Member>> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Vec::new());
        }
        split_top_level(text, ',').into_iter().map(|t| Member::parse_for(family, t)).collect()
    }
}

pub(crate) fn pid_of(a: &PidElem) -> Pid {
    match a {
        PidElem::Int(_) => Pid::Integers,
        PidElem::Poly(f) => Pid::Poly(f.modulus()),
    }
}

fn strip_parens(text: &str) -> Result<&str> {
    text.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::parse(0, "ideal must be parenthesised"))
}

impl fmt::Display for SymbolicIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, xs: &[T]) -> fmt::Result {
            if xs.is_empty() {
                return f.write_str("(0)");
            }
            let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
        match self {
            SymbolicIdeal::Finite(i) => i.fmt(f),
            SymbolicIdeal::Pid(gens) => list(f, gens),
            SymbolicIdeal::Chain(ChainIdeal::IOmega) => f.write_str("I_omega"),
            SymbolicIdeal::Chain(ChainIdeal::Generated(gens)) => list(f, gens),
            SymbolicIdeal::Quad(_, None) => f.write_str("(0)"),
            SymbolicIdeal::Quad(_, Some(i)) => i.fmt(f),
        }
    }
}

impl fmt::Display for UElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UElem::Finite(e) => write!(f, "#{}", e.0),
            UElem::Pid(a) => a.fmt(f),
            UElem::Chain(p) => p.fmt(f),
            UElem::Quad(q) => q.fmt(f),
        }
    }
}
