use super::coverage::{covers, Coverage};
use crate::error::{Error, Result};
use crate::finring::Ideal;
use crate::spectra::{Member, PrimeFamily, SymbolicIdeal};

#[derive(Debug, Clone, PartialEq)]
pub enum AnnBranch {
    Containment(Member),
    /// No member contains `I`, so every member contains `Ann(I)`; `witness`
    /// is a prime outside the family that also contains `Ann(I)` and `I`,
    /// making `I + Ann(I)` proper.
    Strict { annihilator: SymbolicIdeal, witness: Member, sum_proper: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub enum SuppBranch {
    Containment(Member),
    /// Every member contains `Ann(I)`, so the family lies in `V(Ann(I))`.
    InSupport { annihilator: SymbolicIdeal },
}

/// `Ann(I)` where it is computable: finite rings, and zero elsewhere since
/// the other universes are domains and `I` is nonzero when uncontained.
fn annihilator(family: &PrimeFamily, i: &SymbolicIdeal) -> SymbolicIdeal {
    match i {
        SymbolicIdeal::Finite(j) => SymbolicIdeal::Finite(j.annihilator()),
        _ => family.zero_ideal(),
    }
}

fn containing_member(family: &PrimeFamily, i: &SymbolicIdeal) -> Result<Option<Member>> {
    let report = covers(i, family)?;
    match report.outcome {
        Coverage::Escape(_) => Err(Error::NotCovered),
        Coverage::Contained(m) => Ok(Some(m)),
        Coverage::Uncontained(_) => Ok(None),
    }
}

fn family_inside_closed(family: &PrimeFamily, ann: &SymbolicIdeal) -> Result<bool> {
    Ok(family.d(ann)?.is_empty())
}

/// For a covered ideal: a member containing it, or the strict inclusion of
/// the family in `V(Ann(I))` with a prime outside the family.
pub fn ann_dichotomy(i: &SymbolicIdeal, family: &PrimeFamily) -> Result<AnnBranch> {
    if let Some(m) = containing_member(family, i)? {
        return Ok(AnnBranch::Containment(m));
    }
    let ann = annihilator(family, i);
    if !family_inside_closed(family, &ann)? {
        return Err(Error::Validation(format!("some member misses Ann({i})")));
    }
    // Only the full chain without its top reaches here; its union P_ω is a
    // prime outside the family containing both I_ω and Ann(I_ω) = 0.
    let PrimeFamily::Chain { field, include_top: false, .. } = family else {
        return Err(Error::Validation(format!("{family} has an uncontained covered ideal")));
    };
    let witness = Member::ChainTop;
    let top_family = PrimeFamily::chain(*field, crate::spectra::ChainIndexSet::Finite(Default::default()), true);
    let sum = family.ideal_sum(&[i.clone(), ann.clone()])?;
    let sum_proper = top_family.member_contains(&witness, &sum)?;
    let ann_inside = top_family.member_contains(&witness, &ann)?;
    if family.has_member(&witness) || !ann_inside || !sum_proper {
        return Err(Error::Validation("P_omega does not witness the strict branch".into()));
    }
    Ok(AnnBranch::Strict { annihilator: ann, witness, sum_proper })
}

/// For a covered ideal: a member containing it, or the family inside the
/// support `V(Ann(I))`.
pub fn supp_dichotomy(i: &SymbolicIdeal, family: &PrimeFamily) -> Result<SuppBranch> {
    if let Some(m) = containing_member(family, i)? {
        return Ok(SuppBranch::Containment(m));
    }
    let ann = annihilator(family, i);
    if !family_inside_closed(family, &ann)? {
        return Err(Error::Validation(format!("some member misses Ann({i})")));
    }
    Ok(SuppBranch::InSupport { annihilator: ann })
}

/// Support of the cyclic module `R/I`, and of a finite direct sum of such.
pub fn cyclic_support(family: &PrimeFamily, quotients: &[Ideal]) -> Result<Vec<Member>> {
    let mut out = Vec::new();
    for q in quotients {
        let closed = family.v(&SymbolicIdeal::Finite(q.clone()))?;
        for m in closed.members().unwrap_or_default() {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    out.sort();
    Ok(out)
}
