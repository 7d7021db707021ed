//! Prime avoidance decisions with checkable witnesses: coverage of an ideal
//! by a family, the P.A. property through compactness, Davis elements,
//! `Min(R)` certificates, and the finite-ring checks built on localization
//! and contraction.

mod coverage;
mod davis;
mod dichotomy;
mod finite;

pub use coverage::{
    classic_pal, covers, fg_pa, has_pa, ClassicOutcome, Coverage, CoverageReport, FgJustification, FgPa,
    PaCertificate, PaVerdict, UncontainedChain,
};
pub use davis::{davis, DavisCertificate, DavisRoute, DAVIS_SEARCH_CAP};
pub use dichotomy::{ann_dichotomy, cyclic_support, supp_dichotomy, AnnBranch, SuppBranch};
pub use finite::{
    hom_pa_criterion, localization_check, lying_over_pa, min_finiteness_certificate, pullback_realization,
    quentel_check, subring1_contraction_property, HomPaReport, LocalizationReport, LyingOverReport,
    MinCertificate, MinEntry, QuentelReport, Realization, Subring1Report, SUBRING_ENUMERATION_CAP,
};

use crate::error::{Error, Result};
use crate::spectra::{PrimeFamily, UElem};

/// `x + y` in the family's universe.
pub(crate) fn elem_add(family: &PrimeFamily, x: &UElem, y: &UElem) -> Result<UElem> {
    Ok(match (family, x, y) {
        (PrimeFamily::Finite { ring, .. }, UElem::Finite(a), UElem::Finite(b)) => UElem::Finite(ring.add(*a, *b)),
        (PrimeFamily::Pid { pid, .. }, UElem::Pid(a), UElem::Pid(b)) => UElem::Pid(pid.add(a, b)?),
        (PrimeFamily::Chain { .. }, UElem::Chain(a), UElem::Chain(b)) => UElem::Chain(a.add(b)?),
        (PrimeFamily::Quad { order, .. }, UElem::Quad(a), UElem::Quad(b)) => UElem::Quad(order.add(*a, *b)),
        _ => return Err(Error::UniverseMismatch(format!("{x} + {y} over {family}"))),
    })
}

/// `x·y` in the family's universe.
pub(crate) fn elem_mul(family: &PrimeFamily, x: &UElem, y: &UElem) -> Result<UElem> {
    Ok(match (family, x, y) {
        (PrimeFamily::Finite { ring, .. }, UElem::Finite(a), UElem::Finite(b)) => UElem::Finite(ring.mul(*a, *b)),
        (PrimeFamily::Pid { pid, .. }, UElem::Pid(a), UElem::Pid(b)) => UElem::Pid(pid.mul(a, b)?),
        (PrimeFamily::Chain { .. }, UElem::Chain(a), UElem::Chain(b)) => UElem::Chain(a.mul(b)?),
        (PrimeFamily::Quad { order, .. }, UElem::Quad(a), UElem::Quad(b)) => UElem::Quad(order.mul(*a, *b)),
        _ => return Err(Error::UniverseMismatch(format!("{x} * {y} over {family}"))),
    })
}

#[cfg(test)]
mod tests;
