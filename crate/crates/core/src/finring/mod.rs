//! Finite commutative rings: construction from ring expressions, ideal
//! enumeration and classification, localization, and homomorphisms.

mod hom;
mod ideal;
mod ring;

pub use hom::{Localization, RingHom};
pub use ideal::Ideal;
pub use ring::{Elem, FiniteRing, RingExpr, AXIOM_CHECK_MAX, DEFAULT_CAP, TABLE_FILE_CAP};

#[allow(unused_imports)]
pub(crate) use ring::split_top_level;
