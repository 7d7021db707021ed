//! The finite-ring corpus the acceptance suite quantifies over.

use std::sync::Arc;

use avoidlab::finring::FiniteRing;
use avoidlab::fpoly::FpPoly;
use avoidlab::Result;

/// Largest order among the two-factor products.
pub const PRODUCT_ORDER_MAX: usize = 64;

/// Table rings shipped with the core crate: name and file contents.
pub const BUNDLED_TABLES: [(&str, &str); 6] = [
    ("boolean_8.txt", include_str!("../../core/data/tables/boolean_8.txt")),
    ("f2_xy_square_max.txt", include_str!("../../core/data/tables/f2_xy_square_max.txt")),
    ("f2_xy_squares.txt", include_str!("../../core/data/tables/f2_xy_squares.txt")),
    ("f4.txt", include_str!("../../core/data/tables/f4.txt")),
    ("galois_4_2.txt", include_str!("../../core/data/tables/galois_4_2.txt")),
    ("z4_dual.txt", include_str!("../../core/data/tables/z4_dual.txt")),
];

/// `Z/n` for `2 ≤ n ≤ 32`.
pub fn residues() -> Result<Vec<Arc<FiniteRing>>> {
    (2..=32).map(FiniteRing::residue).collect()
}

/// `F_p[x]/(f)` for `p ∈ {2, 3}` and every monic `f` of degree 1 to 3.
pub fn poly_quotients() -> Result<Vec<Arc<FiniteRing>>> {
    let mut out = Vec::new();
    for p in [2u32, 3] {
        for deg in 1..=3 {
            for f in FpPoly::monics_of_degree(p, deg) {
                out.push(FiniteRing::poly_quotient(p, &f)?);
            }
        }
    }
    Ok(out)
}

pub fn tables() -> Result<Vec<Arc<FiniteRing>>> {
    BUNDLED_TABLES.iter().map(|(name, text)| FiniteRing::from_table_text(name, text)).collect()
}

/// Every product `A × B` of two atoms (residues or polynomial quotients,
/// unordered) with `|A|·|B| ≤ 64`.
pub fn products(atoms: &[Arc<FiniteRing>]) -> Result<Vec<Arc<FiniteRing>>> {
    let mut out = Vec::new();
    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[i..] {
            if a.order() * b.order() <= PRODUCT_ORDER_MAX {
                out.push(FiniteRing::product(a, b, PRODUCT_ORDER_MAX)?);
            }
        }
    }
    Ok(out)
}

/// The whole corpus: atoms, tables, then products.
pub fn corpus() -> Result<Vec<Arc<FiniteRing>>> {
    let mut atoms = residues()?;
    atoms.extend(poly_quotients()?);
    let prods = products(&atoms)?;
    let mut out = atoms;
    out.extend(tables()?);
    out.extend(prods);
    Ok(out)
}
