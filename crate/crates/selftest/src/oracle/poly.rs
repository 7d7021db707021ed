//! Term-by-term evaluation of sparse polynomials over `Q`.

use avoidlab::bigpoly::{PointQ, SparsePoly};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `f(point)`, with variables past the point's dimension read as zero.
pub fn eval(f: &SparsePoly, point: &PointQ) -> BigRational {
    let mut total = BigRational::zero();
    for (mono, coeff) in f.terms() {
        let mut term = coeff.clone();
        for &(var, exp) in mono.pairs() {
            let x = point.0.get(var as usize - 1).cloned().unwrap_or_else(BigRational::zero);
            let mut p = BigRational::one();
            for _ in 0..exp {
                p *= &x;
            }
            term *= p;
        }
        total += term;
    }
    total
}

/// Index of the first point where every polynomial vanishes.
pub fn first_common_zero(polys: &[SparsePoly], points: &[PointQ]) -> Option<usize> {
    points.iter().position(|pt| polys.iter().all(|f| eval(f, pt).is_zero()))
}
