//! Valuations recomputed from scratch, and a grid search for the element
//! the valuation theorem promises.

use avoidlab::fpoly::FpPoly;
use avoidlab::valuation::{Field, FieldElem, Place, RatFunc};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

fn count(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

fn poly_count(f: &FpPoly, pi: &FpPoly) -> i64 {
    let mut f = f.clone();
    let mut k = 0;
    while !f.is_zero() && f.rem(pi).is_zero() {
        f = f.div_rem(pi).0;
        k += 1;
    }
    k
}

/// `None` stands for `+∞`.
pub fn value(place: &Place, x: &FieldElem) -> Option<i64> {
    match (place, x) {
        (_, x) if x.is_zero() => None,
        (Place::PAdic(p), FieldElem::Rational(q)) => {
            let p = BigInt::from(*p);
            Some(count(q.numer(), &p) - count(q.denom(), &p))
        }
        (Place::Poly(pi), FieldElem::Function(r)) => Some(poly_count(r.num(), pi) - poly_count(r.den(), pi)),
        (Place::Infinity(_), FieldElem::Function(r)) => {
            Some(r.den().degree().unwrap_or(0) as i64 - r.num().degree().unwrap_or(0) as i64)
        }
        _ => panic!("place and element from different fields"),
    }
}

pub fn in_ring(place: &Place, x: &FieldElem) -> bool {
    value(place, x).map_or(true, |v| v >= 0)
}

/// The finite candidate grid: `n/d` with `|n| ≤ 20`, `1 ≤ d ≤ 20` over `Q`;
/// `f/g` with `deg f ≤ 2` and `g` monic of degree `≤ 2` over `F_p(t)`.
pub fn grid(field: Field) -> Vec<FieldElem> {
    match field {
        Field::Rationals => {
            let mut out = Vec::new();
            for d in 1..=20 {
                for n in -20..=20 {
                    out.push(FieldElem::ratio(n, d));
                }
            }
            out
        }
        Field::Function(p) => {
            let nums: Vec<FpPoly> = (0..(p as usize).pow(3)).map(|i| FpPoly::from_index(p, i)).collect();
            let dens: Vec<FpPoly> = (0..=2).flat_map(|k| FpPoly::monics_of_degree(p, k)).collect();
            let mut out = Vec::new();
            for g in &dens {
                for f in &nums {
                    out.push(FieldElem::Function(RatFunc::new(f.clone(), g.clone()).expect("monic denominator")));
                }
            }
            out
        }
    }
}

/// A grid element `v ∈ V` with `v + x` outside every other ring.
pub fn brute_escape(v: &Place, others: &[Place], x: &FieldElem) -> Option<FieldElem> {
    grid(v.field()).into_iter().find(|c| {
        in_ring(v, c) && {
            let s = c.add(x).expect("same field");
            others.iter().all(|w| !in_ring(w, &s))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_by_hand() {
        let two = Place::padic(2).unwrap();
        assert_eq!(value(&two, &FieldElem::ratio(3, 8)), Some(-3));
        let inf = Place::infinity(2).unwrap();
        let x = FieldElem::parse(Field::Function(2), "(t^2+1)/t^3").unwrap();
        assert_eq!(value(&inf, &x), Some(1));
    }

    #[test]
    fn grid_finds_the_third() {
        let v = Place::padic(5).unwrap();
        let others = [Place::padic(3).unwrap(), Place::padic(2).unwrap()];
        let w = brute_escape(&v, &others, &FieldElem::ratio(1, 2)).unwrap();
        assert!(in_ring(&v, &w));
    }
}
