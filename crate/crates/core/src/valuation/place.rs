use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::field::{Field, FieldElem, RatFunc};
use crate::error::{Error, Result};
use crate::fpoly::FpPoly;

/// A discrete rank-one place of `Q` or `F_p(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    /// The `p`-adic valuation of `Q`.
    PAdic(u64),
    /// The place of `F_p(t)` at a monic irreducible polynomial.
    Poly(FpPoly),
    /// The degree valuation `deg(den) − deg(num)` of `F_p(t)`.
    Infinity(u32),
}

/// A valuation value; `Infinity` only for `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Finite(i64),
    Infinity,
}

impl Value {
    pub fn is_nonnegative(self) -> bool {
        self >= Value::Finite(0)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Value::Finite(n) => Some(n),
            Value::Infinity => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(n) => write!(f, "{n}"),
            Value::Infinity => f.write_str("inf"),
        }
    }
}

impl Place {
    pub fn padic(p: u64) -> Result<Place> {
        if !crate::arith::is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Place::PAdic(p))
    }

    pub fn poly(pi: FpPoly) -> Result<Place> {
        if !pi.is_monic() || !pi.is_irreducible()? {
            return Err(Error::NotPrime(pi.fmt_var("t")));
        }
        Ok(Place::Poly(pi))
    }

    pub fn infinity(p: u32) -> Result<Place> {
        if !crate::arith::is_prime(p as u64) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Place::Infinity(p))
    }

    /// Parse `p=2`, `pi=t^2+t+1` or `inf` for the given field.
    pub fn parse(field: Field, text: &str) -> Result<Place> {
        let t = text.trim();
        match field {
            Field::Rationals => {
                let p = t
                    .strip_prefix("p=")
                    .and_then(|r| r.trim().parse::<u64>().ok())
                    .ok_or_else(|| Error::parse(0, format!("expected p=<prime>, got {text:?}")))?;
                Place::padic(p)
            }
            Field::Function(p) => {
                if t == "inf" {
                    return Place::infinity(p);
                }
                let body = t
                    .strip_prefix("pi=")
                    .ok_or_else(|| Error::parse(0, format!("expected pi=<poly> or inf, got {text:?}")))?;
                Place::poly(FpPoly::parse(p, 't', body)?)
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Place::PAdic(_) => Field::Rationals,
            Place::Poly(pi) => Field::Function(pi.modulus()),
            Place::Infinity(p) => Field::Function(*p),
        }
    }

    fn check(&self, x: &FieldElem) -> Result<()> {
        if x.field() == self.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("place {self} over {} applied to an element of {}", self.field(), x.field())))
        }
    }

    /// The valuation of `x`.
    pub fn value(&self, x: &FieldElem) -> Result<Value> {
        self.check(x)?;
        if x.is_zero() {
            return Ok(Value::Infinity);
        }
        Ok(Value::Finite(match (self, x) {
            (Place::PAdic(p), FieldElem::Rational(q)) => {
                let p = BigInt::from(*p);
                multiplicity(q.numer(), &p) - multiplicity(q.denom(), &p)
            }
            (Place::Poly(pi), FieldElem::Function(r)) => poly_multiplicity(r.num(), pi) - poly_multiplicity(r.den(), pi),
            (Place::Infinity(_), FieldElem::Function(r)) => {
                r.den().degree().unwrap_or(0) as i64 - r.num().degree().unwrap_or(0) as i64
            }
            _ => unreachable!("fields checked"),
        }))
    }

    /// Membership in the valuation ring `{x : v(x) ≥ 0}`.
    pub fn contains(&self, x: &FieldElem) -> Result<bool> {
        Ok(self.value(x)?.is_nonnegative())
    }

    /// An element of value exactly 1.
    pub fn uniformizer(&self) -> FieldElem {
        match self {
            Place::PAdic(p) => FieldElem::int(Field::Rationals, *p as i64),
            Place::Poly(pi) => FieldElem::Function(RatFunc::poly(pi.clone())),
            Place::Infinity(p) => FieldElem::Function(
                RatFunc::new(FpPoly::one(*p), FpPoly::x(*p)).expect("t is nonzero"),
            ),
        }
    }

    /// Degree of the residue field over the prime field (1 for `∞`).
    pub fn degree(&self) -> usize {
        match self {
            Place::PAdic(_) | Place::Infinity(_) => 1,
            Place::Poly(pi) => pi.degree().unwrap_or(0),
        }
    }
}

fn multiplicity(n: &BigInt, p: &BigInt) -> i64 {
    let mut n = n.clone();
    let mut k = 0;
    while !n.is_zero() && n.is_multiple_of(p) {
        n /= p;
        k += 1;
    }
    k
}

fn poly_multiplicity(f: &FpPoly, pi: &FpPoly) -> i64 {
    let mut f = f.clone();
    let mut k = 0;
    while !f.is_zero() && pi.divides(&f) {
        f = f.div_rem(pi).0;
        k += 1;
    }
    k
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::PAdic(p) => write!(f, "p={p}"),
            Place::Poly(pi) => write!(f, "pi={}", pi.fmt_var("t")),
            Place::Infinity(_) => f.write_str("inf"),
        }
    }
}
