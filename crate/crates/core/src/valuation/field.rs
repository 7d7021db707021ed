use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::bigpoly::parse_rational;
use crate::error::{Error, Result};
use crate::fpoly::FpPoly;

/// `Q` or `F_p(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Function(u32),
}

impl Field {
    /// Parse `Q` or `F<p>(t)`.
    pub fn parse(text: &str) -> Result<Field> {
        let t = text.trim();
        if t == "Q" {
            return Ok(Field::Rationals);
        }
        let p = t
            .strip_prefix('F')
            .and_then(|r| r.strip_suffix("(t)"))
            .and_then(|r| r.parse::<u32>().ok())
            .ok_or_else(|| Error::parse(0, format!("expected Q or F<p>(t), got {text:?}")))?;
        if !crate::arith::is_prime(p as u64) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Field::Function(p))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("Q"),
            Field::Function(p) => write!(f, "F{p}(t)"),
        }
    }
}

/// A reduced fraction `num/den` over `F_p` with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: FpPoly,
    den: FpPoly,
}

impl RatFunc {
    pub fn new(num: FpPoly, den: FpPoly) -> Result<RatFunc> {
        if den.is_zero() {
            return Err(Error::Unsupported("zero denominator".into()));
        }
        let p = num.modulus();
        if num.is_zero() {
            return Ok(RatFunc { num, den: FpPoly::one(p) });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead_inv = den.leading_inverse().expect("nonzero over a field");
        Ok(RatFunc { num: num.scale(lead_inv), den: den.scale(lead_inv) })
    }

    pub fn poly(f: FpPoly) -> RatFunc {
        let p = f.modulus();
        RatFunc { num: f, den: FpPoly::one(p) }
    }

    pub fn num(&self) -> &FpPoly {
        &self.num
    }

    pub fn den(&self) -> &FpPoly {
        &self.den
    }

    pub fn modulus(&self) -> u32 {
        self.num.modulus()
    }

    fn combine(num: FpPoly, den: FpPoly) -> RatFunc {
        RatFunc::new(num, den).expect("denominators of nonzero fractions multiply to nonzero")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &FpPoly| {
            let s = p.fmt_var("t");
            if s.contains('+') || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        if self.den.degree() == Some(0) {
            f.write_str(&self.num.fmt_var("t"))
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

/// An element of `Q` or of `F_p(t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Function(RatFunc),
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rational(_) => Field::Rationals,
            FieldElem::Function(r) => Field::Function(r.modulus()),
        }
    }

    pub fn zero(field: Field) -> FieldElem {
        FieldElem::int(field, 0)
    }

    pub fn one(field: Field) -> FieldElem {
        FieldElem::int(field, 1)
    }

    pub fn int(field: Field, n: i64) -> FieldElem {
        match field {
            Field::Rationals => FieldElem::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Function(p) => FieldElem::Function(RatFunc::poly(FpPoly::constant(p, n))),
        }
    }

    pub fn ratio(n: i64, d: i64) -> FieldElem {
        FieldElem::Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Function(r) => r.num.is_zero(),
        }
    }

    fn same_field(&self, other: &FieldElem) -> Result<()> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{} and {}", self.field(), other.field())))
        }
    }

    pub fn add(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (FieldElem::Function(a), FieldElem::Function(b)) => FieldElem::Function(RatFunc::combine(
                a.num.mul(&b.den).add(&b.num.mul(&a.den)),
                a.den.mul(&b.den),
            )),
            _ => unreachable!("fields checked"),
        })
    }

    pub fn neg(&self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Function(a) => FieldElem::Function(RatFunc { num: a.num.neg(), den: a.den.clone() }),
        }
    }

    pub fn sub(&self, other: &FieldElem) -> Result<FieldElem> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldElem) -> Result<FieldElem> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::Function(a), FieldElem::Function(b)) => {
                FieldElem::Function(RatFunc::combine(a.num.mul(&b.num), a.den.mul(&b.den)))
            }
            _ => unreachable!("fields checked"),
        })
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::Unsupported("inverse of 0".into()));
        }
        Ok(match self {
            FieldElem::Rational(a) => FieldElem::Rational(a.recip()),
            FieldElem::Function(a) => FieldElem::Function(RatFunc::combine(a.den.clone(), a.num.clone())),
        })
    }

    pub fn div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.mul(&other.inv()?)
    }

    /// `self^e` for any integer `e`; `0^e` with `e < 0` is an error.
    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = FieldElem::one(self.field());
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Parse an element of `field`: `a/b` over `Q`, `num/den` in `t` over
    /// `F_p(t)` with optional parentheses.
    pub fn parse(field: Field, text: &str) -> Result<FieldElem> {
        match field {
            Field::Rationals => Ok(FieldElem::Rational(parse_rational(text.trim())?)),
            Field::Function(p) => {
                let (n, d) = split_fraction(text.trim())?;
                let num = FpPoly::parse(p, 't', strip_parens(n))?;
                let den = match d {
                    Some(d) => FpPoly::parse(p, 't', strip_parens(d))?,
                    None => FpPoly::one(p),
                };
                if den.is_zero() {
                    return Err(Error::parse(0, "zero denominator"));
                }
                Ok(FieldElem::Function(RatFunc::new(num, den)?))
            }
        }
    }
}

fn split_fraction(text: &str) -> Result<(&str, Option<&str>)> {
    let mut depth = 0i32;
    for (i, ch) in text.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Ok((&text[..i], Some(&text[i + 1..]))),
            _ => {}
        }
        if depth < 0 {
            return Err(Error::parse(i, "unbalanced parenthesis"));
        }
    }
    Ok((text, None))
}

fn strip_parens(text: &str) -> &str {
    let t = text.trim();
    t.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(t)
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Function(r) => r.fmt(f),
        }
    }
}
