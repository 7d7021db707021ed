use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficient field of a [`SparsePoly`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoeffField {
    Rational,
    Prime(u64),
}

impl CoeffField {
    /// Bring a rational into canonical form for this field. Over `F_p`
    /// coefficients are the residues `0..p`.
    pub fn reduce(&self, c: &BigRational) -> Result<BigRational> {
        match self {
            CoeffField::Rational => Ok(c.clone()),
            CoeffField::Prime(p) => {
                let p = BigInt::from(*p);
                let den = c.denom().mod_floor(&p);
                if den.is_zero() {
                    return Err(Error::FieldMismatch(format!("denominator divisible by {p}")));
                }
                let e = den.extended_gcd(&p);
                let v = (c.numer() * e.x).mod_floor(&p);
                Ok(BigRational::from_integer(v))
            }
        }
    }
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffField::Rational => f.write_str("Q"),
            CoeffField::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// A monomial `∏ x_i^{e_i}`, stored as `(i, e_i)` pairs with `e_i > 0`,
/// sorted by variable index. Variable indices start at 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(u32, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(i: u32) -> Monomial {
        Monomial(vec![(i, 1)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Monomial {
        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
        for (i, e) in pairs {
            if e > 0 {
                *acc.entry(i).or_default() += e;
            }
        }
        Monomial(acc.into_iter().collect())
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn min_var(&self) -> Option<u32> {
        self.0.first().map(|&(i, _)| i)
    }

    pub fn max_var(&self) -> Option<u32> {
        self.0.last().map(|&(i, _)| i)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_pairs(self.0.iter().chain(other.0.iter()).copied())
    }
}

/// Graded lexicographic order with `x_1 > x_2 > ...`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
            loop {
                match (a.peek(), b.peek()) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(&&(i, e)), Some(&&(j, f))) => {
                        if i != j {
                            // The one using the lower-indexed variable is larger.
                            return j.cmp(&i);
                        }
                        if e != f {
                            return e.cmp(&f);
                        }
                        a.next();
                        b.next();
                    }
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(i, e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// A finitely supported polynomial in the variables `x_1, x_2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    field: CoeffField,
    terms: BTreeMap<Monomial, BigRational>,
}

impl SparsePoly {
    pub fn zero(field: CoeffField) -> SparsePoly {
        SparsePoly { field, terms: BTreeMap::new() }
    }

    pub fn constant(field: CoeffField, c: BigRational) -> Result<SparsePoly> {
        SparsePoly::from_terms(field, [(Monomial::one(), c)])
    }

    pub fn one(field: CoeffField) -> SparsePoly {
        SparsePoly::constant(field, BigRational::one()).expect("1 lies in every field")
    }

    pub fn var(field: CoeffField, i: u32) -> SparsePoly {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(i), BigRational::one());
        SparsePoly { field, terms }
    }

    pub fn from_terms(
        field: CoeffField,
        terms: impl IntoIterator<Item = (Monomial, BigRational)>,
    ) -> Result<SparsePoly> {
        let mut out = SparsePoly::zero(field);
        for (m, c) in terms {
            out.add_term(m, field.reduce(&c)?);
        }
        Ok(out)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        let slot = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *slot = self.field.reduce(&(&*slot + c)).expect("reduced inputs stay reduced");
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn field(&self) -> CoeffField {
        self.field
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn max_var(&self) -> Option<u32> {
        self.terms.keys().filter_map(Monomial::max_var).max()
    }

    fn check_field(&self, other: &SparsePoly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)))
        }
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> SparsePoly {
        let mut out = SparsePoly::zero(self.field);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Result<SparsePoly> {
        let c = self.field.reduce(c)?;
        let mut out = SparsePoly::zero(self.field);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * &c);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_field(other)?;
        let mut out = SparsePoly::zero(self.field);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut acc = SparsePoly::one(self.field);
        for _ in 0..e {
            acc = acc.mul(self).expect("same field");
        }
        acc
    }

    /// Membership in `P_n = (x_1, ..., x_n)`: setting `x_1..x_n` to zero
    /// kills every monomial.
    pub fn in_pn(&self, n: u32) -> bool {
        self.terms.keys().all(|m| m.min_var().is_some_and(|i| i <= n))
    }

    /// Membership in `I_ω = (x_1, x_2, ...)`: zero constant term.
    pub fn in_iomega(&self) -> bool {
        self.constant_term().is_zero()
    }

    /// Least `n ≥ 1` with `self ∈ P_n`, if any.
    pub fn containing_index(&self) -> Option<u32> {
        if !self.in_iomega() {
            return None;
        }
        Some(self.terms.keys().filter_map(Monomial::min_var).max().unwrap_or(1))
    }

    /// Exact evaluation at a rational point; `x_i` reads coordinate `i-1`.
    pub fn eval(&self, point: &PointQ) -> Result<BigRational> {
        if self.field != CoeffField::Rational {
            return Err(Error::FieldMismatch(format!("evaluation needs Q, polynomial is over {}", self.field)));
        }
        let dim = point.dim();
        if let Some(v) = self.max_var() {
            if v as usize > dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v as usize });
            }
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(i, e) in m.pairs() {
                t *= num_traits::pow(point.0[i as usize - 1].clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            match (m.is_one(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

/// A point of `Q^d` with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PointQ(pub Vec<BigRational>);

impl PointQ {
    pub fn from_ints(coords: &[i64]) -> PointQ {
        PointQ(coords.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for PointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigpoly::parse_poly;

    fn q(s: &str) -> SparsePoly {
        parse_poly(CoeffField::Rational, s).unwrap()
    }

    #[test]
    fn square_of_variable() {
        let x1 = q("x1");
        assert_eq!(x1.mul(&x1).unwrap(), q("x1^2"));
    }

    #[test]
    fn frobenius_in_char_two() {
        let f2 = CoeffField::Prime(2);
        let s = parse_poly(f2, "x1+x2").unwrap();
        assert_eq!(s.pow(2), parse_poly(f2, "x1^2+x2^2").unwrap());
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(q("x1+1").mul(&q("x1-1")).unwrap(), q("x1^2-1"));
    }

    #[test]
    fn field_mismatch() {
        let a = parse_poly(CoeffField::Prime(3), "x1").unwrap();
        assert!(matches!(a.add(&q("x1")), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn membership_in_pn() {
        assert!(q("x2").in_pn(3));
        assert!(!q("x4").in_pn(3));
        assert!(q("x1*x4 + x2").in_pn(3));
        assert!(!q("1").in_pn(5));
        assert!(q("0").in_pn(1));
    }

    #[test]
    fn membership_in_iomega() {
        assert!(q("x7").in_iomega());
        assert!(!q("x1*x2 + 1").in_iomega());
        assert!(q("3*x1 - x5^3").in_iomega());
    }

    #[test]
    fn containing_indices() {
        assert_eq!(q("x3+x5").containing_index(), Some(5));
        assert_eq!(q("x1*x9 + x4").containing_index(), Some(4));
        assert_eq!(q("0").containing_index(), Some(1));
        assert_eq!(q("x2 + 1").containing_index(), None);
    }

    #[test]
    fn evaluation() {
        let p = PointQ::from_ints(&[2, 3]);
        assert_eq!(q("x1*x2").eval(&p).unwrap(), BigRational::from_integer(6.into()));
        assert_eq!(q("5").eval(&p).unwrap(), BigRational::from_integer(5.into()));
        let half = PointQ(vec![BigRational::new(3.into(), 2.into())]);
        assert_eq!(q("x1^2 - 2").eval(&half).unwrap(), BigRational::new(1.into(), 4.into()));
        assert!(matches!(q("x3").eval(&p), Err(Error::DimensionMismatch { expected: 2, got: 3 })));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(q("x2 + 3*x1^2 - 1/2").to_string(), "3*x1^2 + x2 - 1/2");
        assert_eq!(q("x1 - x1").to_string(), "0");
    }
}
