//! Sparse polynomials in countably many variables `x_1, x_2, ...` over `Q`
//! or `F_p`, with membership tests for the chain ideals `P_n` and `I_ω`.

mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use poly::{CoeffField, Monomial, PointQ, SparsePoly};

use crate::error::{Error, Result};
use crate::spectra::{ChainIndexSet, PrimeFamily};

/// Parse `3*x1^2*x2 - 1/2*x5 + 7`. Whitespace is ignored.
pub fn parse_poly(field: CoeffField, text: &str) -> Result<SparsePoly> {
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(Error::parse(0, "empty polynomial"));
    }
    let mut out = SparsePoly::zero(field);
    let mut i = 0;
    while i < chars.len() {
        let mut sign = BigRational::one();
        if chars[i].1 == '+' || chars[i].1 == '-' {
            if chars[i].1 == '-' {
                sign = -sign;
            }
            i += 1;
        } else if i > 0 {
            return Err(Error::parse(chars[i].0, "expected '+' or '-'"));
        }
        let start = i;
        while i < chars.len() && chars[i].1 != '+' && chars[i].1 != '-' {
            i += 1;
        }
        if start == i {
            let pos = chars.get(start).map_or(text.len(), |c| c.0);
            return Err(Error::parse(pos, "missing term"));
        }
        let (coeff, mono) = parse_term(&chars[start..i])?;
        let term = SparsePoly::from_terms(field, [(mono, sign * coeff)])
            .map_err(|_| Error::parse(chars[start].0, "coefficient undefined in this field"))?;
        out = out.add(&term)?;
    }
    Ok(out)
}

fn parse_term(chars: &[(usize, char)]) -> Result<(BigRational, Monomial)> {
    let mut coeff = BigRational::one();
    let mut pairs = Vec::new();
    for factor in chars.split(|&(_, c)| c == '*') {
        let Some(&(pos, first)) = factor.first() else {
            let pos = chars.first().map_or(0, |c| c.0);
            return Err(Error::parse(pos, "empty factor"));
        };
        let s: String = factor.iter().map(|&(_, c)| c).collect();
        if first == 'x' {
            let (idx, exp) = match s[1..].split_once('^') {
                Some((i, e)) => (i, e),
                None => (&s[1..], "1"),
            };
            let idx: u32 = idx.parse().map_err(|_| Error::parse(pos + 1, "bad variable index"))?;
            if idx == 0 {
                return Err(Error::parse(pos + 1, "variable indices start at 1"));
            }
            let exp: u32 = exp.parse().map_err(|_| Error::parse(pos, "bad exponent"))?;
            pairs.push((idx, exp));
        } else {
            coeff *= parse_rational(&s).map_err(|_| Error::parse(pos, "bad coefficient"))?;
        }
    }
    Ok((coeff, Monomial::from_pairs(pairs)))
}

/// Parse an exact rational `a` or `a/b`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|_| Error::parse(0, "bad numerator"))?;
    let d: BigInt = d.trim().parse().map_err(|_| Error::parse(n.to_string().len() + 1, "bad denominator"))?;
    if d.is_zero() {
        return Err(Error::parse(0, "zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// Parse `(a,b,...)` into a rational point.
pub fn parse_point(text: &str) -> Result<PointQ> {
    let inner = text
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::parse(0, "point must be parenthesised"))?;
    if inner.trim().is_empty() {
        return Ok(PointQ(Vec::new()));
    }
    inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(PointQ)
}

/// Outcome of searching a point list for a common zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealCover {
    /// First listed point where every polynomial vanishes.
    Witness { index: usize, point: PointQ },
    NoWitness,
}

/// Find the first point where `g = Σ f_i²` vanishes. Over `Q` that forces
/// every `f_i` to vanish, which is re-checked before the witness is returned.
pub fn formally_real_cover(polys: &[SparsePoly], points: &[PointQ]) -> Result<RealCover> {
    let mut g = SparsePoly::zero(CoeffField::Rational);
    for f in polys {
        g = g.add(&f.mul(f)?)?;
    }
    for (index, point) in points.iter().enumerate() {
        for f in polys {
            // Surface dimension problems even when g happens to be small.
            f.eval(point)?;
        }
        if g.eval(point)?.is_zero() {
            for f in polys {
                if !f.eval(point)?.is_zero() {
                    return Err(Error::Validation(format!("sum of squares vanishes at {point} but {f} does not")));
                }
            }
            return Ok(RealCover::Witness { index, point: point.clone() });
        }
    }
    Ok(RealCover::NoWitness)
}

/// The ideal `I_ω = (x_1, x_2, ...)` together with the chain
/// `P_1 ⊂ P_2 ⊂ ...` that covers it without containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterexampleBundle {
    pub field: CoeffField,
}

impl CounterexampleBundle {
    pub fn new(field: CoeffField) -> Self {
        CounterexampleBundle { field }
    }

    pub fn family(&self) -> PrimeFamily {
        PrimeFamily::chain(self.field, ChainIndexSet::AllNaturals, false)
    }

    /// The element `x_{n+1}`, which lies in `I_ω` but not in `P_n`.
    pub fn witness(&self, n: u32) -> SparsePoly {
        SparsePoly::var(self.field, n + 1)
    }

    pub fn verify_witness(&self, n: u32) -> bool {
        let w = self.witness(n);
        w.in_iomega() && !w.in_pn(n)
    }

    /// Least `n` with `f ∈ P_n`, for `f ∈ I_ω`.
    pub fn containing_index(&self, f: &SparsePoly) -> Option<u32> {
        f.containing_index()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> SparsePoly {
        parse_poly(CoeffField::Rational, s).unwrap()
    }

    #[test]
    fn parses_grammar() {
        let f = q("3*x1^2*x2 + 1/2*x5");
        assert_eq!(f.to_string(), "3*x1^2*x2 + 1/2*x5");
        assert_eq!(q("x1*x1"), q("x1^2"));
        assert_eq!(q("-x3 + 2"), q("2 - x3"));
        assert_eq!(q("2*3*x1"), q("6*x1"));
    }

    #[test]
    fn parse_errors_have_positions() {
        assert!(matches!(parse_poly(CoeffField::Rational, "x0"), Err(Error::Parse { pos: 1, .. })));
        assert!(matches!(parse_poly(CoeffField::Rational, "x1 + "), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(CoeffField::Rational, "x1 ** x2"), Err(Error::Parse { .. })));
        assert!(parse_poly(CoeffField::Prime(3), "1/3*x1").is_err());
    }

    #[test]
    fn fp_coefficients_reduce() {
        let f = parse_poly(CoeffField::Prime(5), "7*x1 + 1/2").unwrap();
        assert_eq!(f.to_string(), "2*x1 + 3");
        assert!(parse_poly(CoeffField::Prime(2), "2*x1").unwrap().is_zero());
    }

    #[test]
    fn display_round_trips() {
        for s in ["x1", "-x1^3*x7 + 5/3", "0", "x2 - x1"] {
            let f = q(s);
            assert_eq!(q(&f.to_string()), f);
        }
    }

    #[test]
    fn cover_with_common_zero() {
        let pts = [PointQ::from_ints(&[0, 0]), PointQ::from_ints(&[1, 1])];
        let r = formally_real_cover(&[q("x1"), q("x2")], &pts).unwrap();
        assert_eq!(r, RealCover::Witness { index: 0, point: pts[0].clone() });
    }

    #[test]
    fn cover_picks_first_zero() {
        let pts = [PointQ::from_ints(&[0, 0]), PointQ::from_ints(&[1, 0])];
        let r = formally_real_cover(&[q("x1 - 1"), q("x2")], &pts).unwrap();
        assert_eq!(r, RealCover::Witness { index: 1, point: pts[1].clone() });
    }

    #[test]
    fn cover_without_rational_zero() {
        let pts: Vec<PointQ> = (-3..=3).map(|a| PointQ::from_ints(&[a, 1])).collect();
        assert_eq!(formally_real_cover(&[q("x1^2 + 1")], &pts).unwrap(), RealCover::NoWitness);
    }

    #[test]
    fn cover_dimension_mismatch() {
        let pts = [PointQ::from_ints(&[0])];
        assert!(matches!(formally_real_cover(&[q("x2")], &pts), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn bundle_witnesses() {
        let b = CounterexampleBundle::new(CoeffField::Rational);
        assert_eq!(b.witness(1), q("x2"));
        assert!((1..=20).all(|n| b.verify_witness(n)));
        assert_eq!(b.containing_index(&q("x3 + x5")), Some(5));
        assert_eq!(b.containing_index(&q("0")), Some(1));
    }

    #[test]
    fn rational_and_point_parsing() {
        assert_eq!(parse_rational("-3/6").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert!(parse_rational("1/0").is_err());
        assert_eq!(parse_point("(1, 3/2)").unwrap().dim(), 2);
        assert!(parse_point("1,2").is_err());
    }
}
