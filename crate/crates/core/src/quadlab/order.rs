use std::fmt;

use crate::arith;
use crate::error::{Error, Result};

/// The maximal order of `Q(√d)` for a negative squarefree `d`, with
/// `ω = √d` when `d ≡ 2, 3 (mod 4)` and `ω = (1 + √d)/2` when `d ≡ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadOrder {
    d: i64,
}

/// An element `u + vω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadElem {
    pub u: i128,
    pub v: i128,
}

impl QuadElem {
    pub const fn new(u: i128, v: i128) -> Self {
        QuadElem { u, v }
    }

    pub const fn int(u: i128) -> Self {
        QuadElem { u, v: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.u == 0 && self.v == 0
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, v) = (self.u, self.v);
        let w = match v.abs() {
            0 => String::new(),
            1 => "w".to_string(),
            n => format!("{n}*w"),
        };
        match (u, v) {
            (_, 0) => write!(f, "{u}"),
            (0, v) if v < 0 => write!(f, "-{w}"),
            (0, _) => f.write_str(&w),
            (u, v) if v < 0 => write!(f, "{u}-{w}"),
            (u, _) => write!(f, "{u}+{w}"),
        }
    }
}

impl QuadOrder {
    pub fn new(d: i64) -> Result<QuadOrder> {
        if d > 0 {
            return Err(Error::RealQuadratic(d));
        }
        if d == 0 || !arith::is_squarefree(d) {
            return Err(Error::Unsupported(format!("d = {d} is not a squarefree nonzero integer")));
        }
        Ok(QuadOrder { d })
    }

    /// Parse `quad:d` or a bare integer.
    pub fn parse(text: &str) -> Result<QuadOrder> {
        let body = text.trim();
        let body = body.strip_prefix("quad:").unwrap_or(body);
        let d: i64 = body.trim().parse().map_err(|_| Error::parse(0, format!("bad order {text:?}")))?;
        QuadOrder::new(d)
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn discriminant(&self) -> i64 {
        if self.d.rem_euclid(4) == 1 {
            self.d
        } else {
            4 * self.d
        }
    }

    /// `ω` satisfies `ω² = tω − n`; returns `(t, n)`.
    pub fn min_poly(&self) -> (i128, i128) {
        if self.d.rem_euclid(4) == 1 {
            (1, (1 - self.d as i128) / 4)
        } else {
            (0, -(self.d as i128))
        }
    }

    pub fn omega(&self) -> QuadElem {
        QuadElem::new(0, 1)
    }

    pub fn add(&self, a: QuadElem, b: QuadElem) -> QuadElem {
        QuadElem::new(a.u + b.u, a.v + b.v)
    }

    pub fn neg(&self, a: QuadElem) -> QuadElem {
        QuadElem::new(-a.u, -a.v)
    }

    pub fn mul(&self, a: QuadElem, b: QuadElem) -> QuadElem {
        let (t, n) = self.min_poly();
        let vv = a.v * b.v;
        QuadElem::new(a.u * b.u - n * vv, a.u * b.v + a.v * b.u + t * vv)
    }

    pub fn scale(&self, k: i128, a: QuadElem) -> QuadElem {
        QuadElem::new(k * a.u, k * a.v)
    }

    pub fn conj(&self, a: QuadElem) -> QuadElem {
        let (t, _) = self.min_poly();
        QuadElem::new(a.u + t * a.v, -a.v)
    }

    /// Norm `u² + tuv + nv²`, always nonnegative here.
    pub fn norm(&self, a: QuadElem) -> i128 {
        let (t, n) = self.min_poly();
        a.u * a.u + t * a.u * a.v + n * a.v * a.v
    }

    /// Units of the order: `±1`, plus `±i` for `d = −1` and the sixth
    /// roots of unity for `d = −3`.
    pub fn units(&self) -> Vec<QuadElem> {
        let mut out = vec![QuadElem::int(1), QuadElem::int(-1)];
        match self.d {
            -1 => out.extend([QuadElem::new(0, 1), QuadElem::new(0, -1)]),
            -3 => out.extend([
                QuadElem::new(0, 1),
                QuadElem::new(0, -1),
                QuadElem::new(-1, 1),
                QuadElem::new(1, -1),
            ]),
            _ => {}
        }
        out
    }

    /// The associate of `a` with the largest `(u, v)`.
    pub fn canonical_associate(&self, a: QuadElem) -> QuadElem {
        self.units().into_iter().map(|e| self.mul(e, a)).max().expect("units are nonempty")
    }

    /// All elements of norm `n`, ascending.
    pub fn elements_of_norm(&self, n: i128) -> Vec<QuadElem> {
        // 4·N(u+vω) = (2u + tv)² + |Δ|v².
        let (t, _) = self.min_poly();
        let delta = -(self.discriminant() as i128);
        let mut out = Vec::new();
        let mut v = 0i128;
        while delta * v * v <= 4 * n {
            for v in if v == 0 { vec![0] } else { vec![v, -v] } {
                let rest = 4 * n - delta * v * v;
                let s = isqrt(rest);
                if s * s != rest {
                    continue;
                }
                for s in if s == 0 { vec![0] } else { vec![s, -s] } {
                    let two_u = s - t * v;
                    if two_u % 2 == 0 {
                        out.push(QuadElem::new(two_u / 2, v));
                    }
                }
            }
            v += 1;
        }
        out.sort();
        out
    }

    /// Parse `u+v*w` forms such as `2`, `1+w`, `3-2*w`, `-w`.
    pub fn parse_elem(&self, text: &str) -> Result<QuadElem> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse(0, "empty element"));
        }
        let mut acc = QuadElem::int(0);
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 1..=bytes.len() {
            if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
                let term = &s[start..i];
                acc = self.add(acc, parse_term(term).map_err(|_| Error::parse(start, format!("bad term {term:?}")))?);
                start = i;
            }
        }
        Ok(acc)
    }
}

fn parse_term(term: &str) -> std::result::Result<QuadElem, ()> {
    let (sign, body) = match term.as_bytes().first() {
        Some(b'-') => (-1, &term[1..]),
        Some(b'+') => (1, &term[1..]),
        _ => (1, term),
    };
    let (coeff, has_w) = match body.strip_suffix('w') {
        Some("") => ("1", true),
        Some(c) => (c.strip_suffix('*').ok_or(())?, true),
        None => (body, false),
    };
    let k: i128 = coeff.parse().map_err(|_| ())?;
    Ok(if has_w { QuadElem::new(0, sign * k) } else { QuadElem::int(sign * k) })
}

impl fmt::Display for QuadOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quad:{}", self.d)
    }
}

pub(crate) fn isqrt(n: i128) -> i128 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminants() {
        assert_eq!(QuadOrder::new(-1).unwrap().discriminant(), -4);
        assert_eq!(QuadOrder::new(-5).unwrap().discriminant(), -20);
        assert_eq!(QuadOrder::new(-3).unwrap().discriminant(), -3);
        assert!(matches!(QuadOrder::new(5), Err(Error::RealQuadratic(5))));
        assert!(QuadOrder::new(-4).is_err());
    }

    #[test]
    fn gaussian_arithmetic() {
        let o = QuadOrder::new(-1).unwrap();
        let i = o.omega();
        assert_eq!(o.mul(i, i), QuadElem::int(-1));
        assert_eq!(o.norm(QuadElem::new(1, 1)), 2);
    }

    #[test]
    fn eisenstein_arithmetic() {
        let o = QuadOrder::new(-3).unwrap();
        let w = o.omega();
        // ω² = ω − 1 and ω is a sixth root of unity.
        assert_eq!(o.mul(w, w), QuadElem::new(-1, 1));
        assert_eq!(o.norm(w), 1);
        assert_eq!(o.units().len(), 6);
        assert!(o.units().iter().all(|&e| o.norm(e) == 1));
    }

    #[test]
    fn norm_equation() {
        let o = QuadOrder::new(-5).unwrap();
        assert!(o.elements_of_norm(2).is_empty());
        assert_eq!(o.elements_of_norm(9).len(), 6);
        let g = QuadOrder::new(-1).unwrap();
        assert_eq!(g.elements_of_norm(5).len(), 8);
        assert!(g.elements_of_norm(5).iter().all(|&a| g.norm(a) == 5));
    }

    #[test]
    fn element_text() {
        let o = QuadOrder::new(-5).unwrap();
        for (s, e) in [("2", (2, 0)), ("1+w", (1, 1)), ("3-2*w", (3, -2)), ("-w", (0, -1)), ("w", (0, 1))] {
            let a = o.parse_elem(s).unwrap();
            assert_eq!((a.u, a.v), e);
            assert_eq!(a.to_string(), s);
        }
        assert!(o.parse_elem("2+*w").is_err());
    }

    #[test]
    fn canonical_associates() {
        let g = QuadOrder::new(-1).unwrap();
        assert_eq!(g.canonical_associate(QuadElem::new(-1, 1)), QuadElem::new(1, 1));
        let o = QuadOrder::new(-5).unwrap();
        assert_eq!(o.canonical_associate(QuadElem::new(-2, 1)), QuadElem::new(2, -1));
    }
}
