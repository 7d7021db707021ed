//! Dense univariate polynomials over a prime field `F_p`.
//!
//! Coefficients are stored little-endian and trimmed, so the zero
//! polynomial has no coefficients. The canonical order compares degree
//! first and then coefficients from the leading one down, which for monic
//! polynomials of equal degree is the order of `Σ c_i p^i`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Highest degree for which irreducibility is decided.
pub const IRREDUCIBILITY_DEGREE_CAP: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

impl FpPoly {
    pub fn new(p: u32, coeffs: impl IntoIterator<Item = i64>) -> Self {
        let m = p as i64;
        let coeffs = coeffs.into_iter().map(|c| c.rem_euclid(m) as u32).collect();
        let mut out = FpPoly { p, coeffs };
        out.trim();
        out
    }

    pub fn zero(p: u32) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn one(p: u32) -> Self {
        FpPoly::constant(p, 1)
    }

    pub fn constant(p: u32, c: i64) -> Self {
        FpPoly::new(p, [c])
    }

    /// The monomial `x^k`.
    pub fn monomial(p: u32, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        FpPoly { p, coeffs }
    }

    pub fn x(p: u32) -> Self {
        FpPoly::monomial(p, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn inv_mod(&self, a: u32) -> u32 {
        crate::arith::pow_mod(a as u64, self.p as u64 - 2, self.p as u64) as u32
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| ((self.coeff(i) as u64 + other.coeff(i) as u64) % self.p as u64) as u32)
            .collect();
        let mut out = FpPoly { p: self.p, coeffs };
        out.trim();
        out
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| (self.p - c) % self.p).collect();
        FpPoly { p: self.p, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| ((a as u64 * c as u64) % self.p as u64) as u32)
            .collect();
        let mut out = FpPoly { p: self.p, coeffs };
        out.trim();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        let mut out = FpPoly { p: self.p, coeffs: acc.into_iter().map(|c| c as u32).collect() };
        out.trim();
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = FpPoly::one(self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let p = self.p as u64;
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = self.inv_mod(divisor.leading()) as u64;
        let mut rem: Vec<u64> = self.coeffs.iter().map(|&c| c as u64).collect();
        if rem.len() <= dd {
            return (FpPoly::zero(self.p), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd] * lead_inv % p;
            quot[k] = c;
            if c != 0 {
                for (j, &b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = (rem[k + j] + (p - c) * b as u64 % p) % p;
                }
            }
        }
        rem.truncate(dd);
        let mut q = FpPoly { p: self.p, coeffs: quot.into_iter().map(|c| c as u32).collect() };
        let mut r = FpPoly { p: self.p, coeffs: rem.into_iter().map(|c| c as u32).collect() };
        q.trim();
        r.trim();
        (q, r)
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Scale to a monic polynomial; zero stays zero.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.inv_mod(self.leading()))
    }

    /// Inverse of the leading coefficient; `None` for zero.
    pub fn leading_inverse(&self) -> Option<u32> {
        (!self.is_zero()).then(|| self.inv_mod(self.leading()))
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s·self + t·other` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let p = self.p;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (FpPoly::one(p), FpPoly::zero(p));
        let (mut t0, mut t1) = (FpPoly::zero(p), FpPoly::one(p));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading_inverse() {
            Some(inv) => (r0.scale(inv), s0.scale(inv), t0.scale(inv)),
            None => (r0, s0, t0),
        }
    }

    pub fn eval(&self, x: u32) -> u32 {
        let p = self.p as u64;
        self.coeffs.iter().rev().fold(0u64, |acc, &c| (acc * x as u64 + c as u64) % p) as u32
    }

    /// Index of this polynomial among all polynomials of degree `< n`,
    /// namely `Σ c_i p^i`.
    pub fn to_index(&self) -> usize {
        self.coeffs.iter().rev().fold(0usize, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn from_index(p: u32, mut idx: usize) -> Self {
        let mut coeffs = Vec::new();
        while idx > 0 {
            coeffs.push((idx % p as usize) as u32);
            idx /= p as usize;
        }
        FpPoly { p, coeffs }
    }

    /// All monic polynomials of the given degree in canonical order.
    pub fn monics_of_degree(p: u32, degree: usize) -> impl Iterator<Item = FpPoly> {
        let count = (p as usize).pow(degree as u32);
        (0..count).map(move |i| {
            let mut f = FpPoly::from_index(p, i);
            f.coeffs.resize(degree + 1, 0);
            f.coeffs[degree] = 1;
            f
        })
    }

    /// Irreducibility by trial division over monic polynomials of degree
    /// at most half the degree.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None | Some(0) => return Ok(false),
            Some(d) => d,
        };
        if d > IRREDUCIBILITY_DEGREE_CAP {
            return Err(Error::Unsupported(format!(
                "irreducibility test above degree {IRREDUCIBILITY_DEGREE_CAP}"
            )));
        }
        for k in 1..=d / 2 {
            for g in FpPoly::monics_of_degree(self.p, k) {
                if g.divides(self) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Monic irreducibles in canonical order (degree ascending).
    pub fn irreducibles(p: u32) -> impl Iterator<Item = FpPoly> {
        (1..).flat_map(move |d| {
            FpPoly::monics_of_degree(p, d).filter(|f| f.is_irreducible().unwrap_or(false))
        })
    }

    /// Factorization of a nonzero polynomial into monic irreducibles with
    /// multiplicities, plus the leading coefficient.
    pub fn factor(&self) -> Result<(u32, Vec<(FpPoly, u32)>)> {
        if self.is_zero() {
            return Err(Error::Unsupported("factorization of 0".into()));
        }
        let lead = self.leading();
        let mut rest = self.monic();
        let mut out = Vec::new();
        let mut k = 1;
        while rest.degree().unwrap_or(0) >= 2 * k {
            for g in FpPoly::monics_of_degree(self.p, k) {
                let mut e = 0;
                while g.divides(&rest) {
                    rest = rest.div_rem(&g).0;
                    e += 1;
                }
                if e > 0 {
                    out.push((g, e));
                }
            }
            k += 1;
        }
        if rest.degree().unwrap_or(0) >= 1 {
            out.push((rest, 1));
            out.sort_by(|a, b| a.0.cmp(&b.0));
        }
        Ok((lead, out))
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}*{mono}"),
            });
        }
        parts.join("+")
    }

    /// Parse `c*v^k + ...` in the variable `var`; coefficients reduced mod p.
    pub fn parse(p: u32, var: char, text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::parse(0, "empty polynomial"));
        }
        let bytes = s.as_bytes();
        let mut acc = FpPoly::zero(p);
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                if bytes[i] == b'-' {
                    sign = -1;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                i += 1;
            }
            let term = &s[start..i];
            if term.is_empty() {
                return Err(Error::parse(start, "empty term"));
            }
            let mut coeff = sign;
            let mut exp = 0usize;
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(Error::parse(start, "empty factor"));
                }
                if factor.starts_with(var) {
                    let rest = &factor[var.len_utf8()..];
                    let e = if rest.is_empty() {
                        1
                    } else if let Some(num) = rest.strip_prefix('^') {
                        num.parse::<usize>()
                            .map_err(|_| Error::parse(start, format!("bad exponent in {factor:?}")))?
                    } else {
                        return Err(Error::parse(start, format!("bad factor {factor:?}")));
                    };
                    exp += e;
                } else {
                    let c = factor
                        .parse::<i64>()
                        .map_err(|_| Error::parse(start, format!("bad coefficient {factor:?}")))?;
                    coeff = coeff * c.rem_euclid(p as i64);
                }
            }
            let term_poly = FpPoly::monomial(p, exp).scale(coeff.rem_euclid(p as i64) as u32);
            acc = acc.add(&term_poly);
        }
        Ok(acc)
    }
}

impl PartialOrd for FpPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FpPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.p
            .cmp(&other.p)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("x"))
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.fmt_var("x"), self.p)
    }
}
