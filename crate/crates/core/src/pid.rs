//! The principal ideal domains `Z` and `F_p[x]`, with canonical associates
//! so that ideals and primes have unique normal forms.

use std::fmt;

use num_integer::Integer;

use crate::arith;
use crate::error::{Error, Result};
use crate::fpoly::{FpPoly, IRREDUCIBILITY_DEGREE_CAP};

/// Polynomials above this degree are not factored.
pub const POLY_FACTOR_DEGREE_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pid {
    Integers,
    Poly(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PidElem {
    Int(i128),
    Poly(FpPoly),
}

/// A nonzero prime element in canonical form: a positive prime integer or a
/// monic irreducible polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PidPrime(PidElem);

impl PidPrime {
    pub fn generator(&self) -> &PidElem {
        &self.0
    }
}

impl fmt::Display for PidPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for PidElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PidElem::Int(n) => write!(f, "{n}"),
            PidElem::Poly(p) => f.write_str(&p.fmt_var("x")),
        }
    }
}

impl fmt::Display for Pid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pid::Integers => f.write_str("Z"),
            Pid::Poly(p) => write!(f, "F{p}[x]"),
        }
    }
}

impl Pid {
    pub fn poly(p: u32) -> Result<Pid> {
        if !arith::is_prime(p as u64) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Pid::Poly(p))
    }

    pub fn zero(&self) -> PidElem {
        match self {
            Pid::Integers => PidElem::Int(0),
            Pid::Poly(p) => PidElem::Poly(FpPoly::zero(*p)),
        }
    }

    pub fn one(&self) -> PidElem {
        match self {
            Pid::Integers => PidElem::Int(1),
            Pid::Poly(p) => PidElem::Poly(FpPoly::one(*p)),
        }
    }

    pub fn int(&self, n: i64) -> PidElem {
        match self {
            Pid::Integers => PidElem::Int(n as i128),
            Pid::Poly(p) => PidElem::Poly(FpPoly::constant(*p, n)),
        }
    }

    fn check(&self, a: &PidElem) -> Result<()> {
        match (self, a) {
            (Pid::Integers, PidElem::Int(_)) => Ok(()),
            (Pid::Poly(p), PidElem::Poly(f)) if f.modulus() == *p => Ok(()),
            _ => Err(Error::UniverseMismatch(format!("{a} is not an element of {self}"))),
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<PidElem> {
        match self {
            Pid::Integers => text
                .trim()
                .parse::<i128>()
                .map(PidElem::Int)
                .map_err(|_| Error::parse(0, format!("bad integer {text:?}"))),
            Pid::Poly(p) => FpPoly::parse(*p, 'x', text).map(PidElem::Poly),
        }
    }

    pub fn is_zero(&self, a: &PidElem) -> bool {
        match a {
            PidElem::Int(n) => *n == 0,
            PidElem::Poly(f) => f.is_zero(),
        }
    }

    pub fn is_unit(&self, a: &PidElem) -> bool {
        match a {
            PidElem::Int(n) => n.abs() == 1,
            PidElem::Poly(f) => f.degree() == Some(0),
        }
    }

    /// The canonical associate: absolute value, or the monic multiple.
    pub fn normalize(&self, a: &PidElem) -> PidElem {
        match a {
            PidElem::Int(n) => PidElem::Int(n.abs()),
            PidElem::Poly(f) if f.is_zero() => a.clone(),
            PidElem::Poly(f) => PidElem::Poly(f.monic()),
        }
    }

    pub fn add(&self, a: &PidElem, b: &PidElem) -> Result<PidElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (PidElem::Int(x), PidElem::Int(y)) => PidElem::Int(
                x.checked_add(*y).ok_or_else(|| Error::Unsupported("integer overflow".into()))?,
            ),
            (PidElem::Poly(f), PidElem::Poly(g)) => PidElem::Poly(f.add(g)),
            _ => unreachable!("checked above"),
        })
    }

    pub fn mul(&self, a: &PidElem, b: &PidElem) -> Result<PidElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (PidElem::Int(x), PidElem::Int(y)) => PidElem::Int(
                x.checked_mul(*y).ok_or_else(|| Error::Unsupported("integer overflow".into()))?,
            ),
            (PidElem::Poly(f), PidElem::Poly(g)) => PidElem::Poly(f.mul(g)),
            _ => unreachable!("checked above"),
        })
    }

    /// Does `d` divide `a`? Zero divides only zero.
    pub fn divides(&self, d: &PidElem, a: &PidElem) -> bool {
        match (d, a) {
            (PidElem::Int(0), PidElem::Int(a)) => *a == 0,
            (PidElem::Int(d), PidElem::Int(a)) => a % d == 0,
            (PidElem::Poly(d), PidElem::Poly(a)) if d.is_zero() => a.is_zero(),
            (PidElem::Poly(d), PidElem::Poly(a)) => d.divides(a),
            _ => false,
        }
    }

    /// Canonical generator of the ideal `(a, b)`.
    pub fn gcd(&self, a: &PidElem, b: &PidElem) -> Result<PidElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (PidElem::Int(x), PidElem::Int(y)) => PidElem::Int(x.gcd(y)),
            (PidElem::Poly(f), PidElem::Poly(g)) => PidElem::Poly(f.gcd(g)),
            _ => unreachable!("checked above"),
        })
    }

    /// Canonical generator of the ideal generated by `gens`; `(0)` if empty.
    pub fn gcd_all(&self, gens: &[PidElem]) -> Result<PidElem> {
        gens.iter().try_fold(self.zero(), |g, a| self.gcd(&g, a))
    }

    /// Validate and normalise a prime element.
    pub fn prime(&self, a: &PidElem) -> Result<PidPrime> {
        self.check(a)?;
        let a = self.normalize(a);
        let ok = match &a {
            PidElem::Int(n) => *n > 0 && *n <= u64::MAX as i128 && arith::is_prime(*n as u64),
            PidElem::Poly(f) => {
                if f.degree().is_some_and(|d| d > IRREDUCIBILITY_DEGREE_CAP) {
                    return Err(Error::Unsupported(format!(
                        "irreducibility test above degree {IRREDUCIBILITY_DEGREE_CAP}"
                    )));
                }
                f.is_irreducible()?
            }
        };
        if ok {
            Ok(PidPrime(a))
        } else {
            Err(Error::NotPrime(a.to_string()))
        }
    }

    pub fn parse_prime(&self, text: &str) -> Result<PidPrime> {
        self.prime(&self.parse_elem(text)?)
    }

    /// Factorization of a nonzero element into canonical primes, ascending.
    pub fn factor(&self, a: &PidElem) -> Result<Vec<(PidPrime, u32)>> {
        self.check(a)?;
        match a {
            PidElem::Int(n) => {
                if *n == 0 {
                    return Err(Error::Unsupported("factorization of 0".into()));
                }
                Ok(arith::factorize(n.unsigned_abs())?
                    .into_iter()
                    .map(|(p, e)| (PidPrime(PidElem::Int(p as i128)), e))
                    .collect())
            }
            PidElem::Poly(f) => {
                if f.degree().is_some_and(|d| d > POLY_FACTOR_DEGREE_CAP) {
                    return Err(Error::Unsupported(format!("factoring above degree {POLY_FACTOR_DEGREE_CAP}")));
                }
                let (_, fs) = f.factor()?;
                Ok(fs.into_iter().map(|(g, e)| (PidPrime(PidElem::Poly(g)), e)).collect())
            }
        }
    }

    /// The remainder of `a` modulo a nonzero `m`: least nonnegative for
    /// integers, degree below `deg m` for polynomials.
    pub fn rem(&self, a: &PidElem, m: &PidElem) -> Result<PidElem> {
        self.check(a)?;
        self.check(m)?;
        if self.is_zero(m) {
            return Err(Error::ZeroIdeal);
        }
        Ok(match (a, m) {
            (PidElem::Int(x), PidElem::Int(n)) => PidElem::Int(x.rem_euclid(n.abs())),
            (PidElem::Poly(f), PidElem::Poly(g)) => PidElem::Poly(f.rem(g)),
            _ => unreachable!("checked above"),
        })
    }

    /// The `idx`-th element of the search order: `0, 1, 2, ...` in `Z`,
    /// base-`p` coefficient digits in `F_p[x]`.
    pub fn nth_elem(&self, idx: usize) -> PidElem {
        match self {
            Pid::Integers => PidElem::Int(idx as i128),
            Pid::Poly(p) => PidElem::Poly(FpPoly::from_index(*p, idx)),
        }
    }

    /// Does the prime contain `a`, i.e. does it divide `a`?
    pub fn prime_contains(&self, p: &PidPrime, a: &PidElem) -> bool {
        self.divides(&p.0, a)
    }

    /// Extended gcd `(g, s, t)` with `s·a + t·b = g` and `g` canonical.
    pub fn bezout(&self, a: &PidElem, b: &PidElem) -> Result<(PidElem, PidElem, PidElem)> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (PidElem::Int(x), PidElem::Int(y)) => {
                let e = x.extended_gcd(y);
                let (g, s, t) = if e.gcd < 0 { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
                (PidElem::Int(g), PidElem::Int(s), PidElem::Int(t))
            }
            (PidElem::Poly(f), PidElem::Poly(g)) => {
                let (d, s, t) = f.ext_gcd(g);
                (PidElem::Poly(d), PidElem::Poly(s), PidElem::Poly(t))
            }
            _ => unreachable!("checked above"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_gcd_is_canonical() {
        let z = Pid::Integers;
        let g = z.gcd_all(&[z.int(-12), z.int(18)]).unwrap();
        assert_eq!(g, PidElem::Int(6));
        assert_eq!(z.gcd_all(&[]).unwrap(), PidElem::Int(0));
    }

    #[test]
    fn poly_gcd_is_monic() {
        let f3 = Pid::poly(3).unwrap();
        let a = f3.parse_elem("2*x^2 + 2").unwrap();
        let b = f3.parse_elem("x^2 - 1").unwrap();
        // x^2+1 is irreducible mod 3 and coprime to (x-1)(x+1).
        assert!(f3.is_unit(&f3.gcd(&a, &b).unwrap()));
        let c = f3.parse_elem("2*x^2 + 2*x").unwrap();
        assert_eq!(f3.gcd(&c, &b).unwrap().to_string(), "x+1");
    }

    #[test]
    fn primes_are_validated() {
        let z = Pid::Integers;
        assert_eq!(z.parse_prime("-7").unwrap().to_string(), "7");
        assert!(matches!(z.parse_prime("9"), Err(Error::NotPrime(_))));
        let f2 = Pid::poly(2).unwrap();
        assert!(f2.parse_prime("x^2 + x + 1").is_ok());
        assert!(f2.parse_prime("x^2 + 1").is_err());
        assert!(Pid::poly(4).is_err());
    }

    #[test]
    fn factorization() {
        let z = Pid::Integers;
        let fs = z.factor(&z.int(-360)).unwrap();
        let shown: Vec<String> = fs.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        assert_eq!(shown, ["2^3", "3^2", "5^1"]);
        let f2 = Pid::poly(2).unwrap();
        let fs = f2.factor(&f2.parse_elem("x^3 + 1").unwrap()).unwrap();
        let shown: Vec<String> = fs.iter().map(|(p, e)| format!("{p}^{e}")).collect();
        assert_eq!(shown, ["x+1^1", "x^2+x+1^1"]);
    }

    #[test]
    fn bezout_identity() {
        let z = Pid::Integers;
        let (g, s, t) = z.bezout(&z.int(4), &z.int(6)).unwrap();
        let (PidElem::Int(s), PidElem::Int(t)) = (s, t) else { panic!() };
        assert_eq!(g, PidElem::Int(2));
        assert_eq!(4 * s + 6 * t, 2);
    }

    #[test]
    fn universe_mismatch() {
        let z = Pid::Integers;
        let f2 = Pid::poly(2).unwrap();
        assert!(matches!(z.gcd(&z.int(2), &f2.one()), Err(Error::UniverseMismatch(_))));
    }
}
