use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_integer::Integer;

use super::order::{QuadElem, QuadOrder};
use crate::arith;
use crate::error::{Error, Result};

/// A nonzero ideal in Hermite normal form `aZ + (b + cω)Z` with `a, c > 0`,
/// `c | a`, `c | b` and `0 ≤ b < a`. Equality compares the normal form only.
#[derive(Debug, Clone)]
pub struct QuadIdeal {
    order: QuadOrder,
    a: i128,
    b: i128,
    c: i128,
    generators: Vec<QuadElem>,
}

impl QuadIdeal {
    /// The ideal generated by `gens` as a module over the order.
    pub fn from_generators(order: QuadOrder, gens: &[QuadElem]) -> Result<QuadIdeal> {
        let w = order.omega();
        // Running Z-basis: (a, 0) and (b, c).
        let (mut a, mut b, mut c) = (0i128, 0i128, 0i128);
        for &g in gens {
            for x in [g, order.mul(g, w)] {
                if x.v == 0 {
                    a = a.gcd(&x.u);
                } else if c == 0 {
                    (b, c) = (x.u, x.v);
                } else {
                    let e = c.extended_gcd(&x.v);
                    let g = e.gcd;
                    let nb = e.x * b + e.y * x.u;
                    let rest = (x.v / g) * b - (c / g) * x.u;
                    a = a.gcd(&rest);
                    (b, c) = (nb, g);
                }
            }
        }
        if a == 0 || c == 0 {
            return Err(Error::ZeroIdeal);
        }
        if c < 0 {
            (b, c) = (-b, -c);
        }
        let b = b.mod_floor(&a);
        let out = QuadIdeal { order, a, b, c, generators: gens.to_vec() };
        debug_assert!(a % c == 0 && b % c == 0, "not an ideal lattice: {out}");
        Ok(out)
    }

    pub fn principal(order: QuadOrder, x: QuadElem) -> Result<QuadIdeal> {
        QuadIdeal::from_generators(order, &[x])
    }

    pub fn unit(order: QuadOrder) -> QuadIdeal {
        QuadIdeal::principal(order, QuadElem::int(1)).expect("1 is nonzero")
    }

    /// Parse `(g1,g2,...)` with generators in `u+v*w` form.
    pub fn parse(order: QuadOrder, text: &str) -> Result<QuadIdeal> {
        let inner = text
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, "ideal must be parenthesised"))?;
        let gens = inner.split(',').map(|g| order.parse_elem(g)).collect::<Result<Vec<_>>>()?;
        QuadIdeal::from_generators(order, &gens)
    }

    pub fn order(&self) -> QuadOrder {
        self.order
    }

    /// Normal form `(a, b, c)`.
    pub fn hnf(&self) -> (i128, i128, i128) {
        (self.a, self.b, self.c)
    }

    /// The two-element basis `a, b + cω`.
    pub fn basis(&self) -> [QuadElem; 2] {
        [QuadElem::int(self.a), QuadElem::new(self.b, self.c)]
    }

    pub fn generators(&self) -> &[QuadElem] {
        &self.generators
    }

    pub fn norm(&self) -> i128 {
        self.a * self.c
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.norm() == 1
    }

    pub fn contains(&self, x: QuadElem) -> bool {
        if x.v % self.c != 0 {
            return false;
        }
        (x.u - (x.v / self.c) * self.b) % self.a == 0
    }

    pub fn is_subset(&self, other: &QuadIdeal) -> bool {
        self.order == other.order && self.basis().iter().all(|&x| other.contains(x))
    }

    fn same_order(&self, other: &QuadIdeal) -> Result<()> {
        if self.order == other.order {
            Ok(())
        } else {
            Err(Error::UniverseMismatch(format!("{} vs {}", self.order, other.order)))
        }
    }

    pub fn multiply(&self, other: &QuadIdeal) -> Result<QuadIdeal> {
        self.same_order(other)?;
        let o = self.order;
        let mut gens = Vec::with_capacity(4);
        for x in self.basis() {
            for y in other.basis() {
                gens.push(o.mul(x, y));
            }
        }
        let mut out = QuadIdeal::from_generators(o, &gens)?;
        out.generators = out.basis().to_vec();
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> QuadIdeal {
        let mut acc = QuadIdeal::unit(self.order);
        for _ in 0..n {
            acc = acc.multiply(self).expect("same order");
        }
        acc
    }

    pub fn conjugate(&self) -> QuadIdeal {
        let gens: Vec<QuadElem> = self.basis().iter().map(|&x| self.order.conj(x)).collect();
        QuadIdeal::from_generators(self.order, &gens).expect("conjugate of a nonzero ideal")
    }

    /// A generator when the ideal is principal. The search runs over the
    /// finitely many elements whose norm equals the ideal norm.
    pub fn principal_generator(&self) -> Option<QuadElem> {
        let o = self.order;
        let alpha = o.elements_of_norm(self.norm()).into_iter().find(|&x| self.contains(x))?;
        let alpha = o.canonical_associate(alpha);
        // Same norm and (α) ⊆ I force equality; confirm it anyway.
        let p = QuadIdeal::principal(o, alpha).ok()?;
        (p == *self).then_some(alpha)
    }

    /// Prime ideal factorization, ascending.
    pub fn factor(&self) -> Result<Vec<(QuadIdeal, u32)>> {
        let mut out = Vec::new();
        for (p, _) in arith::factorize(self.norm() as u128)? {
            for prime in factor_prime(self.order, p)?.primes {
                let mut e = 0;
                let mut power = prime.clone();
                while self.is_subset(&power) {
                    e += 1;
                    power = power.multiply(&prime)?;
                }
                if e > 0 {
                    out.push((prime, e));
                }
            }
        }
        out.sort();
        let product = out
            .iter()
            .fold(QuadIdeal::unit(self.order), |acc, (p, e)| acc.multiply(&p.pow(*e)).expect("same order"));
        if product != *self {
            return Err(Error::Validation(format!("factorization of {self} does not multiply back")));
        }
        Ok(out)
    }

    pub fn is_prime(&self) -> bool {
        if self.is_unit_ideal() {
            return false;
        }
        let p = self.a;
        p >= 2
            && p <= u64::MAX as i128
            && arith::is_prime(p as u64)
            && factor_prime(self.order, p as u64).is_ok_and(|f| f.primes.contains(self))
    }
}

impl PartialEq for QuadIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.hnf() == other.hnf()
    }
}

impl Eq for QuadIdeal {}

impl Hash for QuadIdeal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.hnf().hash(state);
    }
}

impl Ord for QuadIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then(self.norm().cmp(&other.norm()))
            .then(self.hnf().cmp(&other.hnf()))
    }
}

impl PartialOrd for QuadIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit_ideal() {
            return f.write_str("(1)");
        }
        write!(f, "({}, {})", self.a, QuadElem::new(self.b, self.c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

impl fmt::Display for Splitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Splitting::Split => "split",
            Splitting::Inert => "inert",
            Splitting::Ramified => "ramified",
        })
    }
}

/// The primes above a rational prime `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeAboveP {
    pub p: u64,
    pub splitting: Splitting,
    pub primes: Vec<QuadIdeal>,
}

/// Decompose `(p)`. The splitting type follows the Kronecker symbol and the
/// result is checked to multiply back to `(p)`.
pub fn factor_prime(order: QuadOrder, p: u64) -> Result<PrimeAboveP> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let (t, n) = order.min_poly();
    let pi = p as i128;
    let roots: Vec<i128> = if p == 2 {
        (0..2).filter(|&r| (r * r - t * r + n).rem_euclid(2) == 0).collect()
    } else {
        let disc = (t * t - 4 * n).rem_euclid(pi) as u64;
        match arith::sqrt_mod(disc, p) {
            None => Vec::new(),
            Some(s) => {
                let inv2 = arith::mod_inv(2, pi).expect("p is odd");
                let mut rs: Vec<i128> =
                    [t + s as i128, t - s as i128].iter().map(|r| (r * inv2).rem_euclid(pi)).collect();
                rs.sort();
                rs.dedup();
                rs
            }
        }
    };
    let splitting = match (arith::kronecker_prime(order.discriminant(), p), roots.len()) {
        (1, 2) => Splitting::Split,
        (0, 1) => Splitting::Ramified,
        (-1, 0) => Splitting::Inert,
        (k, r) => return Err(Error::Validation(format!("Kronecker symbol {k} but {r} roots mod {p}"))),
    };
    let mut primes = match splitting {
        Splitting::Inert => vec![QuadIdeal::principal(order, QuadElem::int(pi))?],
        _ => roots
            .iter()
            .map(|&r| QuadIdeal::from_generators(order, &[QuadElem::int(pi), QuadElem::new(-r, 1)]))
            .collect::<Result<Vec<_>>>()?,
    };
    primes.sort();
    let product = match splitting {
        Splitting::Split => primes[0].multiply(&primes[1])?,
        Splitting::Ramified => primes[0].pow(2),
        Splitting::Inert => primes[0].clone(),
    };
    if product != QuadIdeal::principal(order, QuadElem::int(pi))? {
        return Err(Error::Validation(format!("primes above {p} do not multiply to ({p})")));
    }
    Ok(PrimeAboveP { p, splitting, primes })
}

/// A reduced primitive positive definite form `ax² + bxy + cy²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// Reduced primitive forms of discriminant `disc < 0`, ascending.
pub fn reduced_forms(disc: i64) -> Vec<ReducedForm> {
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -disc {
        for b in (-a + 1)..=a {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            if a.gcd(&b).gcd(&c) == 1 {
                out.push(ReducedForm { a, b, c });
            }
        }
        a += 1;
    }
    out
}

pub fn class_number(order: QuadOrder) -> u32 {
    reduced_forms(order.discriminant()).len() as u32
}

/// `x` with `√(x) = P`, taken as a generator of `P^h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithCertificate {
    pub class_number: u32,
    pub x: QuadElem,
    /// `(x) = P^exponent`, the exponent being the class number.
    pub exponent: u32,
}

pub fn smith_x(prime: &QuadIdeal) -> Result<SmithCertificate> {
    if !prime.is_prime() {
        return Err(Error::NotPrime(prime.to_string()));
    }
    let h = class_number(prime.order());
    let x = prime
        .pow(h)
        .principal_generator()
        .ok_or_else(|| Error::Validation(format!("{prime}^{h} is not principal")))?;
    let support = QuadIdeal::principal(prime.order(), x)?.factor()?;
    if support != [(prime.clone(), h)] {
        return Err(Error::Validation(format!("(x) = ({x}) is not supported exactly on {prime}")));
    }
    Ok(SmithCertificate { class_number: h, x, exponent: h })
}

/// Least `n ≥ 1` with `I^n` principal, and its generator `a`, checked to
/// satisfy `a ∈ I` and `I^n ⊆ (a)`.
pub fn qr_power(ideal: &QuadIdeal) -> Result<(u32, QuadElem)> {
    let o = ideal.order();
    let h = class_number(o);
    let mut power = QuadIdeal::unit(o);
    for n in 1..=h {
        power = power.multiply(ideal)?;
        if let Some(a) = power.principal_generator() {
            let principal = QuadIdeal::principal(o, a)?;
            if !ideal.contains(a) || !power.is_subset(&principal) {
                return Err(Error::Validation(format!("({a}) does not certify {ideal}^{n}")));
            }
            return Ok((n, a));
        }
    }
    Err(Error::Validation(format!("no power of {ideal} up to the class number {h} is principal")))
}
