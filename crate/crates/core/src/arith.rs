//! Small-integer number theory used across the crate: primality and
//! factorization by trial division, modular inverses and CRT.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Trial division is refused above this bound.
pub const TRIAL_DIVISION_CAP: u128 = 1_000_000_000;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization `n = ∏ p^e` with primes ascending. `n` must be
/// nonzero and at most [`TRIAL_DIVISION_CAP`].
pub fn factorize(n: u128) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::Unsupported("factorization of 0".into()));
    }
    if n > TRIAL_DIVISION_CAP {
        return Err(Error::NormTooLarge(n));
    }
    let mut n = n as u64;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

/// Distinct prime divisors of a nonzero integer (sign ignored).
pub fn prime_divisors(n: i128) -> Result<Vec<u64>> {
    Ok(factorize(n.unsigned_abs())?.into_iter().map(|(p, _)| p).collect())
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: i128, m: i128) -> Option<i128> {
    let e = a.mod_floor(&m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.mod_floor(&m))
}

/// Solve `x ≡ r_i (mod m_i)` for pairwise coprime moduli; returns the least
/// nonnegative solution and the product of the moduli.
pub fn crt(residues: &[(i128, i128)]) -> Option<(i128, i128)> {
    let mut x = 0i128;
    let mut modulus = 1i128;
    for &(r, m) in residues {
        let inv = mod_inv(modulus, m)?;
        let t = ((r - x).mod_floor(&m) * inv).mod_floor(&m);
        x += modulus * t;
        modulus *= m;
        x = x.mod_floor(&modulus);
    }
    Some((x, modulus))
}

pub fn is_squarefree(n: i64) -> bool {
    let n = n.unsigned_abs();
    if n == 0 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % (d * d) == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Kronecker symbol `(disc | p)` for a prime `p`.
pub fn kronecker_prime(disc: i64, p: u64) -> i32 {
    if p == 2 {
        if disc.rem_euclid(2) == 0 {
            return 0;
        }
        return match disc.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        };
    }
    let a = disc.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

pub fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u128 % m as u128;
    let mut b = base as u128 % m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m as u128;
        }
        b = b * b % m as u128;
        exp >>= 1;
    }
    acc as u64
}

/// A square root of `a` modulo an odd prime `p` (Tonelli-Shanks), or
/// `None` when `a` is a non-residue.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 || p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mul = |x: u64, y: u64| (x as u128 * y as u128 % p as u128) as u64;
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p).find(|&z| pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let (mut m, mut c, mut t, mut r) = (s, pow_mod(z, q, p), pow_mod(a, q, p), pow_mod(a, (q + 1) / 2, p));
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul(t2, t2);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    Some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn factorization_and_cap() {
        assert_eq!(factorize(360).unwrap(), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(1).unwrap(), vec![]);
        assert!(matches!(factorize(TRIAL_DIVISION_CAP + 1), Err(Error::NormTooLarge(_))));
    }

    #[test]
    fn crt_solves() {
        let (x, m) = crt(&[(1, 3), (0, 7)]).unwrap();
        assert_eq!((x, m), (7, 21));
        assert!(crt(&[(1, 4), (0, 6)]).is_none());
    }

    #[test]
    fn kronecker_values() {
        // -20 mod 8 = 4, even: ramified at 2.
        assert_eq!(kronecker_prime(-20, 2), 0);
        assert_eq!(kronecker_prime(-20, 11), -1);
        assert_eq!(kronecker_prime(-4, 5), 1);
        assert_eq!(kronecker_prime(-7, 2), 1);
        assert_eq!(kronecker_prime(-3, 2), -1);
    }

    #[test]
    fn square_roots() {
        for p in [3u64, 5, 7, 13, 17, 41, 1_000_000_007] {
            for a in 0..60u64 {
                match sqrt_mod(a, p) {
                    Some(r) => assert_eq!(pow_mod(r, 2, p), a % p),
                    None => assert_eq!(kronecker_prime(a as i64, p), -1),
                }
            }
        }
    }
}
