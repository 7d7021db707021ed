//! Definition-level computations on a finite ring of order at most 64,
//! with subsets stored as bitmasks.

use avoidlab::finring::{Elem, FiniteRing, Ideal};

pub type Mask = u64;

/// Operation tables copied out of a ring; every predicate below is
/// evaluated straight from its definition on these tables.
pub struct Brute {
    n: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    zero: usize,
    one: usize,
}

fn bit(i: usize) -> Mask {
    1 << i
}

pub fn ones(m: Mask) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| m & bit(i) != 0)
}

impl Brute {
    pub fn new(ring: &FiniteRing) -> Brute {
        let n = ring.order();
        assert!(n <= 64, "bitmask oracle needs order at most 64");
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = ring.add(Elem(a as u32), Elem(b as u32)).idx();
                mul[a * n + b] = ring.mul(Elem(a as u32), Elem(b as u32)).idx();
            }
        }
        Brute { n, add, mul, zero: ring.zero().idx(), one: ring.one().idx() }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        (0..self.n).find(|&b| self.add(a, b) == self.zero).expect("additive inverse")
    }

    pub fn full(&self) -> Mask {
        if self.n == 64 {
            Mask::MAX
        } else {
            bit(self.n) - 1
        }
    }

    pub fn zero_mask(&self) -> Mask {
        bit(self.zero)
    }

    pub fn has(m: Mask, a: usize) -> bool {
        m & bit(a) != 0
    }

    /// The smallest ideal containing `seed`, by saturation under addition
    /// and multiplication by every ring element.
    pub fn closure(&self, seed: Mask) -> Mask {
        let mut m = seed | self.zero_mask();
        loop {
            let mut next = m;
            for a in ones(m) {
                for r in 0..self.n {
                    next |= bit(self.mul(r, a));
                }
                for b in ones(m) {
                    next |= bit(self.add(a, b));
                }
            }
            if next == m {
                return m;
            }
            m = next;
        }
    }

    /// Every ideal, found by adjoining one element at a time from `(0)`.
    pub fn ideals(&self) -> Vec<Mask> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![self.zero_mask()];
        while let Some(i) = stack.pop() {
            if !seen.insert(i) {
                continue;
            }
            for x in 0..self.n {
                if !Self::has(i, x) {
                    stack.push(self.closure(i | bit(x)));
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_proper(&self, i: Mask) -> bool {
        !Self::has(i, self.one)
    }

    /// Proper, and `ab ∈ I` forces `a ∈ I` or `b ∈ I`.
    pub fn is_prime(&self, i: Mask) -> bool {
        self.is_proper(i)
            && (0..self.n).all(|a| {
                Self::has(i, a) || (0..self.n).all(|b| Self::has(i, b) || !Self::has(i, self.mul(a, b)))
            })
    }

    pub fn primes(&self) -> Vec<Mask> {
        self.ideals().into_iter().filter(|&i| self.is_prime(i)).collect()
    }

    pub fn minimal_primes(&self) -> Vec<Mask> {
        let primes = self.primes();
        primes.iter().copied().filter(|&p| !primes.iter().any(|&q| q != p && q & p == q)).collect()
    }

    pub fn maximal_ideals(&self) -> Vec<Mask> {
        let proper: Vec<Mask> = self.ideals().into_iter().filter(|&i| self.is_proper(i)).collect();
        proper.iter().copied().filter(|&m| !proper.iter().any(|&j| j != m && j & m == m)).collect()
    }

    /// `{r : r·i = 0 for every i ∈ I}`.
    pub fn annihilator(&self, i: Mask) -> Mask {
        (0..self.n).filter(|&r| ones(i).all(|a| self.mul(r, a) == self.zero)).fold(0, |m, r| m | bit(r))
    }

    pub fn is_nilpotent(&self, a: usize) -> bool {
        let mut x = a;
        for _ in 0..=self.n {
            if x == self.zero {
                return true;
            }
            x = self.mul(x, a);
        }
        false
    }

    pub fn nilradical(&self) -> Mask {
        (0..self.n).filter(|&a| self.is_nilpotent(a)).fold(0, |m, a| m | bit(a))
    }

    /// Every `a` has some `x` with `a = a²x`.
    pub fn is_vnr(&self) -> bool {
        (0..self.n).all(|a| {
            let a2 = self.mul(a, a);
            (0..self.n).any(|x| self.mul(a2, x) == a)
        })
    }

    /// `{ra : r ∈ R}`.
    pub fn principal(&self, a: usize) -> Mask {
        (0..self.n).fold(0, |m, r| m | bit(self.mul(r, a)))
    }

    /// Every two-generated ideal `{ra + sb}` is principal. In a finite ring
    /// this is the same as every ideal being principal.
    pub fn is_bezout(&self) -> bool {
        let principals: std::collections::BTreeSet<Mask> = (0..self.n).map(|a| self.principal(a)).collect();
        for a in 0..self.n {
            for b in a + 1..self.n {
                let mut m = 0;
                for r in 0..self.n {
                    for s in 0..self.n {
                        m |= bit(self.add(self.mul(r, a), self.mul(s, b)));
                    }
                }
                if !principals.contains(&m) {
                    return false;
                }
            }
        }
        true
    }

    /// The monoid generated by `s`: `{1, s, s², ...}`.
    pub fn powers(&self, s: usize) -> Mask {
        let mut m = bit(self.one);
        let mut x = s;
        while !Self::has(m, x) {
            m |= bit(x);
            x = self.mul(x, s);
        }
        m
    }

    /// `{r : ∃u ∈ X, ur = 0}`.
    pub fn localization_kernel(&self, x: Mask) -> Mask {
        (0..self.n).filter(|&r| ones(x).any(|u| self.mul(u, r) == self.zero)).fold(0, |m, r| m | bit(r))
    }

    /// Number of classes of fractions `r/s`, `s ∈ X`, under
    /// `r/s = r'/s' ⟺ ∃u ∈ X, u(rs' − r's) = 0`.
    pub fn fraction_classes(&self, x: Mask) -> usize {
        let xs: Vec<usize> = ones(x).collect();
        let pairs: Vec<(usize, usize)> = (0..self.n).flat_map(|r| xs.iter().map(move |&s| (r, s))).collect();
        let related = |(r, s): (usize, usize), (r2, s2): (usize, usize)| {
            let diff = self.add(self.mul(r, s2), self.neg(self.mul(r2, s)));
            xs.iter().any(|&u| self.mul(u, diff) == self.zero)
        };
        let mut reps: Vec<(usize, usize)> = Vec::new();
        for &p in &pairs {
            if !reps.iter().any(|&q| related(p, q)) {
                reps.push(p);
            }
        }
        reps.len()
    }

    pub fn mask_of(ideal: &Ideal) -> Mask {
        ideal.elements().fold(0, |m, e| m | bit(e.idx()))
    }

    pub fn mask_of_elems(elems: impl IntoIterator<Item = Elem>) -> Mask {
        elems.into_iter().fold(0, |m, e| m | bit(e.idx()))
    }
}
