//! Class groups of imaginary quadratic fields by direct enumeration of
//! ideal classes, independent of reduced forms.

use avoidlab::quadlab::{QuadElem, QuadIdeal, QuadOrder};
use avoidlab::Result;

/// `(t, n)` with `ω² = tω − n`.
fn omega_relation(o: QuadOrder) -> (i128, i128) {
    let d = o.d() as i128;
    if d.rem_euclid(4) == 1 {
        (1, (1 - d) / 4)
    } else {
        (0, -d)
    }
}

/// `N(u + vω) = u² + tuv + nv²`.
pub fn norm(o: QuadOrder, x: QuadElem) -> i128 {
    let (t, n) = omega_relation(o);
    x.u * x.u + t * x.u * x.v + n * x.v * x.v
}

fn mul(o: QuadOrder, a: QuadElem, b: QuadElem) -> QuadElem {
    let (t, n) = omega_relation(o);
    let vv = a.v * b.v;
    QuadElem::new(a.u * b.u - n * vv, a.u * b.v + a.v * b.u + t * vv)
}

fn conj(o: QuadOrder, a: QuadElem) -> QuadElem {
    let (t, _) = omega_relation(o);
    QuadElem::new(a.u + t * a.v, -a.v)
}

/// Membership in the lattice `[a, b + cω]`.
pub fn in_lattice((a, b, c): (i128, i128, i128), x: QuadElem) -> bool {
    x.v % c == 0 && (x.u - b * (x.v / c)) % a == 0
}

pub fn contains(ideal: &QuadIdeal, x: QuadElem) -> bool {
    in_lattice(ideal.hnf(), x)
}

/// `x ∈ (g)`: `x·ḡ` is divisible by `N(g)` coordinatewise.
pub fn in_principal(o: QuadOrder, g: QuadElem, x: QuadElem) -> bool {
    let n = norm(o, g);
    let y = mul(o, x, conj(o, g));
    n != 0 && y.u % n == 0 && y.v % n == 0
}

/// `I ⊆ (g)`, via the lattice basis of `I`.
pub fn ideal_in_principal(ideal: &QuadIdeal, g: QuadElem) -> bool {
    ideal.basis().iter().all(|&b| in_principal(ideal.order(), g, b))
}

/// An element of norm `N(I)` inside `I`, i.e. a generator.
pub fn generator_by_search(ideal: &QuadIdeal) -> Option<QuadElem> {
    let o = ideal.order();
    let target = ideal.norm();
    let (t, n) = omega_relation(o);
    // 4N = (2u + tv)² + (4n − t²)v², so |v| is bounded by the second term.
    let disc = 4 * n - t * t;
    let mut v = 0i128;
    while disc * v * v <= 4 * target {
        for v in [v, -v] {
            let bound = (2.0 * (target as f64).sqrt()) as i128 + 2;
            for u in -bound - t.abs() * v.abs()..=bound + t.abs() * v.abs() {
                let x = QuadElem::new(u, v);
                if norm(o, x) == target && contains(ideal, x) {
                    return Some(x);
                }
            }
        }
        v += 1;
    }
    None
}

/// Every ideal of norm `N`: lattices `[a, b + cω]` with `ac = N`, `c | a`,
/// `c | b`, `0 ≤ b < a`, kept when closed under multiplication by `ω`.
pub fn ideals_of_norm(o: QuadOrder, norm_value: i128) -> Result<Vec<QuadIdeal>> {
    let omega = QuadElem::new(0, 1);
    let mut out = Vec::new();
    for c in 1..=norm_value {
        if norm_value % c != 0 {
            continue;
        }
        let a = norm_value / c;
        if a % c != 0 {
            continue;
        }
        for b in (0..a).step_by(c as usize) {
            let lattice = (a, b, c);
            let gens = [QuadElem::int(a), QuadElem::new(b, c)];
            if gens.iter().all(|&g| in_lattice(lattice, mul(o, omega, g))) {
                out.push(QuadIdeal::from_generators(o, &gens)?);
            }
        }
    }
    Ok(out)
}

/// Class number by grouping all ideals of norm `≤ ⌈√|Δ|⌉` (above the
/// Minkowski bound) under `I ~ J ⟺ I·J̄` principal.
pub fn class_number_by_enumeration(o: QuadOrder) -> Result<u32> {
    let bound = ((-o.discriminant()) as f64).sqrt().ceil() as i128;
    let mut reps: Vec<QuadIdeal> = Vec::new();
    for n in 1..=bound {
        for ideal in ideals_of_norm(o, n)? {
            let mut new_class = true;
            for r in &reps {
                if generator_by_search(&ideal.multiply(&r.conjugate())?).is_some() {
                    new_class = false;
                    break;
                }
            }
            if new_class {
                reps.push(ideal);
            }
        }
    }
    Ok(reps.len() as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_integers_have_trivial_class_group() {
        let o = QuadOrder::new(-1).unwrap();
        assert_eq!(class_number_by_enumeration(o).unwrap(), 1);
        assert_eq!(norm(o, QuadElem::new(1, 1)), 2);
    }

    #[test]
    fn two_is_not_principal_above_minus_five() {
        let o = QuadOrder::new(-5).unwrap();
        let p = QuadIdeal::parse(o, "(2,1+w)").unwrap();
        assert!(generator_by_search(&p).is_none());
        assert!(generator_by_search(&p.pow(2)).is_some());
    }
}
