use avoidlab::bigpoly::{formally_real_cover, CoeffField, Monomial, PointQ, RealCover, SparsePoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Context, Tally};
use crate::oracle::poly::{eval, first_common_zero};

const INSTANCES: usize = 200;
const DIM: usize = 3;

pub(super) fn run(ctx: &Context, t: &mut Tally) {
    let mut rng = ctx.rng(9);
    let mut with_zero = 0;
    for n in 0..INSTANCES {
        let hidden = random_point(&mut rng);
        let polys: Vec<SparsePoly> = (0..rng.gen_range(1..=3)).map(|_| random_poly(&mut rng, &hidden)).collect();
        let mut points: Vec<PointQ> = (0..rng.gen_range(1..=4)).map(|_| random_point(&mut rng)).collect();
        if rng.gen_bool(0.5) {
            let at = rng.gen_range(0..=points.len());
            points.insert(at, hidden);
        }
        let name = format!("instance {n}");
        let Some(sum) = t.ok(sum_of_squares(&polys), || name.clone()) else { continue };
        for pt in &points {
            let all_vanish = polys.iter().all(|f| eval(f, pt).is_zero());
            let lib_sum = sum.eval(pt);
            t.check(lib_sum.as_ref().is_ok_and(|s| s.is_zero() == all_vanish), || format!("{name}: sum of squares at {pt}"));
        }
        let expected = first_common_zero(&polys, &points);
        with_zero += expected.is_some() as usize;
        let Some(verdict) = t.ok(formally_real_cover(&polys, &points), || name.clone()) else { continue };
        let got = match verdict {
            RealCover::Witness { index, .. } => Some(index),
            RealCover::NoWitness => None,
        };
        t.check(got == expected, || format!("{name}: verdict {got:?}, direct evaluation {expected:?}"));
    }
    t.note(format!("{with_zero} of {INSTANCES} instances have a common zero"));
}

fn sum_of_squares(polys: &[SparsePoly]) -> avoidlab::Result<SparsePoly> {
    let mut g = SparsePoly::zero(CoeffField::Rational);
    for f in polys {
        g = g.add(&f.mul(f)?)?;
    }
    Ok(g)
}

fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-3..=3)), BigInt::from(rng.gen_range(1..=2)))
}

fn random_point(rng: &mut ChaCha8Rng) -> PointQ {
    PointQ((0..DIM).map(|_| small_rational(rng)).collect())
}

/// A random polynomial, half the time forced to vanish at `hidden` by a
/// factor `x_i − hidden_i`.
fn random_poly(rng: &mut ChaCha8Rng, hidden: &PointQ) -> SparsePoly {
    let terms: Vec<(Monomial, BigRational)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let pairs: Vec<(u32, u32)> = (1..=DIM as u32).map(|v| (v, rng.gen_range(0..=2))).filter(|&(_, e)| e > 0).collect();
            (Monomial::from_pairs(pairs), BigRational::from_integer(BigInt::from(rng.gen_range(-4..=4))))
        })
        .collect();
    let g = SparsePoly::from_terms(CoeffField::Rational, terms).expect("rational coefficients");
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(0..DIM);
        let linear = SparsePoly::from_terms(
            CoeffField::Rational,
            [(Monomial::var(i as u32 + 1), BigRational::from_integer(1.into())), (Monomial::one(), -hidden.0[i].clone())],
        )
        .expect("rational coefficients");
        g.mul(&linear).expect("same field")
    } else {
        g
    }
}
