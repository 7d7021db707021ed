use super::field::{Field, FieldElem, RatFunc};
use super::place::{Place, Value};
use crate::error::{Error, Result};
use crate::fpoly::FpPoly;

/// Required sign of a valuation at one place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// `v(x) ≥ 0`: `x` lies in the valuation ring.
    NonNegative,
    /// `v(x) < 0`.
    Negative,
}

impl Sign {
    pub fn holds(self, v: Value) -> bool {
        match self {
            Sign::NonNegative => v.is_nonnegative(),
            Sign::Negative => !v.is_nonnegative(),
        }
    }
}

fn check_field(field: Field, place: &Place) -> Result<()> {
    if place.field() == field {
        Ok(())
    } else {
        Err(Error::FieldMismatch(format!("place {place} is not a place of {field}")))
    }
}

/// An element with the prescribed sign at each listed place.
///
/// Over `Q` this is `1/∏p` over the negative places. Over `F_p(t)` it is
/// `1/N`, `N` the product of the negative finite places, unless `∞` must
/// be negative; then it is `q^m/N` with `q` the smallest monic irreducible
/// that is not a negative place and `m·deg q > deg N`.
pub fn element_with_signs(field: Field, constraints: &[(Place, Sign)]) -> Result<FieldElem> {
    for (i, (p, _)) in constraints.iter().enumerate() {
        check_field(field, p)?;
        if constraints[..i].iter().any(|(q, _)| q == p) {
            return Err(Error::DuplicatePlace(p.to_string()));
        }
    }
    let negative: Vec<&Place> = constraints.iter().filter(|(_, s)| *s == Sign::Negative).map(|(p, _)| p).collect();
    let out = match field {
        Field::Rationals => {
            let mut den = FieldElem::one(field);
            for p in &negative {
                den = den.mul(&p.uniformizer())?;
            }
            den.inv()?
        }
        Field::Function(p) => {
            let finite: Vec<&FpPoly> = negative
                .iter()
                .filter_map(|pl| match pl {
                    Place::Poly(pi) => Some(pi),
                    _ => None,
                })
                .collect();
            let n = finite.iter().fold(FpPoly::one(p), |acc, pi| acc.mul(pi));
            let num = if negative.iter().any(|pl| matches!(pl, Place::Infinity(_))) {
                let q = FpPoly::irreducibles(p)
                    .find(|f| !finite.contains(&f))
                    .expect("there are infinitely many monic irreducibles");
                let deg_q = q.degree().expect("irreducibles are nonconstant");
                let m = n.degree().unwrap_or(0) / deg_q + 1;
                q.pow(m as u32)
            } else {
                FpPoly::one(p)
            };
            FieldElem::Function(RatFunc::new(num, n)?)
        }
    };
    for (place, sign) in constraints {
        if !sign.holds(place.value(&out)?) {
            return Err(Error::Validation(format!("{out} misses the sign at {place}")));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubsetVerdict {
    pub holds: bool,
    /// For distinct places, an element in the first ring but not the second.
    pub witness: Option<FieldElem>,
}

/// Is the valuation ring of `v` inside that of `w`? For distinct discrete
/// places never, and a separating element is returned.
pub fn ring_subset(v: &Place, w: &Place) -> Result<SubsetVerdict> {
    if v.field() != w.field() {
        return Err(Error::FieldMismatch(format!("{v} and {w}")));
    }
    if v == w {
        return Ok(SubsetVerdict { holds: true, witness: None });
    }
    let x = element_with_signs(v.field(), &[(v.clone(), Sign::NonNegative), (w.clone(), Sign::Negative)])?;
    Ok(SubsetVerdict { holds: false, witness: Some(x) })
}

/// `V[x]`: `V` itself, or the whole field.
#[derive(Debug, Clone, PartialEq)]
pub enum Adjoined {
    Same,
    WholeField(WholeField),
}

/// `V[x] = K` because `v(x) < 0`: every `y` is `c·x^j` with `c ∈ V`.
#[derive(Debug, Clone, PartialEq)]
pub struct WholeField {
    place: Place,
    x: FieldElem,
    /// `−v(x)`, positive.
    depth: i64,
}

impl WholeField {
    /// `(c, j)` with `y = c·x^j`, `v(c) ≥ 0` and `j` least.
    pub fn represent(&self, y: &FieldElem) -> Result<(FieldElem, u32)> {
        let j = match self.place.value(y)? {
            Value::Infinity => 0,
            Value::Finite(v) if v >= 0 => 0,
            Value::Finite(v) => (-v + self.depth - 1) / self.depth,
        };
        let c = y.div(&self.x.pow(j)?)?;
        if !self.place.contains(&c)? || c.mul(&self.x.pow(j)?)? != *y {
            return Err(Error::Validation(format!("{y} is not represented by ({c}, {j})")));
        }
        Ok((c, j as u32))
    }
}

pub fn adjoin(v: &Place, x: &FieldElem) -> Result<Adjoined> {
    match v.value(x)? {
        Value::Finite(n) if n < 0 => Ok(Adjoined::WholeField(WholeField { place: v.clone(), x: x.clone(), depth: -n })),
        _ => Ok(Adjoined::Same),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AvoidanceOutcome {
    /// The ring equals `others[index]`.
    Covered(usize),
    /// `w ∈ V` outside every other ring.
    Escape(FieldElem),
}

/// The valuation avoidance lemma for discrete places: `V ⊆ ⋃V_i` only when
/// `V` is one of the `V_i`.
pub fn avoidance_check(v: &Place, others: &[Place]) -> Result<AvoidanceOutcome> {
    if others.is_empty() {
        return Err(Error::Unsupported("avoidance needs at least one other place".into()));
    }
    for (i, w) in others.iter().enumerate() {
        check_field(v.field(), w)?;
        if w == v {
            return Ok(AvoidanceOutcome::Covered(i));
        }
    }
    let mut table = vec![(v.clone(), Sign::NonNegative)];
    table.extend(dedup(others).into_iter().map(|w| (w, Sign::Negative)));
    Ok(AvoidanceOutcome::Escape(element_with_signs(v.field(), &table)?))
}

fn dedup(places: &[Place]) -> Vec<Place> {
    let mut out: Vec<Place> = Vec::with_capacity(places.len());
    for p in places {
        if !out.contains(p) {
            out.push(p.clone());
        }
    }
    out
}

/// Which branch of the construction produced the element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DavisCase {
    /// `x` lies in no `V_i`.
    NoneContain,
    /// `x` lies in every `V_i`.
    AllContain,
    /// `x` lies in some but not all.
    Mixed { containing: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValuationDavis {
    pub v: FieldElem,
    pub v_plus_x: FieldElem,
    pub case: DavisCase,
    pub adjoined_whole_field: bool,
}

/// `v ∈ V` with `v + x` outside every `V_i`, given `V[x] ⊄ ⋃V_i`.
pub fn davis_valuation(v_place: &Place, others: &[Place], x: &FieldElem) -> Result<ValuationDavis> {
    let field = v_place.field();
    for w in others {
        check_field(field, w)?;
    }
    if x.field() != field {
        return Err(Error::FieldMismatch(format!("{x} is not in {field}")));
    }
    let others = dedup(others);
    let whole = match adjoin(v_place, x)? {
        Adjoined::WholeField(_) => true,
        Adjoined::Same => {
            if let AvoidanceOutcome::Covered(index) = avoidance_check(v_place, &others)? {
                return Err(Error::HypothesisViolated { index, place: others[index].to_string() });
            }
            false
        }
    };
    // Stable split: places containing x first.
    let mut containing = Vec::new();
    let mut missing = Vec::new();
    for w in &others {
        if w.contains(x)? {
            containing.push(w.clone());
        } else {
            missing.push(w.clone());
        }
    }
    let k = containing.len();
    let (v, case) = if k == 0 {
        (FieldElem::zero(field), DavisCase::NoneContain)
    } else if k == others.len() {
        match avoidance_check(v_place, &others)? {
            AvoidanceOutcome::Escape(w) => (w, DavisCase::AllContain),
            AvoidanceOutcome::Covered(index) => {
                return Err(Error::HypothesisViolated { index, place: others[index].to_string() })
            }
        }
    } else {
        let mut table = vec![(v_place.clone(), Sign::NonNegative)];
        for w in &missing {
            if w != v_place {
                table.push((w.clone(), Sign::NonNegative));
            }
        }
        for w in &containing {
            if w == v_place {
                let index = others.iter().position(|o| o == w).unwrap_or(0);
                return Err(Error::HypothesisViolated { index, place: w.to_string() });
            }
            table.push((w.clone(), Sign::Negative));
        }
        (element_with_signs(field, &table)?, DavisCase::Mixed { containing: k })
    };
    let v_plus_x = v.add(x)?;
    if !v_place.contains(&v)? {
        return Err(Error::Validation(format!("{v} is not in the ring of {v_place}")));
    }
    for w in &others {
        if w.contains(&v_plus_x)? {
            return Err(Error::Validation(format!("{v_plus_x} lies in the ring of {w}")));
        }
    }
    Ok(ValuationDavis { v, v_plus_x, case, adjoined_whole_field: whole })
}
