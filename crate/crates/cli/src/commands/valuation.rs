use avoidlab::valuation::{self as val, AvoidanceOutcome, DavisCase, Field, FieldElem, Place, Value};
use serde_json::Map;

use super::ensure;
use crate::{CliError, Certificate, Report};

fn field_for(place: &str, field: Option<&str>) -> Result<Field, CliError> {
    match field {
        Some(f) => Ok(Field::parse(f)?),
        None if place.trim().starts_with("p=") => Ok(Field::Rationals),
        None => Err(CliError::input(format!("--field is required for the place {place:?}"))),
    }
}

fn places(field: Field, list: &str) -> Result<Vec<Place>, CliError> {
    list.split(',').filter(|t| !t.trim().is_empty()).map(|t| Ok(Place::parse(field, t)?)).collect()
}

/// `{place: value}` for each place, in input order.
fn values(ps: &[&Place], x: &FieldElem) -> Result<Map<String, serde_json::Value>, CliError> {
    let mut m = Map::new();
    for p in ps {
        m.insert(p.to_string(), p.value(x)?.to_string().into());
    }
    Ok(m)
}

pub fn value(place: &str, field: Option<&str>, x: &str) -> Result<Report, CliError> {
    let field = field_for(place, field)?;
    let place = Place::parse(field, place)?;
    let x = FieldElem::parse(field, x)?;
    let v = place.value(&x)?;
    Ok(Report::new("valuation value")
        .input("field", field.to_string())
        .input("V", place.to_string())
        .input("x", x.to_string())
        .verdict(format!("v(x) = {v}"))
        .certificate(Certificate::new("value").with("value", v.to_string()).with("in_ring", v.is_nonnegative())))
}

pub fn avoid(place: &str, field: Option<&str>, others: &str) -> Result<Report, CliError> {
    let field = field_for(place, field)?;
    let v = Place::parse(field, place)?;
    let others = places(field, others)?;
    let report = Report::new("valuation avoid")
        .input("field", field.to_string())
        .input("V", v.to_string())
        .input("others", super::strings(&others));
    match val::avoidance_check(&v, &others)? {
        AvoidanceOutcome::Covered(i) => {
            ensure(others[i] == v, || format!("{} differs from {v}", others[i]))?;
            Ok(report
                .verdict(format!("covered by {}", others[i]))
                .certificate(Certificate::new("covered").with("index", i).with("place", others[i].to_string())))
        }
        AvoidanceOutcome::Escape(w) => {
            ensure(v.contains(&w)?, || format!("{w} is outside V"))?;
            for o in &others {
                ensure(!o.contains(&w)?, || format!("{w} lies in the ring of {o}"))?;
            }
            let all: Vec<&Place> = std::iter::once(&v).chain(&others).collect();
            Ok(report
                .verdict(format!("escape {w}"))
                .certificate(Certificate::new("escape").with("witness", w.to_string()).with("values", values(&all, &w)?)))
        }
    }
}

pub fn davis(place: &str, field: Option<&str>, others: &str, x: &str) -> Result<Report, CliError> {
    let field = field_for(place, field)?;
    let v = Place::parse(field, place)?;
    let others = places(field, others)?;
    let x = FieldElem::parse(field, x)?;
    let out = val::davis_valuation(&v, &others, &x)?;
    ensure(v.value(&out.v)? >= Value::Finite(0), || format!("v = {} is outside V", out.v))?;
    ensure(out.v.add(&x)? == out.v_plus_x, || "v + x".to_string())?;
    for o in &others {
        ensure(!o.contains(&out.v_plus_x)?, || format!("v + x lies in the ring of {o}"))?;
    }
    let (case, containing) = match out.case {
        DavisCase::NoneContain => ("none contain x", 0),
        DavisCase::AllContain => {
            let mut distinct: Vec<&Place> = Vec::new();
            for o in &others {
                if !distinct.contains(&o) {
                    distinct.push(o);
                }
            }
            ("all contain x", distinct.len())
        }
        DavisCase::Mixed { containing } => ("mixed", containing),
    };
    let rest: Vec<&Place> = others.iter().collect();
    Ok(Report::new("valuation davis")
        .input("field", field.to_string())
        .input("V", v.to_string())
        .input("others", super::strings(&others))
        .input("x", x.to_string())
        .verdict(format!("v = {}", out.v))
        .certificate(
            Certificate::new("davis-valuation")
                .with("v", out.v.to_string())
                .with("v_plus_x", out.v_plus_x.to_string())
                .with("case", case)
                .with("places_containing_x", containing)
                .with("adjoined_whole_field", out.adjoined_whole_field)
                .with("value_at_V", v.value(&out.v)?.to_string())
                .with("values_of_v_plus_x", values(&rest, &out.v_plus_x)?),
        ))
}
