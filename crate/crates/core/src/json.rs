//! JSON forms of the library's values.
//!
//! Rationals are `{"num": "...", "den": "..."}` with decimal strings, field
//! elements are nested coefficient arrays (one nesting level per tower level),
//! and every top-level document carries a `"schema"` tag.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::catalog::GroupDesc;
use crate::classify::{TwistMember, TwistReport};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldTower, Nested};
use crate::linalg::{Matrix3, ProjMap, ProjPoint};
use crate::quadalg::maps::{Atom, MapWord};
use crate::quadalg::pair::{GeometricPair, Parametrization};
use crate::quadalg::RelationSpace;

pub const TOWER_SCHEMA: &str = "twistalg.tower/1";
pub const RELATIONS_SCHEMA: &str = "twistalg.relations/1";
pub const PAIR_SCHEMA: &str = "twistalg.pair/1";
pub const REPORT_SCHEMA: &str = "twistalg.report/1";

fn bad(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn rational_to_json(q: &BigRational) -> Value {
    json!({"num": q.numer().to_string(), "den": q.denom().to_string()})
}

pub fn rational_from_json(v: &Value) -> Result<BigRational> {
    let field = |k: &str| -> Result<BigInt> {
        v.get(k)
            .and_then(Value::as_str)
            .ok_or_else(|| bad(format!("rational needs string field '{k}'")))?
            .parse()
            .map_err(|_| bad(format!("'{k}' is not an integer")))
    };
    let den = field("den")?;
    if den == BigInt::from(0) {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(field("num")?, den))
}

fn nested_to_json(n: &Nested) -> Value {
    match n {
        Nested::Rat(q) => rational_to_json(q),
        Nested::List(v) => Value::Array(v.iter().map(nested_to_json).collect()),
    }
}

fn nested_from_json(v: &Value) -> Result<Nested> {
    match v {
        Value::Array(items) => Ok(Nested::List(items.iter().map(nested_from_json).collect::<Result<_>>()?)),
        _ => Ok(Nested::Rat(rational_from_json(v)?)),
    }
}

pub fn element_to_json(e: &FieldElement) -> Value {
    nested_to_json(&e.nested())
}

pub fn element_from_json(tower: &FieldTower, v: &Value) -> Result<FieldElement> {
    FieldElement::from_nested(tower, &nested_from_json(v)?)
}

/// The tower as `[{name, minpoly}]`, each coefficient an element of the
/// tower below it.
pub fn tower_to_json(t: &FieldTower) -> Value {
    let mut sub = FieldTower::rationals();
    let mut levels = Vec::new();
    for k in 0..t.num_levels() {
        let coeffs: Vec<FieldElement> = t
            .level_minpoly(k)
            .iter()
            .map(|c| {
                let mut r = c.to_rationals();
                r.truncate(sub.degree());
                FieldElement::from_rationals(&sub, &r)
            })
            .collect();
        levels.push(json!({
            "name": t.level_name(k),
            "minpoly": coeffs.iter().map(element_to_json).collect::<Vec<_>>(),
        }));
        sub = sub.extend(t.level_name(k), &coeffs).expect("levels of a valid tower");
    }
    Value::Array(levels)
}

/// Accepts the array form or a document `{"schema", "tower": [...]}`.
pub fn tower_from_json(v: &Value) -> Result<FieldTower> {
    let levels = match v {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("tower")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("tower document needs a 'tower' array"))?,
        _ => return Err(bad("tower must be an array")),
    };
    let mut t = FieldTower::rationals();
    for lvl in levels {
        let name = lvl
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("tower level needs a 'name'"))?;
        let coeffs = lvl
            .get("minpoly")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("tower level needs a 'minpoly' array"))?
            .iter()
            .map(|c| element_from_json(&t, c).or_else(|_| scalar_from_json(&t, c)))
            .collect::<Result<Vec<_>>>()?;
        t = t.extend(name, &coeffs)?;
    }
    Ok(t)
}

/// Plain integers and expression strings are accepted wherever a field
/// element is read from user input.
fn scalar_from_json(t: &FieldTower, v: &Value) -> Result<FieldElement> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|k| t.int(k))
            .ok_or_else(|| bad(format!("non-integer number {n}"))),
        Value::String(s) => FieldElement::parse(t, s),
        _ => Err(bad("expected a field element")),
    }
}

pub fn tower_document(t: &FieldTower) -> Value {
    json!({"schema": TOWER_SCHEMA, "tower": tower_to_json(t)})
}

pub fn point_to_json(p: &ProjPoint) -> Value {
    Value::Array(p.coords().iter().map(element_to_json).collect())
}

pub fn point_from_json(t: &FieldTower, v: &Value) -> Result<ProjPoint> {
    let a = v.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("point needs 3 coordinates"))?;
    let c = a.iter().map(|e| element_from_json(t, e)).collect::<Result<Vec<_>>>()?;
    ProjPoint::new([c[0].clone(), c[1].clone(), c[2].clone()])
}

pub fn matrix_to_json(m: &Matrix3) -> Value {
    Value::Array(
        m.m.iter()
            .map(|row| Value::Array(row.iter().map(element_to_json).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(t: &FieldTower, v: &Value) -> Result<Matrix3> {
    let rows = v.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("matrix needs 3 rows"))?;
    let mut out = Vec::with_capacity(3);
    for r in rows {
        let r = r.as_array().filter(|a| a.len() == 3).ok_or_else(|| bad("matrix row needs 3 entries"))?;
        let e = r
            .iter()
            .map(|x| element_from_json(t, x).or_else(|_| scalar_from_json(t, x)))
            .collect::<Result<Vec<_>>>()?;
        out.push([e[0].clone(), e[1].clone(), e[2].clone()]);
    }
    Matrix3::new([out[0].clone(), out[1].clone(), out[2].clone()])
}

pub fn map_to_json(m: &ProjMap) -> Value {
    matrix_to_json(m.matrix())
}

pub fn relations_to_json(r: &RelationSpace) -> Value {
    json!({
        "schema": RELATIONS_SCHEMA,
        "tower": tower_to_json(r.tower()),
        "relations": r.relation_strings(),
        "matrices": r.basis().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

/// Reads `matrices` if present, else the `relations` strings.
pub fn relations_from_json(v: &Value) -> Result<RelationSpace> {
    let t = match v.get("tower") {
        Some(tv) => tower_from_json(tv)?,
        None => FieldTower::rationals(),
    };
    if let Some(ms) = v.get("matrices").and_then(Value::as_array) {
        let mats = ms.iter().map(|m| matrix_from_json(&t, m)).collect::<Result<Vec<_>>>()?;
        if mats.len() != 3 {
            return Err(bad("expected 3 relation matrices"));
        }
        return RelationSpace::new([mats[0].clone(), mats[1].clone(), mats[2].clone()]);
    }
    let rels = v
        .get("relations")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("relations document needs 'matrices' or 'relations'"))?
        .iter()
        .map(|s| s.as_str().ok_or_else(|| bad("relations must be strings")))
        .collect::<Result<Vec<_>>>()?;
    RelationSpace::parse(&t, &rels)
}

fn word_to_json(w: &MapWord) -> Value {
    Value::Array(
        w.atoms()
            .iter()
            .map(|a| match a {
                Atom::Linear(m) => json!({"linear": map_to_json(m)}),
                Atom::Piecewise { forward, .. } => json!({
                    "piecewise": forward.iter().map(|p| json!({
                        "domain": p.domain.to_string(),
                        "map": p.map.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>()
                }),
                Atom::Elliptic(e) => json!({
                    "elliptic": {"translate": point_to_json(e.translate().point()), "tau_power": e.power()}
                }),
            })
            .collect(),
    )
}

pub fn pair_to_json(pair: &GeometricPair) -> Value {
    let comps: Vec<Value> = pair
        .components
        .iter()
        .map(|c| {
            let mut o = Map::new();
            o.insert("kind".into(), json!(c.kind.name()));
            o.insert("form".into(), json!(c.form.to_string()));
            match &c.param {
                Parametrization::Rational(p) => {
                    o.insert("parametrization".into(), json!(p.iter().map(|f| f.to_string()).collect::<Vec<_>>()));
                }
                Parametrization::Samples(s) => {
                    o.insert("samples".into(), Value::Array(s.iter().map(point_to_json).collect()));
                }
            }
            if let Some(curve) = &c.curve {
                o.insert("lambda".into(), element_to_json(curve.lambda()));
            }
            Value::Object(o)
        })
        .collect();
    json!({
        "schema": PAIR_SCHEMA,
        "components": comps,
        "sigma": word_to_json(&pair.sigma),
    })
}

pub fn group_to_json(g: &GroupDesc, tower: &FieldTower) -> Value {
    let mut o = Map::new();
    match g {
        GroupDesc::Trivial => {
            o.insert("kind".into(), json!("Trivial"));
        }
        GroupDesc::FullPGL3 => {
            o.insert("kind".into(), json!("FullPGL3"));
        }
        GroupDesc::Family(f) => {
            o.insert("kind".into(), json!(f.name()));
            o.insert("shape".into(), json!(f.shape()));
        }
        GroupDesc::TranslationTorsion(_) => {
            o.insert("kind".into(), json!("TranslationTorsion"));
        }
        GroupDesc::FiniteCyclic { .. } => {
            o.insert("kind".into(), json!("FiniteCyclic"));
        }
        GroupDesc::Semidirect(n, h) => {
            o.insert("kind".into(), json!("Semidirect"));
            o.insert("normal".into(), group_to_json(n, tower));
            o.insert("acting".into(), group_to_json(h, tower));
        }
    }
    o.insert("text".into(), json!(g.to_string()));
    if let Some(n) = g.order(tower) {
        o.insert("order".into(), json!(n));
    }
    o.insert(
        "generators".into(),
        Value::Array(g.generators().iter().map(map_to_json).collect()),
    );
    Value::Object(o)
}

pub fn report_to_json(r: &TwistReport, certificates: bool) -> Value {
    let t = r.algebra.tower();
    let params: Map<String, Value> = r.algebra.params().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let family: Vec<Value> = r
        .twist_family
        .iter()
        .map(|m| match m {
            TwistMember::Pair { tau, pair } => json!({"tau": map_to_json(tau), "pair": pair_to_json(pair)}),
            TwistMember::Family { group } => json!({"family": group}),
        })
        .collect();
    let mut o = json!({
        "schema": REPORT_SCHEMA,
        "type": r.algebra.tag().name(),
        "params": params,
        "tower": tower_to_json(t),
        "z_group": group_to_json(&r.z_group, t),
        "m_group": group_to_json(&r.m_group, t),
        "n_group": group_to_json(&r.n_group, t),
        "sigma_order": r.sigma_order,
        "flags": {
            "z_equals_m": r.flags.z_equals_m,
            "m_equals_n": r.flags.m_equals_n,
            "twist_alg_equals_twist": r.flags.twist_alg_equals_twist,
            "exceptional": r.flags.exceptional,
        },
        "twist_family": family,
    });
    if certificates {
        o["certificates"] = Value::Array(
            r.certificates
                .iter()
                .map(|c| json!({"subject": c.subject, "check": c.check, "ok": c.ok}))
                .collect(),
        );
    }
    o
}

pub fn error_to_json(e: &Error) -> Value {
    json!({"error": e.tag(), "detail": e.to_string()})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_round_trip() {
        let t = FieldTower::rationals()
            .extend_rational("w", &[1, 1, 1])
            .unwrap()
            .extend_rational("c", &[-2, 0, 0, 1])
            .unwrap();
        let back = tower_from_json(&tower_to_json(&t)).unwrap();
        assert_eq!(back, t);
        let e = FieldElement::parse(&t, "1/3 - 5*w*c^2 + 7/2*c").unwrap();
        let j = element_to_json(&e);
        assert_eq!(element_from_json(&t, &j).unwrap(), e);
    }
}
