//! JSON encodings of the library types. Integers are emitted as exact JSON
//! numbers of arbitrary size.

use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

use crate::compose::OrientedClassGroup;
use crate::cube::Cube;
use crate::error::{Error, Result};
use crate::forms::{Form, FormClass};
use crate::lattice::{GrossVector, KleinPair, Plane};
use crate::mat2::Mat2;
use crate::seifert::RealizablePair;

pub fn int(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse::<Number>().expect("decimal integer"))
}

pub fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .to_string()
            .parse()
            .map_err(|_| Error::Json(format!("{n} is not an integer"))),
        other => Err(Error::Json(format!("expected an integer, got {other}"))),
    }
}

fn array(v: &Value, len: usize) -> Result<&Vec<Value>> {
    match v {
        Value::Array(items) if items.len() == len => Ok(items),
        other => Err(Error::Json(format!("expected an array of length {len}, got {other}"))),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Json(format!("missing field \"{key}\"")))
}

fn ints<const N: usize>(v: &Value) -> Result<[BigInt; N]> {
    let items = array(v, N)?;
    let parsed = items.iter().map(parse_int).collect::<Result<Vec<_>>>()?;
    Ok(parsed.try_into().expect("length checked"))
}

pub fn form_to_json(f: &Form) -> Value {
    Value::Array(f.coefficients().iter().map(int).collect())
}

pub fn form_from_json(v: &Value) -> Result<Form> {
    let [a, b, c] = ints::<3>(v)?;
    Form::new(a, b, c)
}

pub fn class_to_json(s: &FormClass) -> Value {
    json!({ "form": form_to_json(s.representative()), "disc": int(s.discriminant()) })
}

pub fn class_from_json(v: &Value) -> Result<FormClass> {
    let s = FormClass::of(&form_from_json(field(v, "form")?)?)?;
    let d = parse_int(field(v, "disc")?)?;
    if &d != s.discriminant() {
        return Err(Error::MismatchedDiscriminant(d, s.discriminant().clone()));
    }
    Ok(s)
}

pub fn mat_to_json(m: &Mat2) -> Value {
    json!([
        [int(m.get(0, 0)), int(m.get(0, 1))],
        [int(m.get(1, 0)), int(m.get(1, 1))]
    ])
}

pub fn mat_from_json(v: &Value) -> Result<Mat2> {
    let rows = array(v, 2)?;
    let [a, b] = ints::<2>(&rows[0])?;
    let [c, d] = ints::<2>(&rows[1])?;
    Ok(Mat2::new(a, b, c, d))
}

pub fn plane_to_json(l: &Plane) -> Value {
    let [c1, c2] = l.coords();
    json!({ "basis": [c1.iter().map(int).collect::<Vec<_>>(), c2.iter().map(int).collect::<Vec<_>>()] })
}

pub fn plane_from_json(v: &Value) -> Result<Plane> {
    let rows = array(field(v, "basis")?, 2)?;
    Plane::from_coords(&ints::<4>(&rows[0])?, &ints::<4>(&rows[1])?)
}

pub fn klein_pair_to_json(p: &KleinPair) -> Value {
    json!({ "a1": mat_to_json(p.a1.matrix()), "a2": mat_to_json(p.a2.matrix()) })
}

pub fn klein_pair_from_json(v: &Value) -> Result<KleinPair> {
    Ok(KleinPair::new(
        GrossVector::new(mat_from_json(field(v, "a1")?)?)?,
        GrossVector::new(mat_from_json(field(v, "a2")?)?)?,
    ))
}

pub fn cube_to_json(c: &Cube) -> Value {
    json!({ "entries": c.entries().iter().map(int).collect::<Vec<_>>() })
}

pub fn cube_from_json(v: &Value) -> Result<Cube> {
    Ok(Cube::from_entries(&ints::<8>(field(v, "entries")?)?))
}

pub fn witness_to_json(w: &Option<(BigInt, BigInt)>) -> Value {
    match w {
        Some((a, c)) => json!([int(a), int(c)]),
        None => Value::Null,
    }
}

pub fn realizable_pair_to_json(p: &RealizablePair) -> Value {
    json!({
        "s1": form_to_json(p.s1.representative()),
        "s2": form_to_json(p.s2.representative()),
        "b4_distinguishable": p.b4_distinguishable,
    })
}

/// `{"disc", "exists", "witness", "pairs"}`.
pub fn seifert_report(d: &BigInt, witness: &Option<(BigInt, BigInt)>, pairs: &[RealizablePair]) -> Value {
    let mut m = Map::new();
    m.insert("disc".into(), int(d));
    m.insert("exists".into(), Value::Bool(witness.is_some()));
    m.insert("witness".into(), witness_to_json(witness));
    m.insert(
        "pairs".into(),
        Value::Array(pairs.iter().map(realizable_pair_to_json).collect()),
    );
    Value::Object(m)
}

/// The cache document `{"disc", "elements", "identity", "table"}`.
pub fn class_group_to_json(g: &OrientedClassGroup) -> Value {
    let table: Vec<Value> = g.table().iter().map(|row| json!(row)).collect();
    json!({
        "disc": int(g.discriminant()),
        "elements": g.elements().iter().map(|s| form_to_json(s.representative())).collect::<Vec<_>>(),
        "identity": g.identity_index(),
        "table": table,
    })
}

pub fn class_group_from_json(v: &Value) -> Result<OrientedClassGroup> {
    let d = parse_int(field(v, "disc")?)?;
    let elements = match field(v, "elements")? {
        Value::Array(items) => items.iter().map(form_from_json).collect::<Result<Vec<_>>>()?,
        other => return Err(Error::Json(format!("expected element list, got {other}"))),
    };
    let table = match v.get("table") {
        None | Some(Value::Null) => None,
        Some(Value::Array(rows)) => Some(
            rows.iter()
                .map(|row| match row {
                    Value::Array(cells) => cells
                        .iter()
                        .map(|c| {
                            c.as_u64()
                                .map(|k| k as usize)
                                .ok_or_else(|| Error::Json("bad table entry".into()))
                        })
                        .collect::<Result<Vec<usize>>>(),
                    _ => Err(Error::Json("bad table row".into())),
                })
                .collect::<Result<Vec<_>>>()?,
        ),
        Some(other) => return Err(Error::Json(format!("expected table, got {other}"))),
    };
    let g = OrientedClassGroup::from_parts(&d, elements, table)?;
    let identity = field(v, "identity")?
        .as_u64()
        .ok_or_else(|| Error::Json("identity must be an index".into()))?;
    if identity as usize != g.identity_index() {
        return Err(Error::Json("identity index does not match the principal class".into()));
    }
    Ok(g)
}
