//! JSON forms of elements, tensors and representations.
//!
//! Every document carries a `text` field with the rendered expression and
//! a structured `terms` field; either one is enough to read it back.

use serde_json::{json, Value as Json};
use suq2::boson::BMono;
use suq2::lin::Lin;
use suq2::reps::Representation;
use suq2::{Element, Field};

use crate::render::Literal;
use crate::value::{Evaluator, Value};

/// Errors while reading a JSON document, as plain messages.
pub type ReadResult<T> = std::result::Result<T, String>;

fn key_json(b: &BMono) -> Json {
    if b.l == 0 {
        json!([b.n, b.m, b.k])
    } else {
        json!([b.n, b.m, b.k, b.l])
    }
}

fn key_from_json(v: &Json) -> ReadResult<BMono> {
    let arr = v.as_array().filter(|a| a.len() == 3 || a.len() == 4).ok_or_else(|| format!("bad monomial {v}"))?;
    let int = |x: &Json| x.as_i64().ok_or_else(|| format!("bad exponent {x}"));
    let (n, m, k) = (int(&arr[0])?, int(&arr[1])?, int(&arr[2])?);
    let l = if arr.len() == 4 { int(&arr[3])? } else { 0 };
    let ok = |x: i64| i32::try_from(x).map_err(|_| format!("exponent {x} out of range"));
    let nat = |x: i64| u32::try_from(x).map_err(|_| format!("exponent {x} must be a natural number"));
    Ok(BMono::new(ok(n)?, nat(m)?, nat(k)?, ok(l)?))
}

pub fn value_json<C: Literal>(x: &Value<C>, sigma: i8) -> Json {
    let terms: Vec<Json> = x
        .terms
        .iter()
        .map(|(k, c)| json!({ "key": k.iter().map(key_json).collect::<Vec<_>>(), "coeff": c.to_json() }))
        .collect();
    json!({ "order": x.order, "text": x.render(sigma), "terms": terms })
}

/// Reads a value from a string expression or from a `{"order", "terms"}` object.
pub fn value_from_json<F: Field>(v: &Json, ev: &Evaluator<'_, F>) -> ReadResult<Value<F::C>>
where
    F::C: Literal,
{
    if let Some(s) = v.as_str() {
        return ev.eval_str(s).map_err(|e| format!("in '{s}': {e}"));
    }
    if let Some(terms) = v.get("terms").and_then(Json::as_array) {
        let mut out = Lin::zero();
        let mut order = v.get("order").and_then(Json::as_u64).map(|o| o as usize);
        for t in terms {
            let key = t
                .get("key")
                .and_then(Json::as_array)
                .ok_or_else(|| format!("term without key: {t}"))?
                .iter()
                .map(key_from_json)
                .collect::<ReadResult<Vec<BMono>>>()?;
            if *order.get_or_insert(key.len()) != key.len() {
                return Err(format!("mixed tensor orders in {v}"));
            }
            let c = t.get("coeff").ok_or_else(|| format!("term without coeff: {t}"))?;
            out.add_term(key, F::C::from_json(c).map_err(|e| e.to_string())?);
        }
        return Ok(Value { order: order.unwrap_or(1), terms: out });
    }
    if let Some(s) = v.get("text").and_then(Json::as_str) {
        return ev.eval_str(s).map_err(|e| format!("in '{s}': {e}"));
    }
    Err(format!("expected an expression string or a term list, got {v}"))
}

pub fn rep_json<C: Literal>(u: &Representation<C>, sigma: i8) -> Json {
    let entries: Vec<Vec<Json>> = u
        .entries
        .iter()
        .map(|row| row.iter().map(|x| value_json(&Value::from_element(x), sigma)).collect())
        .collect();
    json!({ "dim": u.dim(), "weights": u.weights, "entries": entries })
}

pub fn rep_from_json<F: Field>(v: &Json, ev: &Evaluator<'_, F>) -> ReadResult<Representation<F::C>>
where
    F::C: Literal,
{
    let weights: Vec<i64> = v
        .get("weights")
        .and_then(Json::as_array)
        .ok_or("representation without weights")?
        .iter()
        .map(|w| w.as_i64().ok_or_else(|| format!("bad weight {w}")))
        .collect::<ReadResult<_>>()?;
    if let Some(d) = v.get("dim").and_then(Json::as_u64) {
        if d as usize != weights.len() {
            return Err(format!("dim {d} does not match {} weights", weights.len()));
        }
    }
    let rows = v.get("entries").and_then(Json::as_array).ok_or("representation without entries")?;
    let mut entries = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| format!("bad matrix row {row}"))?;
        let mut out: Vec<Element<F::C>> = Vec::with_capacity(row.len());
        for x in row {
            let val = value_from_json(x, ev)?;
            out.push(val.to_element().ok_or_else(|| format!("matrix entry {x} is not an algebra element"))?);
        }
        entries.push(out);
    }
    Representation::new(weights, entries).map_err(|e| e.to_string())
}

/// Text form of a matrix of algebra elements.
pub fn rep_text<C: Literal>(u: &Representation<C>, sigma: i8) -> String {
    let mut out = format!("dim {} weights {:?}\n", u.dim(), u.weights);
    for (i, row) in u.entries.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out.push_str(&format!("u[{i}][{j}] = {}\n", Value::from_element(x).render(sigma)));
        }
    }
    out
}
