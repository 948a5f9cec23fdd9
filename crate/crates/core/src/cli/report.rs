//! JSON shapes shared by the commands. Integers that count things are
//! decimal strings; polynomials are printed in the input grammar.

use serde_json::{json, Value};

use crate::algebra::Polynomial;
use crate::geometry::{Envelope, IncidenceReport, Point, PointSet};
use crate::nullstellensatz::{CartesianWitness, FailureCertificate};

pub(crate) const SCHEMA: u32 = 1;

pub(crate) fn poly(p: &Polynomial) -> Value {
    Value::String(p.to_string())
}

pub(crate) fn count<T: ToString>(n: T) -> Value {
    Value::String(n.to_string())
}

pub(crate) fn point(p: &Point) -> Value {
    json!([p.u.to_string(), p.v.to_string()])
}

pub(crate) fn point_list(ps: &PointSet) -> Value {
    Value::Array(ps.iter().map(point).collect())
}

pub(crate) fn indices(ix: &[usize]) -> Value {
    Value::Array(ix.iter().map(|&i| json!(i)).collect())
}

pub(crate) fn envelope(e: &Envelope) -> Value {
    json!({
        "name": e.kind.name(),
        "expression": e.kind.expression(),
        "value": e.value_string(),
        "approx": e.approx,
        "ratio": e.ratio_string(),
    })
}

pub(crate) fn witness(w: &CartesianWitness) -> Value {
    json!({ "G": poly(&w.g), "K": poly(&w.k), "H": poly(&w.h), "L": poly(&w.l) })
}

pub(crate) fn certificate(c: &FailureCertificate) -> Value {
    json!({
        "index": [c.index.0, c.index.1],
        "residue": poly(&c.residue),
        "tag": c.tag,
    })
}

pub(crate) fn incidence(r: &IncidenceReport) -> Value {
    let mut v = json!({
        "count": count(r.count),
        "p_size": count(r.p_len),
        "q_size": count(r.q_len),
        "envelopes": r.envelopes.iter().map(envelope).collect::<Vec<_>>(),
        "degenerate_q": indices(&r.degenerate),
    });
    if let Some(c) = r.coprime {
        v["coprime"] = json!(c);
    }
    v
}

pub(crate) fn document(command: &str, status: &str, inputs: Value, result: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "status": status,
        "inputs": inputs,
        "result": result,
    })
}
