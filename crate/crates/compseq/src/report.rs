//! JSON output. Every document carries `schema` and `verb`; field sets per
//! verb only grow within a schema version.

use compseq_core::analysis::{BoundReport, ColumnReport, Rational};
use compseq_core::search::{AnnealResult, FoundPair, SearchResult};
use compseq_core::{Magnitude, MeritReport, MeritValue, Seq};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "compseq/1";

pub fn envelope(verb: &str, body: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("schema".into(), SCHEMA.into());
    doc.insert("verb".into(), verb.into());
    if let Value::Object(fields) = body {
        doc.extend(fields);
    }
    Value::Object(doc)
}

/// Integers stay integers; irrational sums are rounded to 12 places.
pub fn magnitude(m: Magnitude) -> Value {
    match m.as_integer() {
        Some(v) => v.into(),
        None => json!((m.value() * 1e12).round() / 1e12),
    }
}

pub fn merit_value(v: MeritValue) -> Value {
    magnitude(v.magnitude())
}

pub fn merit_report(r: &MeritReport) -> Value {
    json!({
        "lambda_a": magnitude(r.lambda_a()),
        "lambda_p": magnitude(r.lambda_p()),
        "s_a": magnitude(r.s_a),
        "s_p": magnitude(r.s_p),
    })
}

pub fn rational(r: Rational) -> Value {
    let exact = if *r.denom() == 1 { r.numer().to_string() } else { format!("{}/{}", r.numer(), r.denom()) };
    json!({ "exact": exact, "value": *r.numer() as f64 / *r.denom() as f64 })
}

fn opt<T>(v: Option<T>, f: impl FnOnce(T) -> Value) -> Value {
    v.map_or(Value::Null, f)
}

pub fn seq(s: &Seq) -> Value {
    s.to_string().into()
}

pub fn column_report(r: &ColumnReport, periodic: bool) -> Value {
    let mut cols: Vec<Value> = Vec::new();
    for (m, z) in r.per_column.iter().zip(&r.zero_counts) {
        let mut c = json!({ "lambda_a": magnitude(m.lambda_a()), "s_a": magnitude(m.s_a), "zeros": z });
        if periodic {
            c["lambda_p"] = magnitude(m.lambda_p());
            c["s_p"] = magnitude(m.s_p);
        }
        cols.push(c);
    }
    let mut v = json!({
        "columns": r.per_column.len(),
        "lambda_a_u": magnitude(r.lambda_a()),
        "s_a_u": magnitude(r.s_a),
        "per_column": cols,
    });
    if periodic {
        v["lambda_p_u"] = magnitude(r.lambda_p());
        v["s_p_u"] = magnitude(r.s_p);
    }
    v
}

pub fn bound_report(r: &BoundReport) -> Value {
    json!({
        "m": r.m,
        "t": r.t,
        "E": rational(r.e),
        "sufficient_s_a": opt(r.sufficient_s_a, rational),
        "sufficient_lambda_a": opt(r.sufficient_lambda_a, rational),
        "necessary_lambda_a": rational(r.necessary_lambda_a),
        "threshold_lambda0": rational(r.threshold_lambda0),
        "existence": opt(r.existence, |e| json!({
            "lambda_a_lower": e.lambda_a_lb,
            "lambda_p_lower": e.lambda_p_lb,
            "lambda_w_a": e.lambda_w_a,
            "lambda_w_p": e.lambda_w_p,
        })),
        "welch_a": r.welch_a,
        "welch_p": r.welch_p,
    })
}

pub fn found_pair(p: &FoundPair) -> Value {
    json!({
        "c0": seq(&p.c0),
        "c1": seq(&p.c1),
        "merit": merit_value(p.merit),
        "merits_c0": merit_report(&p.merits0),
        "merits_c1": merit_report(&p.merits1),
    })
}

pub fn search_result(r: &SearchResult) -> Value {
    json!({
        "mode": "exhaustive",
        "candidates": r.candidates,
        "retained": r.retained,
        "minimum": opt(r.minimum, merit_value),
        "total_pairs": r.total_pairs,
        "pairs": r.pairs.iter().map(found_pair).collect::<Vec<_>>(),
    })
}

pub fn anneal_result(r: &AnnealResult, chain_seeds: &[u64], best_chain: usize) -> Value {
    json!({
        "mode": "anneal",
        "half_len": r.s0.len(),
        "s0": seq(&r.s0),
        "s1": seq(&r.s1),
        "lambda_b": r.cost,
        "evaluations": r.evaluations,
        "chain_seeds": chain_seeds,
        "best_chain": best_chain,
        "history": r.history.iter().map(|h| json!({
            "iteration": h.iteration,
            "temperature": h.temperature,
            "cost": h.cost,
            "event": format!("{:?}", h.event).to_lowercase(),
        })).collect::<Vec<_>>(),
    })
}

pub fn predicate(name: &str, verdict: bool, witness: Option<Value>) -> Value {
    let mut v = json!({ "predicate": name, "verdict": verdict });
    if let Some(w) = witness {
        v["witness"] = w;
    }
    v
}
