//! JSON documents for every command and their plain-text (TSV) rendering.
//!
//! Rationals are strings like `"5/2"` or `"3"`, infinity is `"inf"`. Objects
//! are `serde_json::Map`, which keeps keys sorted.

use eisenstein_core::census::{Census, CensusClass};
use eisenstein_core::identity::{BreakCheck, DecisionOutcome};
use eisenstein_core::metric::Distance;
use eisenstein_core::norm_graded::GradedNormTable;
use eisenstein_core::ramification::RamificationData;
use eisenstein_core::{EisensteinPoly, Error, ExtElement, Valuation};
use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub fn rational(q: Rational64) -> Value {
    Value::String(q.to_string())
}

pub fn valuation(v: Valuation) -> Value {
    Value::String(v.to_string())
}

fn integer(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(k) => json!(k),
        None => Value::String(n.to_string()),
    }
}

fn element(x: &ExtElement) -> Value {
    json!({
        "coords": x.coords().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "precision": x.precision(),
    })
}

fn rationals(qs: &[Rational64]) -> Value {
    Value::Array(qs.iter().copied().map(rational).collect())
}

pub fn distance(f: &EisensteinPoly, g: &EisensteinPoly, d: Distance) -> Value {
    json!({
        "p": f.p(),
        "f": f.to_string(),
        "g": g.to_string(),
        "distance": valuation(d.value()),
    })
}

pub fn resultant_distance(f: &str, g: &str, p: u64, v: Valuation) -> Value {
    json!({ "p": p, "f": f, "g": g, "distance": valuation(v) })
}

pub fn ramification(rd: &RamificationData) -> Value {
    let serre = rd.to_serre();
    json!({
        "p": rd.poly().p(),
        "e": rd.degree(),
        "f": rd.poly().to_string(),
        "galois": true,
        "abelian": rd.is_abelian().ok(),
        "i_multiset": rationals(rd.orders()),
        "i_break": rational(rd.i_break()),
        "u_break": rational(rd.u_break()),
        "lower_breaks": rationals(rd.lower_breaks()),
        "upper_breaks": rationals(&rd.upper_breaks()),
        "phi_vertices": rd.phi_vertices().iter().map(|&(i, u)| json!([rational(i), rational(u)])).collect::<Vec<_>>(),
        "filtration": rd.filtration_steps().iter().map(|&(t, n)| json!([rational(t), n])).collect::<Vec<_>>(),
        "serre_lower_breaks": rationals(&serre.lower_breaks),
        "serre_upper_breaks": rationals(&serre.upper_breaks),
    })
}

fn outcome_fields(o: &DecisionOutcome) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("verdict".into(), json!(o.verdict.to_string()));
    m.insert("reason".into(), json!(o.reason.map(|r| r.to_string())));
    m.insert("distance".into(), valuation(o.distance.value()));
    m.insert("u_break".into(), rational(o.u_break));
    m.insert(
        "root".into(),
        o.root.as_ref().map(element).unwrap_or(Value::Null),
    );
    m.insert("oracle_precision".into(), json!(o.oracle_precision));
    m
}

pub fn decision(f: &EisensteinPoly, g: &EisensteinPoly, o: &DecisionOutcome) -> Value {
    let mut m = outcome_fields(o);
    m.insert("p".into(), json!(f.p()));
    m.insert("f".into(), json!(f.to_string()));
    m.insert("g".into(), json!(g.to_string()));
    Value::Object(m)
}

pub fn break_check(
    f: &EisensteinPoly,
    check: &BreakCheck,
    counterexample: Result<EisensteinPoly, Error>,
) -> Value {
    let probes: Vec<Value> = check
        .probes
        .iter()
        .map(|(c, g, o)| {
            let mut m = outcome_fields(o);
            m.remove("root");
            m.remove("u_break");
            m.insert("c".into(), json!(c));
            m.insert("g".into(), json!(g.to_string()));
            Value::Object(m)
        })
        .collect();
    json!({
        "p": f.p(),
        "f": f.to_string(),
        "u_break": rational(check.u_break),
        "holds": check.holds,
        "witness": check.witness().map(|(_, g, _)| g.to_string()),
        "probes": probes,
        "wild_counterexample": counterexample.ok().map(|g| g.to_string()),
    })
}

pub fn norm_map(t: &GradedNormTable) -> Result<Value, Error> {
    Ok(json!({
        "p": t.f.p(),
        "f": t.f.to_string(),
        "n": t.n,
        "psi_n": t.level,
        "table": t.table.iter().map(|&(c, v)| json!([c, v])).collect::<Vec<_>>(),
        "theta_image": t.theta_image(),
        "exact": t.is_exact(),
        "coker_order": t.coker_order()?,
        "filtration_ratio": t.filtration_ratio,
    }))
}

fn census_class(c: &CensusClass) -> Value {
    json!({
        "rep": c.representative.tail().iter().map(integer).collect::<Vec<_>>(),
        "size": c.members_count(),
        "galois": c.galois,
        "u_break": c.u_break.map(rational),
        "disc_val": c.disc_valuation,
    })
}

pub fn census(c: &Census) -> Value {
    json!({
        "p": c.p,
        "e": c.e,
        "B": c.b,
        "class_count": c.class_count(),
        "classes": c.classes.iter().map(census_class).collect::<Vec<_>>(),
        "stable_at_B": c.stable_at(),
    })
}

pub fn error(e: &Error) -> Value {
    json!({ "error": e.to_string(), "kind": e.kind() })
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items
            .iter()
            .map(|x| match x {
                Value::Array(_) | Value::Object(_) => x.to_string(),
                _ => cell(x),
            })
            .collect::<Vec<_>>()
            .join(","),
        other => other.to_string(),
    }
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object))
}

/// `key<TAB>value` lines; arrays of objects become a titled TSV table after
/// the scalar fields.
pub fn to_tsv(doc: &Value) -> String {
    let Value::Object(m) = doc else {
        return cell(doc) + "\n";
    };
    let mut out = String::new();
    for (k, v) in m.iter().filter(|(_, v)| !is_table(v)) {
        out += &format!("{}\t{}\n", k, cell(v));
    }
    for (k, v) in m.iter().filter(|(_, v)| is_table(v)) {
        let rows = v.as_array().unwrap();
        let Value::Object(first) = &rows[0] else {
            continue;
        };
        let cols: Vec<&String> = first.keys().collect();
        out += &format!("\n# {}\n", k);
        out += &cols
            .iter()
            .map(|c| c.as_str())
            .collect::<Vec<_>>()
            .join("\t");
        out.push('\n');
        for row in rows {
            let cells: Vec<String> = cols.iter().map(|c| cell(&row[c.as_str()])).collect();
            out += &cells.join("\t");
            out.push('\n');
        }
    }
    out
}
