//! Report documents: verdicts, profiles and factorizations as JSON values
//! with letters rendered as tokens, plus a plain-text rendering.

use serde_json::{json, Map, Value};

use crate::checkers::{CheckVerdict, Counterexample};
use crate::factorization::{Factorization, FactorizationReport, Flavor};
use crate::hierarchy::HierarchyProfile;
use crate::words::{Alphabet, Word};

pub fn counterexample(a: &Alphabet, ce: &Counterexample) -> Value {
    let word = |w: &Word| Value::String(a.render(w));
    let opt = |w: &Option<Word>| w.as_ref().map(word).unwrap_or(Value::Null);
    json!({
        "kind": ce.kind.to_string(),
        "x": word(&ce.x),
        "y": word(&ce.y),
        "y_prime": opt(&ce.y_prime),
        "z": word(&ce.z),
        "lhs": a.render_value(&ce.lhs),
        "rhs": a.render_value(&ce.rhs),
        "witness_d": opt(&ce.witness_d),
        "note": ce.note.clone(),
    })
}

pub fn verdict(a: &Alphabet, v: &CheckVerdict) -> Value {
    match v {
        CheckVerdict::PassedUpTo { bound, cases_checked } => json!({
            "status": "passed",
            "bound": bound,
            "cases_checked": cases_checked,
        }),
        CheckVerdict::Refuted(ce) => json!({
            "status": "refuted",
            "counterexample": counterexample(a, ce),
        }),
    }
}

fn opt_verdict(a: &Alphabet, v: &Option<CheckVerdict>) -> Value {
    v.as_ref().map(|v| verdict(a, v)).unwrap_or(Value::Null)
}

pub fn profile(a: &Alphabet, p: &HierarchyProfile) -> Value {
    let levels: Vec<Value> = p
        .per_m
        .iter()
        .map(|(m, v)| json!({ "m": m, "verdict": verdict(a, v) }))
        .collect();
    json!({
        "family": p.family.to_string(),
        "bound": p.bound,
        "max_m": p.max_m,
        "levels": levels,
        "k": p.k.to_string(),
        "degree": p.degree().map(|d| d.to_string()),
        "degree_line": p.degree_line(),
        "monotone": p.is_monotone(),
    })
}

fn checklist(a: &Alphabet, r: &FactorizationReport) -> Value {
    let class_checks: Vec<Value> = r
        .class_checks
        .iter()
        .map(|c| {
            json!({
                "subject": c.subject,
                "class": c.class.to_string(),
                "domain": c.domain,
                "verdict": verdict(a, &c.verdict),
            })
        })
        .collect();
    let determined = r.determined_range.as_ref().map(|d| {
        json!({
            "f_d_determined": verdict(a, &d.f_d_determined),
            "h_d_valued": opt_verdict(a, &d.h_d_valued),
            "h_associative": opt_verdict(a, &d.h_associative),
        })
    });
    json!({
        "a_f_injective": {
            "ok": r.injective(),
            "collision": r.injectivity_violation.as_ref().map(|(u, v)| vec![a.render(u), a.render(v)]),
        },
        "b_round_trip": {
            "ok": r.round_trip_ok(),
            "mismatches": r.round_trip_mismatches.iter().map(|w| a.render(w)).collect::<Vec<_>>(),
        },
        "c_h_idempotent": verdict(a, &r.idempotence),
        "d_h_preserves_domain": opt_verdict(a, &r.h_preserves_domain),
        "e_class_checks": class_checks,
        "f_determined_range": determined,
    })
}

pub fn factorization(a: &Alphabet, fz: &Factorization) -> Value {
    let qi = &fz.quasi_inverse;
    let flavor = match qi.flavor() {
        Flavor::Plain => "plain".to_string(),
        Flavor::RelativeTo(d) => format!("relative to {d}"),
    };
    let g: Vec<Value> = qi
        .map()
        .iter()
        .map(|(v, w)| json!({ "value": a.render_value(v), "preimage": a.render(w) }))
        .collect();
    let h: Vec<Value> =
        fz.h.entries()
            .iter()
            .map(|(w, v)| json!({ "word": a.render(w), "value": a.render_value(v) }))
            .collect();
    let f: Vec<Value> =
        fz.f.iter()
            .map(|(w, v)| json!({ "word": a.render(w), "value": a.render_value(v) }))
            .collect();
    let r = &fz.report;
    json!({
        "bound": r.bound,
        "growth": r.growth,
        "check_bound": r.check_bound,
        "quasi_inverse": {
            "flavor": flavor,
            "certified_at_bound": qi.certified_at_bound(),
            "uncovered": qi.uncovered().iter().map(|v| a.render_value(v)).collect::<Vec<_>>(),
            "g": g,
        },
        "H": h,
        "f": f,
        "checklist": checklist(a, r),
    })
}

/// Indented `key: value` rendering of a report document.
pub fn pretty(value: &Value) -> String {
    let mut out = String::new();
    pretty_into(value, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.is_empty() => Some("[]".into()),
        Value::Object(map) if map.is_empty() => Some("{}".into()),
        _ => None,
    }
}

/// An object of scalars on one line: `k: v, k: v`.
fn flat_row(v: &Value) -> Option<String> {
    let map = v.as_object()?;
    let cells: Option<Vec<String>> = map
        .iter()
        .map(|(k, v)| scalar(v).map(|s| format!("{k}: {s}")))
        .collect();
    cells.map(|c| c.join(", "))
}

fn pretty_into(value: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match value {
        Value::Object(map) => pretty_map(map, indent, out),
        Value::Array(items) => {
            for item in items {
                match scalar(item).or_else(|| flat_row(item)) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        pretty_into(item, indent + 2, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

fn pretty_map(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    for (k, v) in map {
        match scalar(v) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                pretty_into(v, indent + 2, out);
            }
        }
    }
}
