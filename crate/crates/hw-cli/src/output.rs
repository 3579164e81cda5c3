//! JSON builders with canonical field and term order, shared by every
//! subcommand so that repeated runs emit identical bytes.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use hw_core::momentpoly::{MomentPolynomial, Symbol, XYSym};
use hw_core::ratfun::ratfun_to_json;
use hw_core::word::{TraceSym, WordPolynomial};
use hw_core::RatFun;

pub fn rational_str(v: &BigRational) -> Value {
    Value::String(v.to_string())
}

pub fn ratfun_value(f: &RatFun) -> Value {
    ratfun_to_json(f)
}

/// {"terms":[{"coeff":"...","x":[...],"y":[...]}]} in canonical term order.
pub fn xy_polynomial(poly: &MomentPolynomial<XYSym, BigRational>) -> Value {
    let mut terms = Vec::new();
    for (mono, coeff) in poly.terms() {
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for s in mono.symbols() {
            match s {
                XYSym::X(k) => xs.push(json!(k)),
                XYSym::Y(k) => ys.push(json!(k)),
            }
        }
        xs.reverse(); // print largest index first, matching partition order
        ys.reverse();
        let mut term = Map::new();
        term.insert("coeff".into(), rational_str(coeff));
        term.insert("x".into(), Value::Array(xs));
        term.insert("y".into(), Value::Array(ys));
        terms.push(Value::Object(term));
    }
    json!({ "terms": terms })
}

/// Polynomial in trace symbols with rational-function coefficients.
pub fn word_polynomial(poly: &WordPolynomial) -> Value {
    let mut terms = Vec::new();
    for (mono, coeff) in poly.terms() {
        let factors: Vec<Value> = mono
            .symbols()
            .iter()
            .map(|s: &TraceSym| Value::String(s.render()))
            .collect();
        let mut term = Map::new();
        term.insert("coeff".into(), ratfun_value(coeff));
        term.insert("factors".into(), Value::Array(factors));
        terms.push(Value::Object(term));
    }
    json!({ "terms": terms })
}

/// Laurent coefficient list as {"l": k, "value": "..."} records.
pub fn coefficient_list(entries: &[(usize, BigRational)]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|(l, v)| json!({"l": l, "value": v.to_string()}))
            .collect(),
    )
}

pub fn int_array(parts: &[u32]) -> Value {
    Value::Array(parts.iter().map(|&p| json!(p)).collect())
}

/// Render a JSON value as text lines for --format text: objects become
/// key: value lines, everything else is Display.
pub fn render(value: &Value, text: bool) -> String {
    if !text {
        return value.to_string();
    }
    fn walk(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(map) => {
                for (k, val) in map {
                    match val {
                        Value::Object(_) | Value::Array(_) => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            walk(val, indent + 1, out);
                        }
                        _ => out.push_str(&format!("{pad}{k}: {val}\n")),
                    }
                }
            }
            Value::Array(items) => {
                for item in items {
                    match item {
                        Value::Object(_) | Value::Array(_) => {
                            out.push_str(&format!("{pad}-\n"));
                            walk(item, indent + 1, out);
                        }
                        _ => out.push_str(&format!("{pad}- {item}\n")),
                    }
                }
            }
            _ => out.push_str(&format!("{pad}{v}\n")),
        }
    }
    let mut s = String::new();
    walk(value, 0, &mut s);
    s
}
