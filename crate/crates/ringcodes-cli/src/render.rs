//! Text and JSON renderings shared by the commands.
//!
//! Every computed integer goes into JSON as a decimal string so that big
//! values survive consumers with 53-bit floats.

use num_bigint::BigInt;
use ringcodes::enumerators::{PartitionEnumerator, Wwe};
use ringcodes::verdict::Verdict;
use serde_json::{json, Value};

pub fn big(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn bigs(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(big).collect())
}

pub fn nums<T: ToString>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

/// `{"terms": [{"deg", "coeff"}, ...]}` in increasing degree.
pub fn wwe_json(w: &Wwe) -> Value {
    let terms: Vec<Value> = w
        .terms()
        .iter()
        .map(|(d, c)| json!({"deg": d, "coeff": c.to_string()}))
        .collect();
    json!({ "terms": terms })
}

pub fn se_json(e: &PartitionEnumerator) -> Value {
    let terms: Vec<Value> = e
        .terms()
        .iter()
        .map(|(exps, c)| json!({"exponents": exps, "coeff": c.to_string()}))
        .collect();
    json!({ "classes": e.classes(), "length": e.length(), "terms": terms })
}

/// `Z0^4 + 3Z0^3Z1 + ...`, largest Z0 exponent first.
pub fn se_text(e: &PartitionEnumerator) -> String {
    let mut terms: Vec<_> = e.terms().iter().collect();
    terms.sort_by(|a, b| b.0.cmp(a.0));
    let parts: Vec<String> = terms
        .iter()
        .map(|(exps, c)| {
            let mut mono = String::new();
            for (i, &n) in exps.iter().enumerate() {
                match n {
                    0 => {}
                    1 => mono.push_str(&format!("Z{i}")),
                    _ => mono.push_str(&format!("Z{i}^{n}")),
                }
            }
            let one = num_traits::One::is_one(*c);
            match (one, mono.is_empty()) {
                (true, false) => mono,
                _ => format!("{c}{mono}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

pub fn list<T: ToString>(xs: &[T]) -> String {
    let v: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
    format!("[{}]", v.join(", "))
}

pub fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Respects { rule, reason } | Verdict::Unknown { rule, reason } => json!({
            "verdict": v.kind(),
            "rule": rule,
            "reason": reason,
        }),
        Verdict::Fails { rule, witness } => json!({
            "verdict": "fails",
            "rule": rule,
            "witness": {
                "k": witness.k,
                "m": witness.m,
                "s": witness.s,
                "d": witness.d,
                "delta": witness.delta.to_string(),
                "verified": witness.verified,
            },
        }),
    }
}

pub fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Respects { rule, reason } | Verdict::Unknown { rule, reason } => {
            format!("{} ({rule}): {reason}", v.kind())
        }
        Verdict::Fails { rule, witness } => {
            let mut s = format!("fails ({rule}): k={}", witness.k);
            if let Some(m) = witness.m {
                s.push_str(&format!(" m={m}"));
            }
            if let Some(x) = witness.s {
                s.push_str(&format!(" s={x}"));
            }
            s.push_str(&format!(" d={} delta={}", witness.d, witness.delta));
            s.push_str(match witness.verified {
                Some(true) => " verified",
                Some(false) => " VERIFICATION MISMATCH",
                None => " unverified",
            });
            s
        }
    }
}
