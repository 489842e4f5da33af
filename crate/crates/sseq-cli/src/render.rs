use std::fmt::Write;

use serde_json::Value;

/// Text rendering of a verb's result.
pub fn human(verb: &str, result: &Value) -> String {
    let mut out = String::new();
    match verb {
        "bku eval" => {
            let _ = writeln!(out, "{}", result["text"].as_str().unwrap_or_default());
            let _ = writeln!(out, "bidegree ({}, {})", result["s"], result["w"]);
        }
        "k1 pi" => {
            for g in result["summary"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "π_{{{},{}}} = {}", g["s"], g["w"], g["module"].as_str().unwrap_or_default());
            }
        }
        "ss run" => {
            for p in result["pages"].as_array().into_iter().flatten() {
                let _ = writeln!(out, "E_{}^{{{},{}}} = {}", p["r"], p["s"], p["t"], module_text(&p["factors"]));
            }
            if result["all_zero"] == Value::Bool(true) {
                let _ = writeln!(out, "all pages are zero");
            }
        }
        _ => tree(&mut out, result, 0),
    }
    out
}

fn module_text(factors: &Value) -> String {
    let parts: Vec<String> = factors
        .as_array()
        .into_iter()
        .flatten()
        .map(|f| match f.as_i64() {
            Some(0) => "Z".to_string(),
            _ => format!("Z/{f}"),
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_)) || v.as_array().is_some_and(|a| a.iter().all(is_scalar))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn tree(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_scalar(x) {
                    let _ = writeln!(out, "{pad}{k}: {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}{k}:");
                    tree(out, x, depth + 1);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_scalar(x) {
                    let _ = writeln!(out, "{pad}- {}", inline(x));
                } else {
                    let _ = writeln!(out, "{pad}-");
                    tree(out, x, depth + 1);
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other));
        }
    }
}
