//! Plain-text layout of a JSON report: one `key: value` per line, nested
//! objects indented, arrays of scalars and linear forms inline.

use serde_json::Value;

pub fn text(v: &Value) -> String {
    let mut out = String::new();
    write(v, 0, &mut out);
    out
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(inline).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(map) => linear_form(map),
    }
}

fn write(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match inline(item) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write(item, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match inline(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write(item, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}

/// `{"x0": "2", "x2": "-1"}` as `2x0 - x2`; the empty form is `0`.
fn linear_form(map: &serde_json::Map<String, Value>) -> Option<String> {
    let mut out = String::new();
    for (var, coeff) in map {
        let is_var = var.len() == 2 && var.starts_with('x') && var[1..].chars().all(|c| c.is_ascii_digit());
        let Value::String(coeff) = coeff else { return None };
        if !is_var {
            return None;
        }
        let (sign, magnitude) = match coeff.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => ("-", rest),
            _ => ("+", coeff.as_str()),
        };
        let magnitude = match magnitude {
            "1" => String::new(),
            m if m.contains(['+', '-', 'i']) => format!("({m})"),
            m => m.to_string(),
        };
        match (out.is_empty(), sign) {
            (true, "-") => out.push('-'),
            (true, _) => {}
            (false, s) => out.push_str(&format!(" {s} ")),
        }
        out.push_str(&format!("{magnitude}{var}"));
    }
    Some(if out.is_empty() { "0".into() } else { out })
}
