//! Indented JSON that keeps arrays of scalars on one line, so group
//! elements and matrix rows stay readable.

use std::fmt::Write;

use serde_json::Value;

const INDENT: &str = "  ";

fn scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = INDENT.repeat(depth + 1);
    let close = INDENT.repeat(depth);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(scalar) => {
            out.push_str(&serde_json::to_string(v).expect("json values serialize"));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            write!(out, "{close}]").unwrap();
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                write!(out, "{pad}{}: ", Value::String(key.clone())).unwrap();
                write_value(out, item, depth + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            write!(out, "{close}}}").unwrap();
        }
        other => out.push_str(&serde_json::to_string(other).expect("json values serialize")),
    }
}

pub fn to_json_text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}
