//! JSON report assembly and the human-readable rendering of the same object.

use serde_json::{json, Map, Value as Json};

use crate::commands::Outcome;
use crate::error::CliError;

pub const SCHEMA_VERSION: u64 = 1;

/// Exit status for a completed command.
pub fn exit_code(outcome: &Outcome) -> i32 {
    if outcome.negative {
        1
    } else {
        0
    }
}

pub fn success(command: &str, outcome: &Outcome, elapsed_ms: f64) -> Json {
    let mut top = Map::new();
    top.insert("schema".into(), json!(SCHEMA_VERSION));
    top.insert("command".into(), json!(command));
    top.insert("inputs".into(), Json::Object(outcome.inputs.clone()));
    for (k, v) in &outcome.body {
        top.insert(k.clone(), v.clone());
    }
    top.insert("exit_code".into(), json!(exit_code(outcome)));
    top.insert("elapsed_ms".into(), json!(elapsed_ms));
    Json::Object(top)
}

pub fn failure(command: Option<&str>, err: &CliError) -> Json {
    let mut e = Map::new();
    e.insert("kind".into(), json!(err.kind()));
    e.insert("message".into(), json!(err.to_string()));
    if let Some((line, column)) = err.position() {
        e.insert("line".into(), json!(line));
        e.insert("column".into(), json!(column));
    }
    json!({
        "schema": SCHEMA_VERSION,
        "command": command,
        "error": Json::Object(e),
        "exit_code": err.exit_code(),
    })
}

fn scalar_text(v: &Json) -> Option<String> {
    match v {
        Json::Null => Some("none".into()),
        Json::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Json::Number(n) => Some(n.to_string()),
        Json::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn render_into(out: &mut String, key: &str, v: &Json, indent: usize) {
    let pad = "  ".repeat(indent);
    if let Some(t) = scalar_text(v) {
        out.push_str(&format!("{pad}{key}: {t}\n"));
        return;
    }
    match v {
        Json::Array(items) if items.iter().all(|i| scalar_text(i).is_some()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar_text).collect();
            out.push_str(&format!("{pad}{key}: [{}]\n", parts.join(", ")));
        }
        Json::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (i, item) in items.iter().enumerate() {
                render_into(out, &format!("[{}]", i + 1), item, indent + 1);
            }
        }
        Json::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, item) in m {
                render_into(out, k, item, indent + 1);
            }
        }
        _ => unreachable!(),
    }
}

/// Key-by-key rendering of a report object; skips the schema marker and timing.
pub fn human(report: &Json) -> String {
    let mut out = String::new();
    if let Json::Object(m) = report {
        for (k, v) in m {
            if k == "schema" || k == "elapsed_ms" {
                continue;
            }
            render_into(&mut out, k, v, 0);
        }
    }
    out
}
