//! Errors and the formats commands print in.

use serde_json::{json, Map, Value};
use thiserror::Error;

use penney::automaton::AutomatonError;
use penney::properties::PropertyError;
use penney::search::SearchError;
use penney::winprob::WinError;
use penney::words::WordError;

use crate::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Win(#[from] WinError),
    #[error(transparent)]
    Property(#[from] PropertyError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("{flag} must be strictly between 0 and 1, got {value}")]
    OutOfUnitInterval { flag: &'static str, value: String },
    #[error("{flag}: cannot read {value:?} as a fraction or decimal")]
    BadNumber { flag: &'static str, value: String },
    #[error("format {format} is not available for {command}")]
    Unsupported { format: &'static str, command: &'static str },
    #[error("cannot write {path}: {reason}")]
    Io { path: String, reason: String },
}

impl CliError {
    fn category(&self) -> &str {
        match self {
            CliError::Usage(_) | CliError::Unsupported { .. } => "usage",
            CliError::Io { .. } => "io",
            _ => "domain",
        }
    }

    /// `{"kind":"error","category":...,"error":...}` on one line.
    pub fn to_json_line(&self) -> String {
        json!({ "kind": "error", "category": self.category(), "error": self.to_string() }).to_string()
    }
}

pub fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Dot => "dot",
        Format::Human => "human",
    }
}

/// What a command printed, and whether any verification it ran passed.
pub struct Output {
    pub text: String,
    pub verified: bool,
}

impl Output {
    pub fn ok(text: String) -> Output {
        Output { text, verified: true }
    }
}

/// Adds the `kind` tag to a serialized object.
pub fn tagged(kind: &str, body: Value) -> Value {
    let mut map = match body {
        Value::Object(map) => map,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    };
    map.insert("kind".into(), Value::String(kind.into()));
    Value::Object(map)
}

/// Pretty JSON, or `key: value` lines with dotted paths for `human`.
pub fn json_or_human(value: &Value, format: Format) -> String {
    match format {
        Format::Human => {
            let mut out = String::new();
            flatten("", value, &mut out);
            out
        }
        _ => format!("{}\n", serde_json::to_string_pretty(value).expect("JSON values print")),
    }
}

fn flatten(path: &str, value: &Value, out: &mut String) {
    let join = |key: &str| {
        if path.is_empty() {
            key.to_string()
        } else {
            format!("{path}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(|v| !v.is_object() && !v.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{path}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, out);
            }
        }
        v => out.push_str(&format!("{path}: {}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn human_lines_use_dotted_paths() {
        let v = json!({"kind": "x", "a": {"b": [1, 2], "c": "1/2"}, "rows": [{"p": 1}]});
        assert_eq!(
            json_or_human(&v, Format::Human),
            "a.b: [1, 2]\na.c: 1/2\nkind: x\nrows.0.p: 1\n"
        );
    }

    #[test]
    fn error_line_is_single_json_object() {
        let line = CliError::Win(WinError::IdenticalWords).to_json_line();
        assert!(!line.contains('\n'));
        let v: Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["error"], "identical words");
        assert_eq!(v["kind"], "error");
    }
}
