//! Structured plain-text reports with a stable key order.
//!
//! A report is an ordered list of unique `key = value` entries; rendering
//! walks the list in insertion order, so identical computations print
//! byte-identical reports. Values are plain strings (rationals appear as
//! `p/q`, vectors as space-separated coordinates); multi-line values are
//! rendered as indented `|`-prefixed blocks. The optional machine block is
//! one JSON object holding the same keys and values, serialized with keys
//! sorted, appended after a `=== machine ===` separator line.

use ringquot_core::linalg::Mat;
use ringquot_core::Scalar;

/// An append-only report; keys are unique dotted paths.
#[derive(Debug, Default)]
pub struct Report {
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    /// Appends an entry; keys must not repeat.
    pub fn push(&mut self, key: impl Into<String>, value: impl Into<String>) {
        let key = key.into();
        debug_assert!(
            self.entries.iter().all(|(k, _)| *k != key),
            "duplicate report key {key}"
        );
        self.entries.push((key, value.into()));
    }

    /// Space-separated coordinates of a vector.
    pub fn vec_value(v: &[Scalar]) -> String {
        let parts: Vec<String> = v.iter().map(Scalar::to_string).collect();
        parts.join(" ")
    }

    /// Appends one entry per matrix row under `key.row<i>`.
    pub fn push_matrix(&mut self, key: &str, m: &Mat) {
        for (i, row) in m.rows_vec().iter().enumerate() {
            self.push(format!("{key}.row{i}"), Report::vec_value(row));
        }
    }

    /// Renders the plain-text form.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.entries {
            if value.contains('\n') {
                out.push_str(key);
                out.push_str(" =\n");
                for line in value.lines() {
                    out.push_str("  | ");
                    out.push_str(line);
                    out.push('\n');
                }
            } else {
                out.push_str(key);
                out.push_str(" = ");
                out.push_str(value);
                out.push('\n');
            }
        }
        out
    }

    /// Renders the machine block (sorted-key JSON of the same entries).
    pub fn render_machine(&self) -> String {
        let mut map = serde_json::Map::new();
        for (key, value) in &self.entries {
            map.insert(key.clone(), serde_json::Value::String(value.clone()));
        }
        let mut out = String::from("=== machine ===\n");
        out.push_str(&serde_json::Value::Object(map).to_string());
        out.push('\n');
        out
    }
}
