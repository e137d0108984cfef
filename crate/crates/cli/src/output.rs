//! Report assembly and rendering: one metadata line, one header line, one
//! line per record, in CSV or JSON.

use std::fmt::Write as _;

/// One field of a record row.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Num(f64),
    Text(String),
}

/// A complete command output: metadata pairs, column names, record rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Field>>,
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            meta: Vec::new(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.meta.push((key.to_string(), value.into()));
        self
    }

    pub fn meta_num(&mut self, key: &str, value: f64) -> &mut Self {
        self.meta(key, format_f64(value))
    }

    pub fn push_row(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Render a float with 17 significant digits, enough for bit-exact
/// round-tripping of any finite f64.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn field_to_csv(field: &Field) -> String {
    match field {
        Field::Num(x) => format_f64(*x),
        Field::Text(s) => s.clone(),
    }
}

/// CSV rendering: `# meta: k=v ...` line, header line, record lines; comma
/// separators, `\n` endings.
pub fn emit_csv(report: &Report) -> String {
    let mut out = String::new();
    out.push_str("# meta:");
    for (k, v) in &report.meta {
        let _ = write!(out, " {k}={v}");
    }
    out.push('\n');
    out.push_str(&report.columns.join(","));
    out.push('\n');
    for row in &report.rows {
        let line: Vec<String> = row.iter().map(field_to_csv).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// JSON rendering of the same report.
pub fn emit_json(report: &Report) -> String {
    use serde_json::{json, Map, Value};
    let mut meta = Map::new();
    for (k, v) in &report.meta {
        meta.insert(k.clone(), Value::String(v.clone()));
    }
    let rows: Vec<Value> = report
        .rows
        .iter()
        .map(|row| {
            Value::Array(
                row.iter()
                    .map(|f| match f {
                        Field::Num(x) => json!(x),
                        Field::Text(s) => json!(s),
                    })
                    .collect(),
            )
        })
        .collect();
    let doc = json!({
        "meta": Value::Object(meta),
        "columns": report.columns,
        "rows": rows,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}
