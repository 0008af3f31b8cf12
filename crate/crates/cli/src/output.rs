//! Deterministic CSV and JSON rendering.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Flag(Option<bool>),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Flag(Some(b)) => b.to_string(),
            Cell::Flag(None) => "-".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => json!(v),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Flag(b) => json!(b),
        }
    }
}

/// A header row plus data rows.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<String>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => pretty(&self.to_json()),
        }
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
    s.push('\n');
    s
}

/// Write to `path`, or to standard output when no path is given.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_uses_seventeen_significant_digits() {
        let mut t = Table::new(vec!["x".into(), "name".into(), "flag".into()]);
        t.rows.push(vec![Cell::Num(0.1), Cell::Text("lambda_V".into()), Cell::Flag(None)]);
        t.rows.push(vec![Cell::Num(-2.5e-7), Cell::Int(3), Cell::Flag(Some(true))]);
        assert_eq!(
            t.to_csv(),
            "x,name,flag\n1.0000000000000001e-1,lambda_V,-\n-2.4999999999999999e-7,3,true\n"
        );
    }

    #[test]
    fn json_layout() {
        let mut t = Table::new(vec!["a".into()]);
        t.rows.push(vec![Cell::Num(f64::NAN)]);
        assert_eq!(t.to_json(), json!({"columns": ["a"], "rows": [[null]]}));
    }
}
