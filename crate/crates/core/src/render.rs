//! Tabular output in JSON, CSV and Markdown.
//!
//! Exact values are always rendered as canonical `p/q` text. Floating fields
//! (Monte Carlo only) carry 17 significant digits in text formats.

use std::fmt;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

use crate::exactnum::ExactRational;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Markdown,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(u64),
    Rational(ExactRational),
    Float(f64),
    Bool(bool),
    Text(String),
    Null,
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl From<ExactRational> for Cell {
    fn from(v: ExactRational) -> Self {
        Cell::Rational(v)
    }
}

impl From<Option<ExactRational>> for Cell {
    fn from(v: Option<ExactRational>) -> Self {
        v.map_or(Cell::Null, Cell::Rational)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

/// 17 significant digits, scientific notation.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Rational(r) => write!(f, "{r}"),
            Cell::Float(x) => f.write_str(&format_float(*x)),
            Cell::Bool(b) => write!(f, "{b}"),
            Cell::Text(s) => f.write_str(s),
            Cell::Null => Ok(()),
        }
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Rational(r) => Value::String(r.to_string()),
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Null => Value::Null,
        }
    }
}

/// One command's output: fixed columns, uniform rows, optional top-level
/// metadata (JSON) and a trailing summary.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Map<String, Value>,
    pub summary: Option<(String, Value)>,
}

impl Table {
    pub fn new(command: &str, columns: Vec<&'static str>) -> Self {
        Self {
            command: command.to_string(),
            columns,
            ..Default::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.render_json(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Markdown => self.render_markdown(),
        }
    }

    fn render_json(&self) -> String {
        let mut top = Map::new();
        top.insert("schema_version".into(), Value::String(SCHEMA_VERSION.into()));
        top.insert("command".into(), Value::String(self.command.clone()));
        for (k, v) in &self.meta {
            top.insert(k.clone(), v.clone());
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.to_json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        top.insert("rows".into(), Value::Array(rows));
        if let Some((_, summary)) = &self.summary {
            top.insert("summary".into(), summary.clone());
        }
        let mut out = serde_json::to_string_pretty(&Value::Object(top)).expect("json values serialize");
        out.push('\n');
        out
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_string)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }

    fn render_markdown(&self) -> String {
        let escape = |s: String| s.replace('|', "\\|");
        let mut out = String::new();
        out.push_str(&format!("| {} |\n", self.columns.join(" | ")));
        out.push_str(&format!("|{}\n", "---|".repeat(self.columns.len())));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| escape(c.to_string())).collect();
            out.push_str(&format!("| {} |\n", cells.join(" | ")));
        }
        if let Some((line, _)) = &self.summary {
            out.push_str(&format!("\n{line}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("cauchy", vec!["n", "c_n"]);
        t.push(vec![0usize.into(), ExactRational::one().into()]);
        t.push(vec![2usize.into(), "-1/6".parse::<ExactRational>().unwrap().into()]);
        t
    }

    #[test]
    fn csv_layout() {
        assert_eq!(sample().render(OutputFormat::Csv), "n,c_n\n0,1\n2,-1/6\n");
    }

    #[test]
    fn csv_quotes_when_needed() {
        let mut t = Table::new("x", vec!["a"]);
        t.push(vec![Cell::Text("p,q".into())]);
        assert_eq!(t.render(OutputFormat::Csv), "a\n\"p,q\"\n");
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_str(&sample().render(OutputFormat::Json)).unwrap();
        assert_eq!(v["schema_version"], "1");
        assert_eq!(v["command"], "cauchy");
        assert_eq!(v["rows"][1]["c_n"], "-1/6");
        assert_eq!(v["rows"][1]["n"], 2);
    }

    #[test]
    fn markdown_layout() {
        let md = sample().render(OutputFormat::Markdown);
        assert_eq!(md, "| n | c_n |\n|---|---|\n| 0 | 1 |\n| 2 | -1/6 |\n");
    }

    #[test]
    fn floats_keep_seventeen_digits() {
        assert_eq!(format_float(1.0), "1.0000000000000000e0");
        let x = 0.1f64 + 0.2;
        assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        assert_eq!(Cell::Float(f64::INFINITY).to_json(), Value::Null);
    }
}
