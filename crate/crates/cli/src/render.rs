//! Output documents and their json, markdown and csv renderings.

use doublet_core::cyclotomic::Cyclotomic;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1.0";

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OutputDocument {
    pub schema_version: &'static str,
    pub command: String,
    pub payload: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Md,
    Csv,
}

/// A flat table used by the markdown and csv renderings.
#[derive(Debug, Clone)]
pub struct Table {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(title: impl Into<String>, header: &[&str]) -> Self {
        Table { title: title.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    /// A square matrix with its basis labels on both axes.
    pub fn labeled_matrix(title: impl Into<String>, labels: &[String], cells: Vec<Vec<String>>) -> Self {
        let mut header = vec![String::new()];
        header.extend(labels.iter().cloned());
        let rows = labels
            .iter()
            .zip(cells)
            .map(|(l, row)| std::iter::once(l.clone()).chain(row).collect())
            .collect();
        Table { title: title.into(), header, rows }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// Everything a command produces.
#[derive(Debug)]
pub struct Rendered {
    pub payload: Value,
    pub tables: Vec<Table>,
}

pub fn rational(q: &doublet_core::cyclotomic::Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// `{"conductor", "coeffs"}` in the canonical field, plus `display` for values in `Q` or `Q(ζ3)`.
pub fn cyclotomic(x: &Cyclotomic) -> Value {
    let c = x.canonical();
    let coeffs: Vec<String> = c.coeffs().iter().map(rational).collect();
    let mut v = json!({ "conductor": c.conductor(), "coeffs": coeffs });
    if matches!(c.conductor(), 1 | 2 | 3 | 6) {
        v["display"] = Value::String(c.display());
    }
    v
}

pub fn cyclotomic_matrix(rows: &[Vec<Cyclotomic>]) -> Value {
    Value::Array(rows.iter().map(|r| Value::Array(r.iter().map(cyclotomic).collect())).collect())
}

pub fn display_rows(rows: &[Vec<Cyclotomic>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(Cyclotomic::display).collect()).collect()
}

pub fn to_markdown(tables: &[Table]) -> String {
    let mut out = String::new();
    for (k, t) in tables.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        if !t.title.is_empty() {
            out.push_str(&format!("### {}\n\n", t.title));
        }
        let line = |cells: &[String]| format!("| {} |\n", cells.iter().map(|c| c.replace('|', "\\|")).collect::<Vec<_>>().join(" | "));
        out.push_str(&line(&t.header));
        out.push_str(&format!("|{}\n", "---|".repeat(t.header.len())));
        for r in &t.rows {
            out.push_str(&line(r));
        }
    }
    out
}

pub fn to_csv(tables: &[Table]) -> Result<String, csv::Error> {
    let mut out = String::new();
    for (k, t) in tables.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        if !t.title.is_empty() {
            w.write_record([format!("# {}", t.title)])?;
        }
        w.write_record(&t.header)?;
        for r in &t.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        out.push_str(&String::from_utf8_lossy(&bytes));
    }
    Ok(out)
}
