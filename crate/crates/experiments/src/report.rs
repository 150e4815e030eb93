//! Experiment reports and their CSV/JSON encodings.
//!
//! CSV output starts with `#` comment lines carrying the version, the kind
//! and every derived value, then one header row and one row per record.
//! Numbers are written as `{:.16e}` (17 significant digits), which parses
//! back to the same `f64`. Curves go to sibling files named
//! `<stem>.<curve>.csv`. JSON output is the whole report as one object.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{RunError, RunResult};
use crate::spec::{OutputFormat, SweepSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Text(String),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<usize> for Value {
    fn from(n: usize) -> Self {
        Value::Int(n as i64)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Text(s.to_owned())
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Value::Null, Value::Num)
    }
}

impl Value {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Value::Num(x) => Some(x),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match *self {
            Value::Bool(b) => Some(b),
            _ => None,
        }
    }

    pub fn as_str(&self) -> Option<&str> {
        match self {
            Value::Text(s) => Some(s),
            _ => None,
        }
    }

    fn to_csv(&self) -> String {
        match self {
            Value::Null => String::new(),
            Value::Bool(b) => b.to_string(),
            Value::Int(n) => n.to_string(),
            Value::Num(x) => format_number(*x),
            Value::Text(s) if s.contains([',', '"', '\n']) => {
                format!("\"{}\"", s.replace('"', "\"\""))
            }
            Value::Text(s) => s.clone(),
        }
    }

    fn from_csv(cell: &str) -> Self {
        match cell {
            "" => Value::Null,
            "true" => Value::Bool(true),
            "false" => Value::Bool(false),
            _ => {
                if let Ok(n) = cell.parse::<i64>() {
                    Value::Int(n)
                } else if let Ok(x) = cell.parse::<f64>() {
                    Value::Num(x)
                } else {
                    Value::Text(cell.to_owned())
                }
            }
        }
    }
}

pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Values of one column; panics on an unknown name.
    pub fn column(&self, name: &str) -> impl Iterator<Item = &Value> {
        let i = self
            .column_index(name)
            .unwrap_or_else(|| panic!("no column {name:?}"));
        self.rows.iter().map(move |r| &r[i])
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Value::to_csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub spec: SweepSpec,
    pub version: String,
    pub duration_secs: f64,
    pub records: Table,
    /// Thresholds, counts and other scalar results.
    pub derived: IndexMap<String, f64>,
    pub curves: IndexMap<String, Table>,
}

impl ExperimentReport {
    pub fn new(spec: SweepSpec, records: Table) -> Self {
        Self {
            spec,
            version: env!("CARGO_PKG_VERSION").to_owned(),
            duration_secs: 0.0,
            records,
            derived: IndexMap::new(),
            curves: IndexMap::new(),
        }
    }

    pub fn derive(&mut self, name: impl Into<String>, value: f64) {
        self.derived.insert(name.into(), value);
    }

    pub fn derived(&self, name: &str) -> f64 {
        *self
            .derived
            .get(name)
            .unwrap_or_else(|| panic!("no derived value {name:?}"))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let kind = serde_json::to_value(self.spec.kind).expect("kind serializes");
        writeln!(out, "# netsteer {}", self.version).unwrap();
        writeln!(out, "# kind = {}", kind.as_str().unwrap_or_default()).unwrap();
        for (k, v) in &self.derived {
            writeln!(out, "# {k} = {}", format_number(*v)).unwrap();
        }
        out.push_str(&self.records.to_csv());
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Writes the report to `path`, or to stdout when `path` is `None`.
    /// Returns the files written.
    pub fn write(&self, path: Option<&Path>, format: OutputFormat) -> RunResult<Vec<PathBuf>> {
        let body = match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        };
        let Some(path) = path else {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| RunError::io("<stdout>", e))?;
            return Ok(Vec::new());
        };
        std::fs::write(path, body).map_err(|e| RunError::io(path, e))?;
        let mut written = vec![path.to_path_buf()];
        if format == OutputFormat::Csv {
            for (name, table) in &self.curves {
                let p = curve_path(path, name);
                std::fs::write(&p, table.to_csv()).map_err(|e| RunError::io(&p, e))?;
                written.push(p);
            }
        }
        Ok(written)
    }
}

pub fn curve_path(path: &Path, curve: &str) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    path.with_file_name(format!("{stem}.{curve}.csv"))
}

/// Contents of a CSV report read back.
#[derive(Debug, Clone, PartialEq)]
pub struct CsvReport {
    pub derived: IndexMap<String, f64>,
    pub table: Table,
}

fn split_csv_line(line: &str) -> Vec<String> {
    let mut cells = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match (c, quoted) {
            ('"', true) if chars.peek() == Some(&'"') => {
                cur.push('"');
                chars.next();
            }
            ('"', _) => quoted = !quoted,
            (',', false) => cells.push(std::mem::take(&mut cur)),
            _ => cur.push(c),
        }
    }
    cells.push(cur);
    cells
}

pub fn parse_csv(text: &str) -> RunResult<CsvReport> {
    let bad = |m: String| RunError::Invalid(m);
    let mut derived = IndexMap::new();
    let mut lines = text.lines().peekable();
    while let Some(line) = lines.next_if(|l| l.starts_with('#')) {
        let body = line.trim_start_matches('#').trim();
        if let Some((k, v)) = body.split_once(" = ") {
            if let Ok(x) = v.parse::<f64>() {
                derived.insert(k.to_owned(), x);
            }
        }
    }
    let header = lines.next().ok_or_else(|| bad("CSV has no header row".into()))?;
    let columns = split_csv_line(header);
    let mut table = Table {
        columns,
        rows: Vec::new(),
    };
    for (n, line) in lines.enumerate() {
        let cells = split_csv_line(line);
        if cells.len() != table.columns.len() {
            return Err(bad(format!("CSV row {} has {} cells", n + 1, cells.len())));
        }
        table.rows.push(cells.iter().map(|c| Value::from_csv(c)).collect());
    }
    Ok(CsvReport { derived, table })
}
