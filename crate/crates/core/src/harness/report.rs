use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::padic::{format_rational, Rational};

/// One report cell. Exact rationals expand to `<name>_num` and `<name>_den`
/// columns on output; floats only appear in explicitly numeric columns.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Text(String),
    Exact(Rational),
    Float(f64),
    Flag(bool),
}

impl Cell {
    fn rank(&self) -> u8 {
        match self {
            Cell::Int(_) => 0,
            Cell::Exact(_) => 1,
            Cell::Float(_) => 2,
            Cell::Flag(_) => 3,
            Cell::Text(_) => 4,
        }
    }

    fn cmp_key(&self, other: &Cell) -> Ordering {
        match (self, other) {
            (Cell::Int(a), Cell::Int(b)) => a.cmp(b),
            (Cell::Exact(a), Cell::Exact(b)) => a.cmp(b),
            (Cell::Float(a), Cell::Float(b)) => a.total_cmp(b),
            (Cell::Flag(a), Cell::Flag(b)) => a.cmp(b),
            (Cell::Text(a), Cell::Text(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }

    fn display(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Exact(x) => format_rational(x),
            Cell::Float(x) => format!("{x:e}"),
            Cell::Flag(b) => b.to_string(),
        }
    }

    fn flat(&self, name: &str) -> Vec<(String, String)> {
        match self {
            Cell::Exact(x) => vec![(format!("{name}_num"), x.numer().to_string()), (format!("{name}_den"), x.denom().to_string())],
            other => vec![(name.to_string(), other.display())],
        }
    }

    fn json(&self, name: &str) -> Vec<(String, Value)> {
        fn big(n: &BigInt) -> Value {
            n.to_i64().map(Value::from).unwrap_or_else(|| Value::String(n.to_string()))
        }
        match self {
            Cell::Int(n) => vec![(name.into(), Value::from(*n))],
            Cell::Text(s) => vec![(name.into(), Value::from(s.as_str()))],
            Cell::Exact(x) => vec![(format!("{name}_num"), big(x.numer())), (format!("{name}_den"), big(x.denom()))],
            Cell::Float(x) => vec![(name.into(), serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null))],
            Cell::Flag(b) => vec![(name.into(), Value::Bool(*b))],
        }
    }
}

impl From<i64> for Cell {
    fn from(n: i64) -> Self {
        Cell::Int(n)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        i64::try_from(n).map(Cell::Int).unwrap_or_else(|_| Cell::Text(n.to_string()))
    }
}

impl From<u32> for Cell {
    fn from(n: u32) -> Self {
        Cell::Int(n.into())
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<Rational> for Cell {
    fn from(x: Rational) -> Self {
        Cell::Exact(x)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    /// Name of the check that produced the row.
    pub check: &'static str,
    pub params: Vec<(&'static str, Cell)>,
    pub values: Vec<(&'static str, Cell)>,
    pub pass: bool,
}

impl Row {
    pub fn new(check: &'static str) -> Self {
        Row { check, params: Vec::new(), values: Vec::new(), pass: true }
    }

    pub fn param(mut self, name: &'static str, v: impl Into<Cell>) -> Self {
        self.params.push((name, v.into()));
        self
    }

    pub fn value(mut self, name: &'static str, v: impl Into<Cell>) -> Self {
        self.values.push((name, v.into()));
        self
    }

    pub fn pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    pub fn get(&self, name: &str) -> Option<&Cell> {
        self.params.iter().chain(&self.values).find(|(n, _)| *n == name).map(|(_, c)| c)
    }

    fn cmp_params(&self, other: &Row) -> Ordering {
        for ((_, a), (_, b)) in self.params.iter().zip(&other.params) {
            match a.cmp_key(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.params.len().cmp(&other.params.len()).then_with(|| self.check.cmp(other.check))
    }

    fn flat(&self) -> Vec<(String, String)> {
        let mut out: Vec<_> = self.params.iter().chain(&self.values).flat_map(|(n, c)| c.flat(n)).collect();
        out.push(("check".into(), self.check.into()));
        out.push(("pass".into(), self.pass.to_string()));
        out
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub command: String,
    pub rows: Vec<Row>,
    pub pass_count: usize,
    pub fail_count: usize,
    /// Row index to the name of the check it exercises.
    pub provenance: BTreeMap<usize, &'static str>,
}

impl ExperimentReport {
    /// Sorts rows by parameter tuple and tallies results.
    pub fn from_rows(command: &str, mut rows: Vec<Row>) -> Self {
        rows.sort_by(|a, b| a.cmp_params(b));
        let pass_count = rows.iter().filter(|r| r.pass).count();
        let provenance = rows.iter().enumerate().map(|(i, r)| (i, r.check)).collect();
        ExperimentReport { command: command.into(), fail_count: rows.len() - pass_count, pass_count, rows, provenance }
    }

    pub fn all_pass(&self) -> bool {
        self.fail_count == 0
    }

    /// Column names in first-appearance order.
    fn header(&self) -> Vec<String> {
        let mut cols: Vec<String> = Vec::new();
        for row in &self.rows {
            for (name, _) in row.flat() {
                if !cols.contains(&name) {
                    cols.push(name);
                }
            }
        }
        cols
    }

    pub fn to_csv(&self) -> Result<String> {
        let header = self.header();
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&header).map_err(io)?;
        for row in &self.rows {
            let flat: BTreeMap<_, _> = row.flat().into_iter().collect();
            w.write_record(header.iter().map(|h| flat.get(h).map(String::as_str).unwrap_or(""))).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (n, c) in row.params.iter().chain(&row.values) {
                    m.extend(c.json(n));
                }
                m.insert("check".into(), Value::from(row.check));
                m.insert("pass".into(), Value::Bool(row.pass));
                Value::Object(m)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).map_err(|e| Error::Io(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }

    /// Writes via a temporary file in the target directory and renames it.
    pub fn write_atomic(&self, format: OutputFormat, path: &Path) -> Result<()> {
        let text = self.render(format)?;
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
        tmp.write_all(text.as_bytes()).map_err(io)?;
        tmp.as_file().sync_all().map_err(io)?;
        tmp.persist(path).map_err(|e| Error::Io(e.error.to_string()))?;
        Ok(())
    }
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Io(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Parse(format!("unknown format {s:?}, expected csv or json"))),
        }
    }
}

/// Aligned plain-text table, one line per row in report order.
pub fn render_table(report: &ExperimentReport) -> Result<String> {
    if report.rows.is_empty() {
        return Err(Error::Precondition("cannot render an empty report".into()));
    }
    let mut header: Vec<String> = Vec::new();
    let lines: Vec<Vec<(String, String)>> = report
        .rows
        .iter()
        .map(|row| {
            let mut cells: Vec<(String, String)> =
                row.params.iter().chain(&row.values).map(|(n, c)| (n.to_string(), c.display())).collect();
            cells.push(("pass".into(), if row.pass { "ok" } else { "FAIL" }.into()));
            cells
        })
        .collect();
    for line in &lines {
        for (n, _) in line {
            if !header.contains(n) {
                header.push(n.clone());
            }
        }
    }
    let grid: Vec<Vec<String>> = lines
        .iter()
        .map(|line| {
            header.iter().map(|h| line.iter().find(|(n, _)| n == h).map(|(_, v)| v.clone()).unwrap_or_default()).collect()
        })
        .collect();
    let widths: Vec<usize> = header
        .iter()
        .enumerate()
        .map(|(i, h)| grid.iter().map(|r| r[i].chars().count()).chain([h.chars().count()]).max().unwrap_or(0))
        .collect();
    let fmt_line = |cells: &[String]| {
        let s: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        s.join("  ").trim_end().to_string()
    };
    let mut out = fmt_line(&header);
    out.push('\n');
    for r in &grid {
        out.push_str(&fmt_line(r));
        out.push('\n');
    }
    out.push_str(&format!("{} passed, {} failed\n", report.pass_count, report.fail_count));
    Ok(out)
}
