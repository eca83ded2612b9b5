//! Report model and its three renderings.

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::args::Format;
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Nums(Vec<f64>),
    Empty,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<u32> for Value {
    fn from(x: u32) -> Self {
        Value::Int(i64::from(x))
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Value::Empty, Value::Num)
    }
}

/// Ordered fields.
pub type Record = Vec<(&'static str, Value)>;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

impl Check {
    /// Passes when `value <= limit`.
    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            limit,
            pass: value <= limit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// One `key = value` block per record.
    Blocks,
    /// Aligned columns with the footer rows below.
    Columns,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Record,
    pub results: Vec<Record>,
    pub checks: Vec<Check>,
    /// Extra CSV and text rows after the results; absent from JSON.
    pub footer: Vec<Record>,
    pub layout: Layout,
}

impl Report {
    pub fn new(command: &'static str, inputs: Record) -> Self {
        Self {
            command,
            inputs,
            results: Vec::new(),
            checks: Vec::new(),
            footer: Vec::new(),
            layout: Layout::Blocks,
        }
    }

    pub fn failed_checks(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
            Format::Text => Ok(self.to_text()),
        }
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        let mut text =
            serde_json::to_string_pretty(self).map_err(|e| CliError::Solver(format!("JSON encoding: {e}")))?;
        text.push('\n');
        Ok(text)
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let columns = self.columns();
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let encode = |e: csv::Error| CliError::Solver(format!("CSV encoding: {e}"));
        writer.write_record(&columns).map_err(encode)?;
        for record in self.results.iter().chain(&self.footer) {
            writer
                .write_record(columns.iter().map(|c| field(record, c).map(plain).unwrap_or_default()))
                .map_err(encode)?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| CliError::Solver(format!("CSV encoding: {e}")))?;
        String::from_utf8(bytes).map_err(|e| CliError::Solver(format!("CSV encoding: {e}")))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self.layout {
            Layout::Blocks => {
                for (i, record) in self.results.iter().enumerate() {
                    if i > 0 {
                        out.push('\n');
                    }
                    let width = record.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                    for (key, value) in record {
                        out.push_str(&format!("{key:<width$} = {}\n", plain(value)));
                    }
                }
            }
            Layout::Columns => {
                let columns = self.columns();
                let rows: Vec<Vec<String>> = std::iter::once(columns.iter().map(|c| c.to_string()).collect())
                    .chain(
                        self.results
                            .iter()
                            .chain(&self.footer)
                            .map(|r| columns.iter().map(|c| field(r, c).map(plain).unwrap_or_default()).collect()),
                    )
                    .collect();
                let widths: Vec<usize> = (0..columns.len())
                    .map(|j| rows.iter().map(|r| r[j].len()).max().unwrap_or(0))
                    .collect();
                for row in rows {
                    let line: Vec<String> = row.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                    out.push_str(line.join("  ").trim_end());
                    out.push('\n');
                }
            }
        }
        if !self.checks.is_empty() {
            out.push('\n');
            for check in &self.checks {
                out.push_str(&format!(
                    "{} {}: {:e} (limit {:e})\n",
                    if check.pass { "PASS" } else { "FAIL" },
                    check.name,
                    check.value,
                    check.limit
                ));
            }
        }
        out
    }

    /// Keys in first-seen order.
    fn columns(&self) -> Vec<&'static str> {
        let mut columns: Vec<&'static str> = Vec::new();
        for (key, _) in self.results.iter().flatten() {
            if !columns.contains(key) {
                columns.push(key);
            }
        }
        columns
    }
}

fn field<'a>(record: &'a Record, key: &str) -> Option<&'a Value> {
    record.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
}

/// Shortest round-trip text, used by CSV and text output.
fn plain(value: &Value) -> String {
    match value {
        Value::Num(x) => format!("{x:?}"),
        Value::Int(i) => i.to_string(),
        Value::Text(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Nums(xs) => xs.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(";"),
        Value::Empty => String::new(),
    }
}

/// 17 significant digits; `null` when not finite.
fn json_number(x: f64) -> Box<RawValue> {
    let text = if x.is_finite() { format!("{x:.16e}") } else { "null".to_string() };
    RawValue::from_string(text).expect("formatted number is valid JSON")
}

struct Number(f64);

impl Serialize for Number {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        json_number(self.0).serialize(s)
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Num(x) => Number(*x).serialize(s),
            Value::Int(i) => s.serialize_i64(*i),
            Value::Text(t) => s.serialize_str(t),
            Value::Bool(b) => s.serialize_bool(*b),
            Value::Nums(xs) => {
                let mut seq = s.serialize_seq(Some(xs.len()))?;
                for x in xs {
                    seq.serialize_element(&Number(*x))?;
                }
                seq.end()
            }
            Value::Empty => s.serialize_none(),
        }
    }
}

struct Fields<'a>(&'a Record);

impl Serialize for Fields<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (key, value) in self.0 {
            map.serialize_entry(key, value)?;
        }
        map.end()
    }
}

impl Serialize for Check {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("name", &self.name)?;
        map.serialize_entry("value", &Number(self.value))?;
        map.serialize_entry("limit", &Number(self.limit))?;
        map.serialize_entry("pass", &self.pass)?;
        map.end()
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let results: Vec<Fields> = self.results.iter().map(Fields).collect();
        let mut map = s.serialize_map(Some(5))?;
        map.serialize_entry("schema_version", &SCHEMA_VERSION)?;
        map.serialize_entry("command", self.command)?;
        map.serialize_entry("inputs", &Fields(&self.inputs))?;
        map.serialize_entry("results", &results)?;
        map.serialize_entry("checks", &self.checks)?;
        map.end()
    }
}
