//! Run reports: a comparable payload (version, command, parameters, results)
//! and a metadata section that is allowed to differ between runs.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Significant digits kept for every floating value in a report.
pub const FLOAT_DIGITS: usize = 15;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub argv: Vec<String>,
    pub threads: usize,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub version: String,
    pub command: String,
    pub parameters: Value,
    pub results: Value,
    pub meta: Meta,
}

impl RunReport {
    pub fn new(command: &str, parameters: &impl Serialize, results: &impl Serialize, meta: Meta) -> Result<Self> {
        Ok(Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            parameters: to_rounded_value(parameters)?,
            results: to_rounded_value(results)?,
            meta,
        })
    }

    /// Everything except `meta`, as compact JSON.
    pub fn comparable_json(&self) -> String {
        let mut map = Map::new();
        map.insert("version".into(), Value::String(self.version.clone()));
        map.insert("command".into(), Value::String(self.command.clone()));
        map.insert("parameters".into(), self.parameters.clone());
        map.insert("results".into(), self.results.clone());
        Value::Object(map).to_string()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }
}

/// Rounds to [`FLOAT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", FLOAT_DIGITS - 1, x).parse().unwrap_or(x)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().and_then(|x| serde_json::Number::from_f64(round_sig(x))) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_floats),
        Value::Object(map) => map.values_mut().for_each(round_floats),
        _ => {}
    }
}

pub fn to_rounded_value(x: &impl Serialize) -> Result<Value> {
    let mut v = serde_json::to_value(x).map_err(|e| Error::Parse(e.to_string()))?;
    round_floats(&mut v);
    Ok(v)
}

/// Formats a float for CSV and text output, switching to exponent notation
/// for very small or very large magnitudes.
pub fn fmt_float(x: f64) -> String {
    let r = round_sig(x);
    if r != 0.0 && !(1e-4..1e15).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        r.to_string()
    }
}

/// A header plus rows, written as CSV.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}
