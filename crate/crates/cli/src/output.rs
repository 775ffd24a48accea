//! Tabular output. Every cell is preformatted text, so CSV and JSON carry
//! the same digits and re-emitting a parsed table reproduces it exactly.

use std::io::Write;

use serde_json::{Map, Value};
use stieltjes_core::SciValue;

use crate::args::Format;

/// Largest decimal exponent printed as a plain value; beyond it a record
/// carries `(sign, log10|value|)` instead.
pub const MAX_PLAIN_EXP10: i64 = 300;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Option<String>>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Option<String>>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn write<W: Write + ?Sized>(&self, format: Format, out: &mut W) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    pub fn write_csv<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.as_deref().unwrap_or("")))?;
        }
        w.flush()
    }

    pub fn write_json<W: Write + ?Sized>(&self, out: &mut W) -> std::io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut m = Map::new();
                for (k, v) in self.columns.iter().zip(row) {
                    let v = v.as_ref().map_or(Value::Null, |s| Value::String(s.clone()));
                    m.insert(k.clone(), v);
                }
                Value::Object(m)
            })
            .collect();
        serde_json::to_writer_pretty(&mut *out, &rows)?;
        writeln!(out)
    }

    /// Inverse of [`Table::write_csv`]; empty cells become `None`.
    pub fn read_csv(text: &str) -> csv::Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let columns = r.headers()?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            rows.push(
                rec?.iter()
                    .map(|c| (!c.is_empty()).then(|| c.to_string()))
                    .collect(),
            );
        }
        Ok(Self { columns, rows })
    }
}

/// Ten significant digits, scientific.
pub fn sci(v: &SciValue) -> String {
    v.to_sci_string()
}

pub fn float(x: f64) -> String {
    format!("{x:.9e}")
}

/// Shortest fixed form of an index with at most nine decimals.
pub fn index(n: f64) -> String {
    let s = format!("{n:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_string()
    }
}

/// `(value, sign, log10|value|)` cells under the overflow rule: exactly one
/// of `value` and the pair is filled.
pub fn value_cells(v: &SciValue) -> [Option<String>; 3] {
    if v.is_zero() || v.exp10().abs() <= MAX_PLAIN_EXP10 {
        [Some(sci(v)), None, None]
    } else {
        [
            None,
            Some(format!("{}", v.signum() as i64)),
            Some(format!("{:.10}", v.log10_abs())),
        ]
    }
}

/// Printed-table style: plain decimals with ten significant digits for
/// moderate magnitudes, seven-digit scientific otherwise.
pub fn printed(v: &SciValue) -> String {
    let e = v.exp10();
    if v.is_zero() {
        "0".into()
    } else if (-6..=3).contains(&e) {
        let decimals = (9 - e).max(0) as usize;
        format!("{:.*}", decimals, v.mantissa() * 10f64.powi(e as i32))
    } else {
        v.format_digits(7)
    }
}
