//! Table rendering (CSV or JSON) and atomic file output.

use std::io::Write;
use std::path::Path;

use rug::float::Round;
use rug::Float;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Structured,
}

/// Significant decimal digits shown for a target precision.
pub fn digits_for(target_bits: u32) -> usize {
    (target_bits as f64 * 0.301).ceil() as usize
}

/// Round-to-nearest (ties to even) decimal with `digits` significant digits.
pub fn render(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() { "nan".into() } else if x.is_sign_negative() { "-inf".into() } else { "inf".into() };
    }
    x.to_string_radix_round(10, Some(digits), Round::Nearest)
}

/// Bounds are rounded up so the printed value still bounds.
pub fn render_bound(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix_round(10, Some(6), Round::Up)
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_bytes(&self, format: Format, meta: &[(&str, String)]) -> anyhow::Result<Vec<u8>> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                Ok(w.into_inner()?)
            }
            Format::Structured => {
                let mut doc = Map::new();
                for (k, v) in meta {
                    doc.insert((*k).to_string(), Value::String(v.clone()));
                }
                let rows = self
                    .rows
                    .iter()
                    .map(|r| {
                        let mut m = Map::new();
                        for (c, v) in self.columns.iter().zip(r) {
                            m.insert((*c).to_string(), if v.is_empty() { Value::Null } else { Value::String(v.clone()) });
                        }
                        Value::Object(m)
                    })
                    .collect();
                doc.insert("rows".into(), Value::Array(rows));
                let mut out = serde_json::to_vec_pretty(&Value::Object(doc))?;
                out.push(b'\n');
                Ok(out)
            }
        }
    }
}

/// Writes to a temporary file next to `path` and renames it into place, or to
/// stdout when no path is given.
pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> std::io::Result<()> {
    match path {
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
        Some(p) => {
            let dir = match p.parent() {
                Some(d) if !d.as_os_str().is_empty() => d,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(bytes)?;
            tmp.as_file().sync_all()?;
            tmp.persist(p).map_err(|e| e.error)?;
            Ok(())
        }
    }
}
