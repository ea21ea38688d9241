//! Output in the two frozen formats. JSON documents carry `schema_version`
//! at the top level; CSV rows carry it as the first column.

use std::io::{self, Write};

use serde_json::{Map, Value};

use crate::{CmdError, Format};

pub const SCHEMA_VERSION: u64 = 1;

/// Emits `doc` as JSON, or `rows` (column names, then values) as CSV.
pub fn emit(format: Format, doc: Value, columns: &[&str], rows: Vec<Vec<String>>) -> Result<(), CmdError> {
    let io_err = |e: &dyn std::fmt::Display| CmdError::Failed(format!("writing output: {e}"));
    let stdout = io::stdout();
    match format {
        Format::Json => {
            let mut top = Map::new();
            top.insert("schema_version".into(), SCHEMA_VERSION.into());
            match doc {
                Value::Object(m) => top.extend(m),
                other => {
                    top.insert("result".into(), other);
                }
            }
            let mut out = stdout.lock();
            serde_json::to_writer_pretty(&mut out, &Value::Object(top)).map_err(|e| io_err(&e))?;
            writeln!(out).map_err(|e| io_err(&e))
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(stdout.lock());
            let header = std::iter::once("schema_version").chain(columns.iter().copied());
            w.write_record(header).map_err(|e| io_err(&e))?;
            for row in rows {
                debug_assert_eq!(row.len(), columns.len());
                let rec = std::iter::once(SCHEMA_VERSION.to_string()).chain(row);
                w.write_record(rec).map_err(|e| io_err(&e))?;
            }
            w.flush().map_err(|e| io_err(&e))
        }
    }
}

pub fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub fn float(x: f64, precision: usize) -> String {
    format!("{x:.precision$}")
}
