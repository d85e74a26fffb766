//! Versioned JSON, JSONL and CSV rendering shared by every subcommand.

use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde_json::{json, Map, Value};

/// Version of every output schema; bumped on incompatible changes.
pub const SCHEMA: u64 = 1;

/// Keys holding wall-clock measurements; dropped unless timings are requested
/// so that repeated runs are byte-identical.
const TIMING_KEYS: [&str; 2] = ["wall_time_ms", "runtime_ms"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON document.
    Json,
    /// A header line, one line per item, then a summary line.
    Jsonl,
    /// Flat rows with a header; the run config is not echoed.
    Csv,
}

/// Rows for CSV output. A leading `schema` column is added on write.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// One subcommand's output before rendering.
pub struct Document {
    pub command: &'static str,
    pub config: Value,
    /// Key and per-line kind for the item list, when there is one.
    pub items: Option<(&'static str, &'static str, Vec<Value>)>,
    pub summary: Option<(&'static str, Value)>,
    pub table: Table,
}

pub struct Renderer {
    pub format: Format,
    pub timings: bool,
}

impl Renderer {
    pub fn write(&self, doc: Document, out: &mut impl Write) -> Result<()> {
        match self.format {
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("schema".into(), json!(SCHEMA));
                obj.insert("command".into(), json!(doc.command));
                obj.insert("config".into(), doc.config);
                if let Some((key, _, items)) = doc.items {
                    obj.insert(key.into(), Value::Array(items));
                }
                if let Some((key, summary)) = doc.summary {
                    obj.insert(key.into(), summary);
                }
                let mut v = Value::Object(obj);
                self.strip(&mut v);
                serde_json::to_writer_pretty(&mut *out, &v)?;
                writeln!(out)?;
            }
            Format::Jsonl => {
                let header = json!({ "schema": SCHEMA, "kind": "header", "command": doc.command, "config": doc.config });
                writeln!(out, "{header}")?;
                if let Some((_, kind, items)) = doc.items {
                    for item in items {
                        writeln!(out, "{}", self.line(kind, item))?;
                    }
                }
                if let Some((kind, summary)) = doc.summary {
                    writeln!(out, "{}", self.line(kind, summary))?;
                }
            }
            Format::Csv => {
                let table = self.strip_columns(doc.table);
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(std::iter::once("schema").chain(table.columns.iter().copied()))?;
                let schema = SCHEMA.to_string();
                for row in &table.rows {
                    w.write_record(
                        std::iter::once(schema.as_str()).chain(row.iter().map(String::as_str)),
                    )?;
                }
                w.flush()?;
            }
        }
        Ok(())
    }

    /// `{"schema", "kind", ...fields}` for one JSONL line.
    pub fn line(&self, kind: &str, value: Value) -> Value {
        let mut obj = Map::new();
        obj.insert("schema".into(), json!(SCHEMA));
        obj.insert("kind".into(), json!(kind));
        match value {
            Value::Object(fields) => obj.extend(fields),
            other => {
                obj.insert("value".into(), other);
            }
        }
        let mut v = Value::Object(obj);
        self.strip(&mut v);
        v
    }

    fn strip(&self, v: &mut Value) {
        if !self.timings {
            strip_timing(v);
        }
    }

    fn strip_columns(&self, mut table: Table) -> Table {
        if self.timings {
            return table;
        }
        let keep: Vec<bool> = table
            .columns
            .iter()
            .map(|c| !TIMING_KEYS.contains(c))
            .collect();
        table.columns.retain(|c| !TIMING_KEYS.contains(c));
        for row in &mut table.rows {
            let mut it = keep.iter();
            row.retain(|_| *it.next().unwrap_or(&true));
        }
        table
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for key in TIMING_KEYS {
                map.remove(key);
            }
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// CSV cell for an optional float; empty when absent.
pub fn opt_cell(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}
