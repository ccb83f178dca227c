//! JSON and CSV emission. Every record carries `schema_version`.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};
use univalence::certificate::SCHEMA_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One command result: a JSON document, plus a flat table for CSV.
pub struct Report {
    pub json: Value,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new<T: Serialize>(body: &T) -> Result<Self> {
        Ok(Self {
            json: versioned(serde_json::to_value(body)?),
            header: Vec::new(),
            rows: Vec::new(),
        })
    }

    pub fn table(mut self, header: Vec<&'static str>, rows: Vec<Vec<String>>) -> Self {
        self.header = header;
        self.rows = rows;
        self
    }

    pub fn write(&self, format: Format, out: Option<&Path>) -> Result<()> {
        let mut sink: Box<dyn Write> = match out {
            Some(path) => Box::new(
                File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
            ),
            None => Box::new(io::stdout().lock()),
        };
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut sink, &self.json)?;
                writeln!(sink)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(sink);
                let mut header = vec!["schema_version"];
                header.extend(&self.header);
                w.write_record(&header)?;
                for row in &self.rows {
                    let mut record = vec![SCHEMA_VERSION.to_string()];
                    record.extend(row.iter().cloned());
                    w.write_record(&record)?;
                }
                w.flush()?;
                return Ok(());
            }
        }
        sink.flush()?;
        Ok(())
    }
}

fn versioned(body: Value) -> Value {
    match body {
        Value::Object(fields) => {
            let mut m = Map::new();
            m.insert("schema_version".into(), SCHEMA_VERSION.into());
            for (k, v) in fields {
                if k != "schema_version" {
                    m.insert(k, v);
                }
            }
            Value::Object(m)
        }
        other => {
            let mut m = Map::new();
            m.insert("schema_version".into(), SCHEMA_VERSION.into());
            m.insert("data".into(), other);
            Value::Object(m)
        }
    }
}
