use std::io::Write;

use serde_json::{Map, Value};

use super::{CliResult, Format};
use crate::box_parity::ReductionTrace;

#[derive(Debug, Clone)]
pub(crate) enum Field {
    UInt(u64),
    Bool(bool),
    /// Decimal string; big integers never go through a JSON number.
    Text(String),
    Trace(ReductionTrace),
}

/// Ordered `(column, value)` pairs.
#[derive(Debug, Clone, Default)]
pub(crate) struct Record(pub Vec<(&'static str, Field)>);

impl Record {
    pub fn push(&mut self, key: &'static str, value: Field) -> &mut Self {
        self.0.push((key, value));
        self
    }

    pub fn uint(mut self, key: &'static str, v: u64) -> Self {
        self.push(key, Field::UInt(v));
        self
    }

    pub fn bool(mut self, key: &'static str, v: bool) -> Self {
        self.push(key, Field::Bool(v));
        self
    }

    pub fn columns(&self) -> Vec<&'static str> {
        self.0.iter().map(|(k, _)| *k).collect()
    }

    fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (k, v) in &self.0 {
            let v = match v {
                Field::UInt(x) => Value::from(*x),
                Field::Bool(b) => Value::Bool(*b),
                Field::Text(s) => Value::String(s.clone()),
                Field::Trace(t) => serde_json::to_value(t).expect("trace serializes"),
            };
            map.insert((*k).to_owned(), v);
        }
        Value::Object(map)
    }

    fn to_csv_fields(&self) -> Vec<String> {
        self.0
            .iter()
            .map(|(_, v)| match v {
                Field::UInt(x) => x.to_string(),
                Field::Bool(b) => b.to_string(),
                Field::Text(s) => s.clone(),
                Field::Trace(t) => t.to_text().trim_end().to_owned(),
            })
            .collect()
    }
}

/// CSV with a header row, or one JSON object per line.
pub(crate) enum Sink<'w> {
    Csv(Box<csv::Writer<&'w mut dyn Write>>),
    Json(&'w mut dyn Write),
}

impl<'w> Sink<'w> {
    pub fn new(format: Format, columns: &[&str], out: &'w mut dyn Write) -> CliResult<Self> {
        Ok(match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
                w.write_record(columns)?;
                Sink::Csv(Box::new(w))
            }
            Format::Json => Sink::Json(out),
        })
    }

    pub fn write(&mut self, record: &Record) -> CliResult<()> {
        match self {
            Sink::Csv(w) => w.write_record(record.to_csv_fields())?,
            Sink::Json(out) => {
                serde_json::to_writer(&mut **out, &record.to_json()).map_err(std::io::Error::from)?;
                out.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    /// `trailer` is written after the last record, outside the record stream.
    pub fn finish(self, trailer: Option<&str>) -> CliResult<()> {
        let out = match self {
            Sink::Csv(w) => w.into_inner().map_err(|e| e.into_error())?,
            Sink::Json(out) => out,
        };
        if let Some(line) = trailer {
            writeln!(out, "{line}")?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Writes a single record, header included for CSV.
pub(crate) fn emit(format: Format, record: &Record, out: &mut dyn Write) -> CliResult<()> {
    let mut sink = Sink::new(format, &record.columns(), out)?;
    sink.write(record)?;
    sink.finish(None)
}
