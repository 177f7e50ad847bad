use std::io::Write;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{Map, Value};

/// Bumped whenever a column is renamed, removed or changes type.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One table cell. Counts and floats serialize as strings in both formats.
#[derive(Debug, Clone)]
pub enum Cell {
    Count(BigInt),
    Int(u64),
    Float { value: f64, digits: usize },
    Sci { value: f64, digits: usize },
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn float(value: f64, digits: usize) -> Self {
        Cell::Float { value, digits }
    }

    fn render(&self) -> String {
        match self {
            Cell::Count(n) => n.to_string(),
            Cell::Int(n) => n.to_string(),
            Cell::Float { value, digits } => format!("{value:.digits$}"),
            Cell::Sci { value, digits } => format!("{value:.digits$e}"),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(n) => Value::from(*n),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
            other => Value::String(other.render()),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    pub command: &'static str,
    pub parameters: Map<String, Value>,
    /// `true` when a work budget cut the output short.
    pub partial: bool,
    pub rows: Vec<Map<String, Value>>,
}

/// A command's result before serialization.
pub struct Table {
    pub command: &'static str,
    pub parameters: Map<String, Value>,
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
    pub partial: bool,
}

impl Table {
    pub fn new(command: &'static str, columns: &'static [&'static str]) -> Self {
        Table {
            command,
            parameters: Map::new(),
            columns,
            rows: Vec::new(),
            partial: false,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn record(&self) -> OutputRecord {
        OutputRecord {
            schema_version: SCHEMA_VERSION,
            command: self.command,
            parameters: self.parameters.clone(),
            partial: self.partial,
            rows: self
                .rows
                .iter()
                .map(|row| {
                    self.columns
                        .iter()
                        .zip(row)
                        .map(|(c, cell)| (c.to_string(), cell.to_json()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn write(&self, format: Format, out: impl Write) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, &self.record())?;
                writeln!(out)
            }
        }
    }

    fn write_csv(&self, out: impl Write) -> std::io::Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        w.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new("demo", &["n", "count", "value", "ok"]);
        t.param("k", 3);
        t.push(vec![
            Cell::Int(7),
            Cell::Count(BigInt::parse_bytes(b"123456789012345678901234567890", 10).unwrap()),
            Cell::float(0.125, 2),
            Cell::Bool(true),
        ]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write(Format::Csv, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,count,value,ok\n7,123456789012345678901234567890,0.12,true\n"
        );
    }

    #[test]
    fn csv_header_without_rows() {
        let mut buf = Vec::new();
        Table::new("demo", &["a", "b"]).write(Format::Csv, &mut buf).unwrap();
        assert_eq!(buf, b"a,b\n");
    }

    #[test]
    fn json_counts_are_strings() {
        let rec = sample().record();
        let v = serde_json::to_value(&rec).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["rows"][0]["count"], "123456789012345678901234567890");
        assert_eq!(v["rows"][0]["n"], 7);
        assert_eq!(v["parameters"]["k"], 3);
    }
}
