use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use padovan_core::{render_decimal, BigRational, Params, Scalar};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::CliError;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    /// Exact value, rendered `num/den` and quoted in CSV.
    Rational(String),
    /// Decimal rendering of an exact value.
    Decimal(String),
    Float(f64),
}

impl Cell {
    pub fn rational(r: &BigRational) -> Cell {
        Cell::Rational(r.to_string())
    }

    /// The value and its decimal approximation, for either backend.
    pub fn pair(value: &Scalar, precision: usize) -> [Cell; 2] {
        match value {
            Scalar::Exact(r) => [
                Cell::rational(r),
                Cell::Decimal(render_decimal(r, precision)),
            ],
            Scalar::Float(x) => [Cell::Float(*x), Cell::Decimal(format!("{x:.precision$}"))],
        }
    }

    fn csv_field(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Rational(s) | Cell::Decimal(s) => s.clone(),
            Cell::Float(x) => float_field(*x),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(n) => Value::from(*n),
            Cell::Rational(s) | Cell::Decimal(s) => Value::from(s.as_str()),
            Cell::Float(x) => serde_json::Number::from_f64(*x)
                .map(Value::Number)
                .unwrap_or_else(|| Value::from(x.to_string())),
        }
    }
}

/// Shortest round-trip form, switching to exponent notation far from 1.
fn float_field(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn json_rows(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert(name.clone(), cell.json());
                }
                Value::Object(obj)
            })
            .collect()
    }

    /// RFC 4180 with LF line endings. Non-numeric fields (such as `7/6`) are quoted.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .quote_style(csv::QuoteStyle::NonNumeric)
            .from_writer(out);
        writer.write_record(&self.columns)?;
        for row in &self.rows {
            writer.write_record(row.iter().map(Cell::csv_field))?;
        }
        writer.flush()?;
        Ok(())
    }
}

#[derive(Debug, Serialize)]
pub struct ParamsEcho {
    alpha: String,
    beta: String,
    gamma: String,
    p: String,
    q: String,
}

impl From<&Params> for ParamsEcho {
    fn from(params: &Params) -> Self {
        ParamsEcho {
            alpha: params.alpha().to_string(),
            beta: params.beta().to_string(),
            gamma: params.gamma().to_string(),
            p: params.p().to_string(),
            q: params.q().to_string(),
        }
    }
}

/// Top-level JSON object shared by every command.
#[derive(Debug, Serialize)]
pub struct Envelope {
    pub schema_version: &'static str,
    pub command: &'static str,
    pub params: ParamsEcho,
    pub run: Value,
    pub data: Vec<Value>,
}

impl Envelope {
    pub fn new(command: &'static str, params: &Params, run: Value, data: Vec<Value>) -> Self {
        Envelope {
            schema_version: SCHEMA_VERSION,
            command,
            params: params.into(),
            run,
            data,
        }
    }

    pub fn write<W: Write>(&self, mut out: W) -> Result<(), CliError> {
        serde_json::to_writer_pretty(&mut out, self)?;
        out.write_all(b"\n")?;
        out.flush()?;
        Ok(())
    }
}

pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}
