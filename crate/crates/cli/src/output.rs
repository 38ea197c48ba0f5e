//! Rendering for command results: CSV data rows on stdout with parameters and
//! metadata on stderr, or one JSON object carrying everything. Identical
//! invocations produce byte-identical stdout.

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One table cell. Floats render at the active precision; non-finite floats
/// become -inf/inf/nan in CSV and null in JSON; Empty is a blank CSV field
/// and a JSON null.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

pub struct Record {
    pub command: &'static str,
    pub parameters: Vec<(&'static str, String)>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Vec<(&'static str, String)>,
    /// Diagnostic lines; always printed to stderr.
    pub notes: Vec<String>,
}

pub fn render(record: &Record, format: Format, precision: usize) {
    match format {
        Format::Csv => render_csv(record, precision),
        Format::Json => render_json(record, precision),
    }
    for note in &record.notes {
        eprintln!("# note: {note}");
    }
}

fn float_text(v: f64, precision: usize) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_string()
    } else {
        format!("{v:.precision$}")
    }
}

fn csv_field(text: &str) -> String {
    if text.contains(['"', ',', '\n', '\r']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn cell_csv(cell: &Cell, precision: usize) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Float(v) => float_text(*v, precision),
        Cell::Text(v) => csv_field(v),
        Cell::Empty => String::new(),
    }
}

fn render_csv(record: &Record, precision: usize) {
    eprintln!("# command={}", record.command);
    for (k, v) in &record.parameters {
        eprintln!("# {k}={v}");
    }
    for (k, v) in &record.metadata {
        eprintln!("# {k}={v}");
    }
    let mut out = String::new();
    out.push_str(&record.header.join(","));
    out.push('\n');
    for row in &record.rows {
        let fields: Vec<String> = row.iter().map(|c| cell_csv(c, precision)).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    print!("{out}");
}

fn cell_json(cell: &Cell, precision: usize) -> Value {
    match cell {
        Cell::Int(v) => Value::Number(Number::from(*v)),
        Cell::Float(v) => {
            if !v.is_finite() {
                return Value::Null;
            }
            let rounded: f64 = format!("{v:.precision$}").parse().expect("rounded float");
            Number::from_f64(rounded).map_or(Value::Null, Value::Number)
        }
        Cell::Text(v) => Value::String(v.clone()),
        Cell::Empty => Value::Null,
    }
}

fn render_json(record: &Record, precision: usize) {
    let mut top = Map::new();
    top.insert("command".into(), Value::String(record.command.into()));
    let mut params = Map::new();
    for (k, v) in &record.parameters {
        params.insert((*k).into(), Value::String(v.clone()));
    }
    top.insert("parameters".into(), Value::Object(params));
    let rows: Vec<Value> = record
        .rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            for (name, cell) in record.header.iter().zip(row) {
                obj.insert((*name).into(), cell_json(cell, precision));
            }
            Value::Object(obj)
        })
        .collect();
    top.insert("rows".into(), Value::Array(rows));
    let mut meta = Map::new();
    for (k, v) in &record.metadata {
        meta.insert((*k).into(), Value::String(v.clone()));
    }
    top.insert("metadata".into(), Value::Object(meta));
    let text = serde_json::to_string_pretty(&Value::Object(top)).expect("serialize");
    println!("{text}");
}
