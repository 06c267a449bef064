use std::io::{self, Write};

use serde::Serialize;

use super::config::{Format, RunConfig};
use crate::error::Result;

/// Version of the JSON and CSV layouts written by the CLI.
pub const FORMAT_VERSION: u32 = 1;

/// `v` with 17 significant digits, enough to round-trip any `f64`.
pub fn fmt17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// Compact JSON whose floats are written by [`fmt17`].
struct FixedDigits;

impl serde_json::ser::Formatter for FixedDigits {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedDigits);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    format_version: u32,
    command: &'a str,
    config: &'a RunConfig,
    result: &'a T,
}

/// Named columns of reals, written as CSV or as a JSON object of columns.
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

/// The command result, ready to be written.
pub enum Artifact {
    Json(serde_json::Value),
    Table(Table),
}

impl Artifact {
    pub fn json<T: Serialize>(value: &T) -> Result<Self> {
        Ok(Artifact::Json(serde_json::to_value(value)?))
    }

    /// Renders the artifact with the resolved config embedded.
    pub fn render(&self, config: &RunConfig) -> Result<String> {
        match (self, config.format) {
            (Artifact::Table(t), Format::Csv) => {
                let mut out = String::new();
                out.push_str(&format!("# format_version={FORMAT_VERSION}\n"));
                out.push_str(&format!("# config {}\n", to_json_string(config)?));
                out.push_str(&t.columns.join(","));
                out.push('\n');
                for row in &t.rows {
                    let cells: Vec<String> = row.iter().map(|&v| fmt17(v)).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                Ok(out)
            }
            (Artifact::Table(t), Format::Json) => envelope(config, t),
            (Artifact::Json(v), _) => envelope(config, v),
        }
    }
}

fn envelope<T: Serialize>(config: &RunConfig, result: &T) -> Result<String> {
    let env = Envelope { format_version: FORMAT_VERSION, command: &config.command, config, result };
    let mut text = to_json_string(&env)?;
    text.push('\n');
    Ok(text)
}

/// Parses a CSV written by [`Artifact::render`] back into a table.
pub fn read_table(text: &str) -> Result<Table> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let columns = reader.headers()?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|s| s.parse::<f64>().map_err(|_| crate::Error::Malformed(format!("bad number '{s}'"))))
            .collect::<Result<Vec<f64>>>()?;
        rows.push(row);
    }
    Ok(Table { columns, rows })
}
