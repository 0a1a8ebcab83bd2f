use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use rmf_core::Error;
use serde::Serialize;

/// Exit status of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    CheckFailed = 1,
    /// Output written, but the result is degenerate.
    Degenerate = 3,
}

#[derive(Debug)]
pub enum Failure {
    Input(String),
    Numeric(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "input error: {m}"),
            Failure::Numeric(m) => write!(f, "numeric error: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_)
            | Error::DimensionMismatch { .. }
            | Error::NotInHalfSpace { .. }
            | Error::GridMismatch(_)
            | Error::TooFewSamples { .. }
            | Error::OutOfRange { .. }
            | Error::NotUnitSpeed { .. } => Failure::Input(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

pub type CmdResult = Result<Status, Failure>;

pub fn read_input(path: Option<&Path>) -> Result<String, Failure> {
    let path = path.ok_or_else(|| Failure::Input("--input is required".into()))?;
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Input(format!("writing stdout: {e}"))),
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut text = serde_json::to_vec_pretty(value).expect("report serializes");
    text.push(b'\n');
    text
}

/// Sidecar path of a mesh: the same path with a `.json` extension.
pub fn sidecar(path: &Path) -> PathBuf {
    path.with_extension("json")
}

/// Fixed 17-significant-digit formatting for CSV and OBJ output.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Minimal CSV table: header plus rows of numbers.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = csv::Writer::from_writer(Vec::new());
        out.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            out.write_record(row.iter().map(|x| num(*x)))
                .expect("in-memory write");
        }
        out.into_inner().expect("in-memory flush")
    }

    pub fn parse(text: &str) -> Result<Table, Failure> {
        let bad = |e: csv::Error| Failure::Input(format!("CSV: {e}"));
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let header = reader
            .headers()
            .map_err(bad)?
            .iter()
            .map(String::from)
            .collect();
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(bad)?;
            let row = record
                .iter()
                .map(|c| c.parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| Failure::Input(format!("CSV line {}: {e}", rows.len() + 2)))?;
            rows.push(row);
        }
        Ok(Table { header, rows })
    }

    pub fn column(&self, name: &str) -> Result<usize, Failure> {
        self.header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Failure::Input(format!("CSV has no '{name}' column")))
    }
}
