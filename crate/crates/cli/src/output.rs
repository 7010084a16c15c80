//! Rendering of job results as JSON or CSV.

use dynheight::exactnum::{Ball, Rational};
use dynheight::Result;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = dynheight::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(dynheight::Error::Parse(format!("unknown format '{s}' (json or csv)"))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// A verb's result: the JSON payload, an optional table for CSV output and a
/// one-row summary used by sweeps.
#[derive(Clone, Debug)]
pub struct Output {
    pub result: Value,
    pub table: Option<Table>,
    pub summary: Vec<(String, String)>,
}

impl Output {
    pub fn new(result: impl Serialize) -> Result<Self> {
        let result = serde_json::to_value(result).map_err(|e| dynheight::Error::Parse(e.to_string()))?;
        Ok(Output { result, table: None, summary: Vec::new() })
    }

    pub fn with_table(mut self, t: Table) -> Self {
        self.table = Some(t);
        self
    }

    pub fn with_summary(mut self, s: Vec<(&str, String)>) -> Self {
        self.summary = s.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        self
    }

    /// The table, or the summary as a single row.
    pub fn csv_table(&self) -> Table {
        if let Some(t) = &self.table {
            return t.clone();
        }
        Table {
            headers: self.summary.iter().map(|(k, _)| k.clone()).collect(),
            rows: vec![self.summary.iter().map(|(_, v)| v.clone()).collect()],
        }
    }
}

pub fn cell_rational(q: &Rational) -> String {
    q.to_string()
}

/// `mid +/- rad`, or the exact value when the ball is a point with a short rational form.
pub fn cell_ball(b: &Ball) -> String {
    if b.is_exact() {
        let q = b.mid().to_rational();
        if q.denom().bits() <= 64 && q.numer().bits() <= 128 {
            return q.to_string();
        }
    }
    b.to_string()
}

pub fn render_csv(job_line: &str, table: &Table) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| dynheight::Error::Parse(e.to_string());
    w.write_record(&table.headers).map_err(io)?;
    for r in &table.rows {
        w.write_record(r).map_err(io)?;
    }
    let body = String::from_utf8(w.into_inner().map_err(|e| dynheight::Error::Parse(e.to_string()))?)
        .expect("csv output is utf-8");
    Ok(format!("# job: {job_line}\n{body}"))
}
