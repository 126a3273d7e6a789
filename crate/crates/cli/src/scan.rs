//! Batch decisions over a CSV column of polynomials.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use strongirr::{IntPolynomial, Verdict};

use crate::{decide_checked, parse_polynomial, to_json, verdict_line, CliError, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Proven,
    Disproven,
    Unknown,
    ParseError,
}

#[derive(Debug, Serialize)]
pub struct ScanRecord {
    /// 1-based data row, header excluded.
    pub row: usize,
    /// Name column value, or the raw polynomial when there is no name column.
    pub name: String,
    pub input: String,
    pub polynomial: Option<IntPolynomial>,
    pub status: Status,
    pub result: Option<Verdict>,
    pub error: Option<String>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub rows: usize,
    pub proven: usize,
    pub disproven: usize,
    pub unknown: usize,
    pub parse_error: usize,
}

impl Summary {
    fn tally(records: &[ScanRecord]) -> Self {
        let mut s = Summary {
            rows: records.len(),
            ..Summary::default()
        };
        for r in records {
            match r.status {
                Status::Proven => s.proven += 1,
                Status::Disproven => s.disproven += 1,
                Status::Unknown => s.unknown += 1,
                Status::ParseError => s.parse_error += 1,
            }
        }
        s
    }
}

struct Row {
    row: usize,
    name: String,
    input: String,
}

fn read_rows(path: &Path, column: &str, name_column: &str) -> Result<Vec<Row>, CliError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let headers = rdr
        .headers()
        .map_err(|e| CliError::Input(format!("malformed header in {}: {e}", path.display())))?
        .clone();
    if headers.is_empty() {
        return Ok(Vec::new());
    }
    let poly_idx = headers
        .iter()
        .position(|h| h.trim() == column)
        .ok_or_else(|| CliError::Input(format!("no column {column:?} in {}", path.display())))?;
    let name_idx = headers.iter().position(|h| h.trim() == name_column);
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let input = rec.get(poly_idx).unwrap_or("").trim().to_string();
        let name = name_idx
            .and_then(|j| rec.get(j))
            .map(|s| s.trim().to_string())
            .unwrap_or_else(|| input.clone());
        rows.push(Row {
            row: i + 1,
            name,
            input,
        });
    }
    Ok(rows)
}

fn scan_row(row: Row, search_bound: usize) -> Result<ScanRecord, CliError> {
    let start = Instant::now();
    let mut rec = ScanRecord {
        row: row.row,
        name: row.name,
        input: row.input,
        polynomial: None,
        status: Status::ParseError,
        result: None,
        error: None,
        elapsed_ms: 0.0,
    };
    let outcome = parse_polynomial(&rec.input).and_then(|f| {
        rec.polynomial = Some(f.clone());
        decide_checked(&f, search_bound)
    });
    match outcome {
        Ok(v) => {
            rec.status = match v {
                Verdict::Proven { .. } => Status::Proven,
                Verdict::Disproven { .. } => Status::Disproven,
                Verdict::Unknown { .. } => Status::Unknown,
            };
            rec.result = Some(v);
        }
        Err(CliError::Input(m)) => rec.error = Some(m),
        Err(e) => return Err(e),
    }
    rec.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(rec)
}

/// Scans every row; rows come back in input order whatever `jobs` is.
pub fn scan_rows(
    path: &Path,
    column: &str,
    name_column: &str,
    search_bound: usize,
    jobs: usize,
) -> Result<Vec<ScanRecord>, CliError> {
    if search_bound < 1 {
        return Err(CliError::Usage("search bound must be at least 1".into()));
    }
    let rows = read_rows(path, column, name_column)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Invariant(e.to_string()))?;
    pool.install(|| {
        rows.into_par_iter()
            .map(|r| scan_row(r, search_bound))
            .collect()
    })
}

pub fn cmd_scan(
    path: &Path,
    column: &str,
    name_column: &str,
    search_bound: usize,
    jobs: usize,
    json: bool,
) -> Result<Report, CliError> {
    let records = scan_rows(path, column, name_column, search_bound, jobs)?;
    let summary = Summary::tally(&records);
    let exit_code = if summary.parse_error > 0 { 2 } else { 0 };
    let stdout = if json {
        to_json(&serde_json::json!({"records": records, "summary": summary}))
    } else {
        let mut out = String::new();
        for r in &records {
            let detail = match (&r.result, &r.error) {
                (Some(v), _) => verdict_line(v),
                (None, Some(e)) => format!("parse error: {e}"),
                (None, None) => String::new(),
            };
            writeln!(
                out,
                "{}\t{}\t{}\t{:.1} ms",
                r.row, r.name, detail, r.elapsed_ms
            )
            .unwrap();
        }
        writeln!(
            out,
            "rows={} proven={} disproven={} unknown={} parse-error={}",
            summary.rows, summary.proven, summary.disproven, summary.unknown, summary.parse_error
        )
        .unwrap();
        out
    };
    Ok(Report { stdout, exit_code })
}
