use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Counters for one `(L, t)` cell.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub t: usize,
    pub l: usize,
    pub trials: u64,
    pub successes: u64,
    /// Decoder declared failure.
    pub failures: u64,
    /// Decoder returned a codeword other than the transmitted one.
    pub undetected: u64,
    /// Trials where the second decoder classified differently (`both` mode only).
    pub disagreements: u64,
    pub mean_cond: Option<f64>,
}

impl TrialRecord {
    pub fn p_f(&self) -> f64 {
        self.failures as f64 / self.trials as f64
    }

    pub fn p_ml(&self) -> f64 {
        self.undetected as f64 / self.trials as f64
    }

    pub fn p_e(&self) -> f64 {
        (self.failures + self.undetected) as f64 / self.trials as f64
    }
}

/// Cells ordered by `(L, t)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub records: Vec<TrialRecord>,
}

impl Report {
    pub fn get(&self, l: usize, t: usize) -> Option<&TrialRecord> {
        self.records.iter().find(|r| r.l == l && r.t == t)
    }

    pub fn disagreements(&self) -> u64 {
        self.records.iter().map(|r| r.disagreements).sum()
    }
}

#[derive(Serialize, Deserialize)]
struct CsvRow {
    t: usize,
    #[serde(rename = "L")]
    l: usize,
    trials: u64,
    failures: u64,
    undetected: u64,
    p_f: f64,
    p_ml: f64,
    p_e: f64,
    mean_cond: Option<f64>,
}

const HEADER: [&str; 9] = ["t", "L", "trials", "failures", "undetected", "p_f", "p_ml", "p_e", "mean_cond"];

/// Writes the report as CSV; the header is present even for an empty report.
pub fn write_csv<W: Write>(report: &Report, out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(HEADER)?;
    let mut rows: Vec<&TrialRecord> = report.records.iter().collect();
    rows.sort_by_key(|r| (r.l, r.t));
    for r in rows {
        w.serialize(CsvRow {
            t: r.t,
            l: r.l,
            trials: r.trials,
            failures: r.failures,
            undetected: r.undetected,
            p_f: r.p_f(),
            p_ml: r.p_ml(),
            p_e: r.p_e(),
            mean_cond: r.mean_cond,
        })?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_csv(report: &Report, path: impl AsRef<Path>) -> Result<()> {
    write_csv(report, std::fs::File::create(path)?)
}

/// Inverse of [`write_csv`]. The disagreement tally is not part of the file.
pub fn parse_csv<R: Read>(input: R) -> Result<Report> {
    let mut rdr = csv::Reader::from_reader(input);
    if rdr.headers()?.iter().ne(HEADER) {
        return Err(Error::InvalidParameters("unexpected CSV header".into()));
    }
    let records = rdr
        .deserialize::<CsvRow>()
        .map(|row| {
            let row = row?;
            if row.failures + row.undetected > row.trials {
                return Err(Error::InvalidParameters(format!("row t={} L={} has more errors than trials", row.t, row.l)));
            }
            Ok(TrialRecord {
                t: row.t,
                l: row.l,
                trials: row.trials,
                successes: row.trials - row.failures - row.undetected,
                failures: row.failures,
                undetected: row.undetected,
                disagreements: 0,
                mean_cond: row.mean_cond,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report { records })
}
