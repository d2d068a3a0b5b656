//! Summary files: CSV, JSON and a console table.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use super::harness::SummaryRow;

pub const CSV_HEADER: &str = "model,n,param1,param2,alpha,replicates,mean,sd,limit,plugin,abs_gap";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummaryFormat {
    Csv,
    Json,
}

impl FromStr for SummaryFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(SummaryFormat::Csv),
            "json" => Ok(SummaryFormat::Json),
            other => Err(format!("unknown format {other:?} (expected csv or json)")),
        }
    }
}

/// Plain decimal with 6 significant digits and no trailing zeros.
pub fn format_sig(x: f64) -> String {
    format_sig_digits(x, 6)
}

pub fn format_sig_digits(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let exponent = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - exponent).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        let trimmed = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(trimmed);
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

/// `x` rounded to 6 significant digits.
pub fn round_sig(x: f64) -> f64 {
    format_sig(x).parse().unwrap_or(x)
}

fn opt(x: Option<f64>) -> String {
    x.map(format_sig).unwrap_or_default()
}

pub fn rows_to_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{}",
            r.model,
            r.n,
            format_sig(r.param1),
            format_sig(r.param2),
            format_sig(r.alpha),
            r.replicates,
            format_sig(r.mean),
            format_sig(r.sd),
            opt(r.limit),
            opt(r.plugin),
            opt(r.abs_gap),
        )
        .unwrap();
    }
    out
}

#[derive(Serialize)]
struct JsonRow<'a> {
    model: &'a str,
    n: usize,
    param1: f64,
    param2: f64,
    alpha: f64,
    replicates: usize,
    mean: f64,
    sd: f64,
    limit: Option<f64>,
    plugin: Option<f64>,
    abs_gap: Option<f64>,
}

pub fn rows_to_json(rows: &[SummaryRow]) -> String {
    let json: Vec<JsonRow<'_>> = rows
        .iter()
        .map(|r| JsonRow {
            model: r.model,
            n: r.n,
            param1: round_sig(r.param1),
            param2: round_sig(r.param2),
            alpha: round_sig(r.alpha),
            replicates: r.replicates,
            mean: round_sig(r.mean),
            sd: round_sig(r.sd),
            limit: r.limit.map(round_sig),
            plugin: r.plugin.map(round_sig),
            abs_gap: r.abs_gap.map(round_sig),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&json).expect("summary rows serialise");
    s.push('\n');
    s
}

pub fn render(rows: &[SummaryRow], format: SummaryFormat) -> String {
    match format {
        SummaryFormat::Csv => rows_to_csv(rows),
        SummaryFormat::Json => rows_to_json(rows),
    }
}

pub fn write_summary(rows: &[SummaryRow], format: SummaryFormat, path: &Path) -> io::Result<()> {
    fs::write(path, render(rows, format))
}

/// Fixed-width table for terminals.
pub fn rows_to_table(rows: &[SummaryRow]) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{:<18} {:>6} {:>8} {:>8} {:>6} {:>9} {:>9} {:>9} {:>18}",
        "model", "n", "param1", "param2", "alpha", "mean", "sd", "limit", "plugin (unclamped)"
    )
    .unwrap();
    for r in rows {
        writeln!(
            out,
            "{:<18} {:>6} {:>8} {:>8} {:>6} {:>9.4} {:>9.4} {:>9} {:>18}",
            r.model,
            r.n,
            format_sig(r.param1),
            format_sig(r.param2),
            format_sig(r.alpha),
            r.mean,
            r.sd,
            r.limit.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into()),
            r.plugin.map(|v| format!("{v:.4}")).unwrap_or_else(|| "-".into()),
        )
        .unwrap();
    }
    out
}

/// A summary CSV read back as strings.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl SummaryTable {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<String> = lines
            .next()
            .ok_or("summary file is empty")?
            .split(',')
            .map(|s| s.trim().to_string())
            .collect();
        let mut rows = Vec::new();
        for (i, line) in lines.enumerate() {
            let fields: Vec<String> = line.split(',').map(|s| s.trim().to_string()).collect();
            if fields.len() != header.len() {
                return Err(format!(
                    "data line {} has {} fields, header has {}",
                    i + 1,
                    fields.len(),
                    header.len()
                ));
            }
            rows.push(fields);
        }
        Ok(Self { header, rows })
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }
}
