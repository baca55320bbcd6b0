//! Tabulation of bound reports over a range of `k`, with a stable CSV
//! schema.

use std::io::{Read, Write};

use crate::bounds::report;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 11] = [
    "k",
    "chi",
    "w",
    "lambda",
    "alpha",
    "theorem_bound",
    "root_bound",
    "quartic_bound",
    "bishop_at_D",
    "best",
    "best_name",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub k: f64,
    pub chi: i32,
    pub w: f64,
    pub lambda: f64,
    pub alpha: f64,
    pub theorem_bound: Option<f64>,
    pub root_bound: Option<f64>,
    pub quartic_bound: Option<f64>,
    pub bishop_at_d: f64,
    pub best: f64,
    pub best_name: String,
}

impl SweepRow {
    pub fn evaluate(chi: i32, k: f64) -> Result<Self> {
        let rep = report(chi, k, None)?;
        Ok(SweepRow {
            k,
            chi,
            w: rep.invariants.w,
            lambda: rep.invariants.lambda_chi,
            alpha: rep.invariants.alpha_chi,
            theorem_bound: rep.theorem_bound,
            root_bound: rep.root_bound,
            quartic_bound: rep.quartic_bound,
            bishop_at_d: rep.bishop_at_d,
            best: rep.best,
            best_name: rep.best_name.to_string(),
        })
    }
}

/// `steps` evenly spaced values from `k_min` to `k_max` inclusive; the
/// endpoints are reproduced exactly.
pub fn k_grid(k_min: f64, k_max: f64, steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(Error::domain("sweep", format!("steps must be at least 2, got {steps}")));
    }
    if !(k_min.is_finite() && k_max.is_finite()) || k_min > k_max {
        return Err(Error::domain("sweep", format!("invalid k range [{k_min}, {k_max}]")));
    }
    let last = steps - 1;
    Ok((0..steps)
        .map(|i| {
            if i == last {
                k_max
            } else {
                k_min + (k_max - k_min) * i as f64 / last as f64
            }
        })
        .collect())
}

pub fn sweep(chi: i32, k_min: f64, k_max: f64, steps: usize) -> Result<Vec<SweepRow>> {
    k_grid(k_min, k_max, steps)?
        .into_iter()
        .map(|k| SweepRow::evaluate(chi, k))
        .collect()
}

fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(CSV_HEADER)?;
    for r in rows {
        wtr.write_record([
            fmt_num(r.k),
            r.chi.to_string(),
            fmt_num(r.w),
            fmt_num(r.lambda),
            fmt_num(r.alpha),
            fmt_opt(r.theorem_bound),
            fmt_opt(r.root_bound),
            fmt_opt(r.quartic_bound),
            fmt_num(r.bishop_at_d),
            fmt_num(r.best),
            r.best_name.clone(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn to_csv_string(rows: &[SweepRow]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut rdr = csv::Reader::from_reader(input);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    if header != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected CSV header {header:?}")));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
    let opt = |s: &str| if s.is_empty() { Ok(None) } else { num(s).map(Some) };
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let field = |i: usize| rec.get(i).unwrap_or("");
        rows.push(SweepRow {
            k: num(field(0))?,
            chi: field(1).parse().map_err(|e| Error::Parse(format!("chi: {e}")))?,
            w: num(field(2))?,
            lambda: num(field(3))?,
            alpha: num(field(4))?,
            theorem_bound: opt(field(5))?,
            root_bound: opt(field(6))?,
            quartic_bound: opt(field(7))?,
            bishop_at_d: num(field(8))?,
            best: num(field(9))?,
            best_name: field(10).to_owned(),
        });
    }
    Ok(rows)
}
