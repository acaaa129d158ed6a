//! CSV and JSON renderings of series and matrices.
//!
//! Numbers are rounded to 15 significant digits and printed in their
//! shortest form; files use LF line endings and a fixed column order.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::transport::{ProbabilityMatrix, TransportSeries};

/// Rounds to 15 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

pub fn fmt_num(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        "0".to_string()
    } else {
        r.to_string()
    }
}

/// `t,value` rows, or `t,value,approx` when the dominant-class approximation
/// is emitted alongside.
pub fn write_series_csv<W: Write>(
    w: &mut W,
    series: &TransportSeries,
    approx: Option<&TransportSeries>,
) -> Result<()> {
    let values = series.export_values()?;
    let approx_values = match approx {
        Some(a) => {
            if a.times() != series.times() {
                return Err(Error::InvalidParameter(
                    "approximation series uses a different time grid".into(),
                ));
            }
            Some(a.export_values()?)
        }
        None => None,
    };
    match approx_values {
        Some(ref av) => {
            writeln!(w, "t,value,approx")?;
            for ((t, v), a) in series.times().iter().zip(&values).zip(av) {
                writeln!(w, "{},{},{}", fmt_num(*t), fmt_num(*v), fmt_num(*a))?;
            }
        }
        None => {
            writeln!(w, "t,value")?;
            for (t, v) in series.times().iter().zip(&values) {
                writeln!(w, "{},{}", fmt_num(*t), fmt_num(*v))?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SeriesJson<'a> {
    quantity: &'a str,
    times: Vec<f64>,
    values: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    approx: Option<Vec<f64>>,
}

pub fn series_json(series: &TransportSeries, approx: Option<&TransportSeries>) -> Result<String> {
    let round = |v: &[f64]| v.iter().copied().map(round_sig).collect::<Vec<_>>();
    let doc = SeriesJson {
        quantity: series.tag().as_str(),
        times: round(series.times()),
        values: round(&series.export_values()?),
        approx: approx.map(|a| a.export_values()).transpose()?.map(|v| round(&v)),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

/// Bare `n x n` CSV: row `k`, column `j`.
pub fn write_matrix_csv<W: Write>(w: &mut W, m: &ProbabilityMatrix) -> Result<()> {
    let entries = m.export_entries()?;
    for row in entries.row_iter() {
        let cells: Vec<String> = row.iter().map(|v| fmt_num(*v)).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct MatrixJson<'a> {
    quantity: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    time: Option<f64>,
    labels: Vec<usize>,
    entries: Vec<Vec<f64>>,
}

pub fn matrix_json(m: &ProbabilityMatrix) -> Result<String> {
    let entries = m.export_entries()?;
    let doc = MatrixJson {
        quantity: m.quantity().as_str(),
        time: m.time().map(round_sig),
        labels: (1..=m.n()).collect(),
        entries: entries
            .row_iter()
            .map(|r| r.iter().copied().map(round_sig).collect())
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}
