//! Transport-efficiency diagnostics: power-law decay fits, running time
//! averages, equipartition times and the per-graph efficiency report.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::export::fmt_num;
use crate::graph::Graph;
use crate::spectral::{Spectrum, DEFAULT_DEG_TOL};
use crate::transport::{self, Quantity, TimeGrid, TransportSeries};

const MIN_FIT_SAMPLES: usize = 10;
const WINDOW_EPS: f64 = 1e-9;

/// Least-squares slope of `ln(value)` against `ln(t)` over samples with
/// `t_lo <= t <= t_hi`.
pub fn decay_slope(series: &TransportSeries, window: (f64, f64)) -> Result<f64> {
    let (lo, hi) = window;
    let times = series.times();
    let (first, last) = match (times.first(), times.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Err(Error::Fit("empty series".into())),
    };
    if !(lo > 0.0 && lo < hi) {
        return Err(Error::Fit(format!("window [{lo}, {hi}] must satisfy 0 < lo < hi")));
    }
    if lo < first - WINDOW_EPS || hi > last + WINDOW_EPS {
        return Err(Error::Fit(format!(
            "window [{lo}, {hi}] outside series range [{first}, {last}]"
        )));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&t, &v) in times.iter().zip(series.values()) {
        if t < lo - WINDOW_EPS || t > hi + WINDOW_EPS {
            continue;
        }
        if !(v > 0.0) {
            return Err(Error::Fit(format!("non-positive value {v} at t={t}")));
        }
        xs.push(t.ln());
        ys.push(v.ln());
    }
    if xs.len() < MIN_FIT_SAMPLES {
        return Err(Error::Fit(format!(
            "{} samples in window, need at least {MIN_FIT_SAMPLES}",
            xs.len()
        )));
    }
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    Ok(sxy / sxx)
}

/// `(1/(t − t₀)) ∫_{t₀}^{t} v` by the cumulative trapezoid rule; the first
/// point keeps its own value.
pub fn running_time_average(series: &TransportSeries) -> Result<TransportSeries> {
    let (t, v) = (series.times(), series.values());
    if t.len() < 2 {
        return Err(Error::InvalidParameter(
            "running average needs at least 2 samples".into(),
        ));
    }
    let mut out = Vec::with_capacity(t.len());
    out.push(v[0]);
    let mut integral = 0.0;
    for i in 1..t.len() {
        integral += 0.5 * (v[i] + v[i - 1]) * (t[i] - t[i - 1]);
        out.push(integral / (t[i] - t[0]));
    }
    TransportSeries::new(series.tag(), t.to_vec(), out)
}

/// Running minimum of the series, used as the lower envelope of an
/// oscillating decay.
pub fn lower_envelope(series: &TransportSeries) -> TransportSeries {
    let mut current = f64::INFINITY;
    let values = series
        .values()
        .iter()
        .map(|&v| {
            current = current.min(v);
            current
        })
        .collect();
    TransportSeries::new(series.tag(), series.times().to_vec(), values)
        .expect("same length as input")
}

/// First grid time from which the series stays inside `target ± band` to the
/// end of the grid; `None` if the last sample is still outside.
pub fn equipartition_time(series: &TransportSeries, target: f64, band: f64) -> Option<f64> {
    let inside = |v: f64| (v - target).abs() < band;
    let values = series.values();
    match values.iter().rposition(|&v| !inside(v)) {
        None => series.times().first().copied(),
        Some(i) if i + 1 < values.len() => Some(series.times()[i + 1]),
        Some(_) => None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    QuantumMoreEfficient,
    ClassicalMoreEfficient,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::QuantumMoreEfficient => "quantum_more_efficient",
            Verdict::ClassicalMoreEfficient => "classical_more_efficient",
            Verdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone)]
pub struct ReportConfig {
    pub deg_tol: f64,
    pub grid: TimeGrid,
    pub slope_window: (f64, f64),
    /// Half-width of the band around `1/N` for the equipartition time.
    pub band: f64,
    /// How far above `1/N` the asymptote must sit to count as inefficient.
    pub margin: f64,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            deg_tol: DEFAULT_DEG_TOL,
            grid: TimeGrid::new(0.0, 50.0, 0.01).expect("valid default grid"),
            slope_window: (0.5, 5.0),
            band: 0.005,
            margin: 0.01,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EfficiencyReport {
    pub graph: String,
    pub n: usize,
    pub q: usize,
    pub symmetry_degree: usize,
    pub chi_bar: f64,
    pub chi_bar_lb: f64,
    pub classical_slope: f64,
    pub quantum_slope: f64,
    pub classical_asymptote: f64,
    pub equipartition_time: Option<f64>,
    pub verdict: Verdict,
}

/// Decides which walk spreads better from the quantum asymptote and the two
/// decay exponents.
pub fn verdict(n: usize, chi_bar_lb: f64, classical_slope: f64, quantum_slope: f64, margin: f64) -> Verdict {
    let threshold = 1.0 / n as f64 + margin;
    if chi_bar_lb < threshold && quantum_slope < classical_slope {
        Verdict::QuantumMoreEfficient
    } else if chi_bar_lb > threshold {
        Verdict::ClassicalMoreEfficient
    } else {
        Verdict::Indeterminate
    }
}

pub fn efficiency_report(g: &Graph, name: &str, config: &ReportConfig) -> Result<EfficiencyReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.node_count();
    let s = Spectrum::of_graph(g, config.deg_tol)?;
    let chi_bar = transport::chi_bar(&s);
    let chi_bar_lb = transport::chi_bar_lb(&s);

    let classical = transport::series(&s, &config.grid, Quantity::ClassicalAvgReturn)?;
    let quantum = transport::series(&s, &config.grid, Quantity::AlphaBarSq)?;
    let classical_slope = decay_slope(&classical, config.slope_window)?;
    let quantum_slope = decay_slope(&lower_envelope(&quantum), config.slope_window)?;
    let classical_asymptote = 1.0 / n as f64;

    Ok(EfficiencyReport {
        graph: name.to_string(),
        n,
        q: g.edge_count(),
        symmetry_degree: s.symmetry_degree(),
        chi_bar,
        chi_bar_lb,
        classical_slope,
        quantum_slope,
        classical_asymptote,
        equipartition_time: equipartition_time(&classical, classical_asymptote, config.band),
        verdict: verdict(n, chi_bar_lb, classical_slope, quantum_slope, config.margin),
    })
}

impl EfficiencyReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Aligned plain-text table, one row per report.
pub fn render_table(reports: &[EfficiencyReport]) -> String {
    let header = [
        "graph", "n", "q", "D_l", "chi_bar", "chi_bar_lb", "slope_c", "slope_q", "t_equip", "verdict",
    ];
    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            vec![
                r.graph.clone(),
                r.n.to_string(),
                r.q.to_string(),
                r.symmetry_degree.to_string(),
                format!("{:.4}", r.chi_bar),
                format!("{:.2}", r.chi_bar_lb),
                format!("{:.3}", r.classical_slope),
                format!("{:.3}", r.quantum_slope),
                r.equipartition_time
                    .map(fmt_num)
                    .unwrap_or_else(|| "-".to_string()),
                r.verdict.as_str().to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
    };
    line(header.to_vec());
    for r in &rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}
