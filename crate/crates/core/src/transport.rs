//! Classical and quantum transport quantities evaluated from a [`Spectrum`].
//!
//! Every function here works in the eigenbasis. Members of a degenerate class
//! share the class value as their phase, so all results are invariant under
//! any orthogonal change of basis inside a degenerate eigenspace.
//!
//! Node arguments `k` (target) and `j` (start) are 1-based labels.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, DMatrix};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::LabeledMatrix;
use crate::spectral::Spectrum;

pub type Complex64 = Complex<f64>;

/// Slack allowed on probabilities before export clamps them to `[0, 1]`.
pub const PROBABILITY_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Classical,
    Quantum,
}

/// Evenly spaced sample times `start + i * step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    start: f64,
    stop: f64,
    step: f64,
}

impl TimeGrid {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidGrid(msg));
        if !start.is_finite() || !stop.is_finite() || !step.is_finite() {
            return bad("bounds must be finite".into());
        }
        if start < 0.0 {
            return bad(format!("start {start} is negative"));
        }
        if stop <= start {
            return bad(format!("stop {stop} must exceed start {start}"));
        }
        if step <= 1e-9 {
            return bad(format!("step {step} must exceed 1e-9"));
        }
        Ok(TimeGrid { start, stop, step })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn stop(&self) -> f64 {
        self.stop
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    /// `floor((stop - start) / step) + 1`, robust to the quotient landing a
    /// rounding error below an integer.
    pub fn len(&self) -> usize {
        let q = (self.stop - self.start) / self.step;
        (q + 1e-9 * q.max(1.0)).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn time(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.time(i)).collect()
    }
}

impl FromStr for TimeGrid {
    type Err = Error;

    /// Parses `start:stop:step`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::InvalidGrid(format!("expected start:stop:step, got {s:?}")));
        }
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| Error::InvalidGrid(format!("bad number {p:?}: {e}")))
        };
        TimeGrid::new(num(parts[0])?, num(parts[1])?, num(parts[2])?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QuantityTag {
    ClassicalPair,
    QuantumPair,
    ClassicalAvgReturn,
    QuantumAvgReturn,
    AlphaBarSq,
    ApproxAlphaBarSq,
}

impl QuantityTag {
    pub const ALL: [QuantityTag; 6] = [
        QuantityTag::ClassicalPair,
        QuantityTag::QuantumPair,
        QuantityTag::ClassicalAvgReturn,
        QuantityTag::QuantumAvgReturn,
        QuantityTag::AlphaBarSq,
        QuantityTag::ApproxAlphaBarSq,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            QuantityTag::ClassicalPair => "classical_pair",
            QuantityTag::QuantumPair => "quantum_pair",
            QuantityTag::ClassicalAvgReturn => "classical_avg_return",
            QuantityTag::QuantumAvgReturn => "quantum_avg_return",
            QuantityTag::AlphaBarSq => "alpha_bar_sq",
            QuantityTag::ApproxAlphaBarSq => "approx_alpha_bar_sq",
        }
    }

    /// Whether values are probabilities (and so clamped on export).
    pub fn is_probability(self) -> bool {
        self != QuantityTag::ApproxAlphaBarSq
    }
}

impl fmt::Display for QuantityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for QuantityTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QuantityTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown quantity {s:?}")))
    }
}

/// A scalar transport quantity with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Quantity {
    ClassicalPair { k: usize, j: usize },
    QuantumPair { k: usize, j: usize },
    ClassicalAvgReturn,
    QuantumAvgReturn,
    AlphaBarSq,
    /// Dominant-class truncation of `|ᾱ(t)|²` around class `class`.
    ApproxAlphaBarSq { class: usize },
}

impl Quantity {
    pub fn tag(&self) -> QuantityTag {
        match self {
            Quantity::ClassicalPair { .. } => QuantityTag::ClassicalPair,
            Quantity::QuantumPair { .. } => QuantityTag::QuantumPair,
            Quantity::ClassicalAvgReturn => QuantityTag::ClassicalAvgReturn,
            Quantity::QuantumAvgReturn => QuantityTag::QuantumAvgReturn,
            Quantity::AlphaBarSq => QuantityTag::AlphaBarSq,
            Quantity::ApproxAlphaBarSq { .. } => QuantityTag::ApproxAlphaBarSq,
        }
    }

    pub fn evaluate(&self, s: &Spectrum, t: f64) -> Result<f64> {
        match *self {
            Quantity::ClassicalPair { k, j } => classical_prob(s, k, j, t),
            Quantity::QuantumPair { k, j } => quantum_prob(s, k, j, t),
            Quantity::ClassicalAvgReturn => avg_return_classical(s, t),
            Quantity::QuantumAvgReturn => Ok(avg_return_quantum(s, t)),
            Quantity::AlphaBarSq => Ok(alpha_bar_sq(s, t)),
            Quantity::ApproxAlphaBarSq { class } => approx_alpha_bar_sq(s, class, t),
        }
    }
}

/// One quantity sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TransportSeries {
    tag: QuantityTag,
    times: Vec<f64>,
    values: Vec<f64>,
}

impl TransportSeries {
    pub fn new(tag: QuantityTag, times: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if times.len() != values.len() {
            return Err(Error::InvalidParameter(format!(
                "series has {} times but {} values",
                times.len(),
                values.len()
            )));
        }
        Ok(TransportSeries { tag, times, values })
    }

    pub fn tag(&self) -> QuantityTag {
        self.tag
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<(f64, f64)> {
        Some((*self.times.last()?, *self.values.last()?))
    }

    /// Values ready for export: probabilities are clamped to `[0, 1]` after
    /// checking that no excursion exceeds [`PROBABILITY_SLACK`].
    pub fn export_values(&self) -> Result<Vec<f64>> {
        if !self.tag.is_probability() {
            return Ok(self.values.clone());
        }
        self.times
            .iter()
            .zip(&self.values)
            .map(|(&t, &v)| clamp_probability(self.tag.as_str(), t, v))
            .collect()
    }
}

pub(crate) fn clamp_probability(what: &'static str, t: f64, v: f64) -> Result<f64> {
    if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&v) {
        return Err(Error::ProbabilityOutOfRange { what, t, value: v });
    }
    Ok(v.clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixQuantity {
    ClassicalTransition,
    QuantumTransition,
    LongTimeAverage,
}

impl MatrixQuantity {
    pub fn as_str(self) -> &'static str {
        match self {
            MatrixQuantity::ClassicalTransition => "classical_transition",
            MatrixQuantity::QuantumTransition => "quantum_transition",
            MatrixQuantity::LongTimeAverage => "long_time_average",
        }
    }
}

/// `entries[(k-1, j-1)]` is the probability for target `k`, start `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMatrix {
    quantity: MatrixQuantity,
    time: Option<f64>,
    entries: DMatrix<f64>,
}

impl ProbabilityMatrix {
    pub fn quantity(&self) -> MatrixQuantity {
        self.quantity
    }

    /// Evaluation time, `None` for the long-time average.
    pub fn time(&self) -> Option<f64> {
        self.time
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    /// Entry for 1-based labels.
    pub fn get(&self, k: usize, j: usize) -> f64 {
        self.entries[(k - 1, j - 1)]
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn column_sums(&self) -> Vec<f64> {
        self.entries.column_iter().map(|c| c.sum()).collect()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.entries.row_iter().map(|r| r.sum()).collect()
    }

    /// Entries clamped to `[0, 1]` after the same excursion check as series.
    pub fn export_entries(&self) -> Result<DMatrix<f64>> {
        let t = self.time.unwrap_or(f64::INFINITY);
        let mut out = self.entries.clone();
        for v in out.iter_mut() {
            *v = clamp_probability(self.quantity.as_str(), t, *v)?;
        }
        Ok(out)
    }
}

fn node_index(s: &Spectrum, label: usize) -> Result<usize> {
    if label == 0 || label > s.n() {
        return Err(Error::LabelOutOfRange { label, n: s.n() });
    }
    Ok(label - 1)
}

fn check_time(t: f64) -> Result<()> {
    if t < 0.0 {
        Err(Error::NegativeTime(t))
    } else {
        Ok(())
    }
}

/// `P_{k,j}(t) = Σ_n e^{-t E_n} ⟨k|q_n⟩⟨q_n|j⟩`.
pub fn classical_prob(s: &Spectrum, k: usize, j: usize, t: f64) -> Result<f64> {
    check_time(t)?;
    let (k, j) = (node_index(s, k)?, node_index(s, j)?);
    let q = s.eigenvectors();
    Ok((0..s.n())
        .map(|n| (-t * s.effective_eigenvalue(n)).exp() * q[(k, n)] * q[(j, n)])
        .sum())
}

/// `α_{k,j}(t) = ⟨k|e^{-iHt}|j⟩`.
pub fn quantum_amplitude(s: &Spectrum, k: usize, j: usize, t: f64) -> Result<Complex64> {
    let (k, j) = (node_index(s, k)?, node_index(s, j)?);
    let q = s.eigenvectors();
    Ok((0..s.n())
        .map(|n| Complex64::from_polar(q[(k, n)] * q[(j, n)], -t * s.effective_eigenvalue(n)))
        .sum())
}

/// `π_{k,j}(t) = |α_{k,j}(t)|²`.
pub fn quantum_prob(s: &Spectrum, k: usize, j: usize, t: f64) -> Result<f64> {
    Ok(quantum_amplitude(s, k, j, t)?.norm_sqr())
}

/// `Q f(E) Qᵀ` with `f` applied to class values.
fn spectral_function(s: &Spectrum, f: impl Fn(f64) -> f64) -> DMatrix<f64> {
    let q = s.eigenvectors();
    let mut scaled = q.clone();
    for (n, mut col) in scaled.column_iter_mut().enumerate() {
        col *= f(s.effective_eigenvalue(n));
    }
    scaled * q.transpose()
}

/// `e^{-tL}` from the spectrum.
pub fn classical_propagator(s: &Spectrum, t: f64) -> Result<DMatrix<f64>> {
    check_time(t)?;
    Ok(spectral_function(s, |e| (-t * e).exp()))
}

/// `e^{-iLt}` from the spectrum.
pub fn quantum_propagator(s: &Spectrum, t: f64) -> DMatrix<Complex64> {
    let re = spectral_function(s, |e| (t * e).cos());
    let im = spectral_function(s, |e| -(t * e).sin());
    re.zip_map(&im, Complex64::new)
}

/// All pairwise probabilities at time `t` in one pass.
pub fn transition_matrix(s: &Spectrum, t: f64, kind: Kind) -> Result<ProbabilityMatrix> {
    let (quantity, entries) = match kind {
        Kind::Classical => (MatrixQuantity::ClassicalTransition, classical_propagator(s, t)?),
        Kind::Quantum => (
            MatrixQuantity::QuantumTransition,
            quantum_propagator(s, t).map(|z| z.norm_sqr()),
        ),
    };
    Ok(ProbabilityMatrix {
        quantity,
        time: Some(t),
        entries,
    })
}

/// Per-class sums `Σ_{n∈c} ⟨k|q_n⟩⟨q_n|j⟩`, i.e. entries of the eigenprojectors.
fn projector_entries(s: &Spectrum, k: usize, j: usize) -> impl Iterator<Item = f64> + '_ {
    let q = s.eigenvectors();
    s.classes()
        .iter()
        .map(move |c| c.members.iter().map(|&n| q[(k, n)] * q[(j, n)]).sum())
}

/// Long-time average `χ_{k,j}` in closed form: `Σ_c (P_c)_{k,j}²`.
pub fn lta_pair(s: &Spectrum, k: usize, j: usize) -> Result<f64> {
    let (k, j) = (node_index(s, k)?, node_index(s, j)?);
    Ok(projector_entries(s, k, j).map(|p| p * p).sum())
}

/// The full `χ` matrix; symmetric bit for bit.
pub fn lta_matrix(s: &Spectrum) -> ProbabilityMatrix {
    let n = s.n();
    let q = s.eigenvectors();
    let mut chi = DMatrix::<f64>::zeros(n, n);
    for c in s.classes() {
        let cols = DMatrix::from_fn(n, c.members.len(), |r, m| q[(r, c.members[m])]);
        let proj = &cols * cols.transpose();
        chi += proj.component_mul(&proj);
    }
    for i in 0..n {
        for j in 0..i {
            chi[(i, j)] = chi[(j, i)];
        }
    }
    ProbabilityMatrix {
        quantity: MatrixQuantity::LongTimeAverage,
        time: None,
        entries: chi,
    }
}

/// `P̄(t) = (1/N) Σ_c D_c e^{-t E_c}`; needs no eigenvectors.
pub fn avg_return_classical(s: &Spectrum, t: f64) -> Result<f64> {
    check_time(t)?;
    let sum: f64 = s
        .classes()
        .iter()
        .map(|c| c.multiplicity() as f64 * (-t * c.value).exp())
        .sum();
    Ok(sum / s.n() as f64)
}

/// `π̄(t) = (1/N) Σ_j |α_{j,j}(t)|²`.
pub fn avg_return_quantum(s: &Spectrum, t: f64) -> f64 {
    let n = s.n();
    let phases: Vec<Complex64> = s
        .classes()
        .iter()
        .map(|c| Complex64::from_polar(1.0, -t * c.value))
        .collect();
    let sum: f64 = (0..n)
        .map(|j| {
            projector_entries(s, j, j)
                .zip(&phases)
                .map(|(w, z)| z * w)
                .sum::<Complex64>()
                .norm_sqr()
        })
        .sum();
    sum / n as f64
}

/// `|ᾱ(t)|² = |(1/N) Σ_c D_c e^{-i t E_c}|²`, a lower bound on `π̄(t)`.
pub fn alpha_bar_sq(s: &Spectrum, t: f64) -> f64 {
    let sum: Complex64 = s
        .classes()
        .iter()
        .map(|c| Complex64::from_polar(c.multiplicity() as f64, -t * c.value))
        .sum();
    (sum / s.n() as f64).norm_sqr()
}

/// Asymptotic value of `π̄(t)`: `(1/N) Σ_j Σ_c (P_c)_{j,j}²`.
pub fn chi_bar(s: &Spectrum) -> f64 {
    let n = s.n();
    let sum: f64 = (0..n)
        .map(|j| projector_entries(s, j, j).map(|w| w * w).sum::<f64>())
        .sum();
    sum / n as f64
}

/// Eigenvalue-only lower bound `Σ_c D_c² / N²`, the exact asymptote of `|ᾱ(t)|²`.
pub fn chi_bar_lb(s: &Spectrum) -> f64 {
    let squares: usize = s.classes().iter().map(|c| c.multiplicity().pow(2)).sum();
    squares as f64 / (s.n() * s.n()) as f64
}

/// Truncation of `|ᾱ(t)|²` that keeps only the cross terms involving class
/// `class`. Not a probability: it may leave `[0, 1]`.
pub fn approx_alpha_bar_sq(s: &Spectrum, class: usize, t: f64) -> Result<f64> {
    let classes = s.classes();
    let dominant = classes.get(class).ok_or(Error::InvalidClass {
        index: class,
        count: classes.len(),
    })?;
    let dl = dominant.multiplicity() as f64;
    let cross: f64 = classes
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != class)
        .map(|(_, c)| c.multiplicity() as f64 * dl * ((c.value - dominant.value) * t).cos())
        .sum();
    let n = s.n() as f64;
    Ok((dl * dl + 2.0 * cross) / (n * n))
}

/// Samples `quantity` at every grid point.
pub fn series(s: &Spectrum, grid: &TimeGrid, quantity: Quantity) -> Result<TransportSeries> {
    let times = grid.times();
    let values = times
        .iter()
        .map(|&t| quantity.evaluate(s, t))
        .collect::<Result<Vec<_>>>()?;
    TransportSeries::new(quantity.tag(), times, values)
}

const ORACLE_ORDER: usize = 20;

/// Reference propagator `e^{-tL}` (classical) or `e^{-itL}` (quantum) by a
/// scaled-and-squared Taylor series, independent of any eigendecomposition.
///
/// The argument is halved until its induced ∞-norm (which bounds every entry)
/// is at most 0.5, the series is summed through order 20, then squared back.
/// Classical results have zero imaginary parts.
pub fn expm_oracle(m: &LabeledMatrix, t: f64, kind: Kind) -> DMatrix<Complex64> {
    let n = m.dim();
    let coeff = match kind {
        Kind::Classical => Complex64::new(-t, 0.0),
        Kind::Quantum => Complex64::new(0.0, -t),
    };
    let mut a = m.to_dense().map(|x| coeff * x);
    let norm = a
        .row_iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0;
    let mut scaled = norm;
    while scaled > 0.5 {
        scaled *= 0.5;
        squarings += 1;
    }
    a /= Complex64::new(2f64.powi(squarings), 0.0);

    let identity = DMatrix::<Complex64>::identity(n, n);
    let mut term = identity.clone();
    let mut sum = identity;
    for k in 1..=ORACLE_ORDER {
        term = &term * &a / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}
