//! Dense symmetric eigendecomposition (cyclic Jacobi) and degeneracy clustering.

use std::fmt::Write as _;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::export::fmt_num;
use crate::graph::Graph;

/// Default absolute tolerance for treating two eigenvalues as equal.
pub const DEFAULT_DEG_TOL: f64 = 1e-8;

const MAX_SWEEPS: usize = 100;
const SWEEP_TOL: f64 = 1e-14;

/// A cluster of numerically equal eigenvalues.
#[derive(Debug, Clone, PartialEq)]
pub struct DegeneracyClass {
    /// Mean of the member eigenvalues.
    pub value: f64,
    /// Indices into the ascending eigenvalue list.
    pub members: Vec<usize>,
}

impl DegeneracyClass {
    pub fn multiplicity(&self) -> usize {
        self.members.len()
    }
}

/// Eigenvalues (ascending), orthonormal eigenvectors (column `i` pairs with
/// eigenvalue `i`) and the degeneracy classes partitioning the indices.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
    classes: Vec<DegeneracyClass>,
    class_of: Vec<usize>,
    deg_tol: f64,
}

/// Greedy left-to-right clustering of a sorted spectrum: a new class starts
/// whenever the gap to the previous eigenvalue exceeds `deg_tol`.
pub fn cluster_degeneracies(eigenvalues: &[f64], deg_tol: f64) -> Vec<DegeneracyClass> {
    let mut classes: Vec<DegeneracyClass> = Vec::new();
    for (i, &e) in eigenvalues.iter().enumerate() {
        match classes.last_mut() {
            Some(c) if e - eigenvalues[i - 1] <= deg_tol => c.members.push(i),
            _ => classes.push(DegeneracyClass {
                value: 0.0,
                members: vec![i],
            }),
        }
    }
    for c in &mut classes {
        c.value = c.members.iter().map(|&i| eigenvalues[i]).sum::<f64>() / c.members.len() as f64;
    }
    classes
}

fn off_diagonal_norm(a: &DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

/// Cyclic Jacobi on a symmetric matrix. Returns unsorted eigenvalues and the
/// accumulated rotation (eigenvectors as columns).
///
/// Sweeps until the off-diagonal Frobenius norm drops below `1e-14 * ‖A‖_F`.
pub fn jacobi_eigen(a: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    let mut a = a.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let target = SWEEP_TOL * a.norm();

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            return Ok(((0..n).map(|i| a[(i, i)]).collect(), v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[(k, p)], a[(k, q)]);
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[(p, k)], a[(q, k)]);
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    let residual = off_diagonal_norm(&a);
    if residual <= target {
        Ok(((0..n).map(|i| a[(i, i)]).collect(), v))
    } else {
        Err(Error::NoConvergence {
            sweeps: MAX_SWEEPS,
            residual,
        })
    }
}

/// Flips the column so its largest-magnitude entry (lowest index on ties) is positive.
fn fix_sign(v: &mut DMatrix<f64>, col: usize) {
    let mut best = 0;
    let mut best_abs = -1.0;
    for i in 0..v.nrows() {
        let x = v[(i, col)].abs();
        if x > best_abs + 1e-12 {
            best = i;
            best_abs = x;
        }
    }
    if v[(best, col)] < 0.0 {
        v.column_mut(col).neg_mut();
    }
}

/// Eigendecomposition of a real symmetric matrix.
///
/// `tol` bounds the accepted asymmetry and is the degeneracy tolerance used
/// for clustering.
pub fn eigendecompose(m: &DMatrix<f64>, tol: f64) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be positive, got {tol}")));
    }
    let asym = (m - m.transpose()).amax();
    if asym > tol {
        return Err(Error::NotSymmetric(asym));
    }
    let sym = (m + m.transpose()) * 0.5;
    let (values, vectors) = jacobi_eigen(&sym)?;

    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let mut eigenvectors = DMatrix::from_fn(n, n, |r, c| vectors[(r, order[c])]);
    for c in 0..n {
        fix_sign(&mut eigenvectors, c);
    }
    Ok(Spectrum::assemble(eigenvalues, eigenvectors, tol))
}

impl Spectrum {
    fn assemble(eigenvalues: Vec<f64>, eigenvectors: DMatrix<f64>, deg_tol: f64) -> Self {
        let classes = cluster_degeneracies(&eigenvalues, deg_tol);
        let mut class_of = vec![0; eigenvalues.len()];
        for (ci, c) in classes.iter().enumerate() {
            for &m in &c.members {
                class_of[m] = ci;
            }
        }
        Spectrum {
            eigenvalues,
            eigenvectors,
            classes,
            class_of,
            deg_tol,
        }
    }

    /// Spectrum of the walk Hamiltonian of `g`.
    pub fn of_graph(g: &Graph, deg_tol: f64) -> Result<Self> {
        eigendecompose(&g.hamiltonian().to_dense(), deg_tol)
    }

    /// Builds a spectrum from externally supplied eigenpairs, e.g. a rotated
    /// basis of a degenerate subspace. Eigenvalues must be ascending and the
    /// eigenvector columns orthonormal to within 1e-9.
    pub fn from_parts(eigenvalues: Vec<f64>, eigenvectors: DMatrix<f64>, deg_tol: f64) -> Result<Self> {
        let n = eigenvalues.len();
        if eigenvectors.nrows() != n || eigenvectors.ncols() != n {
            return Err(Error::InvalidSpectrum(format!(
                "{n} eigenvalues but a {}x{} eigenvector matrix",
                eigenvectors.nrows(),
                eigenvectors.ncols()
            )));
        }
        if eigenvalues.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidSpectrum("eigenvalues are not ascending".into()));
        }
        let spectrum = Spectrum::assemble(eigenvalues, eigenvectors, deg_tol);
        let err = spectrum.orthonormality_error();
        if err > 1e-9 {
            return Err(Error::InvalidSpectrum(format!(
                "eigenvectors not orthonormal (max deviation {err:e})"
            )));
        }
        Ok(spectrum)
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    pub fn classes(&self) -> &[DegeneracyClass] {
        &self.classes
    }

    pub fn deg_tol(&self) -> f64 {
        self.deg_tol
    }

    /// Class index of eigenvalue `i`.
    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// The eigenvalue used in propagators for index `i`: its class value, so
    /// that members of a degenerate class evolve with one common phase.
    pub(crate) fn effective_eigenvalue(&self, i: usize) -> f64 {
        self.classes[self.class_of[i]].value
    }

    /// Multiplicity of the eigenvalue-1 class if it is degenerate, else 0.
    pub fn symmetry_degree(&self) -> usize {
        self.classes
            .iter()
            .find(|c| (c.value - 1.0).abs() <= self.deg_tol)
            .map(DegeneracyClass::multiplicity)
            .filter(|&d| d >= 2)
            .unwrap_or(0)
    }

    /// Index of the class whose value is closest to `value`.
    pub fn nearest_class(&self, value: f64) -> usize {
        let mut best = 0;
        for (i, c) in self.classes.iter().enumerate() {
            if (c.value - value).abs() < (self.classes[best].value - value).abs() {
                best = i;
            }
        }
        best
    }

    /// `max |QᵀQ − I|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.n();
        let gram = self.eigenvectors.transpose() * &self.eigenvectors;
        (gram - DMatrix::<f64>::identity(n, n)).amax()
    }

    /// `max |Q diag(E) Qᵀ − m|`.
    pub fn reconstruction_error(&self, m: &DMatrix<f64>) -> f64 {
        let q = &self.eigenvectors;
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.eigenvalues));
        (q * d * q.transpose() - m).amax()
    }

    /// Plain-text dump: eigenvalues to 15 significant digits, then the class table.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "n {}", self.n()).unwrap();
        writeln!(out, "eigenvalues").unwrap();
        for (i, e) in self.eigenvalues.iter().enumerate() {
            writeln!(out, "{} {}", i + 1, fmt_num(*e)).unwrap();
        }
        writeln!(out, "classes").unwrap();
        writeln!(out, "value multiplicity").unwrap();
        for c in &self.classes {
            writeln!(out, "{} {}", fmt_num(c.value), c.multiplicity()).unwrap();
        }
        out
    }
}

/// Multiplicity of the degenerate eigenvalue 1 (0 if absent or simple).
pub fn symmetry_degree(s: &Spectrum) -> usize {
    s.symmetry_degree()
}
