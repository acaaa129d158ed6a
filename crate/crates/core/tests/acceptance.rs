//! Acceptance criteria for the simulator, one test per criterion.
//!
//! Each test prints a single `[PASS]`/`[FAIL]` line. Run with
//! `cargo test -p netwalk --test acceptance -- --nocapture --test-threads=1`
//! to see them all.

use nalgebra::DMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use netwalk::analysis::{decay_slope, lower_envelope, running_time_average};
use netwalk::transport::{self, Complex64};
use netwalk::{
    efficiency_report, gen_family, gen_star, Family, Graph, Kind, Quantity, ReportConfig, Spectrum, TimeGrid,
    Verdict, DEFAULT_DEG_TOL,
};

fn report(id: u32, name: &str, passed: bool, detail: String) {
    let mark = if passed { "PASS" } else { "FAIL" };
    println!("[{mark}] criterion {id:>2}: {name} -- {detail}");
    assert!(passed, "criterion {id} ({name}) failed: {detail}");
}

fn family_spectra() -> Vec<(Family, Graph, Spectrum)> {
    Family::ALL
        .iter()
        .map(|&f| {
            let g = gen_family(f).unwrap();
            let s = Spectrum::of_graph(&g, DEFAULT_DEG_TOL).unwrap();
            (f, g, s)
        })
        .collect()
}

fn random_tree(rng: &mut StdRng, n: usize) -> Graph {
    let mut perm: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let pairs: Vec<_> = (1..n).map(|i| (perm[i], perm[rng.gen_range(0..i)])).collect();
    Graph::from_edge_list(n, &pairs).unwrap()
}

fn max_norm(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn c01_exact_asymptote_table() {
    let want = [0.10, 0.12, 0.22, 0.40, 0.66];
    let got: Vec<f64> = family_spectra().iter().map(|(_, _, s)| transport::chi_bar_lb(s)).collect();
    let ok = got.iter().zip(want).all(|(g, w)| (g - w).abs() <= 1e-12);
    report(1, "chi_bar_lb table a..e", ok, format!("{got:?} vs {want:?} (tol 1e-12)"));
}

#[test]
fn c02_star_spectrum() {
    let s = Spectrum::of_graph(&gen_star(10).unwrap(), 1e-8).unwrap();
    let e = s.eigenvalues();
    let values_ok = e[0].abs() <= 1e-9
        && e[1..9].iter().all(|x| (x - 1.0).abs() <= 1e-9)
        && (e[9] - 10.0).abs() <= 1e-9;
    let mult: Vec<usize> = s.classes().iter().map(|c| c.multiplicity()).collect();
    let ok = values_ok && mult == [1, 8, 1];
    report(2, "star spectrum {0, 1x8, 10}", ok, format!("multiplicities {mult:?}"));
}

#[test]
fn c03_symmetry_degree_ladder() {
    let got: Vec<usize> = family_spectra().iter().map(|(_, _, s)| s.symmetry_degree()).collect();
    report(3, "symmetry degree ladder", got == [0, 2, 4, 6, 8], format!("{got:?}"));
}

#[test]
fn c04_lta_convergence() {
    let grid = TimeGrid::new(0.0, 1e3, 0.01).unwrap();
    let mut worst: f64 = 0.0;
    let mut finals = Vec::new();
    for (_, _, s) in family_spectra() {
        let series = transport::series(&s, &grid, Quantity::AlphaBarSq).unwrap();
        let avg = running_time_average(&series).unwrap().last().unwrap().1;
        worst = worst.max((avg - transport::chi_bar_lb(&s)).abs());
        finals.push(avg);
    }
    report(
        4,
        "running average of |alpha_bar|^2 -> chi_bar_lb",
        worst <= 5e-3,
        format!("final averages {finals:.5?}, max deviation {worst:.2e} (tol 5e-3)"),
    );
}

#[test]
fn c05_classical_equipartition() {
    let mut worst: f64 = 0.0;
    for (_, _, s) in family_spectra() {
        worst = worst.max((transport::avg_return_classical(&s, 1e3).unwrap() - 0.1).abs());
    }
    report(5, "P_bar(1000) = 1/N", worst <= 1e-6, format!("max deviation {worst:.2e} (tol 1e-6)"));
}

#[test]
fn c06_bound_ordering() {
    let mut rng = StdRng::seed_from_u64(6);
    let mut worst_gap = f64::INFINITY;
    let mut chi_ok = true;
    for (_, _, s) in family_spectra() {
        for _ in 0..10_000 {
            let t = rng.gen_range(0.0..100.0);
            worst_gap = worst_gap.min(transport::avg_return_quantum(&s, t) - transport::alpha_bar_sq(&s, t));
        }
        chi_ok &= transport::chi_bar(&s) >= transport::chi_bar_lb(&s) - 1e-12;
    }
    report(
        6,
        "pi_bar >= |alpha_bar|^2 and chi_bar >= chi_bar_lb",
        worst_gap >= -1e-10 && chi_ok,
        format!("min(pi_bar - |alpha_bar|^2) = {worst_gap:.3e}, chi ordering {chi_ok}"),
    );
}

#[test]
fn c07_decay_exponents() {
    let s = Spectrum::of_graph(&gen_family(Family::A).unwrap(), DEFAULT_DEG_TOL).unwrap();
    let grid = TimeGrid::new(0.0, 50.0, 0.01).unwrap();
    let classical = transport::series(&s, &grid, Quantity::ClassicalAvgReturn).unwrap();
    let quantum = transport::series(&s, &grid, Quantity::AlphaBarSq).unwrap();
    let c_slope = decay_slope(&classical, (0.5, 5.0)).unwrap();
    let q_slope = decay_slope(&lower_envelope(&quantum), (0.5, 5.0)).unwrap();
    let c_ok = (-0.7..=-0.3).contains(&c_slope);
    let q_ok = (-1.3..=-0.7).contains(&q_slope);
    report(
        7,
        "decay exponents on network a",
        c_ok && q_ok,
        format!(
            "classical {c_slope:.4} in [-0.7,-0.3]: {c_ok}; quantum lower-envelope {q_slope:.4} in [-1.3,-0.7]: {q_ok}"
        ),
    );
}

#[test]
fn c08_oracle_equivalence() {
    let mut rng = StdRng::seed_from_u64(8);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let n = rng.gen_range(2..=8);
        let g = random_tree(&mut rng, n);
        assert!(g.is_connected());
        let l = g.laplacian();
        let s = Spectrum::of_graph(&g, DEFAULT_DEG_TOL).unwrap();
        for t in [0.3, 1.7, 4.0] {
            let oracle = transport::expm_oracle(&l, t, Kind::Classical);
            let spectral = transport::classical_propagator(&s, t).unwrap().map(|x| Complex64::new(x, 0.0));
            worst = worst.max(max_norm(&(oracle - spectral)));
            let oracle = transport::expm_oracle(&l, t, Kind::Quantum);
            let spectral = transport::quantum_propagator(&s, t);
            worst = worst.max(max_norm(&(oracle - spectral)));
        }
    }
    report(
        8,
        "spectral propagators match series oracle",
        worst <= 1e-8,
        format!("max entry deviation {worst:.2e} over 50 trees (tol 1e-8)"),
    );
}

#[test]
fn c09_conservation() {
    let mut worst_col: f64 = 0.0;
    let mut worst_row: f64 = 0.0;
    let mut worst_sym: f64 = 0.0;
    for (_, _, s) in family_spectra() {
        for t in [0.1, 1.0, 10.0, 100.0] {
            for kind in [Kind::Classical, Kind::Quantum] {
                let m = transport::transition_matrix(&s, t, kind).unwrap();
                for c in m.column_sums() {
                    worst_col = worst_col.max((c - 1.0).abs());
                }
            }
        }
        let chi = transport::lta_matrix(&s);
        for r in chi.row_sums() {
            worst_row = worst_row.max((r - 1.0).abs());
        }
        worst_sym = worst_sym.max((chi.entries() - chi.entries().transpose()).amax());
    }
    let ok = worst_col <= 1e-9 && worst_row <= 1e-9 && worst_sym <= 1e-10;
    report(
        9,
        "normalization and chi symmetry",
        ok,
        format!("column sums {worst_col:.1e}, chi rows {worst_row:.1e}, chi asymmetry {worst_sym:.1e}"),
    );
}

#[test]
fn c10_efficiency_verdicts() {
    let cfg = ReportConfig::default();
    let got: Vec<Verdict> = Family::ALL
        .iter()
        .map(|&f| efficiency_report(&gen_family(f).unwrap(), &format!("family:{f}"), &cfg).unwrap().verdict)
        .collect();
    let want = [
        Verdict::QuantumMoreEfficient,
        Verdict::ClassicalMoreEfficient,
        Verdict::ClassicalMoreEfficient,
        Verdict::ClassicalMoreEfficient,
        Verdict::ClassicalMoreEfficient,
    ];
    let names: Vec<&str> = got.iter().map(|v| v.as_str()).collect();
    report(10, "efficiency verdicts a..e", got == want, format!("{names:?}"));
}

#[test]
fn c11_degenerate_basis_invariance() {
    let s = Spectrum::of_graph(&gen_family(Family::E).unwrap(), DEFAULT_DEG_TOL).unwrap();
    let class = &s.classes()[s.nearest_class(1.0)];
    let d = class.multiplicity();
    let mut rng = StdRng::seed_from_u64(11);
    let r = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0)).qr().q();

    let q = s.eigenvectors();
    let mut rotated = q.clone();
    for (a, &col_a) in class.members.iter().enumerate() {
        for row in 0..s.n() {
            rotated[(row, col_a)] = class
                .members
                .iter()
                .enumerate()
                .map(|(b, &col_b)| q[(row, col_b)] * r[(b, a)])
                .sum();
        }
    }
    let basis_change = (&rotated - q).amax();
    let remixed = Spectrum::from_parts(s.eigenvalues().to_vec(), rotated, s.deg_tol()).unwrap();

    let mut worst = (transport::chi_bar(&s) - transport::chi_bar(&remixed)).abs();
    worst = worst.max((transport::lta_matrix(&s).entries() - transport::lta_matrix(&remixed).entries()).amax());
    for t in [0.0, 0.37, 2.5, 11.0, 80.0] {
        worst = worst.max((transport::avg_return_quantum(&s, t) - transport::avg_return_quantum(&remixed, t)).abs());
    }
    report(
        11,
        "degenerate-subspace basis invariance",
        worst < 1e-9 && basis_change > 0.1,
        format!("basis moved by {basis_change:.3}, outputs moved by {worst:.2e} (tol 1e-9)"),
    );
}
