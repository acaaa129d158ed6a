use proptest::prelude::*;

use netwalk::analysis::{decay_slope, running_time_average};
use netwalk::transport::{self, QuantityTag, TransportSeries};
use netwalk::{gen_broom, Graph, Kind, Spectrum, TimeGrid, DEFAULT_DEG_TOL};

/// Random connected graph: a random tree plus a few extra edges.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..=9).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
        let extra = prop::collection::vec((1..=n, 1..=n), 0..n);
        (Just(n), parents, extra).prop_map(|(n, parents, extra)| {
            let mut pairs: Vec<_> = parents.iter().enumerate().map(|(i, &p)| (i + 2, p + 1)).collect();
            pairs.extend(extra.into_iter().filter(|(u, v)| u != v));
            Graph::from_edge_list(n, &pairs).unwrap()
        })
    })
}

fn any_graph() -> impl Strategy<Value = Graph> {
    (1usize..=9).prop_flat_map(|n| {
        prop::collection::vec((1..=n, 1..=n), 0..2 * n).prop_map(move |pairs| {
            let pairs: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Graph::from_edge_list(n, &pairs).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn laplacian_rows_sum_to_zero(g in any_graph()) {
        let l = g.laplacian();
        prop_assert!(l.row_sums().iter().all(|&s| s == 0));
        prop_assert!(l.is_symmetric());
        let trace: i64 = (0..l.dim()).map(|i| l.get(i, i)).sum();
        prop_assert_eq!(trace, 2 * g.edge_count() as i64);
    }

    #[test]
    fn edge_list_round_trip(g in any_graph()) {
        prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn spectrum_invariants(g in any_graph()) {
        let l = g.laplacian().to_dense();
        let s = Spectrum::of_graph(&g, DEFAULT_DEG_TOL).unwrap();
        prop_assert!(s.orthonormality_error() <= 1e-10);
        prop_assert!(s.reconstruction_error(&l) <= 1e-9);
        prop_assert!(s.eigenvalues().iter().all(|&e| e >= -1e-10));
        let total: usize = s.classes().iter().map(|c| c.multiplicity()).sum();
        prop_assert_eq!(total, g.node_count());
        for w in s.classes().windows(2) {
            prop_assert!(w[1].value - w[0].value > s.deg_tol());
        }
        // zero modes count components
        let zeros = s.eigenvalues().iter().filter(|e| e.abs() <= DEFAULT_DEG_TOL).count();
        prop_assert_eq!(zeros == 1, g.is_connected());
    }

    #[test]
    fn propagators_conserve_probability(g in connected_graph(), t in 0.0f64..50.0) {
        let s = Spectrum::of_graph(&g, DEFAULT_DEG_TOL).unwrap();
        for kind in [Kind::Classical, Kind::Quantum] {
            let m = transport::transition_matrix(&s, t, kind).unwrap();
            for c in m.column_sums() {
                prop_assert!((c - 1.0).abs() <= 1e-9);
            }
            prop_assert!(m.entries().iter().all(|x| (-1e-12..=1.0 + 1e-9).contains(x)));
            let asym = (m.entries() - m.entries().transpose()).amax();
            prop_assert!(asym <= 1e-10);
        }
    }

    #[test]
    fn bounds_hold(g in connected_graph(), t in 0.0f64..200.0) {
        let s = Spectrum::of_graph(&g, DEFAULT_DEG_TOL).unwrap();
        prop_assert!(transport::avg_return_quantum(&s, t) >= transport::alpha_bar_sq(&s, t) - 1e-10);
        prop_assert!(transport::chi_bar(&s) >= transport::chi_bar_lb(&s) - 1e-12);
        let chi = transport::lta_matrix(&s);
        for r in chi.row_sums() {
            prop_assert!((r - 1.0).abs() <= 1e-9);
        }
    }

    // beyond t ~ 2 the decaying terms of K_n fall below f64 resolution of 1/N
    #[test]
    fn classical_return_strictly_decreases(g in connected_graph(), t in 0.0f64..2.0, dt in 0.01f64..1.0) {
        let s = Spectrum::of_graph(&g, DEFAULT_DEG_TOL).unwrap();
        let a = transport::avg_return_classical(&s, t).unwrap();
        let b = transport::avg_return_classical(&s, t + dt).unwrap();
        prop_assert!(b < a);
    }

    #[test]
    fn slope_exact_on_power_laws(exp in -3.0f64..1.0, amp in 0.1f64..10.0, lo in 0.2f64..2.0, span in 1.5f64..8.0) {
        let grid = TimeGrid::new(0.1, 20.0, 0.01).unwrap();
        let t = grid.times();
        let v = t.iter().map(|&x| amp * x.powf(exp)).collect();
        let s = TransportSeries::new(QuantityTag::ClassicalAvgReturn, t, v).unwrap();
        let slope = decay_slope(&s, (lo, lo * span)).unwrap();
        prop_assert!((slope - exp).abs() <= 1e-9);
    }

    #[test]
    fn running_average_stays_in_range(values in prop::collection::vec(-5.0f64..5.0, 2..200)) {
        let t: Vec<f64> = (0..values.len()).map(|i| i as f64 * 0.5).collect();
        let s = TransportSeries::new(QuantityTag::AlphaBarSq, t, values.clone()).unwrap();
        let avg = running_time_average(&s).unwrap();
        let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        prop_assert!(avg.values().iter().all(|&a| a >= lo - 1e-12 && a <= hi + 1e-12));
    }

    #[test]
    fn broom_edge_count(p in 1usize..12, k in 0usize..12) {
        prop_assume!(p + k >= 2);
        let g = gen_broom(p, k).unwrap();
        prop_assert_eq!(g.edge_count(), p + k - 1);
        prop_assert!(g.is_connected());
    }
}
