use proptest::prelude::*;

use qwsearch_core::graphs::{
    complete, complete_minus_disjoint_edges, hypercube, paley, regular_multipartite,
};
use qwsearch_core::hypercube::antipodal_pair;
use qwsearch_core::linalg::norm;
use qwsearch_core::search::{search_params, solve_mu};
use qwsearch_core::simulator::{compare, run, run_reduced, JumpRate, Propagator, RunOptions};
use qwsearch_core::{HypercubeBasis, MarkedState, SpectralDecomposition};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn norm_is_conserved(v in 0usize..29, t in 0.0f64..200.0) {
        let g = paley(29).unwrap();
        let w = MarkedState::single(29, v).unwrap();
        let p = Propagator::dense(&g, 0.07, &w).unwrap();
        prop_assert!((norm(&p.state(t)) - 1.0).abs() <= 1e-9);
        prop_assert!(p.amplitude(t).norm() <= 1.0 + 1e-12);
    }

    #[test]
    fn amplitude_is_even_in_time(t in 0.0f64..100.0) {
        let g = hypercube(4).unwrap();
        let w = MarkedState::pair(16, 0, 5).unwrap();
        let p = Propagator::dense(&g, 0.3, &w).unwrap();
        prop_assert!((p.amplitude(t).norm() - p.amplitude(-t).norm()).abs() <= 1e-12);
    }
}

#[test]
fn norm_along_a_trace() {
    let g = hypercube(5).unwrap();
    let w = MarkedState::uniform_over(32, &[0, 9, 30]).unwrap();
    let (trace, params) = run(
        &g,
        &w,
        RunOptions {
            steps: 200,
            ..RunOptions::default()
        },
    )
    .unwrap();
    let p = Propagator::dense(&g, params.gamma_c, &w).unwrap();
    for &t in &trace.times {
        assert!((norm(&p.state(t)) - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn first_peak_near_optimal_time_on_certified_graphs() {
    let cases = [
        (complete(32).unwrap(), MarkedState::single(32, 0).unwrap()),
        (paley(29).unwrap(), MarkedState::pair(29, 0, 1).unwrap()),
        (
            complete_minus_disjoint_edges(10, 5).unwrap(),
            MarkedState::single(10, 0).unwrap(),
        ),
        (
            regular_multipartite(4, 4).unwrap(),
            MarkedState::uniform_over(16, &[0, 5, 10]).unwrap(),
        ),
    ];
    for (g, w) in cases {
        let (trace, params) = run(&g, &w, RunOptions::default()).unwrap();
        let (t, _) = trace.first_local_max().unwrap();
        assert!(
            t > 0.5 * params.t_opt && t < 1.5 * params.t_opt,
            "{}: {t} vs {}",
            g.family(),
            params.t_opt
        );
    }
}

#[test]
fn hamiltonian_spectrum_contains_the_secular_roots() {
    let g = complete_minus_disjoint_edges(8, 2).unwrap();
    let w = MarkedState::pair(8, 0, 3).unwrap();
    let basis = SpectralDecomposition::of_laplacian(&qwsearch_core::graphs::laplacian(&g)).unwrap();
    let params = search_params(&basis, &w).unwrap();
    let p = Propagator::dense(&g, params.gamma_c, &w).unwrap();
    let (pos, neg) = solve_mu(&params.overlaps, params.gamma_c).unwrap();
    for mu in [pos, neg] {
        assert!(p.eigenvalues().iter().any(|e| (e - mu).abs() < 1e-9));
    }
}

#[test]
fn antipodal_pair_on_the_16_cube_by_reduced_evolution() {
    let basis = HypercubeBasis::new(16).unwrap();
    let w = MarkedState::pair(1 << 16, 0, (1 << 16) - 1).unwrap();
    let (trace, params) = run_reduced(&basis, &w, RunOptions::default()).unwrap();
    let closed = antipodal_pair(16).unwrap();
    assert!((params.envelope - closed.envelope).abs() < 1e-12);
    let peak = trace.peak_probability.sqrt();
    assert!((peak - 0.9498).abs() / 0.9498 <= 0.1, "{peak}");
    let report = compare(&trace, &params).unwrap();
    assert!(report.peak_time_rel <= 0.1 && report.peak_value_rel <= 0.1);
}

#[test]
fn complete_graph_deviation_shrinks_with_size() {
    let rms: Vec<f64> = [8usize, 16, 32, 64]
        .iter()
        .map(|&n| {
            let (trace, params) = run(
                &complete(n).unwrap(),
                &MarkedState::single(n, 0).unwrap(),
                RunOptions::default(),
            )
            .unwrap();
            compare(&trace, &params).unwrap().rms
        })
        .collect();
    assert!(rms.windows(2).all(|w| w[1] < w[0]), "{rms:?}");
}

#[test]
fn fixed_jump_rate_off_critical_loses_amplitude() {
    let g = complete(32).unwrap();
    let w = MarkedState::single(32, 0).unwrap();
    let (critical, params) = run(&g, &w, RunOptions::default()).unwrap();
    let off = RunOptions {
        jump_rate: JumpRate::Value(3.0 * params.gamma_c),
        t_max: Some(4.0 * params.t_opt),
        ..RunOptions::default()
    };
    let (detuned, _) = run(&g, &w, off).unwrap();
    assert!(detuned.peak_probability < 0.5 * critical.peak_probability);
    assert_eq!(detuned.jump_rate, 3.0 * params.gamma_c);
}
