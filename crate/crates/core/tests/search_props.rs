use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qwsearch_core::graphs::{complete, hypercube, laplacian, paley, regular_multipartite};
use qwsearch_core::hypercube::hypercube_exact;
use qwsearch_core::linalg::{eig_sym, evolve};
use qwsearch_core::optimality::sample_state;
use qwsearch_core::search::{
    amplitude_approx, amplitude_exact_sum, overlaps, search_params, solve_mu, uniform_state,
    SecularFunction,
};
use qwsearch_core::simulator::{hamiltonian, Propagator};
use qwsearch_core::{Graph, HypercubeBasis, MarkedState, SpectralDecomposition};

fn graphs() -> Vec<Graph> {
    vec![
        complete(7).unwrap(),
        hypercube(4).unwrap(),
        paley(13).unwrap(),
        regular_multipartite(3, 3).unwrap(),
    ]
}

fn decompose(g: &Graph) -> SpectralDecomposition {
    SpectralDecomposition::of_laplacian(&laplacian(g)).unwrap()
}

fn instance(graph: usize, seed: u64, overlap: f64) -> (Graph, MarkedState) {
    let g = graphs().swap_remove(graph);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = MarkedState::new(sample_state(&mut rng, g.n_vertices(), overlap)).unwrap();
    (g, w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn normalization_and_cauchy_schwarz(graph in 0usize..4, seed: u64, c in 0.05f64..0.95) {
        let (g, w) = instance(graph, seed, c);
        let p = search_params(&decompose(&g), &w).unwrap();
        prop_assert!((p.overlaps.total_weight() - 1.0).abs() <= 1e-10);
        prop_assert!((p.p_n - c).abs() <= 1e-10);
        prop_assert!(p.gamma_c <= p.beta * p.overlaps.nonzero_weight().sqrt() * (1.0 + 1e-12));
        prop_assert!(p.envelope <= 1.0);
        prop_assert_eq!(p.mu1, -p.mu2);
    }

    #[test]
    fn secular_function_increases_between_poles(graph in 0usize..4, seed: u64, c in 0.05f64..0.95, frac in 0.01f64..0.99) {
        let (g, w) = instance(graph, seed, c);
        let p = search_params(&decompose(&g), &w).unwrap();
        let f = SecularFunction::new(&p.overlaps, p.gamma_c).unwrap();
        let mut edges = vec![0.0];
        edges.extend(f.poles());
        for pair in edges.windows(2) {
            let a = pair[0] + frac * (pair[1] - pair[0]);
            let b = a + 0.5 * (1.0 - frac) * (pair[1] - pair[0]);
            prop_assert!(f.value(a).unwrap() < f.value(b).unwrap());
            prop_assert!(f.derivative(a).unwrap() > 0.0);
        }
    }

    #[test]
    fn roots_are_hamiltonian_eigenvalues(graph in 0usize..4, seed: u64, c in 0.05f64..0.95) {
        let (g, w) = instance(graph, seed, c);
        let p = search_params(&decompose(&g), &w).unwrap();
        let (pos, neg) = solve_mu(&p.overlaps, p.gamma_c).unwrap();
        prop_assert!(neg < 0.0 && pos > 0.0);
        let h = eig_sym(&hamiltonian(&g, p.gamma_c, &w).unwrap()).unwrap();
        let pw = h.project(w.weights());
        let f = SecularFunction::new(&p.overlaps, p.gamma_c).unwrap();
        for mu in [pos, neg] {
            let nearest = h.eigenvalues.iter().map(|e| (e - mu).abs()).fold(f64::INFINITY, f64::min);
            prop_assert!(nearest <= 1e-7);
            let weight: f64 = h.eigenvalues.iter().zip(&pw)
                .filter(|(e, _)| (*e - mu).abs() < 1e-9)
                .map(|(_, x)| x * x)
                .sum();
            prop_assert!((f.residue(mu).unwrap() - weight).abs() <= 1e-7);
        }
    }

    #[test]
    fn exact_sum_agrees_with_evolution(graph in 0usize..4, seed: u64, c in 0.05f64..0.95, t in 0.0f64..40.0) {
        let (g, w) = instance(graph, seed, c);
        let p = search_params(&decompose(&g), &w).unwrap();
        let h = eig_sym(&hamiltonian(&g, p.gamma_c, &w).unwrap()).unwrap();
        let s = uniform_state(g.n_vertices());
        let sum = amplitude_exact_sum(&h, w.weights(), &s, t).unwrap();
        let s_c: Vec<Complex64> = s.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let psi = evolve(&h, &s_c, t);
        let direct: Complex64 = psi.iter().zip(w.weights()).map(|(a, &b)| a * b).sum();
        prop_assert!((sum - direct).norm() <= 1e-10);
        prop_assert!(sum.norm() <= 1.0 + 1e-12);
        // The secular roots reproduce the same amplitude.
        let f = SecularFunction::new(&p.overlaps, p.gamma_c).unwrap();
        let roots = f.all_roots().unwrap();
        prop_assert!((f.amplitude(&roots, t).unwrap() - sum).norm() <= 1e-9);
    }
}

#[test]
fn uniform_state_has_only_the_zero_mode() {
    let dec = decompose(&paley(13).unwrap());
    let w = MarkedState::normalized(vec![1.0; 13]).unwrap();
    let ov = overlaps(&dec, &w).unwrap();
    assert!((ov.p_n() - 1.0).abs() < 1e-14);
    assert!(ov.nonzero_weight() < 1e-28);
}

#[test]
fn amplitude_sum_at_zero_is_the_uniform_overlap() {
    let g = hypercube(3).unwrap();
    let w = MarkedState::pair(8, 2, 5).unwrap();
    let h = eig_sym(&hamiltonian(&g, 0.4, &w).unwrap()).unwrap();
    let a = amplitude_exact_sum(&h, w.weights(), &uniform_state(8), 0.0).unwrap();
    assert!((a.re - 0.5).abs() < 1e-12 && a.im.abs() < 1e-12);
}

#[test]
fn antipodal_pair_has_no_odd_overlaps() {
    let basis = HypercubeBasis::new(6).unwrap();
    let w = MarkedState::pair(64, 0, 63).unwrap();
    let ov = overlaps(&basis, &w).unwrap();
    for (z, p) in ov.coefficients().iter().enumerate() {
        if z.count_ones() % 2 == 1 {
            assert!(p.abs() < 1e-15);
        }
    }
}

#[test]
fn adjacent_pair_on_the_16_cube() {
    let w = MarkedState::pair(1 << 16, 0, 1).unwrap();
    let p = hypercube_exact(16, &w).unwrap();
    assert!((p.envelope - 0.9418).abs() < 2e-3);
}

#[test]
fn approximation_at_optimal_time_on_q6() {
    let g = hypercube(6).unwrap();
    let w = MarkedState::single(64, 0).unwrap();
    let p = search_params(&decompose(&g), &w).unwrap();
    let exact = Propagator::dense(&g, p.gamma_c, &w)
        .unwrap()
        .amplitude(p.t_opt)
        .norm();
    let approx = amplitude_approx(&p, p.t_opt);
    assert!((approx - p.envelope).abs() < 1e-12);
    assert!((approx - exact).abs() / exact <= 0.1, "{approx} vs {exact}");
    assert_eq!(amplitude_approx(&p, 0.0), 0.0);
}

#[test]
fn root_asymmetry_on_complete_graphs() {
    // Single vertex on K_n: μ² + P²μ - P²(1 - P²) = 0, so μ₁ + μ₂ = -P² and
    // the relative asymmetry is about P_N.
    for n in [16usize, 128, 1024, 16384] {
        let mut eig = vec![n as f64; n];
        eig[n - 1] = 0.0;
        let mut coef = vec![((1.0 - 1.0 / n as f64) / (n - 1) as f64).sqrt(); n];
        coef[n - 1] = 1.0 / (n as f64).sqrt();
        let ov = qwsearch_core::Overlaps::new(eig, coef, n - 1).unwrap();
        let (pos, neg) = solve_mu(&ov, ov.gamma_c()).unwrap();
        let p_sq = 1.0 / n as f64;
        assert!((pos + neg + p_sq).abs() < 1e-12 * pos.abs().max(1e-3));
        let rel = ((pos + neg) / pos).abs();
        if p_sq.sqrt() <= 0.1 {
            assert!(rel < 1.1 * p_sq.sqrt(), "n = {n}: {rel}");
        }
        if p_sq.sqrt() <= 0.01 {
            assert!(rel < 0.01);
        }
    }
}
