use num_complex::Complex64;
use proptest::prelude::*;

use qwsearch_core::graphs::{hypercube, laplacian};
use qwsearch_core::linalg::{eig_jacobi, eig_sym, eig_tridiagonal, evolve, norm, Eigenbasis};
use qwsearch_core::{HypercubeBasis, Matrix, SpectralDecomposition};

fn symmetric(n: usize, values: &[f64]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    let mut it = values.iter().cycle();
    for i in 0..n {
        for j in i..n {
            let x = *it.next().unwrap();
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    m
}

fn arb_symmetric(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, prop::collection::vec(-10.0f64..10.0, 1..64))
        .prop_map(|(n, vals)| symmetric(n, &vals))
}

fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn arb_state(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n).prop_filter_map("zero vector", |v| {
        let v: Vec<Complex64> = v
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        let n = norm(&v);
        (n > 1e-3).then(|| v.iter().map(|c| c / n).collect())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reconstruction(m in arb_symmetric(256)) {
        let dec = eig_sym(&m).unwrap();
        prop_assert!(max_diff(&dec.reconstruct(), &m) <= 1e-8 * m.norm_inf().max(1e-300));
        prop_assert!(dec.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn eigenpair_residual_and_orthonormality(m in arb_symmetric(48)) {
        let dec = eig_sym(&m).unwrap();
        let n = dec.dim();
        let scale = m.norm_inf();
        for k in 0..n {
            let v = dec.eigenvector(k);
            let mv = m.mul_vec(&v);
            for (a, b) in mv.iter().zip(&v) {
                prop_assert!((a - dec.eigenvalues[k] * b).abs() <= 1e-9 * scale.max(1e-300));
            }
        }
        let gram = dec.eigenvectors.transpose().matmul(&dec.eigenvectors);
        prop_assert!(max_diff(&gram, &Matrix::identity(n)) <= 1e-10);
    }

    #[test]
    fn both_solvers_give_the_same_spectrum(m in arb_symmetric(60)) {
        let a = eig_jacobi(&m).unwrap();
        let b = eig_tridiagonal(&m).unwrap();
        let scale = m.norm_inf().max(1.0);
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            prop_assert!((x - y).abs() <= 1e-11 * scale);
        }
    }

    #[test]
    fn evolution_is_unitary(
        m in arb_symmetric(12),
        seed in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 12),
        t in -50.0f64..50.0,
    ) {
        let dec = eig_sym(&m).unwrap();
        let n = dec.dim();
        let v: Vec<Complex64> = seed.iter().take(n).map(|&(re, im)| Complex64::new(re, im)).collect();
        let len = norm(&v);
        prop_assume!(len > 1e-3);
        let v: Vec<Complex64> = v.iter().map(|c| c / len).collect();
        prop_assert!((norm(&evolve(&dec, &v, t)) - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn evolution_composes(v in arb_state(8), t1 in -5.0f64..5.0, t2 in -5.0f64..5.0) {
        let g = hypercube(3).unwrap();
        let dec = eig_sym(&laplacian(&g)).unwrap();
        let two_steps = evolve(&dec, &evolve(&dec, &v, t1), t2);
        let one_step = evolve(&dec, &v, t1 + t2);
        for (a, b) in two_steps.iter().zip(&one_step) {
            prop_assert!((a - b).norm() <= 1e-9);
        }
    }
}

/// `Σ v vᵀ` over orthonormal vectors.
fn projector(vectors: &[Vec<f64>], n: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| vectors.iter().map(|v| v[i] * v[j]).sum())
}

#[test]
fn implicit_hypercube_basis_matches_dense_eigenspaces() {
    for n in 1..=6u32 {
        let size = 1usize << n;
        let basis = HypercubeBasis::new(n).unwrap();
        let dense =
            SpectralDecomposition::of_laplacian(&laplacian(&hypercube(n).unwrap())).unwrap();
        for level in 0..=n {
            let lambda = 2.0 * level as f64;
            let implicit: Vec<Vec<f64>> = (0..size)
                .filter(|z| z.count_ones() == level)
                .map(|z| (0..size).map(|x| basis.amplitude(x, z)).collect())
                .collect();
            let from_dense: Vec<Vec<f64>> = (0..size)
                .filter(|&k| (dense.eigenvalues[k] - lambda).abs() < 1e-9)
                .map(|k| dense.eigenvector(k))
                .collect();
            assert_eq!(implicit.len(), from_dense.len());
            let diff = max_diff(&projector(&implicit, size), &projector(&from_dense, size));
            assert!(diff < 1e-10, "n = {n}, level {level}: {diff}");
        }
        assert_eq!(basis.zero_mode(), 0);
        assert_eq!(basis.eigenvalues()[size - 1], 2.0 * n as f64);
    }
}

#[test]
fn eigensolver_examples() {
    let q3 = eig_sym(&laplacian(&hypercube(3).unwrap())).unwrap();
    let expected = [6.0, 4.0, 4.0, 4.0, 2.0, 2.0, 2.0, 0.0];
    for (a, e) in q3.eigenvalues.iter().zip(expected) {
        assert!((a - e).abs() < 1e-12);
    }
    let m = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
    assert!(eig_sym(&m).is_err());
    assert_eq!(eig_sym(&m.clone()), eig_sym(&m));
}
