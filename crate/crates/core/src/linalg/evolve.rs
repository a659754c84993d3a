use num_complex::Complex64;

use super::SpectralDecomposition;

/// `e^{-iHt} v` for `H` given by its spectral decomposition.
pub fn evolve(decomp_h: &SpectralDecomposition, v: &[Complex64], t: f64) -> Vec<Complex64> {
    let n = decomp_h.dim();
    assert_eq!(
        v.len(),
        n,
        "state dimension does not match the decomposition"
    );
    let vecs = &decomp_h.eigenvectors;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
    for (i, vi) in v.iter().enumerate() {
        for (c, &u) in coeffs.iter_mut().zip(vecs.row(i)) {
            *c += vi * u;
        }
    }
    for (c, &mu) in coeffs.iter_mut().zip(&decomp_h.eigenvalues) {
        *c *= Complex64::from_polar(1.0, -mu * t);
    }
    (0..n)
        .map(|i| vecs.row(i).iter().zip(&coeffs).map(|(&u, c)| c * u).sum())
        .collect()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}
