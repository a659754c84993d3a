//! Dense symmetric eigensolvers, Walsh–Hadamard kernels and spectral time
//! evolution.

mod eigen;
mod evolve;
mod matrix;
mod wht;

pub use eigen::{
    eig_jacobi, eig_sym, eig_tridiagonal, SpectralDecomposition, JACOBI_MAX_DIM, MAX_SWEEPS,
    OFF_DIAGONAL_TOL, SYMMETRY_TOL, ZERO_EIGENVALUE_TOL,
};
pub use evolve::{evolve, norm};
pub use matrix::Matrix;
pub use wht::{fwht, HypercubeBasis, MAX_BASIS_DIM};

/// An orthonormal Laplacian eigenbasis that can expand states.
///
/// Implemented by dense decompositions and by the implicit hypercube basis.
pub trait Eigenbasis {
    fn dim(&self) -> usize;

    /// Eigenvalues, in the same order as [`Eigenbasis::coefficients`].
    fn eigenvalues(&self) -> Vec<f64>;

    /// `⟨λ_k|v⟩` for every mode `k`.
    fn coefficients(&self, v: &[f64]) -> Vec<f64>;

    /// Index of the zero mode, whose eigenvector is the uniform state.
    fn zero_mode(&self) -> usize;
}

/// For a decomposition built by [`SpectralDecomposition::of_laplacian`],
/// the zero mode is the last column.
impl Eigenbasis for SpectralDecomposition {
    fn dim(&self) -> usize {
        SpectralDecomposition::dim(self)
    }

    fn eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues.clone()
    }

    fn coefficients(&self, v: &[f64]) -> Vec<f64> {
        self.project(v)
    }

    fn zero_mode(&self) -> usize {
        SpectralDecomposition::dim(self) - 1
    }
}
