//! Overlaps of the marked state with the Laplacian eigenbasis and the
//! quantities derived from them: the critical jump rate `γ_c = Σ P_k²/λ_k`,
//! `β² = Σ P_k²/λ_k²` (both over non-zero modes), the envelope `γ_c/β`,
//! the optimal time `T = πβ/(2γ_c P_N)` and the perturbative eigenvalues
//! `±γ_c P_N/β`.

mod secular;
mod state;

pub use secular::{f_of_mu, solve_mu, Level, SecularFunction, WEIGHT_FLOOR};
pub use state::{MarkedState, NORM_TOL};

use num_complex::Complex64;

use crate::compensated;
use crate::error::{Error, Result};
use crate::linalg::{Eigenbasis, SpectralDecomposition};

/// `P_N` at or below this is treated as an orthogonal state.
pub const ORTHOGONAL_TOL: f64 = 1e-12;
/// Non-zero-mode weight at or below this makes a state degenerate.
pub const DEGENERATE_TOL: f64 = 1e-20;

/// `P_k = ⟨w|λ_k⟩` for every mode, with the eigenvalues they belong to.
#[derive(Debug, Clone, PartialEq)]
pub struct Overlaps {
    eigenvalues: Vec<f64>,
    coefficients: Vec<f64>,
    zero_mode: usize,
}

impl Overlaps {
    /// `zero_mode` indexes the uniform eigenvector.
    pub fn new(eigenvalues: Vec<f64>, coefficients: Vec<f64>, zero_mode: usize) -> Result<Self> {
        if eigenvalues.len() != coefficients.len() {
            return Err(Error::DimensionMismatch {
                expected: eigenvalues.len(),
                found: coefficients.len(),
            });
        }
        if zero_mode >= eigenvalues.len() {
            return Err(Error::input("zero mode index out of range"));
        }
        Ok(Overlaps {
            eigenvalues,
            coefficients,
            zero_mode,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn zero_mode(&self) -> usize {
        self.zero_mode
    }

    /// `P_N = ⟨w|s⟩`.
    pub fn p_n(&self) -> f64 {
        self.coefficients[self.zero_mode]
    }

    /// `a_k = P_k²`.
    pub fn weights(&self) -> Vec<f64> {
        self.coefficients.iter().map(|p| p * p).collect()
    }

    /// `(λ_k, P_k)` over the non-zero modes.
    pub fn nonzero_modes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.eigenvalues
            .iter()
            .zip(&self.coefficients)
            .enumerate()
            .filter(move |(k, _)| *k != self.zero_mode)
            .map(|(_, (&l, &p))| (l, p))
    }

    /// `Σ_k P_k²`, one for a normalized state.
    pub fn total_weight(&self) -> f64 {
        compensated::sum(self.coefficients.iter().map(|p| p * p))
    }

    /// `Σ_{k≠N} P_k² = 1 - P_N²`.
    pub fn nonzero_weight(&self) -> f64 {
        compensated::sum(self.nonzero_modes().map(|(_, p)| p * p))
    }

    /// `Σ_{k≠N} P_k² / λ_k`.
    pub fn gamma_c(&self) -> f64 {
        compensated::sum(self.nonzero_modes().map(|(l, p)| p * p / l))
    }

    /// `Σ_{k≠N} P_k² / λ_k²`.
    pub fn beta_sq(&self) -> f64 {
        compensated::sum(self.nonzero_modes().map(|(l, p)| p * p / (l * l)))
    }

    /// Non-zero modes merged by eigenvalue, ascending. Eigenvalues within
    /// `1e-9·max(1, λ_max)` are merged; levels lighter than [`WEIGHT_FLOOR`]
    /// are dropped.
    pub fn levels(&self) -> Vec<Level> {
        let mut modes: Vec<(f64, f64)> = self.nonzero_modes().map(|(l, p)| (l, p * p)).collect();
        modes.sort_by(|a, b| a.0.total_cmp(&b.0));
        let scale = modes.last().map_or(1.0, |m| m.0.abs().max(1.0));
        let tol = 1e-9 * scale;
        let mut levels: Vec<Level> = Vec::new();
        let mut acc = compensated::CompensatedSum::default();
        let mut start = 0;
        for i in 0..modes.len() {
            acc.add(modes[i].1);
            let last_in_group = i + 1 == modes.len() || modes[i + 1].0 - modes[start].0 > tol;
            if last_in_group {
                let group = &modes[start..=i];
                let eigenvalue = group.iter().map(|m| m.0).sum::<f64>() / group.len() as f64;
                let weight = acc.value();
                if weight > WEIGHT_FLOOR {
                    levels.push(Level {
                        eigenvalue,
                        weight,
                        multiplicity: group.len(),
                    });
                }
                acc = compensated::CompensatedSum::default();
                start = i + 1;
            }
        }
        levels
    }
}

/// Expands `w` in any Laplacian eigenbasis.
pub fn overlaps(basis: &impl Eigenbasis, w: &MarkedState) -> Result<Overlaps> {
    if basis.dim() != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: w.dim(),
        });
    }
    Overlaps::new(
        basis.eigenvalues(),
        basis.coefficients(w.weights()),
        basis.zero_mode(),
    )
}

/// Analytic search parameters for one (graph, marked state) instance.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchParameters {
    pub overlaps: Overlaps,
    /// `P_N = ⟨w|s⟩ > 0`.
    pub p_n: f64,
    /// Critical jump rate `Σ_{k≠N} P_k²/λ_k`.
    pub gamma_c: f64,
    pub beta: f64,
    /// `γ_c/β`, at most one.
    pub envelope: f64,
    /// `πβ/(2γ_c P_N)`.
    pub t_opt: f64,
    pub mu1: f64,
    pub mu2: f64,
    /// Digest of the marked state these parameters describe.
    pub state_digest: u64,
}

impl SearchParameters {
    pub fn from_overlaps(overlaps: Overlaps, state_digest: u64) -> Result<Self> {
        let p_n = overlaps.p_n();
        if p_n <= ORTHOGONAL_TOL {
            return Err(Error::OrthogonalState);
        }
        if overlaps.nonzero_weight() <= DEGENERATE_TOL {
            return Err(Error::DegenerateState);
        }
        if overlaps.nonzero_modes().any(|(l, p)| p != 0.0 && l <= 0.0) {
            return Err(Error::input("non-zero mode with non-positive eigenvalue"));
        }
        let gamma_c = overlaps.gamma_c();
        let beta = overlaps.beta_sq().sqrt();
        let envelope = gamma_c / beta;
        let mu1 = gamma_c * p_n / beta;
        Ok(SearchParameters {
            p_n,
            gamma_c,
            beta,
            envelope,
            t_opt: std::f64::consts::PI * beta / (2.0 * gamma_c * p_n),
            mu1,
            mu2: -mu1,
            state_digest,
            overlaps,
        })
    }

    /// `a_k = P_k²`.
    pub fn a(&self, k: usize) -> f64 {
        let p = self.overlaps.coefficients()[k];
        p * p
    }
}

pub fn search_params(basis: &impl Eigenbasis, w: &MarkedState) -> Result<SearchParameters> {
    SearchParameters::from_overlaps(overlaps(basis, w)?, w.digest())
}

/// The sinusoidal approximation `(γ_c/β)|sin(γ_c P_N t/β)|` of the
/// success amplitude.
pub fn amplitude_approx(params: &SearchParameters, t: f64) -> f64 {
    params.envelope * (params.gamma_c * params.p_n / params.beta * t).sin().abs()
}

/// `⟨w|e^{-iHt}|s⟩ = Σ_k ⟨w|μ_k⟩⟨μ_k|s⟩ e^{-iμ_k t}` from a decomposition of `H`.
pub fn amplitude_exact_sum(
    decomp_h: &SpectralDecomposition,
    w: &[f64],
    s: &[f64],
    t: f64,
) -> Result<Complex64> {
    let n = decomp_h.dim();
    for v in [w, s] {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.len(),
            });
        }
    }
    let pw = decomp_h.project(w);
    let ps = decomp_h.project(s);
    Ok(pw
        .iter()
        .zip(&ps)
        .zip(&decomp_h.eigenvalues)
        .map(|((a, b), &mu)| Complex64::from_polar(a * b, -mu * t))
        .sum())
}

/// The uniform state on `n` vertices.
pub fn uniform_state(n: usize) -> Vec<f64> {
    vec![1.0 / (n as f64).sqrt(); n]
}
