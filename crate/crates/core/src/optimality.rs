//! The spectral certificate for optimal search of every marked state:
//! `λ_1/λ_{N-1} ≤ 1 + 1/√2`, where `λ_1` and `λ_{N-1}` are the largest and
//! smallest non-zero Laplacian eigenvalues, together with its closed forms
//! for the complete-minus-matching, strongly regular and complete
//! multipartite families, and a randomized stress test of the envelope.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::compensated::{self, CompensatedSum};
use crate::error::{Error, Result};
use crate::graphs::SrgParams;
use crate::linalg::{SpectralDecomposition, ZERO_EIGENVALUE_TOL};
use crate::search::Overlaps;

/// `1 + 1/√2`.
pub const THRESHOLD: f64 = 1.0 + std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Certified,
    NotCertified,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Certified => "certified",
            Verdict::NotCertified => "not-certified",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalityReport {
    pub lambda_max: f64,
    pub lambda_min_nonzero: f64,
    /// `1/λ_{N-1} - 1/λ_1`.
    pub theta: f64,
    pub ratio: f64,
    pub threshold: f64,
    pub verdict: Verdict,
}

impl OptimalityReport {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

/// Report from the two extremal non-zero eigenvalues.
pub fn certify_spectrum(lambda_max: f64, lambda_min_nonzero: f64) -> Result<OptimalityReport> {
    if !(lambda_min_nonzero > 0.0 && lambda_max.is_finite()) {
        return Err(Error::input(format!(
            "smallest non-zero eigenvalue must be positive, got {lambda_min_nonzero}"
        )));
    }
    if lambda_max < lambda_min_nonzero {
        return Err(Error::input(format!(
            "largest eigenvalue {lambda_max} below smallest {lambda_min_nonzero}"
        )));
    }
    let ratio = lambda_max / lambda_min_nonzero;
    Ok(OptimalityReport {
        lambda_max,
        lambda_min_nonzero,
        theta: 1.0 / lambda_min_nonzero - 1.0 / lambda_max,
        ratio,
        threshold: THRESHOLD,
        verdict: if ratio <= THRESHOLD {
            Verdict::Certified
        } else {
            Verdict::NotCertified
        },
    })
}

/// Certificate from a Laplacian decomposition (eigenvalues non-increasing).
pub fn certify(decomp: &SpectralDecomposition) -> Result<OptimalityReport> {
    let ev = &decomp.eigenvalues;
    let zeros = decomp.zero_count(ZERO_EIGENVALUE_TOL);
    if zeros > 1 {
        return Err(Error::Disconnected { zero_modes: zeros });
    }
    if ev.len() < 2 || zeros == 0 {
        return Err(Error::input(
            "need a connected Laplacian spectrum with one zero eigenvalue",
        ));
    }
    certify_spectrum(ev[0], ev[ev.len() - 2])
}

/// `K_n` with `l` disjoint edges removed: non-zero spectrum `{n, n-2}`,
/// ratio `n/(n-2)`. With `l = 0` this is the complete graph, ratio one.
pub fn certify_induced_complete(n: usize, l: usize) -> Result<OptimalityReport> {
    if n < 2 || 2 * l > n {
        return Err(Error::param(format!(
            "need n >= 2 and 2l <= n, got n = {n}, l = {l}"
        )));
    }
    let nf = n as f64;
    if l == 0 {
        return certify_spectrum(nf, nf);
    }
    if n < 3 {
        return Err(Error::Disconnected { zero_modes: 2 });
    }
    certify_spectrum(nf, nf - 2.0)
}

/// Strongly regular graph: `λ = k - (a - c ∓ √Δ)/2`.
pub fn certify_srg(params: &SrgParams) -> Result<OptimalityReport> {
    let SrgParams { n, k, a, c } = *params;
    let p = SrgParams::new(n, k, a, c)?;
    let root = p.delta().sqrt();
    let (k, diff) = (p.k as f64, p.a as f64 - p.c as f64);
    certify_spectrum(k - 0.5 * (diff - root), k - 0.5 * (diff + root))
}

/// Regular complete `m`-partite graph with blocks of size `k`: non-zero
/// spectrum `{mk, (m-1)k}`, ratio `m/(m-1)`. Singleton blocks give `K_m`.
pub fn certify_multipartite(m: usize, k: usize) -> Result<OptimalityReport> {
    if m < 2 || k < 1 {
        return Err(Error::param(format!(
            "need m >= 2 and k >= 1, got m = {m}, k = {k}"
        )));
    }
    let top = (m * k) as f64;
    if k == 1 {
        return certify_spectrum(top, top);
    }
    certify_spectrum(top, ((m - 1) * k) as f64)
}

/// Both sides of the variance bound behind the certificate:
/// `Σ_{j≠N} a_j (1/λ_j - γ_c/(1 - a_N))² ≤ θ² Σ_{j≠N} a_j`,
/// with `θ` from the extremal non-zero eigenvalues of the basis.
pub fn variance_bound(overlaps: &Overlaps) -> Result<(f64, f64)> {
    let nonzero: Vec<(f64, f64)> = overlaps.nonzero_modes().collect();
    let lo = nonzero.iter().map(|m| m.0).fold(f64::INFINITY, f64::min);
    let hi = nonzero.iter().map(|m| m.0).fold(0.0, f64::max);
    if !(lo > 0.0) {
        return Err(Error::input("no positive non-zero eigenvalue"));
    }
    let theta = 1.0 / lo - 1.0 / hi;
    let mass = overlaps.nonzero_weight();
    if mass <= 0.0 {
        return Err(Error::DegenerateState);
    }
    let mean = overlaps.gamma_c() / mass;
    let lhs = compensated::sum(nonzero.iter().map(|&(l, p)| {
        let d = 1.0 / l - mean;
        p * p * d * d
    }));
    Ok((lhs, theta * theta * mass))
}

/// Bins of the envelope histogram over `[0, 1]`.
pub const HISTOGRAM_BINS: usize = 20;

/// Envelope statistics over random marked states with `P_N ≥ 1/√N`.
///
/// `*_envelope` is `γ_c/β`; `*_normalized` is `γ_c/(β √(1 - P_N²))`, the
/// envelope with the non-zero weights rescaled to sum to one.
#[derive(Debug, Clone, PartialEq)]
pub struct StressStats {
    pub trials: usize,
    pub seed: u64,
    pub min_envelope: f64,
    pub mean_envelope: f64,
    pub min_normalized: f64,
    pub mean_normalized: f64,
    pub min_p_n: f64,
    /// Trials whose normalized envelope is below `1/√2`.
    pub below_threshold: usize,
    /// Counts of the normalized envelope in [`HISTOGRAM_BINS`] equal bins.
    pub histogram: Vec<usize>,
}

/// Samples `trials` states: normal amplitudes, the uniform component
/// removed, then mixed back as `√(1-c²) w_⊥ + c|s⟩` with `c ~ U[1/√N, 1]`.
///
/// Trial `i` draws from stream `i` of a ChaCha generator seeded with
/// `seed`, so every trial is reproducible on its own.
pub fn stress_random_states(
    decomp: &SpectralDecomposition,
    trials: usize,
    seed: u64,
) -> Result<StressStats> {
    let n = decomp.dim();
    let zeros = decomp.zero_count(ZERO_EIGENVALUE_TOL);
    if zeros != 1 || n < 2 {
        return Err(Error::Disconnected { zero_modes: zeros });
    }
    if trials == 0 {
        return Err(Error::param("need at least one trial"));
    }
    let eigenvalues = &decomp.eigenvalues;
    let inv_sqrt_n = 1.0 / (n as f64).sqrt();
    let mut stats = StressStats {
        trials,
        seed,
        min_envelope: f64::INFINITY,
        mean_envelope: 0.0,
        min_normalized: f64::INFINITY,
        mean_normalized: 0.0,
        min_p_n: f64::INFINITY,
        below_threshold: 0,
        histogram: vec![0; HISTOGRAM_BINS],
    };
    let (mut env_sum, mut norm_sum) = (CompensatedSum::default(), CompensatedSum::default());
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let c: f64 = rng.random_range(inv_sqrt_n..=1.0);
        let w = sample_state(&mut rng, n, c);
        let p = decomp.project(&w);
        let (mut gamma, mut beta_sq) = (CompensatedSum::default(), CompensatedSum::default());
        for (&l, &pk) in eigenvalues.iter().zip(&p).take(n - 1) {
            gamma.add(pk * pk / l);
            beta_sq.add(pk * pk / (l * l));
        }
        let p_n = p[n - 1].abs();
        let envelope = gamma.value() / beta_sq.value().sqrt();
        let normalized = envelope / (1.0 - p_n * p_n).sqrt();

        stats.min_envelope = stats.min_envelope.min(envelope);
        stats.min_normalized = stats.min_normalized.min(normalized);
        stats.min_p_n = stats.min_p_n.min(p_n);
        env_sum.add(envelope);
        norm_sum.add(normalized);
        if normalized < std::f64::consts::FRAC_1_SQRT_2 {
            stats.below_threshold += 1;
        }
        let bin = ((normalized * HISTOGRAM_BINS as f64) as usize).min(HISTOGRAM_BINS - 1);
        stats.histogram[bin] += 1;
    }
    stats.mean_envelope = env_sum.value() / trials as f64;
    stats.mean_normalized = norm_sum.value() / trials as f64;
    Ok(stats)
}

/// Random real unit vector on `n` vertices with `⟨w|s⟩ = c` exactly (up to
/// rounding): normal amplitudes with the uniform component removed,
/// rescaled to `√(1-c²)`, plus `c|s⟩`.
pub fn sample_state(rng: &mut impl Rng, n: usize, c: f64) -> Vec<f64> {
    let inv_sqrt_n = 1.0 / (n as f64).sqrt();
    loop {
        let mut w: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let along = compensated::sum(w.iter().copied()) * inv_sqrt_n;
        for x in &mut w {
            *x -= along * inv_sqrt_n;
        }
        let norm = compensated::sum(w.iter().map(|x| x * x)).sqrt();
        if norm < 1e-8 {
            continue;
        }
        let perp = (1.0 - c * c).max(0.0).sqrt() / norm;
        return w.iter().map(|x| perp * x + c * inv_sqrt_n).collect();
    }
}
