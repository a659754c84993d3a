//! Exact search dynamics. The success amplitude `⟨w|e^{-iHt}|s⟩` is evaluated
//! from an eigendecomposition of `H = γQ - |w⟩⟨w|`, either of the full
//! matrix or of its restriction to the invariant subspace spanned by `|s⟩`
//! and the projections of `|w⟩` onto each Laplacian eigenspace. The latter
//! has one dimension per distinct eigenvalue (at most `n + 1` on `Q_n`)
//! and is what makes large hypercubes tractable.

use std::fmt::Write as _;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::graphs::{laplacian, Graph};
use crate::linalg::{eig_sym, evolve, Eigenbasis, Matrix, SpectralDecomposition};
use crate::numfmt::sig12;
use crate::search::{
    amplitude_approx, overlaps, uniform_state, MarkedState, Overlaps, SearchParameters,
};

/// Default number of grid points.
pub const DEFAULT_STEPS: usize = 1024;

/// Jump rate of the search Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JumpRate {
    /// `γ = γ_c` of the instance.
    Critical,
    Value(f64),
}

impl JumpRate {
    pub fn resolve(self, params: &SearchParameters) -> Result<f64> {
        let g = match self {
            JumpRate::Critical => params.gamma_c,
            JumpRate::Value(g) => g,
        };
        check_jump_rate(g)?;
        Ok(g)
    }
}

impl FromStr for JumpRate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("critical") {
            return Ok(JumpRate::Critical);
        }
        let g: f64 = s.parse().map_err(|_| {
            Error::param(format!(
                "jump rate must be 'critical' or a number, got '{s}'"
            ))
        })?;
        check_jump_rate(g)?;
        Ok(JumpRate::Value(g))
    }
}

fn check_jump_rate(g: f64) -> Result<()> {
    if g > 0.0 && g.is_finite() {
        Ok(())
    } else {
        Err(Error::param(format!(
            "jump rate must be positive and finite, got {g}"
        )))
    }
}

/// `H = γQ - w wᵀ`.
pub fn hamiltonian(g: &Graph, jump_rate: f64, w: &MarkedState) -> Result<Matrix> {
    check_jump_rate(jump_rate)?;
    if w.dim() != g.n_vertices() {
        return Err(Error::DimensionMismatch {
            expected: g.n_vertices(),
            found: w.dim(),
        });
    }
    let mut h = laplacian(g);
    h.scale(jump_rate);
    h.sub_outer(1.0, w.weights());
    Ok(h)
}

/// A diagonalized search Hamiltonian together with `|w⟩` and `|s⟩`
/// expressed in its eigenbasis.
#[derive(Debug, Clone)]
pub struct Propagator {
    decomp: SpectralDecomposition,
    s: Vec<f64>,
    /// `⟨w|μ_k⟩⟨μ_k|s⟩`.
    coupling: Vec<f64>,
}

impl Propagator {
    /// Dense diagonalization of the full `N × N` Hamiltonian.
    pub fn dense(g: &Graph, jump_rate: f64, w: &MarkedState) -> Result<Self> {
        let h = hamiltonian(g, jump_rate, w)?;
        let s = uniform_state(g.n_vertices());
        Ok(Self::from_parts(eig_sym(&h)?, w.weights(), s))
    }

    /// The Hamiltonian restricted to `span{|s⟩, Π_λ|w⟩}` over the distinct
    /// non-zero Laplacian eigenvalues `λ`. In the basis `e_0 = |s⟩`,
    /// `e_j = Π_j w/‖Π_j w‖` it reads `diag(0, γλ_j) - c cᵀ` with
    /// `c = (P_N, ‖Π_j w‖)`, and the restriction is exact.
    pub fn reduced(overlaps: &Overlaps, jump_rate: f64) -> Result<Self> {
        check_jump_rate(jump_rate)?;
        let levels = overlaps.levels();
        let dim = levels.len() + 1;
        let mut c = Vec::with_capacity(dim);
        c.push(overlaps.p_n());
        c.extend(levels.iter().map(|l| l.weight.sqrt()));
        let mut h = Matrix::zeros(dim, dim);
        for (j, l) in levels.iter().enumerate() {
            h[(j + 1, j + 1)] = jump_rate * l.eigenvalue;
        }
        h.sub_outer(1.0, &c);
        let mut s = vec![0.0; dim];
        s[0] = 1.0;
        Ok(Self::from_parts(eig_sym(&h)?, &c, s))
    }

    fn from_parts(decomp: SpectralDecomposition, w: &[f64], s: Vec<f64>) -> Self {
        let pw = decomp.project(w);
        let ps = decomp.project(&s);
        let coupling = pw.iter().zip(&ps).map(|(a, b)| a * b).collect();
        Propagator {
            decomp,
            s,
            coupling,
        }
    }

    pub fn dim(&self) -> usize {
        self.decomp.dim()
    }

    /// Eigenvalues of the (possibly restricted) Hamiltonian.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.decomp.eigenvalues
    }

    pub fn decomposition(&self) -> &SpectralDecomposition {
        &self.decomp
    }

    /// `⟨w|e^{-iHt}|s⟩`.
    pub fn amplitude(&self, t: f64) -> Complex64 {
        self.coupling
            .iter()
            .zip(&self.decomp.eigenvalues)
            .map(|(&c, &mu)| Complex64::from_polar(c, -mu * t))
            .sum()
    }

    /// `e^{-iHt}|s⟩` in the basis the propagator was built in: vertices
    /// for [`Propagator::dense`], the reduced basis otherwise.
    pub fn state(&self, t: f64) -> Vec<Complex64> {
        let s: Vec<Complex64> = self.s.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        evolve(&self.decomp, &s, t)
    }
}

/// Time grid and peak settings for [`run`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub jump_rate: JumpRate,
    /// End of the grid; `None` means `2T`.
    pub t_max: Option<f64>,
    pub steps: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            jump_rate: JumpRate::Critical,
            t_max: None,
            steps: DEFAULT_STEPS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionTrace {
    pub times: Vec<f64>,
    /// `|⟨w|ψ(t)⟩|` at each time.
    pub amplitudes: Vec<f64>,
    pub peak_time: f64,
    pub peak_probability: f64,
    pub jump_rate: f64,
    pub state_digest: u64,
}

impl EvolutionTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `t,amplitude,probability` rows with 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,amplitude,probability\n");
        for (&t, &a) in self.times.iter().zip(&self.amplitudes) {
            let _ = writeln!(out, "{},{},{}", sig12(t), sig12(a), sig12(a * a));
        }
        out
    }

    /// First grid point that is a strict local maximum, as `(t, amplitude)`.
    pub fn first_local_max(&self) -> Option<(f64, f64)> {
        let a = &self.amplitudes;
        (1..a.len().saturating_sub(1))
            .find(|&i| a[i] >= a[i - 1] && a[i] > a[i + 1])
            .map(|i| (self.times[i], a[i]))
    }
}

/// Simulates search on `g` with a dense diagonalization of `H`.
pub fn run(
    g: &Graph,
    w: &MarkedState,
    opts: RunOptions,
) -> Result<(EvolutionTrace, SearchParameters)> {
    let basis = SpectralDecomposition::of_laplacian(&laplacian(g))?;
    let params = SearchParameters::from_overlaps(overlaps(&basis, w)?, w.digest())?;
    let gamma = opts.jump_rate.resolve(&params)?;
    let prop = Propagator::dense(g, gamma, w)?;
    let trace = sample(&prop, &params, gamma, opts)?;
    Ok((trace, params))
}

/// Simulates search in the reduced invariant subspace, from any Laplacian
/// eigenbasis (dense or the implicit hypercube basis).
pub fn run_reduced(
    basis: &impl Eigenbasis,
    w: &MarkedState,
    opts: RunOptions,
) -> Result<(EvolutionTrace, SearchParameters)> {
    let params = SearchParameters::from_overlaps(overlaps(basis, w)?, w.digest())?;
    let gamma = opts.jump_rate.resolve(&params)?;
    let prop = Propagator::reduced(&params.overlaps, gamma)?;
    let trace = sample(&prop, &params, gamma, opts)?;
    Ok((trace, params))
}

/// Samples `|amplitude|` on a uniform grid and refines the peak.
pub fn sample(
    prop: &Propagator,
    params: &SearchParameters,
    jump_rate: f64,
    opts: RunOptions,
) -> Result<EvolutionTrace> {
    let t_max = opts.t_max.unwrap_or(2.0 * params.t_opt);
    if !(t_max >= 0.0 && t_max.is_finite()) {
        return Err(Error::param(format!(
            "t_max must be non-negative and finite, got {t_max}"
        )));
    }
    if opts.steps < 2 {
        return Err(Error::param(format!(
            "need at least 2 time steps, got {}",
            opts.steps
        )));
    }
    let times: Vec<f64> = if t_max == 0.0 {
        vec![0.0]
    } else {
        let dt = t_max / (opts.steps - 1) as f64;
        (0..opts.steps)
            .map(|i| {
                if i + 1 == opts.steps {
                    t_max
                } else {
                    i as f64 * dt
                }
            })
            .collect()
    };
    let amp = |t: f64| prop.amplitude(t).norm().min(1.0);
    let amplitudes: Vec<f64> = times.iter().map(|&t| amp(t)).collect();
    let best = amplitudes.iter().enumerate().fold(
        0,
        |best, (i, &a)| if a > amplitudes[best] { i } else { best },
    );
    let (peak_time, peak_amp) = if times.len() < 2 {
        (times[best], amplitudes[best])
    } else {
        let lo = times[best.saturating_sub(1)];
        let hi = times[(best + 1).min(times.len() - 1)];
        let (t, a) = golden_max(amp, lo, hi, 1e-9 * params.t_opt);
        if a >= amplitudes[best] {
            (t, a)
        } else {
            (times[best], amplitudes[best])
        }
    };
    Ok(EvolutionTrace {
        times,
        amplitudes,
        peak_time,
        peak_probability: peak_amp * peak_amp,
        jump_rate,
        state_digest: params.state_digest,
    })
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= tol {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let t = 0.5 * (a + b);
    (t, f(t))
}

/// Agreement between an exact trace and the sinusoidal approximation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationReport {
    pub max_abs: f64,
    pub rms: f64,
    /// `|t_peak - T| / T`.
    pub peak_time_rel: f64,
    /// `|√p_peak - γ_c/β| / (γ_c/β)`.
    pub peak_value_rel: f64,
}

pub fn compare(trace: &EvolutionTrace, params: &SearchParameters) -> Result<DeviationReport> {
    if trace.is_empty() {
        return Err(Error::input("empty trace"));
    }
    if trace.state_digest != params.state_digest {
        return Err(Error::input(
            "trace and parameters describe different marked states",
        ));
    }
    let mut max_abs = 0f64;
    let mut sq = crate::compensated::CompensatedSum::default();
    for (&t, &a) in trace.times.iter().zip(&trace.amplitudes) {
        let d = (a - amplitude_approx(params, t)).abs();
        max_abs = max_abs.max(d);
        sq.add(d * d);
    }
    Ok(DeviationReport {
        max_abs,
        rms: (sq.value() / trace.len() as f64).sqrt(),
        peak_time_rel: (trace.peak_time - params.t_opt).abs() / params.t_opt,
        peak_value_rel: (trace.peak_probability.sqrt() - params.envelope).abs() / params.envelope,
    })
}
