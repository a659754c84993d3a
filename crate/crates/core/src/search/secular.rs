//! The secular function `f(μ) = Σ_j P_j² / (γλ_j - μ)`, whose solutions of
//! `f(μ) = 1` are the eigenvalues of `H = γQ - |w⟩⟨w|` that couple to `|w⟩`.

use num_complex::Complex64;

use super::Overlaps;
use crate::error::{Error, Result};

/// Merged levels lighter than this are treated as absent poles.
pub const WEIGHT_FLOOR: f64 = 1e-24;

/// Distinct non-zero Laplacian eigenvalue with the marked-state weight on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub eigenvalue: f64,
    /// `Σ P_k²` over the eigenspace.
    pub weight: f64,
    pub multiplicity: usize,
}

/// `f(μ)` summed mode by mode. Zero eigenvalues contribute the `-P_N²/μ` term.
pub fn f_of_mu(mu: f64, p: &[f64], lambda: &[f64], jump_rate: f64) -> Result<f64> {
    if p.len() != lambda.len() {
        return Err(Error::DimensionMismatch {
            expected: lambda.len(),
            found: p.len(),
        });
    }
    let mut acc = crate::compensated::CompensatedSum::default();
    for (&pk, &lk) in p.iter().zip(lambda) {
        if pk == 0.0 {
            continue;
        }
        let denom = jump_rate * lk - mu;
        if denom == 0.0 {
            return Err(Error::Pole(mu));
        }
        acc.add(pk * pk / denom);
    }
    Ok(acc.value())
}

/// Both roots of `f(μ) = 1` adjacent to zero: `(positive, negative)`.
pub fn solve_mu(overlaps: &Overlaps, jump_rate: f64) -> Result<(f64, f64)> {
    SecularFunction::new(overlaps, jump_rate)?.roots_near_zero()
}

/// `f` with degenerate modes merged into poles at `γλ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SecularFunction {
    zero_weight: f64,
    /// `(γλ, weight)`, ascending.
    poles: Vec<(f64, f64)>,
}

impl SecularFunction {
    pub fn new(overlaps: &Overlaps, jump_rate: f64) -> Result<Self> {
        if !(jump_rate > 0.0 && jump_rate.is_finite()) {
            return Err(Error::param(format!(
                "jump rate must be positive, got {jump_rate}"
            )));
        }
        let p_n = overlaps.p_n();
        if p_n <= super::ORTHOGONAL_TOL {
            return Err(Error::OrthogonalState);
        }
        let poles: Vec<(f64, f64)> = overlaps
            .levels()
            .iter()
            .map(|l| (jump_rate * l.eigenvalue, l.weight))
            .collect();
        if poles.is_empty() {
            return Err(Error::DegenerateState);
        }
        Ok(SecularFunction {
            zero_weight: p_n * p_n,
            poles,
        })
    }

    /// Pole locations `γλ`, ascending.
    pub fn poles(&self) -> impl Iterator<Item = f64> + '_ {
        self.poles.iter().map(|p| p.0)
    }

    pub fn value(&self, mu: f64) -> Result<f64> {
        if mu == 0.0 {
            return Err(Error::Pole(mu));
        }
        let mut acc = crate::compensated::CompensatedSum::default();
        acc.add(-self.zero_weight / mu);
        for &(pole, weight) in &self.poles {
            let denom = pole - mu;
            if denom == 0.0 {
                return Err(Error::Pole(mu));
            }
            acc.add(weight / denom);
        }
        Ok(acc.value())
    }

    /// `f'(μ) = Σ P_j² / (γλ_j - μ)²`, positive everywhere off the poles.
    pub fn derivative(&self, mu: f64) -> Result<f64> {
        if mu == 0.0 {
            return Err(Error::Pole(mu));
        }
        let mut acc = crate::compensated::CompensatedSum::default();
        acc.add(self.zero_weight / (mu * mu));
        for &(pole, weight) in &self.poles {
            let denom = pole - mu;
            if denom == 0.0 {
                return Err(Error::Pole(mu));
            }
            acc.add(weight / (denom * denom));
        }
        Ok(acc.value())
    }

    /// `R = 1/f'(μ)`, the weight `|⟨w|μ⟩|²` of the eigenvector at a root.
    pub fn residue(&self, mu: f64) -> Result<f64> {
        Ok(1.0 / self.derivative(mu)?)
    }

    /// The root in `(0, first pole)` and the unique negative root.
    pub fn roots_near_zero(&self) -> Result<(f64, f64)> {
        let first = self.poles[0].0;
        let positive = self.bisect(0.0, first)?;

        // f rises from 0 at -∞ to +∞ at 0⁻; widen until f(lo) < 1.
        let top = self.poles.last().map_or(1.0, |p| p.0);
        let mut lo = -10.0 * top;
        let mut widenings = 0;
        while self.value(lo)? >= 1.0 {
            lo *= 2.0;
            widenings += 1;
            if widenings > 200 || !lo.is_finite() {
                return Err(Error::NumericFailure(
                    "could not bracket the negative root".into(),
                ));
            }
        }
        let negative = self.bisect(lo, 0.0)?;
        Ok((positive, negative))
    }

    /// Every root of `f(μ) = 1`, ascending: one below zero, one between
    /// zero and the first pole, and one between each pair of poles.
    pub fn all_roots(&self) -> Result<Vec<f64>> {
        let (positive, negative) = self.roots_near_zero()?;
        let mut roots = vec![negative, positive];
        for pair in self.poles.windows(2) {
            roots.push(self.bisect(pair[0].0, pair[1].0)?);
        }
        Ok(roots)
    }

    /// `⟨w|e^{-iHt}|s⟩ = -P_N Σ_k e^{-iμ_k t} / (μ_k f'(μ_k))` over the given roots.
    pub fn amplitude(&self, roots: &[f64], t: f64) -> Result<Complex64> {
        let p_n = self.zero_weight.sqrt();
        let mut total = Complex64::new(0.0, 0.0);
        for &mu in roots {
            let scale = -p_n / (mu * self.derivative(mu)?);
            total += Complex64::from_polar(scale, -mu * t);
        }
        Ok(total)
    }

    /// Bisection for `f = 1` on the open interval `(lo, hi)`, on which `f`
    /// increases from `-∞`/below one to `+∞`. Runs to full precision.
    fn bisect(&self, mut lo: f64, mut hi: f64) -> Result<f64> {
        if !(lo < hi) {
            return Err(Error::NumericFailure(format!("empty bracket ({lo}, {hi})")));
        }
        for _ in 0..4096 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                return Ok(mid);
            }
            if self.value(mid)? < 1.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Err(Error::NumericFailure("bisection did not terminate".into()))
    }
}
