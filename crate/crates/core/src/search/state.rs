use crate::error::{Error, Result};

/// Accepted deviation of `Σ w_j²` from one.
pub const NORM_TOL: f64 = 1e-10;

/// A real unit-norm marked state over the vertices of a graph.
///
/// The global sign is fixed so that `⟨w|s⟩ ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkedState {
    weights: Vec<f64>,
}

impl MarkedState {
    /// Takes amplitudes that are already normalized to within [`NORM_TOL`].
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        let norm_sq = check_weights(&weights)?;
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::input(format!(
                "marked state has squared norm {norm_sq}, expected 1"
            )));
        }
        Ok(Self::phased(weights))
    }

    /// Scales arbitrary non-zero weights to unit norm.
    pub fn normalized(mut weights: Vec<f64>) -> Result<Self> {
        let norm = check_weights(&weights)?.sqrt();
        for w in &mut weights {
            *w /= norm;
        }
        Ok(Self::phased(weights))
    }

    /// `|v⟩` on `n` vertices.
    pub fn single(n: usize, v: usize) -> Result<Self> {
        Self::uniform_over(n, &[v])
    }

    /// `(|u⟩ + |v⟩)/√2`.
    pub fn pair(n: usize, u: usize, v: usize) -> Result<Self> {
        if u == v {
            return Err(Error::CoincidentVertices);
        }
        Self::uniform_over(n, &[u, v])
    }

    /// Equal superposition of the listed distinct vertices.
    pub fn uniform_over(n: usize, vertices: &[usize]) -> Result<Self> {
        let entries: Vec<(usize, f64)> = vertices.iter().map(|&v| (v, 1.0)).collect();
        Self::from_sparse(n, &entries)
    }

    /// Builds and normalizes a state from `(vertex, weight)` entries.
    /// Repeated vertices are rejected.
    pub fn from_sparse(n: usize, entries: &[(usize, f64)]) -> Result<Self> {
        let mut weights = vec![0.0; n];
        let mut seen = vec![false; n];
        for &(v, w) in entries {
            if v >= n {
                return Err(Error::input(format!(
                    "vertex {v} out of range for {n} vertices"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::input(format!("vertex {v} listed twice")));
            }
            weights[v] = w;
        }
        Self::normalized(weights)
    }

    fn phased(mut weights: Vec<f64>) -> Self {
        if weights.iter().sum::<f64>() < 0.0 {
            for w in &mut weights {
                *w = -*w;
            }
        }
        MarkedState { weights }
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Vertices carrying non-zero amplitude.
    pub fn support(&self) -> Vec<usize> {
        (0..self.weights.len())
            .filter(|&v| self.weights[v] != 0.0)
            .collect()
    }

    /// `⟨w|s⟩` with `|s⟩` the uniform state.
    pub fn overlap_with_uniform(&self) -> f64 {
        crate::compensated::sum(self.weights.iter().copied()) / (self.dim() as f64).sqrt()
    }

    /// FNV-1a hash of the dimension and amplitude bits; identifies the
    /// instance a trace or parameter set was computed for.
    pub fn digest(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0100_0000_01b3;
        let mut h = OFFSET;
        let mut feed = |bytes: [u8; 8]| {
            for b in bytes {
                h ^= u64::from(b);
                h = h.wrapping_mul(PRIME);
            }
        };
        feed((self.weights.len() as u64).to_le_bytes());
        for w in &self.weights {
            feed(w.to_bits().to_le_bytes());
        }
        h
    }
}

fn check_weights(weights: &[f64]) -> Result<f64> {
    if weights.is_empty() {
        return Err(Error::input("marked state has no vertices"));
    }
    if weights.iter().any(|w| !w.is_finite()) {
        return Err(Error::input("marked state has non-finite amplitudes"));
    }
    let norm_sq: f64 = weights.iter().map(|w| w * w).sum();
    if norm_sq == 0.0 {
        return Err(Error::input("marked state has empty support"));
    }
    Ok(norm_sq)
}
