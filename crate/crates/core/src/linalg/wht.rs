//! Fast Walsh–Hadamard transform and the analytic hypercube eigenbasis.

use super::Eigenbasis;
use crate::error::{Error, Result};

/// In-place unnormalized Walsh–Hadamard transform:
/// `out[z] = Σ_x (-1)^{popcount(x & z)} data[x]`.
///
/// Panics unless the length is a power of two.
pub fn fwht(data: &mut [f64]) {
    let n = data.len();
    assert!(
        n.is_power_of_two(),
        "FWHT length must be a power of two, got {n}"
    );
    let mut half = 1;
    while half < n {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        half <<= 1;
    }
}

/// Laplacian eigenbasis of the `n`-cube, never materialized:
/// `⟨x|λ_z⟩ = (-1)^{x·z} / √(2^n)` with eigenvalue `2·popcount(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HypercubeBasis {
    n: u32,
}

/// Upper bound on the dimension accepted by [`HypercubeBasis`].
pub const MAX_BASIS_DIM: u32 = 26;

impl HypercubeBasis {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 || n > MAX_BASIS_DIM {
            return Err(Error::param(format!(
                "hypercube dimension must be in 1..={MAX_BASIS_DIM}, got {n}"
            )));
        }
        Ok(HypercubeBasis { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn size(&self) -> usize {
        1 << self.n
    }

    pub fn eigenvalue(&self, z: usize) -> f64 {
        2.0 * z.count_ones() as f64
    }

    pub fn amplitude(&self, x: usize, z: usize) -> f64 {
        let sign = if (x & z).count_ones() % 2 == 0 {
            1.0
        } else {
            -1.0
        };
        sign / (self.size() as f64).sqrt()
    }

    /// All overlaps `⟨λ_z|v⟩` in `O(N log N)`.
    pub fn transform(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(
            v.len(),
            self.size(),
            "state dimension does not match the hypercube"
        );
        let mut out = v.to_vec();
        fwht(&mut out);
        let norm = 1.0 / (self.size() as f64).sqrt();
        for x in &mut out {
            *x *= norm;
        }
        out
    }
}

impl Eigenbasis for HypercubeBasis {
    fn dim(&self) -> usize {
        self.size()
    }

    fn eigenvalues(&self) -> Vec<f64> {
        (0..self.size()).map(|z| self.eigenvalue(z)).collect()
    }

    fn coefficients(&self, v: &[f64]) -> Vec<f64> {
        self.transform(v)
    }

    fn zero_mode(&self) -> usize {
        0
    }
}
