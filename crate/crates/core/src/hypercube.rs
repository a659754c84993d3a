//! Closed-form `γ_c` and `β` for marked states on the hypercube `Q_n`.
//!
//! In the analytic basis `⟨x|λ_z⟩ = (-1)^{x·z}/√N` a pair of vertices at
//! Hamming distance `m` has `P_z² = 2/N` when `z` has an even number `q` of
//! ones on the `m` differing coordinates and zero otherwise, so every sum
//! runs over `l` ones among the other `n - m` coordinates and even `q`,
//! with eigenvalue `2(l + q)`. The uniform state over `m` weight-one
//! strings has `P_z² = (m - 2p)²/(mN)` where `p` counts ones of `z` among
//! those `m` coordinates.
//!
//! [`hypercube_exact`] evaluates the same quantities directly with a fast
//! Walsh–Hadamard transform and is the oracle for every closed form here.

use std::collections::BTreeMap;

use crate::compensated::CompensatedSum;
use crate::error::{Error, Result};
use crate::linalg::HypercubeBasis;
use crate::search::{search_params, MarkedState, SearchParameters};

/// Largest `n` accepted by the closed forms; binomials stay exact in `f64`.
pub const MAX_CLOSED_FORM_DIM: u32 = 60;

/// Two marked vertices on `Q_n` at Hamming distance `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairSpec {
    pub n: u32,
    pub m: u32,
}

impl PairSpec {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        check_dim(n)?;
        if m == 0 {
            return Err(Error::CoincidentVertices);
        }
        if m > n {
            return Err(Error::param(format!(
                "Hamming distance {m} exceeds dimension {n}"
            )));
        }
        Ok(PairSpec { n, m })
    }
}

/// The unscaled double sums: `γ_c = scale·(a1 + a2)`, `β² = scale·(b1 + b2)`.
/// `a2`/`b2` collect the eigenvalue combinations that only touch the
/// marked coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSums {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub scale: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormResult {
    pub gamma_c: f64,
    pub beta: f64,
    pub envelope: f64,
    pub p_n: f64,
    /// Present for the pair and weight-one forms.
    pub sums: Option<PartialSums>,
}

impl ClosedFormResult {
    /// Every sum empty means the state is uniform.
    fn from_sums(sums: PartialSums, p_n: f64) -> Result<Self> {
        let gamma_c = sums.scale * (sums.a1 + sums.a2);
        if gamma_c <= 0.0 {
            return Err(Error::DegenerateState);
        }
        let beta = (sums.scale * (sums.b1 + sums.b2)).sqrt();
        Ok(ClosedFormResult {
            gamma_c,
            beta,
            envelope: gamma_c / beta,
            p_n,
            sums: Some(sums),
        })
    }

    pub fn beta_sq(&self) -> f64 {
        self.beta * self.beta
    }

    /// `πβ/(2γ_c P_N)`.
    pub fn t_opt(&self) -> f64 {
        std::f64::consts::PI * self.beta / (2.0 * self.gamma_c * self.p_n)
    }
}

fn check_dim(n: u32) -> Result<()> {
    if n == 0 || n > MAX_CLOSED_FORM_DIM {
        return Err(Error::param(format!(
            "hypercube dimension must be in 1..={MAX_CLOSED_FORM_DIM}, got {n}"
        )));
    }
    Ok(())
}

/// `C(n, 0..=n)` by the multiplicative recurrence.
fn binomial_row(n: u32) -> Vec<f64> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = 1.0;
    row.push(c);
    for k in 0..n {
        c = c * f64::from(n - k) / f64::from(k + 1);
        row.push(c);
    }
    row
}

fn pow2(e: i32) -> f64 {
    2f64.powi(e)
}

/// `(|0⟩ + |N-1⟩)/√2`: the two vertices differ in every coordinate.
///
/// For even `n`, `γ_c = 2^{1-n} Σ_{l=1}^{n/2} C(n,2l)/(4l)` and
/// `β² = 2^{1-n} Σ C(n,2l)/(4l)²`; odd `n` goes through [`general_pair`].
pub fn antipodal_pair(n: u32) -> Result<ClosedFormResult> {
    check_dim(n)?;
    if n % 2 == 1 {
        return general_pair(n, n);
    }
    let c = binomial_row(n);
    let (mut a2, mut b2) = (CompensatedSum::default(), CompensatedSum::default());
    for l in 1..=n / 2 {
        let term = c[2 * l as usize];
        let lam = f64::from(4 * l);
        a2.add(term / lam);
        b2.add(term / (lam * lam));
    }
    let sums = PartialSums {
        a1: 0.0,
        a2: a2.value(),
        b1: 0.0,
        b2: b2.value(),
        scale: pow2(1 - n as i32),
    };
    ClosedFormResult::from_sums(sums, pow2(1 - n as i32).sqrt())
}

/// Two vertices at Hamming distance `m`, any `1 ≤ m ≤ n`.
pub fn general_pair(n: u32, m: u32) -> Result<ClosedFormResult> {
    pair_sums(PairSpec::new(n, m)?)
}

fn pair_sums(PairSpec { n, m }: PairSpec) -> Result<ClosedFormResult> {
    let outer = binomial_row(n - m);
    let inner = binomial_row(m);
    let (mut a1, mut b1) = (CompensatedSum::default(), CompensatedSum::default());
    for l in 1..=(n - m) {
        for q in (0..=m).step_by(2) {
            let mult = outer[l as usize] * inner[q as usize];
            let lam = f64::from(2 * (l + q));
            a1.add(mult / lam);
            b1.add(mult / (lam * lam));
        }
    }
    let (mut a2, mut b2) = (CompensatedSum::default(), CompensatedSum::default());
    for q in (2..=m).step_by(2) {
        let mult = inner[q as usize];
        let lam = f64::from(2 * q);
        a2.add(mult / lam);
        b2.add(mult / (lam * lam));
    }
    let sums = PartialSums {
        a1: a1.value(),
        a2: a2.value(),
        b1: b1.value(),
        b2: b2.value(),
        scale: pow2(1 - n as i32),
    };
    ClosedFormResult::from_sums(sums, pow2(1 - n as i32).sqrt())
}

/// One marked vertex: `γ_c = 2^{-n} Σ_j C(n,j)/(2j)`.
pub fn single_vertex(n: u32) -> Result<ClosedFormResult> {
    check_dim(n)?;
    let c = binomial_row(n);
    let (mut a, mut b) = (CompensatedSum::default(), CompensatedSum::default());
    for j in 1..=n {
        let lam = f64::from(2 * j);
        a.add(c[j as usize] / lam);
        b.add(c[j as usize] / (lam * lam));
    }
    let sums = PartialSums {
        a1: 0.0,
        a2: a.value(),
        b1: 0.0,
        b2: b.value(),
        scale: pow2(-(n as i32)),
    };
    ClosedFormResult::from_sums(sums, pow2(-(n as i32)).sqrt())
}

/// Uniform superposition of the `m` weight-one strings `e_1, …, e_m`.
///
/// `A1 = Σ_{l≥1} Σ_p C(n-m,l) C(m,p) (m-2p)²/(2m(l+p))`,
/// `A2 = Σ_{p≥1} C(m,p) (m-2p)²/(2mp)`, `γ_c = (A1 + A2)/2^n`, and the `B`
/// sums carry `(2(l+p))²` in the denominator.
pub fn weight1_uniform(n: u32, m: u32) -> Result<ClosedFormResult> {
    check_dim(n)?;
    if m == 0 || m > n {
        return Err(Error::param(format!(
            "need 1 <= m <= n, got m = {m}, n = {n}"
        )));
    }
    let outer = binomial_row(n - m);
    let inner = binomial_row(m);
    let mf = f64::from(m);
    let kernel = |p: u32| {
        let d = mf - 2.0 * f64::from(p);
        d * d / mf
    };
    let (mut a1, mut b1) = (CompensatedSum::default(), CompensatedSum::default());
    for l in 1..=(n - m) {
        for p in 0..=m {
            let mult = outer[l as usize] * inner[p as usize] * kernel(p);
            let lam = f64::from(2 * (l + p));
            a1.add(mult / lam);
            b1.add(mult / (lam * lam));
        }
    }
    let (mut a2, mut b2) = (CompensatedSum::default(), CompensatedSum::default());
    for p in 1..=m {
        let mult = inner[p as usize] * kernel(p);
        let lam = f64::from(2 * p);
        a2.add(mult / lam);
        b2.add(mult / (lam * lam));
    }
    let sums = PartialSums {
        a1: a1.value(),
        a2: a2.value(),
        b1: b1.value(),
        b2: b2.value(),
        scale: pow2(-(n as i32)),
    };
    ClosedFormResult::from_sums(sums, (mf * pow2(-(n as i32))).sqrt())
}

/// `γ` and `β²` contributions of one vertex or one vertex pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Terms {
    pub gamma: f64,
    pub beta_sq: f64,
}

/// Builds `γ_c` and `β²` of the uniform state over `m` vertices from
/// single-vertex terms `γ_j` and unnormalized pair terms
/// `γ_jl = Σ_k |⟨p_j|λ_k⟩ + ⟨p_l|λ_k⟩|²/λ_k`:
///
/// `γ_c = (Σ_{j<l} γ_jl - (m-2) Σ_j γ_j)/m`, identically for `β²`.
///
/// `pairs` is keyed by `(j, l)` with `j < l` indexing into `singles`.
pub fn compose_inclusion_exclusion(
    singles: &[Terms],
    pairs: &BTreeMap<(usize, usize), Terms>,
) -> Result<Terms> {
    let m = singles.len();
    if m < 2 {
        return Err(Error::input(format!("need at least two vertices, got {m}")));
    }
    let (mut gamma, mut beta_sq) = (CompensatedSum::default(), CompensatedSum::default());
    for j in 0..m {
        for l in j + 1..m {
            let t = pairs
                .get(&(j, l))
                .ok_or_else(|| Error::input(format!("missing pair term ({j}, {l})")))?;
            gamma.add(t.gamma);
            beta_sq.add(t.beta_sq);
        }
    }
    let weight = (m as f64) - 2.0;
    for t in singles {
        gamma.add(-weight * t.gamma);
        beta_sq.add(-weight * t.beta_sq);
    }
    let mf = m as f64;
    Ok(Terms {
        gamma: gamma.value() / mf,
        beta_sq: beta_sq.value() / mf,
    })
}

/// Uniform state over arbitrary distinct vertices of `Q_n`, assembled from
/// [`single_vertex`] and [`general_pair`] by inclusion–exclusion.
pub fn uniform_set(n: u32, vertices: &[usize]) -> Result<ClosedFormResult> {
    check_dim(n)?;
    let size = 1usize.checked_shl(n).unwrap_or(0);
    for (i, &v) in vertices.iter().enumerate() {
        if size != 0 && v >= size {
            return Err(Error::input(format!("vertex {v} out of range for Q_{n}")));
        }
        if vertices[..i].contains(&v) {
            return Err(Error::input(format!("vertex {v} listed twice")));
        }
    }
    let m = vertices.len();
    let single = single_vertex(n)?;
    let p_n = (m as f64 * pow2(-(n as i32))).sqrt();
    if m == 1 {
        return Ok(ClosedFormResult {
            p_n,
            sums: None,
            ..single
        });
    }
    let one = Terms {
        gamma: single.gamma_c,
        beta_sq: single.beta_sq(),
    };
    let singles = vec![one; m];
    let mut pairs = BTreeMap::new();
    for j in 0..m {
        for l in j + 1..m {
            let dist = (vertices[j] ^ vertices[l]).count_ones();
            let pair = general_pair(n, dist)?;
            // The pair form is normalized by 1/2; the composition wants it without.
            pairs.insert(
                (j, l),
                Terms {
                    gamma: 2.0 * pair.gamma_c,
                    beta_sq: 2.0 * pair.beta_sq(),
                },
            );
        }
    }
    let t = compose_inclusion_exclusion(&singles, &pairs)?;
    if t.gamma <= 1e-15 * single.gamma_c {
        return Err(Error::DegenerateState);
    }
    let beta = t.beta_sq.sqrt();
    Ok(ClosedFormResult {
        gamma_c: t.gamma,
        beta,
        envelope: t.gamma / beta,
        p_n,
        sums: None,
    })
}

/// Exact search parameters on `Q_n` through the Walsh–Hadamard transform,
/// in `O(N log N)`.
pub fn hypercube_exact(n: u32, marked: &MarkedState) -> Result<SearchParameters> {
    let basis = HypercubeBasis::new(n)?;
    search_params(&basis, marked)
}

/// One row of the two-vertex envelope table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table1Row {
    pub m: u32,
    pub envelope_closed_form: f64,
    pub envelope_oracle: f64,
    pub abs_diff: f64,
}

/// Envelope of `(|0⟩ + |2^m - 1⟩)/√2` on `Q_n` for `m = 1..=n`, by closed
/// form and by the transform oracle.
pub fn table1(n: u32) -> Result<Vec<Table1Row>> {
    let basis = HypercubeBasis::new(n)?;
    (1..=n)
        .map(|m| {
            let closed = general_pair(n, m)?.envelope;
            let state = MarkedState::pair(basis.size(), 0, (1usize << m) - 1)?;
            let oracle = search_params(&basis, &state)?.envelope;
            Ok(Table1Row {
                m,
                envelope_closed_form: closed,
                envelope_oracle: oracle,
                abs_diff: (closed - oracle).abs(),
            })
        })
        .collect()
}
