//! Dense real symmetric eigensolvers: cyclic Jacobi for small matrices,
//! Householder tridiagonalization with implicit QL for large ones.

use super::Matrix;
use crate::error::{Error, Result};

/// Sweep cap before giving up.
pub const MAX_SWEEPS: usize = 100;
/// Converged once the off-diagonal Frobenius norm drops below this fraction
/// of the full Frobenius norm.
pub const OFF_DIAGONAL_TOL: f64 = 1e-12;
/// Relative asymmetry accepted on input.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Laplacian eigenvalues below this magnitude are treated as zero.
pub const ZERO_EIGENVALUE_TOL: f64 = 1e-9;

/// Eigenvalues in non-increasing order with orthonormal eigenvectors stored
/// as the matching columns of `eigenvectors`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.column(k)
    }

    /// `Vᵀ v`: coefficients of `v` in the eigenbasis.
    pub fn project(&self, v: &[f64]) -> Vec<f64> {
        self.eigenvectors.tr_mul_vec(v)
    }

    /// `V diag(λ) Vᵀ`.
    pub fn reconstruct(&self) -> Matrix {
        let v = &self.eigenvectors;
        let scaled = Matrix::from_fn(v.rows(), v.cols(), |i, k| v[(i, k)] * self.eigenvalues[k]);
        scaled.matmul(&v.transpose())
    }

    /// Number of eigenvalues with `|λ| < tol`.
    pub fn zero_count(&self, tol: f64) -> usize {
        self.eigenvalues.iter().filter(|l| l.abs() < tol).count()
    }

    /// Decomposes a connected-graph Laplacian. The smallest eigenvalue is
    /// set to exactly zero and its eigenvector to the exact uniform vector.
    pub fn of_laplacian(q: &Matrix) -> Result<Self> {
        let mut dec = eig_sym(q)?;
        let n = dec.dim();
        if n == 0 {
            return Err(Error::input("empty Laplacian"));
        }
        let zero_modes = dec.zero_count(ZERO_EIGENVALUE_TOL);
        if zero_modes != 1 {
            if zero_modes == 0 {
                return Err(Error::NumericFailure(format!(
                    "smallest Laplacian eigenvalue {} is not zero",
                    dec.eigenvalues[n - 1]
                )));
            }
            return Err(Error::Disconnected { zero_modes });
        }
        dec.eigenvalues[n - 1] = 0.0;
        let u = 1.0 / (n as f64).sqrt();
        for i in 0..n {
            dec.eigenvectors[(i, n - 1)] = u;
        }
        Ok(dec)
    }
}

/// Above this dimension [`eig_sym`] switches from Jacobi rotations to
/// tridiagonal QL, whose memory access stays row-contiguous.
pub const JACOBI_MAX_DIM: usize = 128;

/// Full eigendecomposition of a symmetric matrix, eigenvalues
/// non-increasing. Output is deterministic for identical input.
///
/// Matrices up to [`JACOBI_MAX_DIM`] go through [`eig_jacobi`], larger ones
/// through [`eig_tridiagonal`].
pub fn eig_sym(m: &Matrix) -> Result<SpectralDecomposition> {
    if m.rows() <= JACOBI_MAX_DIM {
        eig_jacobi(m)
    } else {
        eig_tridiagonal(m)
    }
}

/// Validated copy of `m` with the two triangles averaged, so both halves
/// hold identical values.
fn symmetrized(m: &Matrix) -> Result<Matrix> {
    if !m.is_square() {
        return Err(Error::input(format!(
            "matrix is {}x{}, not square",
            m.rows(),
            m.cols()
        )));
    }
    let scale = m.max_abs().max(1.0);
    if m.asymmetry() > SYMMETRY_TOL * scale {
        return Err(Error::input("matrix is not symmetric"));
    }
    if m.as_slice().iter().any(|x| !x.is_finite()) {
        return Err(Error::input("matrix has non-finite entries"));
    }
    let n = m.rows();
    let mut a = m.clone();
    for i in 0..n {
        for j in i + 1..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            a[(i, j)] = avg;
            a[(j, i)] = avg;
        }
    }
    Ok(a)
}

/// Sorts eigenpairs non-increasing; row `k` of `vt` is the eigenvector of
/// `values[k]`. The stable sort keeps ties in a reproducible order.
fn sorted(values: &[f64], vt: &Matrix) -> SpectralDecomposition {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
    let eigenvalues = order.iter().map(|&i| values[i]).collect();
    let eigenvectors = Matrix::from_fn(n, n, |i, k| vt[(order[k], i)]);
    SpectralDecomposition {
        eigenvalues,
        eigenvectors,
    }
}

/// Cyclic Jacobi: each rotation zeroes one off-diagonal pair; sweeps run
/// over all `p < q` in row order until the off-diagonal Frobenius norm
/// falls below [`OFF_DIAGONAL_TOL`] times the Frobenius norm.
pub fn eig_jacobi(m: &Matrix) -> Result<SpectralDecomposition> {
    let mut a = symmetrized(m)?;
    let n = a.rows();
    // Rows of `vt` are eigenvectors.
    let mut vt = Matrix::identity(n);
    let target = OFF_DIAGONAL_TOL * a.norm_frobenius();

    let mut converged = false;
    for sweep in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                // Late sweeps: drop elements below the diagonal's resolution.
                if sweep > 3
                    && app.abs() + 100.0 * apq.abs() == app.abs()
                    && aqq.abs() + 100.0 * apq.abs() == aqq.abs()
                {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                rotate(&mut a, &mut vt, p, q, c, s);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(Error::NumericFailure(format!(
            "Jacobi did not converge in {MAX_SWEEPS} sweeps"
        )));
    }
    let values: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    Ok(sorted(&values, &vt))
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for (j, x) in a.row(i).iter().enumerate() {
            if i != j {
                sum += x * x;
            }
        }
    }
    sum.sqrt()
}

/// Applies `A <- Jᵀ A J` and `Vᵀ <- Jᵀ Vᵀ` for the plane rotation on `(p, q)`.
fn rotate(a: &mut Matrix, vt: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    rotate_rows(a.data_mut(), n, p, q, c, s);
    for k in 0..n {
        let x = a[(k, p)];
        let y = a[(k, q)];
        a[(k, p)] = c * x - s * y;
        a[(k, q)] = s * x + c * y;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    rotate_rows(vt.data_mut(), n, p, q, c, s);
}

#[inline]
fn rotate_rows(data: &mut [f64], n: usize, p: usize, q: usize, c: f64, s: f64) {
    debug_assert!(p < q);
    let (head, tail) = data.split_at_mut(q * n);
    let row_p = &mut head[p * n..(p + 1) * n];
    let row_q = &mut tail[..n];
    for (x, y) in row_p.iter_mut().zip(row_q.iter_mut()) {
        let (xp, yq) = (*x, *y);
        *x = c * xp - s * yq;
        *y = s * xp + c * yq;
    }
}

/// Householder reduction to tridiagonal form followed by the implicit QL
/// algorithm with Wilkinson-style shifts. `O(N³)` with row-contiguous
/// inner loops, which keeps large matrices cache friendly.
pub fn eig_tridiagonal(m: &Matrix) -> Result<SpectralDecomposition> {
    let a = symmetrized(m)?;
    let n = a.rows();
    if n == 0 {
        return Ok(SpectralDecomposition {
            eigenvalues: vec![],
            eigenvectors: Matrix::zeros(0, 0),
        });
    }
    // `w` holds the accumulated orthogonal transform transposed: row `j` of
    // `w` is column `j` of the transform.
    let mut w = a;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    householder(&mut w, &mut d, &mut e);
    implicit_ql(&mut w, &mut d, &mut e)?;
    Ok(sorted(&d, &w))
}

fn householder(w: &mut Matrix, d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for j in 0..n {
        d[j] = w[(j, n - 1)];
    }
    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = w[(j, i - 1)];
                w[(j, i)] = 0.0;
                w[(i, j)] = 0.0;
            }
        } else {
            for x in &mut d[..i] {
                *x /= scale;
                h += *x * *x;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].fill(0.0);
            for j in 0..i {
                let f = d[j];
                w[(i, j)] = f;
                let row = w.row(j);
                let mut g = e[j] + row[j] * f;
                for k in j + 1..i {
                    g += row[k] * d[k];
                    e[k] += row[k] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let (f, g) = (d[j], e[j]);
                let n_cols = w.cols();
                let row = &mut w.data_mut()[j * n_cols..(j + 1) * n_cols];
                for k in j..i {
                    row[k] -= f * e[k] + g * d[k];
                }
                d[j] = row[i - 1];
                row[i] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n - 1 {
        w[(i, n - 1)] = w[(i, i)];
        w[(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = w[(i + 1, k)] / h;
            }
            for j in 0..=i {
                let g: f64 = (0..=i).map(|k| w[(i + 1, k)] * w[(j, k)]).sum();
                let n_cols = w.cols();
                let row = &mut w.data_mut()[j * n_cols..(j + 1) * n_cols];
                for k in 0..=i {
                    row[k] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            w[(i + 1, k)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = w[(j, n - 1)];
        w[(j, n - 1)] = 0.0;
    }
    w[(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Iterations allowed per eigenvalue before [`implicit_ql`] gives up.
const MAX_QL_ITERATIONS: usize = 64;

fn implicit_ql(w: &mut Matrix, d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let mut f = 0.0;
    let mut tst1 = 0f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iterations = 0;
            loop {
                iterations += 1;
                if iterations > MAX_QL_ITERATIONS {
                    return Err(Error::NumericFailure(format!(
                        "QL iteration did not converge for eigenvalue {l}"
                    )));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for x in &mut d[l + 2..] {
                    *x -= h;
                }
                f += h;

                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    rotate_rows(w.data_mut(), n, i, i + 1, c, s);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn identity_spectrum() {
        let dec = eig_sym(&Matrix::identity(3)).unwrap();
        assert_eq!(dec.eigenvalues, vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn triangle_laplacian() {
        // det(xI - Q) = x (x - 3)^2 for K_3
        let q = Matrix::from_rows(&[
            vec![2.0, -1.0, -1.0],
            vec![-1.0, 2.0, -1.0],
            vec![-1.0, -1.0, 2.0],
        ]);
        let dec = eig_sym(&q).unwrap();
        assert_close(&dec.eigenvalues, &[3.0, 3.0, 0.0], 1e-12);
    }

    #[test]
    fn two_by_two_closed_form() {
        let m = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let dec = eig_sym(&m).unwrap();
        assert_close(&dec.eigenvalues, &[3.0, 1.0], 1e-14);
        let v = dec.eigenvector(0);
        assert!((v[0].abs() - 0.5f64.sqrt()).abs() < 1e-14);
        assert!((v[0] - v[1]).abs() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        let skew = Matrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]);
        assert!(matches!(eig_sym(&skew), Err(Error::InvalidInput(_))));
        assert!(matches!(
            eig_sym(&Matrix::zeros(2, 3)),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn empty_and_zero_matrices() {
        assert!(eig_sym(&Matrix::zeros(0, 0))
            .unwrap()
            .eigenvalues
            .is_empty());
        assert_eq!(
            eig_sym(&Matrix::zeros(2, 2)).unwrap().eigenvalues,
            vec![0.0, 0.0]
        );
    }

    #[test]
    fn laplacian_zero_mode_is_snapped() {
        let q = Matrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]);
        let dec = SpectralDecomposition::of_laplacian(&q).unwrap();
        assert_eq!(dec.eigenvalues[1], 0.0);
        for x in dec.eigenvector(1) {
            assert!((x - 0.5f64.sqrt()).abs() < 1e-15);
        }

        let split = Matrix::from_rows(&[
            vec![1.0, -1.0, 0.0, 0.0],
            vec![-1.0, 1.0, 0.0, 0.0],
            vec![0.0, 0.0, 1.0, -1.0],
            vec![0.0, 0.0, -1.0, 1.0],
        ]);
        assert_eq!(
            SpectralDecomposition::of_laplacian(&split),
            Err(Error::Disconnected { zero_modes: 2 })
        );
    }

    fn random_symmetric(n: usize, seed: u64) -> Matrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let x: f64 = rng.random_range(-1.0..1.0);
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        m
    }

    fn residual(m: &Matrix, dec: &SpectralDecomposition) -> f64 {
        (0..dec.dim())
            .map(|k| {
                let v = dec.eigenvector(k);
                let mv = m.mul_vec(&v);
                mv.iter()
                    .zip(&v)
                    .map(|(a, b)| (a - dec.eigenvalues[k] * b).abs())
                    .fold(0.0, f64::max)
            })
            .fold(0.0, f64::max)
    }

    #[test]
    fn solvers_agree() {
        for (n, seed) in [(1, 1), (2, 2), (7, 3), (40, 4), (90, 5)] {
            let m = random_symmetric(n, seed);
            let j = eig_jacobi(&m).unwrap();
            let t = eig_tridiagonal(&m).unwrap();
            assert_close(&j.eigenvalues, &t.eigenvalues, 1e-11);
            let scale = m.norm_inf();
            assert!(residual(&m, &j) <= 1e-9 * scale);
            assert!(residual(&m, &t) <= 1e-9 * scale);
            let gram = t.eigenvectors.transpose().matmul(&t.eigenvectors);
            let id = Matrix::identity(n);
            for i in 0..n {
                assert_close(gram.row(i), id.row(i), 1e-12);
            }
        }
    }

    #[test]
    fn tridiagonal_handles_degenerate_spectra() {
        let cube = crate::graphs::laplacian(&crate::graphs::hypercube(4).unwrap());
        let t = eig_tridiagonal(&cube).unwrap();
        let expected: Vec<f64> = [(8.0, 1), (6.0, 4), (4.0, 6), (2.0, 4), (0.0, 1)]
            .iter()
            .flat_map(|&(l, mult)| std::iter::repeat(l).take(mult))
            .collect();
        assert_close(&t.eigenvalues, &expected, 1e-12);
        assert!(residual(&cube, &t) < 1e-12);
        assert!(eig_tridiagonal(&Matrix::zeros(0, 0))
            .unwrap()
            .eigenvalues
            .is_empty());
    }

    #[test]
    fn large_matrices_use_tridiagonal_path() {
        let m = random_symmetric(JACOBI_MAX_DIM + 20, 9);
        let dec = eig_sym(&m).unwrap();
        assert!(residual(&m, &dec) <= 1e-9 * m.norm_inf());
        assert!(dec.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }
}
