//! Smallest eigenpairs of symmetric pencils (K, M) with M positive
//! definite, via shift-invert Lanczos in the M-inner product with full
//! reorthogonalization, falling back to a dense solve on small problems.

use super::{CsrMatrix, LdltError, LdltFactor};
use nalgebra::{DMatrix, DVector};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EigenError {
    #[error("pencil dimensions do not match: K is {0}x{0}, M is {1}x{1}")]
    DimensionMismatch(usize, usize),
    #[error("factorization of shifted matrix failed: {0}")]
    Factorization(#[from] LdltError),
    #[error("mass matrix is not positive definite")]
    MassNotSpd,
    #[error("Lanczos stagnated: {converged} of {wanted} pairs converged after {iters} iterations (worst residual {residual:.3e})")]
    Stagnated {
        converged: usize,
        wanted: usize,
        iters: usize,
        residual: f64,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct EigenOptions {
    /// Shift sigma; the operator (K - sigma*M)^{-1} M is iterated, so sigma
    /// must lie strictly below the smallest pencil eigenvalue.
    pub shift: f64,
    /// Ritz-pair acceptance: |residual| <= tol * max(|theta|, 1).
    pub tol: f64,
    /// Hard cap on the Lanczos basis size.
    pub max_basis: usize,
    /// Problems at most this large are solved densely.
    pub dense_cutoff: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        Self {
            shift: -1.0,
            tol: 1e-10,
            max_basis: 240,
            dense_cutoff: 400,
        }
    }
}

/// The `k` smallest eigenpairs of K x = lambda M x, ascending.
pub fn smallest_eigenpairs(
    k_mat: &CsrMatrix,
    m_mat: &CsrMatrix,
    k: usize,
    opts: &EigenOptions,
) -> Result<Vec<(f64, Vec<f64>)>, EigenError> {
    let n = k_mat.nrows();
    if m_mat.nrows() != n || m_mat.ncols() != n || k_mat.ncols() != n {
        return Err(EigenError::DimensionMismatch(k_mat.nrows(), m_mat.nrows()));
    }
    let k = k.min(n);
    if k == 0 || n == 0 {
        return Ok(Vec::new());
    }
    if n <= opts.dense_cutoff || k + 2 >= n {
        return dense_eigenpairs(k_mat, m_mat, k);
    }
    lanczos_shift_invert(k_mat, m_mat, k, opts)
}

/// All eigenvalues of the pencil by dense reduction, ascending. Used as the
/// brute-force oracle in tests and for small operators.
pub fn dense_generalized_eigenvalues(
    k_mat: &CsrMatrix,
    m_mat: &CsrMatrix,
) -> Result<Vec<f64>, EigenError> {
    let (c, _l) = dense_reduced(k_mat, m_mat)?;
    let mut ev: Vec<f64> = c.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(ev)
}

fn dense_reduced(k_mat: &CsrMatrix, m_mat: &CsrMatrix) -> Result<(DMatrix<f64>, DMatrix<f64>), EigenError> {
    let m_dense = m_mat.to_dense();
    let chol = m_dense.cholesky().ok_or(EigenError::MassNotSpd)?;
    let l = chol.l();
    // C = L^{-1} K L^{-T}
    let mut c = k_mat.to_dense();
    l.solve_lower_triangular_mut(&mut c);
    c.transpose_mut();
    l.solve_lower_triangular_mut(&mut c);
    // enforce exact symmetry against rounding
    let ct = c.transpose();
    c = (c + ct) * 0.5;
    Ok((c, l))
}

fn dense_eigenpairs(
    k_mat: &CsrMatrix,
    m_mat: &CsrMatrix,
    k: usize,
) -> Result<Vec<(f64, Vec<f64>)>, EigenError> {
    let (c, l) = dense_reduced(k_mat, m_mat)?;
    let eig = c.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let mut out = Vec::with_capacity(k);
    for &idx in order.iter().take(k) {
        let y = eig.eigenvectors.column(idx).into_owned();
        // x = L^{-T} y
        let mut x = y;
        l.transpose().solve_upper_triangular_mut(&mut x);
        out.push((eig.eigenvalues[idx], x.as_slice().to_vec()));
    }
    Ok(out)
}

fn lanczos_shift_invert(
    k_mat: &CsrMatrix,
    m_mat: &CsrMatrix,
    k: usize,
    opts: &EigenOptions,
) -> Result<Vec<(f64, Vec<f64>)>, EigenError> {
    let n = k_mat.nrows();
    // K - sigma M, factored once
    let shifted = k_mat
        .add_scaled(-opts.shift, m_mat)
        .expect("pencil shapes verified");
    let factor = LdltFactor::new(&shifted)?;

    let m_dot = |a: &[f64], mb: &[f64]| -> f64 { a.iter().zip(mb).map(|(x, y)| x * y).sum() };

    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();

    // deterministic start vector
    let mut v: Vec<f64> = (0..n)
        .map(|i| 1.0 + 0.6180339887498949 * ((i as f64 * 2.399963229728653).sin()))
        .collect();
    let mv = m_mat.mul_vec(&v);
    let nrm = m_dot(&v, &mv).sqrt();
    if !(nrm > 0.0) {
        return Err(EigenError::MassNotSpd);
    }
    v.iter_mut().for_each(|x| *x /= nrm);
    basis.push(v);

    let max_basis = opts.max_basis.min(n);
    let mut worst_residual = f64::INFINITY;

    loop {
        let j = basis.len() - 1;
        let qj = basis[j].clone();
        let mqj = m_mat.mul_vec(&qj);
        let mut w = factor.solve(&mqj);
        if j > 0 {
            let b = betas[j - 1];
            let qprev = &basis[j - 1];
            w.iter_mut().zip(qprev).for_each(|(wi, qi)| *wi -= b * qi);
        }
        let mw = m_mat.mul_vec(&w);
        let alpha = m_dot(&qj, &mw);
        w.iter_mut().zip(&qj).for_each(|(wi, qi)| *wi -= alpha * qi);
        alphas.push(alpha);

        // two passes of classical Gram-Schmidt against the whole basis
        for _ in 0..2 {
            let mw = m_mat.mul_vec(&w);
            let coeffs: Vec<f64> = basis.iter().map(|q| m_dot(q, &mw)).collect();
            for (q, c) in basis.iter().zip(&coeffs) {
                w.iter_mut().zip(q).for_each(|(wi, qi)| *wi -= c * qi);
            }
        }

        let mw = m_mat.mul_vec(&w);
        let beta = m_dot(&w, &mw).sqrt();

        // convergence check on the tridiagonal Ritz values
        let m = alphas.len();
        let finished_basis = m >= max_basis || beta < 1e-14;
        if m >= 2 * k + 2 && (m % 8 == 0 || finished_basis) {
            let (thetas, svecs) = tridiag_eigen(&alphas, &betas);
            // largest theta correspond to smallest lambda
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|&a, &b| thetas[b].partial_cmp(&thetas[a]).unwrap());
            let mut all_ok = true;
            worst_residual = 0.0;
            for &idx in order.iter().take(k) {
                let res = beta * svecs[(m - 1, idx)].abs();
                let scale = thetas[idx].abs().max(1.0);
                worst_residual = worst_residual.max(res / scale);
                if res > opts.tol * scale {
                    all_ok = false;
                }
            }
            if all_ok || finished_basis {
                if !all_ok && beta >= 1e-14 {
                    return Err(EigenError::Stagnated {
                        converged: order
                            .iter()
                            .take(k)
                            .filter(|&&idx| {
                                beta * svecs[(m - 1, idx)].abs()
                                    <= opts.tol * thetas[idx].abs().max(1.0)
                            })
                            .count(),
                        wanted: k,
                        iters: m,
                        residual: worst_residual,
                    });
                }
                let mut out = Vec::with_capacity(k);
                for &idx in order.iter().take(k) {
                    let theta = thetas[idx];
                    let lambda = if theta.abs() > 1e-300 {
                        opts.shift + 1.0 / theta
                    } else {
                        f64::INFINITY
                    };
                    let mut x = vec![0.0; n];
                    for (q, s) in basis.iter().zip(svecs.column(idx).iter()) {
                        x.iter_mut().zip(q).for_each(|(xi, qi)| *xi += s * qi);
                    }
                    out.push((lambda, x));
                }
                out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
                return Ok(out);
            }
        }

        if beta < 1e-14 {
            // invariant subspace found; restart direction
            let mut v: Vec<f64> = (0..n)
                .map(|i| ((i + basis.len()) as f64 * 1.234567891).cos())
                .collect();
            for _ in 0..3 {
                let mv = m_mat.mul_vec(&v);
                let coeffs: Vec<f64> = basis.iter().map(|q| m_dot(q, &mv)).collect();
                for (q, c) in basis.iter().zip(&coeffs) {
                    v.iter_mut().zip(q).for_each(|(vi, qi)| *vi -= c * qi);
                }
            }
            let mv = m_mat.mul_vec(&v);
            let nrm = m_dot(&v, &mv).sqrt();
            if nrm < 1e-12 {
                // nothing left to add; accept what we have at next check
                betas.push(0.0);
                basis.push(vec![0.0; n]);
                continue;
            }
            v.iter_mut().for_each(|x| *x /= nrm);
            betas.push(0.0);
            basis.push(v);
        } else {
            w.iter_mut().for_each(|x| *x /= beta);
            betas.push(beta);
            basis.push(w);
        }
    }
}

fn tridiag_eigen(alphas: &[f64], betas: &[f64]) -> (Vec<f64>, DMatrix<f64>) {
    let m = alphas.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alphas[i];
        if i + 1 < m {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eig = t.symmetric_eigen();
    let vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    (vals, eig.eigenvectors)
}

/// M-normalize a vector in place; returns the original M-norm.
pub fn m_normalize(x: &mut [f64], m_mat: &CsrMatrix) -> f64 {
    let mx = m_mat.mul_vec(x);
    let nrm = x.iter().zip(&mx).map(|(a, b)| a * b).sum::<f64>().sqrt();
    if nrm > 0.0 {
        x.iter_mut().for_each(|v| *v /= nrm);
    }
    nrm
}

#[allow(dead_code)]
fn as_dvector(x: &[f64]) -> DVector<f64> {
    DVector::from_column_slice(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian_pencil(n: usize) -> (CsrMatrix, CsrMatrix) {
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 2.0));
            if i + 1 < n {
                t.push((i, i + 1, -1.0));
                t.push((i + 1, i, -1.0));
            }
        }
        let k = CsrMatrix::from_triplets(n, n, &t).unwrap();
        let m = CsrMatrix::from_diagonal(&vec![1.0; n]);
        (k, m)
    }

    #[test]
    fn dense_and_lanczos_agree_on_dirichlet_laplacian() {
        let n = 600;
        let (k_mat, m_mat) = laplacian_pencil(n);
        // analytic eigenvalues 2 - 2cos(pi j/(n+1))
        let exact: Vec<f64> = (1..=4)
            .map(|j| 2.0 - 2.0 * (std::f64::consts::PI * j as f64 / (n as f64 + 1.0)).cos())
            .collect();
        let opts = EigenOptions {
            shift: -0.5,
            ..Default::default()
        };
        let pairs = smallest_eigenpairs(&k_mat, &m_mat, 4, &opts).unwrap();
        for (i, (lambda, v)) in pairs.iter().enumerate() {
            assert!(
                (lambda - exact[i]).abs() < 1e-9 * exact[i].max(1e-8),
                "eigenvalue {i}: {lambda} vs {}",
                exact[i]
            );
            // residual check
            let kv = k_mat.mul_vec(v);
            let mv = m_mat.mul_vec(v);
            let res: f64 = kv
                .iter()
                .zip(&mv)
                .map(|(a, b)| (a - lambda * b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-7, "pair {i} residual {res}");
        }
    }

    #[test]
    fn reports_exact_zero_modes() {
        // singular K: 1d Neumann laplacian has a zero mode
        let n = 500;
        let mut t = Vec::new();
        for i in 0..n {
            let deg = if i == 0 || i == n - 1 { 1.0 } else { 2.0 };
            t.push((i, i, deg));
            if i + 1 < n {
                t.push((i, i + 1, -1.0));
                t.push((i + 1, i, -1.0));
            }
        }
        let k_mat = CsrMatrix::from_triplets(n, n, &t).unwrap();
        let m_mat = CsrMatrix::from_diagonal(&vec![1.0; n]);
        let opts = EigenOptions {
            shift: -0.05,
            ..Default::default()
        };
        let pairs = smallest_eigenpairs(&k_mat, &m_mat, 3, &opts).unwrap();
        assert!(pairs[0].0.abs() < 1e-11, "zero mode found: {}", pairs[0].0);
        assert!(pairs[1].0 > 1e-6);
    }

    #[test]
    fn dense_path_matches_full_decomposition() {
        let (k_mat, m_mat) = laplacian_pencil(120);
        let all = dense_generalized_eigenvalues(&k_mat, &m_mat).unwrap();
        let opts = EigenOptions::default();
        let pairs = smallest_eigenpairs(&k_mat, &m_mat, 5, &opts).unwrap();
        for i in 0..5 {
            assert!((pairs[i].0 - all[i]).abs() < 1e-10);
        }
    }
}
