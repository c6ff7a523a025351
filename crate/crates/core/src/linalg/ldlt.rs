//! Sparse LDLᵀ factorization of symmetric matrices without pivoting,
//! up-looking with an elimination tree, after a reverse Cuthill-McKee
//! permutation. The diagonal D gives the matrix inertia by Sylvester's
//! law, which is how Morse indices are counted.

use super::{reverse_cuthill_mckee, CsrMatrix};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LdltError {
    #[error("matrix must be square, got {0}x{1}")]
    NotSquare(usize, usize),
    #[error("zero pivot at column {0}; matrix is numerically singular")]
    ZeroPivot(usize),
}

/// Signature of a factored symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// A = P L D Lᵀ Pᵀ with unit lower-triangular L and diagonal D.
pub struct LdltFactor {
    n: usize,
    /// perm[new] = old
    perm: Vec<usize>,
    lp: Vec<usize>,
    li: Vec<usize>,
    lx: Vec<f64>,
    d: Vec<f64>,
    dinv: Vec<f64>,
    inertia: Inertia,
}

impl LdltFactor {
    /// Factor a symmetric matrix given with both triangles stored.
    pub fn new(a: &CsrMatrix) -> Result<Self, LdltError> {
        let perm = reverse_cuthill_mckee(a);
        Self::with_permutation(a, perm)
    }

    pub fn with_permutation(a: &CsrMatrix, perm: Vec<usize>) -> Result<Self, LdltError> {
        let n = a.nrows();
        if n != a.ncols() {
            return Err(LdltError::NotSquare(a.nrows(), a.ncols()));
        }
        if n == 0 {
            return Ok(Self {
                n,
                perm,
                lp: vec![0],
                li: Vec::new(),
                lx: Vec::new(),
                d: Vec::new(),
                dinv: Vec::new(),
                inertia: Inertia {
                    positive: 0,
                    negative: 0,
                    zero: 0,
                },
            });
        }
        let mut iperm = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            iperm[old] = new;
        }

        // permuted strict-upper + diagonal triplets in CSC order
        let mut entries: Vec<(usize, usize, f64)> = Vec::with_capacity(a.nnz() / 2 + n);
        for r in 0..n {
            for (c, v) in a.row(r) {
                let (nr, nc) = (iperm[r], iperm[c]);
                if nr <= nc {
                    entries.push((nc, nr, v)); // (col, row, val)
                }
            }
        }
        for i in 0..n {
            entries.push((i, i, 0.0)); // make sure the diagonal is present
        }
        entries.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));

        let mut ap = vec![0usize; n + 1];
        let mut ai: Vec<usize> = Vec::with_capacity(entries.len());
        let mut ax: Vec<f64> = Vec::with_capacity(entries.len());
        for &(c, r, v) in &entries {
            if let Some(last) = ai.last().copied() {
                if ap[c + 1] > ap[c] && last == r && ap[c + 1] == ai.len() {
                    *ax.last_mut().unwrap() += v;
                    continue;
                }
            }
            ai.push(r);
            ax.push(v);
            ap[c + 1] = ai.len();
        }
        for c in 0..n {
            if ap[c + 1] < ap[c] {
                ap[c + 1] = ap[c];
            }
        }

        let (etree, lnz) = elimination_tree(n, &ap, &ai);
        let (lp, li, lx, d, dinv, inertia) = factor_numeric(n, &ap, &ai, &ax, &etree, &lnz)?;

        Ok(Self {
            n,
            perm,
            lp,
            li,
            lx,
            d,
            dinv,
            inertia,
        })
    }

    pub fn inertia(&self) -> Inertia {
        self.inertia
    }

    pub fn min_abs_pivot(&self) -> f64 {
        self.d.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min)
    }

    /// Solve A x = b.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n);
        let mut x = vec![0.0; self.n];
        for i in 0..self.n {
            x[i] = b[self.perm[i]];
        }
        // (L+I) y = b
        for i in 0..self.n {
            let xi = x[i];
            for k in self.lp[i]..self.lp[i + 1] {
                x[self.li[k]] -= self.lx[k] * xi;
            }
        }
        for i in 0..self.n {
            x[i] *= self.dinv[i];
        }
        // (L+I)ᵀ z = y
        for i in (0..self.n).rev() {
            let mut s = 0.0;
            for k in self.lp[i]..self.lp[i + 1] {
                s += self.lx[k] * x[self.li[k]];
            }
            x[i] -= s;
        }
        let mut out = vec![0.0; self.n];
        for i in 0..self.n {
            out[self.perm[i]] = x[i];
        }
        out
    }
}

fn elimination_tree(n: usize, ap: &[usize], ai: &[usize]) -> (Vec<usize>, Vec<usize>) {
    const UNKNOWN: usize = usize::MAX;
    let mut work = vec![UNKNOWN; n];
    let mut lnz = vec![0usize; n];
    let mut etree = vec![UNKNOWN; n];
    for j in 0..n {
        work[j] = j;
        for &row in &ai[ap[j]..ap[j + 1]] {
            let mut i = row;
            while work[i] != j {
                if etree[i] == UNKNOWN {
                    etree[i] = j;
                }
                lnz[i] += 1;
                work[i] = j;
                i = etree[i];
            }
        }
    }
    (etree, lnz)
}

type NumericFactor = (Vec<usize>, Vec<usize>, Vec<f64>, Vec<f64>, Vec<f64>, Inertia);

fn factor_numeric(
    n: usize,
    ap: &[usize],
    ai: &[usize],
    ax: &[f64],
    etree: &[usize],
    lnz: &[usize],
) -> Result<NumericFactor, LdltError> {
    const UNKNOWN: usize = usize::MAX;
    let total: usize = lnz.iter().sum();
    let mut lp = vec![0usize; n + 1];
    for i in 0..n {
        lp[i + 1] = lp[i] + lnz[i];
    }
    let mut li = vec![0usize; total];
    let mut lx = vec![0.0f64; total];
    let mut d = vec![0.0f64; n];
    let mut dinv = vec![0.0f64; n];

    let mut y_markers = vec![false; n];
    let mut y_vals = vec![0.0f64; n];
    let mut y_idx = vec![0usize; n];
    let mut elim_buffer = vec![0usize; n];
    let mut next_colspace: Vec<usize> = lp[..n].to_vec();

    let mut positive = 0usize;
    let mut negative = 0usize;

    d[0] = diag_entry(0, ap, ai, ax);
    if d[0] == 0.0 {
        return Err(LdltError::ZeroPivot(0));
    }
    if d[0] > 0.0 {
        positive += 1;
    } else {
        negative += 1;
    }
    dinv[0] = 1.0 / d[0];

    for k in 1..n {
        let mut nnz_y = 0usize;
        for p in ap[k]..ap[k + 1] {
            let bidx = ai[p];
            if bidx == k {
                d[k] = ax[p];
                continue;
            }
            y_vals[bidx] = ax[p];
            if !y_markers[bidx] {
                y_markers[bidx] = true;
                elim_buffer[0] = bidx;
                let mut nnz_e = 1usize;
                let mut next = etree[bidx];
                while next != UNKNOWN && next < k {
                    if y_markers[next] {
                        break;
                    }
                    y_markers[next] = true;
                    elim_buffer[nnz_e] = next;
                    nnz_e += 1;
                    next = etree[next];
                }
                while nnz_e > 0 {
                    nnz_e -= 1;
                    y_idx[nnz_y] = elim_buffer[nnz_e];
                    nnz_y += 1;
                }
            }
        }

        for t in (0..nnz_y).rev() {
            let cidx = y_idx[t];
            let tmp_idx = next_colspace[cidx];
            let y_cidx = y_vals[cidx];
            for j in lp[cidx]..tmp_idx {
                y_vals[li[j]] -= lx[j] * y_cidx;
            }
            lx[tmp_idx] = y_cidx * dinv[cidx];
            d[k] -= y_cidx * lx[tmp_idx];
            li[tmp_idx] = k;
            next_colspace[cidx] += 1;
            y_vals[cidx] = 0.0;
            y_markers[cidx] = false;
        }

        if d[k] == 0.0 {
            return Err(LdltError::ZeroPivot(k));
        }
        if d[k] > 0.0 {
            positive += 1;
        } else {
            negative += 1;
        }
        dinv[k] = 1.0 / d[k];
    }

    let inertia = Inertia {
        positive,
        negative,
        zero: 0,
    };
    Ok((lp, li, lx, d, dinv, inertia))
}

fn diag_entry(j: usize, ap: &[usize], ai: &[usize], ax: &[f64]) -> f64 {
    for p in ap[j]..ap[j + 1] {
        if ai[p] == j {
            return ax[p];
        }
    }
    0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CsrMatrix;

    fn laplacian_1d(n: usize, shift: f64) -> CsrMatrix {
        let mut t = Vec::new();
        for i in 0..n {
            t.push((i, i, 2.0 + shift));
            if i + 1 < n {
                t.push((i, i + 1, -1.0));
                t.push((i + 1, i, -1.0));
            }
        }
        CsrMatrix::from_triplets(n, n, &t).unwrap()
    }

    #[test]
    fn solves_spd_system() {
        let a = laplacian_1d(50, 0.1);
        let f = LdltFactor::new(&a).unwrap();
        let b: Vec<f64> = (0..50).map(|i| (i as f64 * 0.37).sin()).collect();
        let x = f.solve(&b);
        let r = a.mul_vec(&x);
        let err: f64 = r
            .iter()
            .zip(&b)
            .map(|(ri, bi)| (ri - bi).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-10, "residual {err}");
        assert_eq!(f.inertia().negative, 0);
        assert_eq!(f.inertia().positive, 50);
    }

    #[test]
    fn inertia_matches_dense_eigencount() {
        // indefinite: shifted 1d laplacian has eigenvalues 2+s-2cos(k pi/(n+1))
        let n = 40;
        let a = laplacian_1d(n, -1.3);
        let f = LdltFactor::new(&a).unwrap();
        let dense = a.to_dense();
        let eig = dense.symmetric_eigen();
        let neg = eig.eigenvalues.iter().filter(|&&x| x < 0.0).count();
        let pos = eig.eigenvalues.iter().filter(|&&x| x > 0.0).count();
        assert_eq!(f.inertia().negative, neg);
        assert_eq!(f.inertia().positive, pos);
    }

    #[test]
    fn zero_matrix_reports_zero_pivot() {
        let a = CsrMatrix::zeros(3, 3);
        match LdltFactor::new(&a) {
            Err(LdltError::ZeroPivot(_)) => {}
            other => panic!("expected zero pivot, got {:?}", other.err()),
        }
    }
}
