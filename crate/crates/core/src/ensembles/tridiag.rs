//! Symmetric tridiagonal eigenvalues by implicit-shift QL, plus Sturm-count
//! queries that locate spectrum relative to a threshold in O(N).

use crate::{Error, Result};

/// Symmetric tridiagonal matrix with nonnegative off-diagonal entries
/// (the ensemble samplers produce chi-distributed couplings).
#[derive(Debug, Clone)]
pub struct TridiagonalMatrix {
    diagonal: Vec<f64>,
    offdiagonal: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diagonal: Vec<f64>, offdiagonal: Vec<f64>) -> Result<Self> {
        if diagonal.is_empty() || offdiagonal.len() + 1 != diagonal.len() {
            return Err(Error::InvalidArgument(format!(
                "TridiagonalMatrix: {} diagonal and {} off-diagonal entries",
                diagonal.len(),
                offdiagonal.len()
            )));
        }
        if diagonal.iter().chain(&offdiagonal).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(
                "TridiagonalMatrix: non-finite entry".into(),
            ));
        }
        if offdiagonal.iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidArgument(
                "TridiagonalMatrix: negative off-diagonal entry".into(),
            ));
        }
        Ok(Self {
            diagonal,
            offdiagonal,
        })
    }

    pub fn size(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn offdiagonal(&self) -> &[f64] {
        &self.offdiagonal
    }
}

/// All eigenvalues, descending, by the implicit-shift QL iteration with a
/// relative 1e-14 deflation threshold. O(N²) total.
pub fn tridiag_eigenvalues(t: &TridiagonalMatrix) -> Result<Vec<f64>> {
    let n = t.size();
    let mut d = t.diagonal.clone();
    let mut e = t.offdiagonal.clone();
    e.push(0.0);

    for l in 0..n {
        let mut iter = 0;
        loop {
            // Split point: first m >= l with negligible coupling e[m].
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= 1e-14 * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::EigenDidNotConverge(format!(
                    "QL exceeded 50 iterations for eigenvalue {l} of {n}"
                )));
            }
            // Wilkinson shift.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                f = (d[i] - g) * s + 2.0 * c * b;
                p = s * f;
                d[i + 1] = g + p;
                g = c * f - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| b.partial_cmp(a).expect("eigenvalues are finite"));
    Ok(d)
}

/// Number of eigenvalues strictly below `x`, via the signs of the LDLᵀ
/// pivots of `T - xI` (Sturm/Sylvester count).
pub fn count_below(t: &TridiagonalMatrix, x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0f64;
    for i in 0..t.size() {
        let e2 = if i == 0 {
            0.0
        } else {
            t.offdiagonal[i - 1] * t.offdiagonal[i - 1]
        };
        q = (t.diagonal[i] - x) - e2 / q;
        if q == 0.0 {
            q = -1e-290;
        } else if q.abs() < 1e-290 {
            q = q.signum() * 1e-290;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Number of eigenvalues at or above `x` (ties sit on a measure-zero set for
/// the continuous ensembles sampled here).
pub fn count_above(t: &TridiagonalMatrix, x: f64) -> usize {
    t.size() - count_below(t, x)
}
