//! Determinantal kernels: the finite-N GUE Christoffel–Darboux kernel, the
//! Airy kernel, and the real-Wishart limiting one-point diagonal.
//!
//! Each usable kernel sits behind the [`Kernel`] trait so that the Fredholm
//! machinery can discretize any of them interchangeably.

use crate::quadrature::integrate_semiinf;
use crate::specfun::{ai, hermite_cross_sum, hermite_phi_pair, hermite_sq_sum, tail_unchecked};
use crate::{Error, Result};

/// A symmetric scalar kernel with a well-defined diagonal.
///
/// Implementations are pure and freely shareable across threads. `eval`
/// expects finite arguments; non-finite inputs propagate as NaN.
pub trait Kernel: Send + Sync {
    fn eval(&self, x: f64, y: f64) -> f64;
    fn eval_diag(&self, x: f64) -> f64;
    fn label(&self) -> &str;
}

/// Finite-N GUE one-point kernel `S_N(x, y) = Σ_{k<N} φ_k(x) φ_k(y)`.
///
/// Off the diagonal this collapses to the two-term Christoffel–Darboux form
/// `√(N/2) [φ_N(x) φ_{N-1}(y) − φ_{N-1}(x) φ_N(y)] / (x − y)`; within
/// `|x − y| ≤ 1e-6` of the diagonal the direct sum takes over to dodge the
/// cancellation in the quotient.
#[derive(Debug, Clone)]
pub struct GueKernel {
    n: usize,
    label: String,
}

/// Switch distance between the Christoffel–Darboux quotient and the direct sum.
const CD_SWITCH: f64 = 1e-6;

pub fn gue_cd_kernel(n: usize) -> Result<GueKernel> {
    if n == 0 || n > 2000 {
        return Err(Error::InvalidArgument(format!(
            "gue_cd_kernel: matrix size {n} outside 1..=2000"
        )));
    }
    Ok(GueKernel {
        n,
        label: format!("gue-cd-{n}"),
    })
}

impl GueKernel {
    pub fn size(&self) -> usize {
        self.n
    }

    /// Two-term Christoffel–Darboux quotient (requires `x != y`).
    pub(crate) fn cd_form(&self, x: f64, y: f64) -> f64 {
        let (px_lo, px_hi) = hermite_phi_pair(x, self.n);
        let (py_lo, py_hi) = hermite_phi_pair(y, self.n);
        let t1 = px_hi.mul(&py_lo).to_f64();
        let t2 = px_lo.mul(&py_hi).to_f64();
        (self.n as f64 / 2.0).sqrt() * (t1 - t2) / (x - y)
    }

    /// Direct sum `Σ_{k<N} φ_k(x) φ_k(y)`.
    pub(crate) fn direct_sum(&self, x: f64, y: f64) -> f64 {
        hermite_cross_sum(x, y, self.n)
    }
}

impl Kernel for GueKernel {
    fn eval(&self, x: f64, y: f64) -> f64 {
        if (x - y).abs() > CD_SWITCH {
            self.cd_form(x, y)
        } else {
            self.direct_sum(x, y)
        }
    }

    fn eval_diag(&self, x: f64) -> f64 {
        hermite_sq_sum(x, self.n)
    }

    fn label(&self) -> &str {
        &self.label
    }
}

/// Airy kernel `K_A(x, y) = ∫_0^∞ Ai(x+z) Ai(y+z) dz`, the edge-scaling
/// limit of [`GueKernel`].
#[derive(Debug, Clone, Default)]
pub struct AiryKernel;

impl AiryKernel {
    pub fn new() -> Self {
        AiryKernel
    }
}

impl Kernel for AiryKernel {
    fn eval(&self, x: f64, y: f64) -> f64 {
        integrate_semiinf(|z| ai(x + z) * ai(y + z), 0.0, 1e-11)
            .expect("Airy product tail integral converges for arguments >= -10")
    }

    fn eval_diag(&self, x: f64) -> f64 {
        airy_kernel_diag_unchecked(x)
    }

    fn label(&self) -> &str {
        "airy"
    }
}

pub(crate) fn airy_kernel_diag_unchecked(x: f64) -> f64 {
    integrate_semiinf(
        |z| {
            let v = ai(x + z);
            v * v
        },
        0.0,
        1e-10,
    )
    .expect("Airy-squared tail integral converges for arguments >= -10")
}

/// Airy kernel diagonal `K_A(x, x) = ∫_0^∞ Ai²(x+z) dz`, absolute error
/// below 1e-9 for `x ≥ -10`.
pub fn airy_kernel_diag(x: f64) -> Result<f64> {
    if !x.is_finite() || x < -10.0 {
        return Err(Error::Domain(format!(
            "airy_kernel_diag: argument {x} outside [-10, ∞)"
        )));
    }
    integrate_semiinf(
        |z| {
            let v = ai(x + z);
            v * v
        },
        0.0,
        1e-10,
    )
}

/// Limiting real-Wishart one-point diagonal
/// `K_1(x, x) = K_A(x, x) + ½ Ai(x) [1 − ∫_x^∞ Ai(z) dz]`.
pub fn wishart_limit_diag(x: f64) -> Result<f64> {
    if !x.is_finite() || x < -10.0 {
        return Err(Error::Domain(format!(
            "wishart_limit_diag: argument {x} outside [-10, ∞)"
        )));
    }
    Ok(wishart_limit_diag_unchecked(x))
}

pub(crate) fn wishart_limit_diag_unchecked(x: f64) -> f64 {
    airy_kernel_diag_unchecked(x) + 0.5 * ai(x) * (1.0 - tail_unchecked(x))
}
