//! Expected tail sums beyond the bulk edge and the limiting constants `c_q`,
//! together with the edge-scaling data for both ensembles.

use crate::kernels::{airy_kernel_diag_unchecked, wishart_limit_diag_unchecked};
use crate::quadrature::integrate_semiinf;
use crate::specfun::{ai, hermite_sq_sum, ln_gamma};
use crate::{Error, Result};

const MAX_Q: f64 = 30.0;

/// Tracy–Widom center/scale pair for an ensemble.
///
/// GUE uses the convention with joint eigenvalue density `∝ e^{-Σy²} Δ(y)²`,
/// whose bulk edge sits at `μ_N = √(2N)` with scale `1/(√2 N^{1/6})`. The
/// Wishart pair uses the half-integer-corrected centering
/// `μ_N = (√(N+½) + √(n+½))²`, `σ_N = c(γ) (N+½)^{1/3}` with
/// `c(γ) = (1+√γ)^{1/3}(1+1/√γ)` at `γ = (N+½)/(n+½)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeScaling {
    Gue {
        dim: usize,
        center: f64,
        scale: f64,
    },
    Wishart {
        dim: usize,
        samples: usize,
        gamma: f64,
        center: f64,
        scale: f64,
    },
}

impl EdgeScaling {
    pub fn gue(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("EdgeScaling::gue: dim = 0".into()));
        }
        let n = dim as f64;
        Ok(EdgeScaling::Gue {
            dim,
            center: (2.0 * n).sqrt(),
            scale: 1.0 / (2f64.sqrt() * n.powf(1.0 / 6.0)),
        })
    }

    pub fn wishart(dim: usize, samples: usize) -> Result<Self> {
        if dim == 0 || dim > samples {
            return Err(Error::InvalidArgument(format!(
                "EdgeScaling::wishart: need 1 <= dim <= samples, got ({dim}, {samples})"
            )));
        }
        let nh = dim as f64 + 0.5;
        let sh = samples as f64 + 0.5;
        let gamma_h = nh / sh;
        let c = (1.0 + gamma_h.sqrt()).powf(1.0 / 3.0) * (1.0 + 1.0 / gamma_h.sqrt());
        Ok(EdgeScaling::Wishart {
            dim,
            samples,
            gamma: dim as f64 / samples as f64,
            center: (nh.sqrt() + sh.sqrt()).powi(2),
            scale: c * nh.powf(1.0 / 3.0),
        })
    }

    pub fn center(&self) -> f64 {
        match self {
            EdgeScaling::Gue { center, .. } | EdgeScaling::Wishart { center, .. } => *center,
        }
    }

    pub fn scale(&self) -> f64 {
        match self {
            EdgeScaling::Gue { scale, .. } | EdgeScaling::Wishart { scale, .. } => *scale,
        }
    }
}

/// Marcenko–Pastur edge functions of the aspect ratio `γ = lim N/n ∈ (0, 1]`:
/// bulk edge `λ(γ) = (1+√γ)²`, its derivative `λ'(γ) = 1 + 1/√γ`, the
/// Tracy–Widom scale `τ(γ) = √γ (√γ+1)^{4/3}`, and `σ(γ) = τ(γ)/λ'(γ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFunctions {
    gamma: f64,
}

impl GammaFunctions {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::Domain(format!(
                "GammaFunctions: aspect ratio {gamma} outside (0, 1]"
            )));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn lambda(&self) -> f64 {
        (1.0 + self.gamma.sqrt()).powi(2)
    }

    pub fn lambda_prime(&self) -> f64 {
        1.0 + 1.0 / self.gamma.sqrt()
    }

    pub fn tau(&self) -> f64 {
        self.gamma.sqrt() * (self.gamma.sqrt() + 1.0).powf(4.0 / 3.0)
    }

    pub fn sigma(&self) -> f64 {
        self.gamma * (1.0 + self.gamma.sqrt()).powf(1.0 / 3.0)
    }
}

fn validate_q(q: f64) -> Result<()> {
    if !q.is_finite() || q < 0.0 || q > MAX_Q {
        return Err(Error::Domain(format!("exponent q = {q} outside [0, {MAX_Q}]")));
    }
    Ok(())
}

/// Closed form of the limiting tail-sum constant:
/// `c_q = 2 Γ(q+1) / (√π 12^{(2q+9)/6} Γ((2q+9)/6))`.
pub fn cq_closed(q: f64) -> Result<f64> {
    validate_q(q)?;
    let num = std::f64::consts::LN_2 + ln_gamma(q + 1.0);
    let den = 0.5 * std::f64::consts::PI.ln()
        + (2.0 * q + 9.0) / 6.0 * 12f64.ln()
        + ln_gamma((2.0 * q + 9.0) / 6.0);
    Ok((num - den).exp())
}

/// Both quadrature routes to `c_q`: the single integral
/// `(q+1)^{-1} ∫_0^∞ x^{q+1} Ai²(x) dx` (integration by parts) and the double
/// route `∫_0^∞ x^q K_A(x, x) dx`.
pub fn cq_quadrature_routes(q: f64) -> Result<(f64, f64)> {
    validate_q(q)?;
    let single = integrate_semiinf(
        |x| {
            let a = ai(x);
            x.powf(q + 1.0) * a * a
        },
        0.0,
        1e-9,
    )? / (q + 1.0);
    let double = integrate_semiinf(|x| x.powf(q) * airy_kernel_diag_unchecked(x), 0.0, 1e-9)?;
    Ok((single, double))
}

/// `c_q` by quadrature; the two integral routes must agree within 1e-7.
pub fn cq_quadrature(q: f64) -> Result<f64> {
    let (single, double) = cq_quadrature_routes(q)?;
    if (single - double).abs() > 1e-7 {
        return Err(Error::RouteMismatch {
            a: single,
            b: double,
            tol: 1e-7,
        });
    }
    Ok(single)
}

/// Finite-N expected tail sum for GUE:
/// `E(T_N) = (2/N)^{q/2} ∫_{μ_N}^∞ (y − μ_N)^q S_N(y, y) dy` with
/// `μ_N = √(2N)`. At `q = 0` this is the expected number of eigenvalues
/// beyond the bulk edge.
pub fn gue_expected_tailsum(dim: usize, q: f64) -> Result<f64> {
    if dim == 0 || dim > 2000 {
        return Err(Error::InvalidArgument(format!(
            "gue_expected_tailsum: matrix size {dim} outside 1..=2000"
        )));
    }
    validate_q(q)?;
    let n = dim as f64;
    let mu = (2.0 * n).sqrt();
    let integral = integrate_semiinf(
        |y| (y - mu).max(0.0).powf(q) * hermite_sq_sum(y, dim),
        mu,
        1e-8,
    )?;
    Ok((2.0 / n).powf(0.5 * q) * integral)
}

/// Scale-free part of the limiting Wishart tail sum: the window integral
/// `∫_s^∞ (x − s)^q K_1(x, x) dx` together with the prefactor `τ(γ)^q`.
/// The caller supplies the `N^{-2q/3}` rate; the limit statement is
/// asymptotic and finite-N Wishart values come from Monte Carlo instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WishartLimitTailsum {
    pub prefactor: f64,
    pub integral: f64,
}

pub fn wishart_limit_tailsum(gamma: f64, q: f64, s: f64) -> Result<WishartLimitTailsum> {
    let gf = GammaFunctions::new(gamma)?;
    validate_q(q)?;
    if !s.is_finite() || s < -10.0 {
        return Err(Error::Domain(format!(
            "wishart_limit_tailsum: window start {s} below -10"
        )));
    }
    let integral = integrate_semiinf(
        |x| (x - s).max(0.0).powf(q) * wishart_limit_diag_unchecked(x),
        s,
        1e-8,
    )?;
    Ok(WishartLimitTailsum {
        prefactor: gf.tau().powf(q),
        integral,
    })
}

/// Window offset `δ_N = (n λ(c_N) − μ_N) / σ_N` in Tracy–Widom units, for a
/// Wishart edge scaling and a threshold parameter `c_N` near `γ_N`.
pub fn delta_n(c_n: f64, scaling: &EdgeScaling) -> Result<f64> {
    match scaling {
        EdgeScaling::Wishart {
            samples,
            center,
            scale,
            ..
        } => {
            if !(c_n > 0.0 && c_n < 2.0) {
                return Err(Error::InvalidArgument(format!(
                    "delta_n: c_N = {c_n} outside (0, 2)"
                )));
            }
            let lambda_c = (1.0 + c_n.sqrt()).powi(2);
            Ok((*samples as f64 * lambda_c - center) / scale)
        }
        EdgeScaling::Gue { .. } => Err(Error::InvalidArgument(
            "delta_n requires a Wishart edge scaling".into(),
        )),
    }
}
