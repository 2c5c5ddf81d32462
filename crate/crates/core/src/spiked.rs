//! Desk-scale simulator for covariance estimation in the spiked model:
//! spiked-sample eigenvalue draws, bulk shrinkers, the white-Wishart bound
//! side of the rank-aware loss gap, and eigenvalue interlacing.

use rayon::prelude::*;

use crate::ensembles::{
    count_above, tridiag_eigenvalues, CounterRng, MonteCarloEstimate, TridiagonalMatrix,
};
use crate::fredholm::SymMatrix;
use crate::util::KahanSum;
use crate::{Error, Result};

/// Population covariance with `r` spikes above 1 and unit noise floor:
/// eigenvalues `ℓ_1 ≥ … ≥ ℓ_r > 1 = ℓ_{r+1} = … = ℓ_p`.
#[derive(Debug, Clone)]
pub struct SpikedModel {
    dim: usize,     // p
    samples: usize, // n
    spikes: Vec<f64>,
}

impl SpikedModel {
    pub fn new(dim: usize, samples: usize, mut spikes: Vec<f64>) -> Result<Self> {
        if dim == 0 || dim > 500 || samples > 2000 || dim > samples {
            return Err(Error::InvalidArgument(format!(
                "SpikedModel: shape ({dim}, {samples}) violates 1 <= p <= min(n, 500), n <= 2000"
            )));
        }
        if spikes.len() >= dim {
            return Err(Error::InvalidArgument(format!(
                "SpikedModel: rank {} must be below the dimension {dim}",
                spikes.len()
            )));
        }
        if spikes.iter().any(|&l| !(l > 1.0) || !l.is_finite()) {
            return Err(Error::InvalidArgument(
                "SpikedModel: every spike must be a finite value above 1".into(),
            ));
        }
        spikes.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
        Ok(Self {
            dim,
            samples,
            spikes,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn samples(&self) -> usize {
        self.samples
    }

    pub fn spikes(&self) -> &[f64] {
        &self.spikes
    }

    pub fn rank(&self) -> usize {
        self.spikes.len()
    }

    /// The practitioner's aspect-ratio plug-in `c_p = p/n`.
    pub fn aspect(&self) -> f64 {
        self.dim as f64 / self.samples as f64
    }

    /// Bulk edge `λ(c_p) = (1 + √c_p)²`.
    pub fn bulk_edge(&self) -> f64 {
        (1.0 + self.aspect().sqrt()).powi(2)
    }
}

/// Eigenvalues of one spiked sample covariance draw together with the
/// eigenvalues of its noise-block compression, both descending.
///
/// Both spectra come from the same underlying Gaussian sample, so the Cauchy
/// interlacing inequality `λ̌_j ≤ λ_{j-r}` is a deterministic per-draw fact
/// rather than a distributional one.
#[derive(Debug, Clone)]
pub struct SpikedSample {
    pub check_eigs: Vec<f64>,
    pub noise_eigs: Vec<f64>,
}

/// Draws `X̌ ~ N_p(0, Σ)` columns, forms the sample covariance, and returns
/// its spectrum along with the spectrum of the (p−r)-dimensional white block.
pub fn sample_spiked_eigs(model: &SpikedModel, rng: &mut CounterRng) -> Result<SpikedSample> {
    let p = model.dim;
    let n = model.samples;
    let r = model.rank();
    let z: Vec<f64> = (0..p * n).map(|_| rng.normal()).collect();
    // W = Z Zᵀ / n
    let inv_n = 1.0 / n as f64;
    let w = SymMatrix::from_fn(p, |i, j| {
        let (zi, zj) = (&z[i * n..(i + 1) * n], &z[j * n..(j + 1) * n]);
        let mut s = 0.0;
        for k in 0..n {
            s += zi[k] * zj[k];
        }
        s * inv_n
    });
    // Spiked covariance: scale row/column i by √ℓ_i for the first r rows.
    let scale: Vec<f64> = (0..p)
        .map(|i| if i < r { model.spikes[i].sqrt() } else { 1.0 })
        .collect();
    let g = SymMatrix::from_fn(p, |i, j| scale[i] * scale[j] * w.get(i, j));
    let noise = SymMatrix::from_fn(p - r, |i, j| w.get(i + r, j + r));
    Ok(SpikedSample {
        check_eigs: dense_symmetric_eigenvalues(&g)?,
        noise_eigs: dense_symmetric_eigenvalues(&noise)?,
    })
}

/// Number of interlacing violations `λ̌_j > λ_{j-r} + slack` in a sample.
pub fn interlacing_violations(sample: &SpikedSample, rank: usize, slack: f64) -> usize {
    let p = sample.check_eigs.len();
    (rank..p)
        .filter(|&j| sample.check_eigs[j] > sample.noise_eigs[j - rank] + slack)
        .count()
}

/// Dense symmetric eigenvalues via Householder reduction to tridiagonal form
/// followed by the implicit-shift QL solver. Eigenvalues only, descending.
pub fn dense_symmetric_eigenvalues(mat: &SymMatrix) -> Result<Vec<f64>> {
    let n = mat.size();
    if n == 1 {
        return Ok(vec![mat.get(0, 0)]);
    }
    let mut a = mat.data().to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    // Householder reduction (EISPACK tred1 layout, no vector accumulation).
    for i in (1..n).rev() {
        let mut h = 0.0;
        let mut scale = 0.0;
        if i > 1 {
            for k in 0..i {
                scale += a[i * n + k].abs();
            }
            if scale == 0.0 {
                e[i] = a[i * n + i - 1];
            } else {
                for k in 0..i {
                    a[i * n + k] /= scale;
                    h += a[i * n + k] * a[i * n + k];
                }
                let f = a[i * n + i - 1];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[i * n + i - 1] = f - g;
                let mut f_acc = 0.0;
                for j in 0..i {
                    let mut g_acc = 0.0;
                    for k in 0..=j {
                        g_acc += a[j * n + k] * a[i * n + k];
                    }
                    for k in (j + 1)..i {
                        g_acc += a[k * n + j] * a[i * n + k];
                    }
                    e[j] = g_acc / h;
                    f_acc += e[j] * a[i * n + j];
                }
                let hh = f_acc / (h + h);
                for j in 0..i {
                    let f = a[i * n + j];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[j * n + k] -= f * e[k] + g * a[i * n + k];
                    }
                }
            }
        } else {
            e[i] = a[i * n + i - 1];
        }
    }
    for i in 0..n {
        d[i] = a[i * n + i];
    }
    // Signs of the couplings are a diagonal similarity away from irrelevant.
    let off: Vec<f64> = e[1..].iter().map(|v| v.abs()).collect();
    tridiag_eigenvalues(&TridiagonalMatrix::new(d, off)?)
}

/// An eigenvalue shrinkage rule that leaves the bulk alone:
/// `η(λ, c) = 1` for `λ ≤ λ(c)` and `η(λ, c) ≤ M λ` above the edge.
pub trait BulkShrinker: Send + Sync {
    fn eta(&self, lambda: f64, c: f64) -> f64;
    fn label(&self) -> &'static str;
    fn is_continuous(&self) -> bool;
    /// Growth constant `M` with `η(λ, c) ≤ M λ` for `λ ≥ λ(c) + 1`.
    fn growth_bound(&self) -> f64;
}

/// Continuous reference shrinker `η(λ, c) = max(1, 1 + (λ − λ(c)))`.
#[derive(Debug, Clone, Copy, Default)]
pub struct LinearShrinker;

impl BulkShrinker for LinearShrinker {
    fn eta(&self, lambda: f64, c: f64) -> f64 {
        let edge = (1.0 + c.sqrt()).powi(2);
        1.0 + (lambda - edge).max(0.0)
    }

    fn label(&self) -> &'static str {
        "linear"
    }

    fn is_continuous(&self) -> bool {
        true
    }

    fn growth_bound(&self) -> f64 {
        1.0
    }
}

/// Operator-norm-optimal rule: identity on the bulk, and above the edge the
/// inverse of the classical spike-forward map `ℓ ↦ ℓ (1 + c/(ℓ−1))`. It jumps
/// from 1 to `1 + √c` across the edge.
#[derive(Debug, Clone, Copy, Default)]
pub struct EtaStarShrinker;

impl BulkShrinker for EtaStarShrinker {
    fn eta(&self, lambda: f64, c: f64) -> f64 {
        eta_star_value(lambda, c)
    }

    fn label(&self) -> &'static str {
        "eta-star"
    }

    fn is_continuous(&self) -> bool {
        false
    }

    fn growth_bound(&self) -> f64 {
        2.0
    }
}

/// Looks up a shrinker by its registry name.
pub fn shrinker_from_name(name: &str) -> Option<Box<dyn BulkShrinker>> {
    match name {
        "linear" => Some(Box::new(LinearShrinker)),
        "eta-star" => Some(Box::new(EtaStarShrinker)),
        _ => None,
    }
}

pub fn shrinker_names() -> &'static [&'static str] {
    &["linear", "eta-star"]
}

fn eta_star_value(lambda: f64, c: f64) -> f64 {
    let edge = (1.0 + c.sqrt()).powi(2);
    if lambda <= edge {
        return 1.0;
    }
    let b = lambda + 1.0 - c;
    0.5 * (b + (b * b - 4.0 * lambda).max(0.0).sqrt())
}

/// Discontinuous optimal shrinker `η*`: 1 on the bulk `[0, λ(c)]`, and the
/// recovered spike size `ℓ(λ)` above it, with right limit `1 + √c` at the
/// edge.
pub fn eta_star(lambda: f64, c: f64) -> Result<f64> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::Domain(format!(
            "eta_star: eigenvalue {lambda} outside [0, ∞)"
        )));
    }
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::Domain(format!(
            "eta_star: aspect ratio {c} outside (0, 1]"
        )));
    }
    Ok(eta_star_value(lambda, c))
}

/// Spike-to-loss transfer `f(ℓ) = √( c(ℓ−1) / (ℓ(ℓ−1+γ)) )`, strictly
/// decreasing for `ℓ ≥ 1 + √c`.
pub fn f_of_ell(ell: f64, c: f64, gamma: f64) -> Result<f64> {
    if !ell.is_finite() || ell < 1.0 {
        return Err(Error::Domain(format!("f_of_ell: spike {ell} below 1")));
    }
    if !(c > 0.0 && c <= 1.0) || !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::Domain(format!(
            "f_of_ell: aspect ratios c = {c}, gamma = {gamma} outside (0, 1]"
        )));
    }
    Ok((c * (ell - 1.0) / (ell * (ell - 1.0 + gamma))).sqrt())
}

/// Bound side of the rank-aware loss gap: `Σ_i [η(λ_i, c_p) − 1]^q` over
/// white-noise eigenvalues. At `q = 0` a term counts 1 exactly when
/// `η(λ_i) > 1`, so the sum is the exit count.
pub fn shrinker_gap(noise_eigs: &[f64], eta: &dyn BulkShrinker, c_p: f64, q: f64) -> f64 {
    let mut acc = KahanSum::new();
    for &l in noise_eigs {
        let t = eta.eta(l, c_p) - 1.0;
        if t > 0.0 {
            acc.add(if q == 0.0 { 1.0 } else { t.powf(q) });
        }
    }
    acc.value()
}

/// Monte Carlo mean of [`shrinker_gap`] over white-Wishart noise spectra of
/// dimension `p − r` with `n` samples.
///
/// Only the noise block enters the bound, so the draws use the bidiagonal
/// ensemble model, which shares the dense route's eigenvalue law exactly.
pub fn mean_shrinker_gap(
    model: &SpikedModel,
    eta: &dyn BulkShrinker,
    q: f64,
    draws: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    if draws < 2 {
        return Err(Error::InvalidArgument(format!(
            "mean_shrinker_gap: needs at least 2 draws, got {draws}"
        )));
    }
    if !q.is_finite() || q < 0.0 || q > 30.0 {
        return Err(Error::Domain(format!("exponent q = {q} outside [0, 30]")));
    }
    let noise_dim = model.dim - model.rank();
    let c_p = model.aspect();
    let values: Vec<f64> = (0..draws)
        .into_par_iter()
        .map(|j| -> Result<f64> {
            let mut rng = CounterRng::new(seed, j as u64);
            let eigs =
                crate::ensembles::sample_wishart_eigenvalues(noise_dim, model.samples, &mut rng)?;
            Ok(shrinker_gap(&eigs, eta, c_p, q))
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(estimate_from_values(&values, seed))
}

/// Exit counts `N_n = #{noise eigenvalues > λ(c_p)}` over Monte Carlo draws
/// of the `(p−r)`-dimensional noise block.
pub fn noise_exit_counts(model: &SpikedModel, draws: usize, seed: u64) -> Result<Vec<usize>> {
    if draws == 0 {
        return Err(Error::InvalidArgument("noise_exit_counts: zero draws".into()));
    }
    let noise_dim = model.dim - model.rank();
    let edge = model.bulk_edge();
    (0..draws)
        .into_par_iter()
        .map(|j| -> Result<usize> {
            let mut rng = CounterRng::new(seed, j as u64);
            let spec = crate::ensembles::EnsembleSpec::Wishart {
                dim: noise_dim,
                samples: model.samples,
            };
            spec.validate()?;
            let mut x = Vec::with_capacity(noise_dim);
            for i in 0..noise_dim {
                x.push(rng.chi((model.samples - i) as f64));
            }
            let mut y = Vec::with_capacity(noise_dim.saturating_sub(1));
            for i in 0..noise_dim.saturating_sub(1) {
                y.push(rng.chi((noise_dim - 1 - i) as f64));
            }
            let inv_n = 1.0 / model.samples as f64;
            let diagonal: Vec<f64> = (0..noise_dim)
                .map(|i| {
                    let yy = if i == 0 { 0.0 } else { y[i - 1] * y[i - 1] };
                    (x[i] * x[i] + yy) * inv_n
                })
                .collect();
            let offdiagonal: Vec<f64> = (0..noise_dim.saturating_sub(1))
                .map(|i| x[i] * y[i] * inv_n)
                .collect();
            let t = TridiagonalMatrix::new(diagonal, offdiagonal)?;
            Ok(count_above(&t, edge))
        })
        .collect()
}

fn estimate_from_values(values: &[f64], seed: u64) -> MonteCarloEstimate {
    let n = values.len();
    let mut acc = KahanSum::new();
    for &v in values {
        acc.add(v);
    }
    let mean = acc.value() / n as f64;
    let mut dev = KahanSum::new();
    for &v in values {
        dev.add((v - mean) * (v - mean));
    }
    MonteCarloEstimate {
        mean,
        std_error: (dev.value() / (n as f64 - 1.0) / n as f64).sqrt(),
        samples: n,
        seed,
    }
}
