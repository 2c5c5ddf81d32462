//! Nyström discretization of determinantal kernels on a window `(a, ∞)` and
//! the full counting distribution `p(k) = P(exactly k eigenvalues in the
//! window)`.
//!
//! The probabilities come from the spectrum of the discretized operator via
//! elementary symmetric polynomials rather than from z-derivatives of
//! `det(I - zK)`: differentiating an interpolated determinant cannot hold the
//! 1e-13 scale of the three-eigenvalue exit probabilities, while the spectrum
//! route is limited only by the accuracy of the small eigenvalues themselves,
//! which Jacobi rotations preserve well.

use crate::kernels::Kernel;
use crate::quadrature::semiinf_rule;
use crate::util::KahanSum;
use crate::{Error, Result};

/// Dense symmetric matrix in full row-major storage.
#[derive(Debug, Clone)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds from the upper triangle of `f`, mirroring to keep exact symmetry.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn trace(&self) -> f64 {
        let mut acc = KahanSum::new();
        for i in 0..self.n {
            acc.add(self.data[i * self.n + i]);
        }
        acc.value()
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.data[i * self.n + j] - self.data[j * self.n + i]).abs());
            }
        }
        worst
    }

    pub(crate) fn data(&self) -> &[f64] {
        &self.data
    }
}

/// Nyström matrix `M_ij = √w_i K(x_i, x_j) √w_j` on `(a, ∞)` with the
/// rational-transform Gauss–Legendre rule of `m` points.
pub fn nystrom_discretize(kernel: &dyn Kernel, a: f64, m: usize) -> Result<SymMatrix> {
    if m == 0 || m > 512 {
        return Err(Error::InvalidArgument(format!(
            "nystrom_discretize: grid size {m} outside 1..=512"
        )));
    }
    let rule = semiinf_rule(m, a)?;
    let x = rule.nodes();
    let sw: Vec<f64> = rule.weights().iter().map(|w| w.sqrt()).collect();
    Ok(SymMatrix::from_fn(m, |i, j| {
        let k = if i == j {
            kernel.eval_diag(x[i])
        } else {
            kernel.eval(x[i], x[j])
        };
        sw[i] * k * sw[j]
    }))
}

/// Spectrum of a discretized kernel operator, sorted descending.
#[derive(Debug, Clone)]
pub struct SymmetricSpectrum {
    eigenvalues: Vec<f64>,
}

impl SymmetricSpectrum {
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }
}

/// Full spectrum by cyclic Jacobi rotations; the off-diagonal Frobenius norm
/// is driven below `1e-13 · max(1, ||A||_F)`.
pub fn symmetric_eigenvalues(mat: &SymMatrix) -> Result<SymmetricSpectrum> {
    let n = mat.size();
    if mat.max_asymmetry() > 1e-12 {
        return Err(Error::InvalidArgument(
            "symmetric_eigenvalues: matrix asymmetry exceeds 1e-12".into(),
        ));
    }
    let mut a = mat.data.clone();
    let target = 1e-13 * mat.frobenius().max(1.0);
    let skip = target / (10.0 * n as f64);

    let off_norm = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                s += 2.0 * a[i * n + j] * a[i * n + j];
            }
        }
        s.sqrt()
    };

    let mut converged = false;
    for _sweep in 0..100 {
        if off_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n.saturating_sub(1) {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= skip {
                    continue;
                }
                let app = a[p * n + p];
                let aqq = a[q * n + q];
                let tau = (aqq - app) / (2.0 * apq);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                a[p * n + p] = app - t * apq;
                a[q * n + q] = aqq + t * apq;
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    let new_p = c * aip - s * aiq;
                    let new_q = s * aip + c * aiq;
                    a[i * n + p] = new_p;
                    a[p * n + i] = new_p;
                    a[i * n + q] = new_q;
                    a[q * n + i] = new_q;
                }
            }
        }
    }
    if !converged && off_norm(&a) > target {
        return Err(Error::EigenDidNotConverge(format!(
            "Jacobi off-diagonal norm {:e} above target {:e} after 100 sweeps",
            off_norm(&a),
            target
        )));
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(|x, y| y.partial_cmp(x).expect("eigenvalues are finite"));
    Ok(SymmetricSpectrum { eigenvalues })
}

/// Probabilities `p(0..=k_max)` that exactly `k` eigenvalues of the point
/// process lie in the window, plus convergence metadata.
#[derive(Debug, Clone)]
pub struct CountDistribution {
    probs: Vec<f64>,
    window_start: f64,
    grid: usize,
    error_estimate: f64,
}

impl CountDistribution {
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, k: usize) -> f64 {
        self.probs[k]
    }

    /// `Σ k p(k)` over the computed entries.
    pub fn mean(&self) -> f64 {
        let mut acc = KahanSum::new();
        for (k, &p) in self.probs.iter().enumerate() {
            acc.add(k as f64 * p);
        }
        acc.value()
    }

    pub fn window_start(&self) -> f64 {
        self.window_start
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    pub fn error_estimate(&self) -> f64 {
        self.error_estimate
    }
}

/// Counting distribution of a determinantal kernel on `(a, ∞)`.
///
/// The Nyström grid doubles from 32 until successive probability vectors
/// agree within `tol` componentwise. Eigenvalues at or above `1 - 1e-12`
/// mean the window reaches into the bulk and are reported as an error.
pub fn counting_distribution(
    kernel: &dyn Kernel,
    a: f64,
    k_max: usize,
    tol: f64,
) -> Result<CountDistribution> {
    if !a.is_finite() || !(tol > 0.0) || tol < 1e-14 {
        return Err(Error::InvalidArgument(format!(
            "counting_distribution: bad window start {a} or tolerance {tol}"
        )));
    }
    if k_max > 16 {
        return Err(Error::InvalidArgument(format!(
            "counting_distribution: k_max {k_max} above supported 16"
        )));
    }
    let mut m = 32;
    let mut prev: Option<Vec<f64>> = None;
    loop {
        let mat = nystrom_discretize(kernel, a, m)?;
        let spectrum = symmetric_eigenvalues(&mat)?;
        let probs = probs_from_spectrum(spectrum.eigenvalues(), k_max)?;
        if let Some(p) = prev {
            let residual = probs
                .iter()
                .zip(&p)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0f64, f64::max);
            if residual <= tol {
                return Ok(CountDistribution {
                    probs,
                    window_start: a,
                    grid: m,
                    error_estimate: residual,
                });
            }
            if m >= 512 {
                return Err(Error::CountingDidNotConverge {
                    grid: m,
                    residual,
                    tol,
                });
            }
        } else if m >= 512 {
            return Err(Error::CountingDidNotConverge {
                grid: m,
                residual: f64::INFINITY,
                tol,
            });
        }
        prev = Some(probs);
        m *= 2;
    }
}

/// Determinantal counting probabilities from operator eigenvalues:
/// `p(k) = Π_i (1 - λ_i) · e_k(λ_i / (1 - λ_i))`.
fn probs_from_spectrum(eigenvalues: &[f64], k_max: usize) -> Result<Vec<f64>> {
    let mut lambdas = Vec::with_capacity(eigenvalues.len());
    for &l in eigenvalues {
        if l >= 1.0 - 1e-12 {
            return Err(Error::WindowIncludesBulk(l));
        }
        if l < -1e-8 {
            return Err(Error::EigenDidNotConverge(format!(
                "projection-kernel eigenvalue {l:e} below -1e-8"
            )));
        }
        lambdas.push(l.max(0.0));
    }
    // Descending order keeps the e_k recurrence adding small terms into
    // large accumulators.
    lambdas.sort_by(|x, y| y.partial_cmp(x).expect("finite"));

    let mut p0 = 1.0;
    for &l in &lambdas {
        p0 *= 1.0 - l;
    }
    let e = elementary_symmetric(
        &lambdas.iter().map(|&l| l / (1.0 - l)).collect::<Vec<_>>(),
        k_max,
    );
    Ok(e.iter().map(|ek| p0 * ek).collect())
}

/// First `k_max` elementary symmetric polynomials by the stable descending
/// recurrence `e_j += μ_i e_{j-1}` with compensated accumulators.
fn elementary_symmetric(mu: &[f64], k_max: usize) -> Vec<f64> {
    let mut e: Vec<KahanSum> = vec![KahanSum::new(); k_max + 1];
    e[0].add(1.0);
    for &m in mu {
        for j in (1..=k_max).rev() {
            let lower = e[j - 1].value();
            e[j].add(m * lower);
        }
    }
    e.iter().map(|s| s.value()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::AiryKernel;
    use proptest::prelude::*;

    /// Separable rank-one test kernel e^{-(x+y)} on (0, ∞): its restriction
    /// has the single nonzero eigenvalue ∫_0^∞ e^{-2x} dx = 1/2.
    struct ExpKernel;

    impl Kernel for ExpKernel {
        fn eval(&self, x: f64, y: f64) -> f64 {
            (-(x + y)).exp()
        }
        fn eval_diag(&self, x: f64) -> f64 {
            (-2.0 * x).exp()
        }
        fn label(&self) -> &str {
            "exp-rank-one"
        }
    }

    #[test]
    fn nystrom_single_point() {
        let m = nystrom_discretize(&ExpKernel, 0.0, 1).unwrap();
        let rule = semiinf_rule(1, 0.0).unwrap();
        let want = rule.weights()[0] * (-2.0 * rule.nodes()[0]).exp();
        assert_eq!(m.size(), 1);
        assert!((m.get(0, 0) - want).abs() < 1e-15);
    }

    #[test]
    fn nystrom_trace_matches_kernel_trace() {
        // trace(M) -> ∫_a^∞ K(x,x) dx; for the Airy kernel at a = 0 that is
        // the limiting constant 1/(6 √3 π).
        let m = nystrom_discretize(&AiryKernel::new(), 0.0, 48).unwrap();
        assert!((m.trace() - 3.06293830789884473e-02).abs() < 1e-6);
        let m = nystrom_discretize(&ExpKernel, 0.0, 48).unwrap();
        assert!((m.trace() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn airy_determinant_stable_under_refinement() {
        let det = |m: usize| -> f64 {
            let mat = nystrom_discretize(&AiryKernel::new(), 0.0, m).unwrap();
            symmetric_eigenvalues(&mat)
                .unwrap()
                .eigenvalues()
                .iter()
                .map(|l| 1.0 - l)
                .product()
        };
        let d64 = det(64);
        let d128 = det(128);
        assert!((d64 - d128).abs() < 1e-6 * d128.abs());
    }

    #[test]
    fn jacobi_identity_matrix() {
        let eye = SymMatrix::from_fn(3, |i, j| if i == j { 1.0 } else { 0.0 });
        let s = symmetric_eigenvalues(&eye).unwrap();
        assert_eq!(s.eigenvalues(), &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn jacobi_two_by_two() {
        let m = SymMatrix::from_fn(2, |i, j| if i == j { 2.0 } else { 1.0 });
        let s = symmetric_eigenvalues(&m).unwrap();
        assert!((s.eigenvalues()[0] - 3.0).abs() < 1e-13);
        assert!((s.eigenvalues()[1] - 1.0).abs() < 1e-13);
    }

    #[test]
    fn jacobi_rejects_asymmetric() {
        let mut m = SymMatrix::zeros(2);
        m.data[1] = 1.0; // upper entry only
        assert!(symmetric_eigenvalues(&m).is_err());
    }

    fn random_sym(n: usize, seed: u64) -> SymMatrix {
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / 2f64.powi(53) * 2.0 - 1.0
        };
        SymMatrix::from_fn(n, |_, _| next())
    }

    #[test]
    fn exp_kernel_counting_matches_rank_one_law() {
        // Single operator eigenvalue 1/2: p(0) = p(1) = 1/2, p(k>=2) = 0.
        let d = counting_distribution(&ExpKernel, 0.0, 4, 1e-9).unwrap();
        assert!((d.prob(0) - 0.5).abs() < 1e-8);
        assert!((d.prob(1) - 0.5).abs() < 1e-8);
        assert!(d.prob(2).abs() < 1e-9);
        assert!((d.mean() - 0.5).abs() < 1e-8);
    }

    #[test]
    fn airy_counting_reproduces_tracy_widom_gap() {
        let d = counting_distribution(&AiryKernel::new(), 0.0, 5, 1e-9).unwrap();
        // F_2(0) = 0.9693728283552220
        assert!(
            (d.prob(0) - 0.969372828355).abs() < 5e-8,
            "p0 = {}",
            d.prob(0)
        );
        let total: f64 = d.probs().iter().sum();
        assert!((total - 1.0).abs() < 1e-6);
        for pair in d.probs().windows(2) {
            assert!(pair[1] <= pair[0], "p(k) not decreasing: {:?}", d.probs());
        }
        // mean matches the trace route
        let trace = crate::quadrature::integrate_semiinf(
            |x| crate::kernels::airy_kernel_diag(x).unwrap(),
            0.0,
            1e-9,
        )
        .unwrap();
        assert!((d.mean() - trace).abs() < 1e-6);
    }

    #[test]
    fn window_into_bulk_is_rejected() {
        let k = crate::kernels::gue_cd_kernel(10).unwrap();
        let res = counting_distribution(&k, -5.0, 3, 1e-8);
        assert!(matches!(res, Err(Error::WindowIncludesBulk(_))));
    }

    #[test]
    fn elementary_symmetric_brute_force_oracle() {
        let mu = [0.9, 0.41, 0.07, 0.003];
        let e = elementary_symmetric(&mu, 3);
        let e1: f64 = mu.iter().sum();
        let mut e2 = 0.0;
        let mut e3 = 0.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                e2 += mu[i] * mu[j];
                for k in (j + 1)..4 {
                    e3 += mu[i] * mu[j] * mu[k];
                }
            }
        }
        assert!((e[0] - 1.0).abs() < 1e-15);
        assert!((e[1] - e1).abs() < 1e-14);
        assert!((e[2] - e2).abs() < 1e-14);
        assert!((e[3] - e3).abs() < 1e-14);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn jacobi_trace_identities(seed in 0u64..500, n in 2usize..12) {
            let m = random_sym(n, seed);
            let s = symmetric_eigenvalues(&m).unwrap();
            let sum: f64 = s.eigenvalues().iter().sum();
            let sq: f64 = s.eigenvalues().iter().map(|l| l * l).sum();
            prop_assert!((sum - m.trace()).abs() < 1e-10);
            prop_assert!((sq - m.frobenius().powi(2)).abs() < 1e-10);
        }

        #[test]
        fn esp_recurrence_vs_subset_enumeration(
            mus in prop::collection::vec(0.0f64..2.0, 1..8)
        ) {
            let e = elementary_symmetric(&mus, 3);
            let n = mus.len();
            let mut want = [1.0f64, 0.0, 0.0, 0.0];
            for i in 0..n {
                want[1] += mus[i];
                for j in (i+1)..n {
                    want[2] += mus[i]*mus[j];
                    for k in (j+1)..n {
                        want[3] += mus[i]*mus[j]*mus[k];
                    }
                }
            }
            for k in 0..=3 {
                prop_assert!((e[k] - want[k]).abs() <= 1e-12 * want[k].abs().max(1.0));
            }
        }
    }
}
