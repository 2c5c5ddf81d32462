//! Monte Carlo side of the crate: counter-based RNG, tridiagonal ensemble
//! samplers, a self-contained symmetric tridiagonal eigensolver, and the
//! exceedance estimators cross-checked against the analytic modules.

mod rng;
mod sample;
mod tridiag;

pub use rng::CounterRng;
pub use sample::{
    mc_both_edges_inside, mc_expected_tailsum, sample_gue_eigenvalues,
    sample_wishart_eigenvalues, wigner_scale, EnsembleSpec, MonteCarloEstimate,
};
pub use tridiag::{count_above, count_below, tridiag_eigenvalues, TridiagonalMatrix};
