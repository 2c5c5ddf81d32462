//! Edge statistics of GUE and real white Wishart eigenvalue ensembles.
//!
//! The crate computes, for the two classical ensembles, what happens just
//! outside the upper bulk edge of the spectrum:
//!
//! * expected tail sums `E Σ_i (λ_i − edge)_+^q` at finite matrix size and in
//!   the edge-scaling limit, together with the limiting constants `c_q`,
//! * exact probabilities that `k` eigenvalues exit the bulk, obtained from
//!   Fredholm/Nyström discretizations of the determinantal kernels,
//! * Monte Carlo cross-checks built on tridiagonal and bidiagonal ensemble
//!   models with a counter-based reproducible RNG,
//! * a desk-scale simulator for spiked-covariance shrinkage estimators.
//!
//! Modules mirror those layers: [`specfun`] (Airy, Gamma, Hermite functions),
//! [`quadrature`], [`kernels`] (trait [`kernels::Kernel`] with the finite-N
//! Christoffel–Darboux kernel and the Airy kernel behind it), [`fredholm`]
//! (counting distributions), [`tailsums`] (edge scalings and the `c_q`
//! constants), [`ensembles`] (samplers), and [`spiked`].

pub mod ensembles;
pub mod fredholm;
pub mod kernels;
pub mod quadrature;
pub mod specfun;
pub mod spiked;
pub mod tailsums;

mod error;
pub(crate) mod util;

pub use error::{Error, Result};
