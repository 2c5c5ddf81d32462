//! Self-contained special functions: the Airy function `Ai` and its tail
//! integral, the Gamma function, and numerically stable orthonormal Hermite
//! functions in a scaled representation.

mod airy;
mod dd;
mod gamma;
mod hermite;
mod scaled;

pub use airy::{airy_ai, airy_tail};
pub use gamma::gamma_fn;
pub use hermite::hermite_phi_all;
pub use scaled::ScaledValue;

pub(crate) use airy::{ai, tail_unchecked};
pub(crate) use gamma::ln_gamma;
pub(crate) use hermite::{hermite_cross_sum, hermite_phi_pair, hermite_sq_sum};
