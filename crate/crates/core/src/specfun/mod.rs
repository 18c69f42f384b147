//! Special functions behind the closed forms.
//!
//! Everything here is real-valued and implemented in-crate: log-Gamma and
//! binomials, generalized Laguerre polynomials, Kummer's confluent
//! hypergeometric M, the Bessel functions J₀/J₁, and the even kernels
//! sinh(x)/x and sin(x)/x.

mod bessel;
mod elementary;
mod gamma;
mod kummer;
mod laguerre;

pub use bessel::{bessel_j0, bessel_j1};
pub use elementary::{sinhc, spherical_j0};
pub use gamma::{binomial, factorial, ln_binomial, ln_factorial, log_gamma};
pub use kummer::{kummer_m, KummerArgs};
pub use laguerre::{laguerre, LaguerreSpec};

/// Relative size below which a series term no longer counts.
pub(crate) const SERIES_EPS: f64 = 1e-16;
/// Consecutive negligible terms required before a series is declared converged.
pub(crate) const SERIES_QUIET_TERMS: usize = 3;
/// Hard cap on series length.
pub(crate) const SERIES_MAX_TERMS: usize = 500;
