//! Time-dependent harmonically confined two-electron model atoms.
//!
//! Two electrons in a trap of frequency ω₀(t) with a repulsion u(|r₁ − r₂|)
//! separate into a centre-of-mass channel (mass 2) and a relative-motion
//! channel (mass 1/2). The centre-of-mass channel and the harmonic-interaction
//! relative channel are solved in closed form from a classical oscillator
//! trajectory; any other interaction is propagated on a radial grid.
//!
//! Module map:
//! - [`oscillator`]: frequency profiles and the classical trajectory X(t)
//! - [`specfun`]: special functions used by the closed forms
//! - [`cm`]: centre-of-mass wavefunctions in 2D and 3D
//! - [`rm`]: interactions, radial Crank–Nicolson propagation, harmonic mapping
//! - [`observables`]: densities and structure factors
//! - [`oracle`]: brute-force cross-checks shared by tests and the CLI

pub mod cm;
pub mod error;
pub mod observables;
pub mod oracle;
pub mod oscillator;
pub mod quadrature;
pub mod registry;
pub mod rm;
pub mod specfun;

pub use error::{Error, Result};
