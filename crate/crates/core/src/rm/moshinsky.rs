//! Closed-form relative motion for a harmonic interaction.
//!
//! With u(b) = −K·b²/2 the relative Hamiltonian is an oscillator of mass
//! 1/2 in the lowered trap ω̃²(t) = ω₀²(t) − 2K, so its ground state follows
//! the same closed form as the centre of mass on its own trajectory.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use super::grid::{RMState, RadialGrid};
use super::interaction::{check_bound, Moshinsky};
use crate::cm::{CmQuantumNumbers, CmState};
use crate::error::Result;
use crate::oscillator::{
    solve_trajectory, FrequencyProfile, OscillatorTrajectory, Shifted, RM_MASS,
};

/// Relative-motion ground state carried by the shifted trajectory X̃(t).
#[derive(Debug, Clone)]
pub struct MoshinskyTrajectory {
    k: f64,
    state: CmState,
}

impl MoshinskyTrajectory {
    /// Fails with a domain error when ω₀²(t) − 2K is not positive on [0, t_end].
    pub fn new(k: f64, profile: Arc<dyn FrequencyProfile>, t_end: f64, dt: f64) -> Result<Self> {
        let interaction = Moshinsky::new(k)?;
        check_bound(&interaction, profile.as_ref(), t_end)?;
        let shifted = Shifted::new(profile, 2.0 * k);
        let trajectory = Arc::new(solve_trajectory(&shifted, t_end, dt, RM_MASS)?);
        let state = CmState::for_channel(CmQuantumNumbers::spatial(0, 0)?, trajectory)?;
        Ok(Self { k, state })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn trajectory(&self) -> &Arc<OscillatorTrajectory> {
        self.state.trajectory()
    }

    /// Reduced amplitude g(b, t) = b·R(b, t), normalized as ∫|g|² db = 1.
    pub fn amplitude(&self, b: f64, t: f64) -> Result<Complex64> {
        Ok(self.state.chi_3d(b, t)? * b)
    }

    /// |ψ_RM(b, t)|², normalized as ∫|ψ|²·4πb² db = 1.
    pub fn density(&self, b: f64, t: f64) -> Result<f64> {
        Ok(self.state.chi_3d(b, t)?.norm_sqr() / (4.0 * PI))
    }

    /// m̃·φ̃̇(t), the inverse squared width of the relative Gaussian.
    pub fn mass_phi_dot(&self, t: f64) -> Result<f64> {
        Ok(self.trajectory().sample_at(t)?.mass_phi_dot())
    }

    /// The closed form sampled on a grid (not renormalized).
    pub fn state_on(&self, grid: &RadialGrid, t: f64) -> Result<RMState> {
        let g = grid
            .nodes()
            .into_iter()
            .map(|b| self.amplitude(b, t))
            .collect::<Result<Vec<_>>>()?;
        RMState::new(*grid, g, t)
    }
}
