//! Densities and structure factors.
//!
//! The total density and scattering factor of the atom follow from the two
//! channels: n(r, t) integrates the centre-of-mass Gaussian against the
//! relative density, and the structure factor factorizes as
//! f_tot(k) = 2·f_CM(k)·f_RM(k/2).

pub mod density;
pub mod structure;

use std::f64::consts::PI;
use std::sync::Arc;

pub use density::{density_3d, electron_count, AnalyticDensity, GridDensity, RelativeDensity};
pub use structure::{
    gaussian_structure_factor, structure_factor_cm, structure_factor_rm_numeric,
    structure_factor_total, MAX_PLANAR_ORDER,
};

use crate::error::{argument, Result};
use crate::oscillator::{solve_trajectory, FrequencyProfile, OscillatorTrajectory, CM_MASS};
use crate::rm::MoshinskyTrajectory;
use crate::specfun::spherical_j0;

/// n(r, t) on a grid of radii and times; `values[i][j]` is time i, radius j.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DensitySeries {
    pub r_nodes: Vec<f64>,
    pub times: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

/// Structure factors on a grid of wavenumbers and times; rows are times.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StructureFactorSeries {
    pub k_nodes: Vec<f64>,
    pub times: Vec<f64>,
    pub f_cm: Vec<Vec<f64>>,
    /// f_RM evaluated at k/2.
    pub f_rm: Vec<Vec<f64>>,
    pub f_tot: Vec<Vec<f64>>,
}

/// Both channels of the harmonic-interaction atom in closed form.
#[derive(Debug, Clone)]
pub struct MoshinskyAtom {
    cm: Arc<OscillatorTrajectory>,
    rm: MoshinskyTrajectory,
}

impl MoshinskyAtom {
    /// Fails with a domain error when ω₀²(t) − 2K is not positive on [0, t_end].
    pub fn new(k: f64, profile: Arc<dyn FrequencyProfile>, t_end: f64, dt: f64) -> Result<Self> {
        let rm = MoshinskyTrajectory::new(k, profile.clone(), t_end, dt)?;
        let cm = Arc::new(solve_trajectory(profile.as_ref(), t_end, dt, CM_MASS)?);
        Ok(Self { cm, rm })
    }

    pub fn cm(&self) -> &Arc<OscillatorTrajectory> {
        &self.cm
    }

    pub fn rm(&self) -> &MoshinskyTrajectory {
        &self.rm
    }

    /// 2·e^{−k²/(4·M·φ̇)}·e^{−(k/2)²/(4·m̃·φ̃̇)}.
    pub fn structure_factor_total(&self, k: f64, t: f64) -> Result<f64> {
        let f_cm = gaussian_structure_factor(self.cm.sample_at(t)?.mass_phi_dot(), k)?;
        let f_rm = gaussian_structure_factor(self.rm.mass_phi_dot(t)?, 0.5 * k)?;
        Ok(structure_factor_total(f_cm, f_rm))
    }

    pub fn density(&self, r: f64, t: f64) -> Result<f64> {
        density_3d(
            r,
            t,
            &self.cm,
            &AnalyticDensity {
                trajectory: &self.rm,
                t,
            },
        )
    }
}

/// ∫ 4πr²·n(r)·j₀(kr) dr by the trapezoid rule on uniform radii starting at
/// r = 0. The integrand is even in r, so the rule converges spectrally when
/// n has decayed by the last node.
pub fn radial_fourier_transform(r: &[f64], n: &[f64], k: f64) -> Result<f64> {
    if r.len() != n.len() || r.len() < 3 {
        return Err(argument(
            "radial transform needs matching radii and values (at least 3)",
        ));
    }
    let h = r[1] - r[0];
    if r[0].abs() > 1e-12 * h || !(h > 0.0) {
        return Err(argument(
            "radial transform needs a uniform grid starting at r = 0",
        ));
    }
    if r.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h) {
        return Err(argument("radial transform needs uniformly spaced radii"));
    }
    let last = r.len() - 1;
    let s: f64 = r
        .iter()
        .zip(n)
        .enumerate()
        .map(|(i, (&ri, &ni))| {
            let w = if i == last { 0.5 } else { 1.0 };
            w * 4.0 * PI * ri * ri * ni * spherical_j0(k * ri)
        })
        .sum();
    Ok(s * h)
}
