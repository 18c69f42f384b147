//! Electron density of a centre-of-mass ground state combined with any
//! relative-motion state.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::cm::cm_length;
use crate::error::{numerical, Result};
use crate::oscillator::OscillatorTrajectory;
use crate::quadrature::GaussLegendre;
use crate::rm::{MoshinskyTrajectory, RMState, CONFINEMENT_THRESHOLD};

/// Source of the relative-motion density |ψ_RM(b, t)|² at one instant.
pub trait RelativeDensity {
    /// |ψ_RM(b)|², normalized as ∫|ψ|²·4πb² db = 1.
    fn density(&self, b: f64) -> Result<f64>;

    /// Radius past which the density is zero for quadrature purposes.
    fn extent(&self) -> f64;
}

/// Grid state interpolated with local cubics in |g|²/b².
#[derive(Debug, Clone)]
pub struct GridDensity {
    spacing: f64,
    /// q_j = |g_j|²/(4π b_j²), j = 1…N
    q: Vec<f64>,
    extent: f64,
}

/// |g|² relative to its peak below which the tail is left out of quadratures.
const NEGLIGIBLE_TAIL: f64 = 1e-32;

impl GridDensity {
    /// Fails unless the state is negligible at the grid edge, since the
    /// density past b_max is taken to be zero.
    pub fn new(state: &RMState) -> Result<Self> {
        let edge = state.boundary_amplitude();
        if edge >= CONFINEMENT_THRESHOLD {
            return Err(numerical(format!(
                "relative state not negligible at b_max (|g| = {edge:e}); cannot truncate the grid"
            )));
        }
        let grid = state.grid();
        let q = grid
            .nodes()
            .iter()
            .zip(state.g())
            .map(|(b, g)| g.norm_sqr() / (4.0 * PI * b * b))
            .collect();
        let peak = state.g().iter().map(|g| g.norm_sqr()).fold(0.0, f64::max);
        let last = state
            .g()
            .iter()
            .rposition(|g| g.norm_sqr() > NEGLIGIBLE_TAIL * peak)
            .unwrap_or(0);
        let n = grid.n_points();
        Ok(Self {
            spacing: grid.spacing(),
            q,
            extent: (last + 4).min(n) as f64 * grid.spacing(),
        })
    }
}

impl RelativeDensity for GridDensity {
    fn density(&self, b: f64) -> Result<f64> {
        let n = self.q.len();
        let h = self.spacing;
        if b < 0.0 {
            return Err(crate::error::argument(format!(
                "separation must be >= 0, got {b}"
            )));
        }
        if b > n as f64 * h {
            return Ok(0.0);
        }
        // Four consecutive nodes j0..j0+3 (1-based) around b.
        let i = (b / h).floor() as usize;
        let j0 = i.saturating_sub(1).clamp(1, n - 3);
        let mut sum = 0.0;
        for a in 0..4 {
            let xa = (j0 + a) as f64 * h;
            let mut w = 1.0;
            for c in 0..4 {
                if c != a {
                    let xc = (j0 + c) as f64 * h;
                    w *= (b - xc) / (xa - xc);
                }
            }
            sum += w * self.q[j0 + a - 1];
        }
        Ok(sum.max(0.0))
    }

    fn extent(&self) -> f64 {
        self.extent
    }
}

/// Closed-form harmonic-interaction relative density at time `t`.
#[derive(Debug, Clone, Copy)]
pub struct AnalyticDensity<'a> {
    pub trajectory: &'a MoshinskyTrajectory,
    pub t: f64,
}

impl RelativeDensity for AnalyticDensity<'_> {
    fn density(&self, b: f64) -> Result<f64> {
        self.trajectory.density(b, self.t)
    }

    fn extent(&self) -> f64 {
        // |ψ|² ∝ exp(−c·b²) is below e^{−100} of its peak here.
        match self.trajectory.mass_phi_dot(self.t) {
            Ok(c) => (100.0 / c).sqrt(),
            Err(_) => 0.0,
        }
    }
}

fn panel_rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(16).expect("16-point rule"))
}

/// Reach of the CM Gaussian kernel in y = b/a beyond its centre 2r/a.
const KERNEL_HALF_WIDTH: f64 = 14.0;

/// n(r, t) = (8/√π)·e^{−r²/a²}·∫₀^∞ y² e^{−y²/4}·|ψ_RM(a·y)|²·sinhc(r·y/a) dy,
/// with a = a_CM(t).
///
/// Composite 16-point Gauss–Legendre on unit panels over
/// [0, min(2r/a + 14, extent/a)]; e^{−r²/a²}·sinh is combined in the
/// exponent so large r/a cannot overflow.
pub fn density_3d(
    r: f64,
    t: f64,
    cm: &OscillatorTrajectory,
    rm: &dyn RelativeDensity,
) -> Result<f64> {
    if !(r >= 0.0 && r.is_finite()) {
        return Err(crate::error::argument(format!(
            "radius must be >= 0, got {r}"
        )));
    }
    let a = cm_length(cm, t)?;
    let u = r / a;
    let y_hi = (2.0 * u + KERNEL_HALF_WIDTH).min(rm.extent() / a);
    if !(y_hi > 0.0) {
        return Ok(0.0);
    }
    let panels = y_hi.ceil() as usize;
    let integral = panel_rule().integrate_composite(0.0, y_hi, panels, |y| {
        Ok(y * y * rm.density(a * y)? * kernel(u, y))
    })?;
    Ok(8.0 / PI.sqrt() * integral)
}

/// e^{−u²}·e^{−y²/4}·sinh(u·y)/(u·y).
fn kernel(u: f64, y: f64) -> f64 {
    let z = u * y;
    if z < 1.0 {
        let sinhc = if z < 1e-4 {
            1.0 + z * z / 6.0
        } else {
            z.sinh() / z
        };
        (-u * u - 0.25 * y * y).exp() * sinhc
    } else {
        let d = u - 0.5 * y;
        (-d * d).exp() * (-(-2.0 * z).exp_m1()) / (2.0 * z)
    }
}

/// ∫ n(r, t)·4πr² dr, the electron count (2 for a normalized state).
pub fn electron_count(t: f64, cm: &OscillatorTrajectory, rm: &dyn RelativeDensity) -> Result<f64> {
    let a = cm_length(cm, t)?;
    let r_max = 0.5 * rm.extent() + 7.0 * a;
    let panel = 0.5 * a;
    let panels = (r_max / panel).ceil() as usize;
    panel_rule().integrate_composite(0.0, r_max, panels, |r| {
        Ok(4.0 * PI * r * r * density_3d(r, t, cm, rm)?)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_branches_agree() {
        for &u in &[0.0f64, 0.3, 1.0, 2.5] {
            for &y in &[0.0f64, 0.2, 1.0, 3.9, 8.0] {
                let z = u * y;
                let direct = if z == 0.0 {
                    (-u * u - 0.25 * y * y).exp()
                } else {
                    (-u * u - 0.25 * y * y).exp() * z.sinh() / z
                };
                assert!((kernel(u, y) - direct).abs() <= 1e-14 * direct.max(1e-300));
            }
        }
        // Far out the direct form overflows but the combined one does not.
        let k = kernel(400.0, 800.0);
        assert!(k.is_finite() && k > 0.0);
    }
}
