//! Closed-form centre-of-mass wavefunctions.
//!
//! The 2D radial eigenstate solution
//!
//! ```text
//! χ_nm(c,t) = A(t)·c^m·e^{B(t)c²}·L_n^m[C(t)c²]
//! A = √(2·n!/(n+m)!)·(Mφ̇)^{(m+1)/2}·e^{−i(2n+m+1)(φ−φ₀)}
//! B = −(M/2)·(φ̇ − i·d ln|X|/dt),   C = M·φ̇
//! ```
//!
//! is normalized with weight c·dc (the angular factor e^{−imθ}/√(2π) carries
//! the rest). The 3D radial solution
//!
//! ```text
//! χ̃_nl(c,t) = N_nl·φ̇^{(2l+3)/4}·e^{B(t)c²}·e^{−i(n+3/2)(φ−φ₀)}·c^l·L_{(n−l)/2}^{l+1/2}[Mφ̇c²]
//! N_nl² = 2^{n+l+2}·M^{l+3/2}·((n−l)/2)!·((n+l)/2)! / (√π·(n+l+1)!)
//! ```
//!
//! is normalized with weight c²·dc. Both are evaluated only at samples of the
//! driving trajectory.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{argument, Result};
use crate::oscillator::{OscillatorTrajectory, PhaseSample, CM_MASS};
use crate::specfun::{laguerre, ln_factorial, LaguerreSpec};

/// Quantum numbers of a centre-of-mass eigenstate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmQuantumNumbers {
    /// 2D radial state (n, m), m ≥ 0.
    Planar { n: u32, m: u32 },
    /// 3D radial state (n, l), n ≥ l, n − l even.
    Spatial { n: u32, l: u32 },
}

impl CmQuantumNumbers {
    pub fn planar(n: u32, m: u32) -> Self {
        Self::Planar { n, m }
    }

    pub fn spatial(n: u32, l: u32) -> Result<Self> {
        if l > n || (n - l) % 2 != 0 {
            return Err(argument(format!(
                "3D state needs n >= l and n - l even, got (n, l) = ({n}, {l})"
            )));
        }
        Ok(Self::Spatial { n, l })
    }

    pub fn dimension(&self) -> u32 {
        match self {
            Self::Planar { .. } => 2,
            Self::Spatial { .. } => 3,
        }
    }
}

/// The purely time-dependent factors of the radial solution at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeDependentCoefficients {
    pub a: Complex64,
    pub b: Complex64,
    pub c: f64,
}

/// An eigenstate propagated along a classical trajectory.
#[derive(Debug, Clone)]
pub struct CmState {
    numbers: CmQuantumNumbers,
    trajectory: Arc<OscillatorTrajectory>,
}

impl CmState {
    /// Centre-of-mass state; the trajectory must carry the mass 2.
    pub fn new(numbers: CmQuantumNumbers, trajectory: Arc<OscillatorTrajectory>) -> Result<Self> {
        if trajectory.effective_mass() != CM_MASS {
            return Err(argument(format!(
                "centre-of-mass trajectory must have effective mass {CM_MASS}, got {}",
                trajectory.effective_mass()
            )));
        }
        Self::for_channel(numbers, trajectory)
    }

    /// Same closed form for any harmonic channel; the trajectory's effective
    /// mass is used throughout.
    pub fn for_channel(
        numbers: CmQuantumNumbers,
        trajectory: Arc<OscillatorTrajectory>,
    ) -> Result<Self> {
        if let CmQuantumNumbers::Spatial { n, l } = numbers {
            CmQuantumNumbers::spatial(n, l)?;
        }
        Ok(Self {
            numbers,
            trajectory,
        })
    }

    pub fn numbers(&self) -> CmQuantumNumbers {
        self.numbers
    }

    pub fn trajectory(&self) -> &Arc<OscillatorTrajectory> {
        &self.trajectory
    }

    pub fn coefficients_2d(&self, t: f64) -> Result<TimeDependentCoefficients> {
        let CmQuantumNumbers::Planar { n, m } = self.numbers else {
            return Err(argument("coefficients_2d needs planar quantum numbers"));
        };
        let s = self.trajectory.sample_at(t)?;
        let mass_rate = s.mass_phi_dot();
        let ln_mag = 0.5 * (2f64.ln() + ln_factorial(n) - ln_factorial(n + m))
            + 0.5 * f64::from(m + 1) * mass_rate.ln();
        let phase = -f64::from(2 * n + m + 1) * s.phase;
        Ok(TimeDependentCoefficients {
            a: Complex64::from_polar(ln_mag.exp(), phase),
            b: gaussian_exponent(&s),
            c: mass_rate,
        })
    }

    pub fn coefficients_3d(&self, t: f64) -> Result<TimeDependentCoefficients> {
        let CmQuantumNumbers::Spatial { n, l } = self.numbers else {
            return Err(argument("coefficients_3d needs spatial quantum numbers"));
        };
        let s = self.trajectory.sample_at(t)?;
        let (nf, lf) = (f64::from(n), f64::from(l));
        let ln_norm_sq = (nf + lf + 2.0) * 2f64.ln()
            + (lf + 1.5) * s.effective_mass.ln()
            + ln_factorial((n - l) / 2)
            + ln_factorial((n + l) / 2)
            - 0.5 * PI.ln()
            - ln_factorial(n + l + 1);
        let ln_mag = 0.5 * ln_norm_sq + 0.25 * (2.0 * lf + 3.0) * s.phi_dot.ln();
        let phase = -(nf + 1.5) * s.phase;
        Ok(TimeDependentCoefficients {
            a: Complex64::from_polar(ln_mag.exp(), phase),
            b: gaussian_exponent(&s),
            c: s.mass_phi_dot(),
        })
    }

    /// Radial amplitude χ_nm(c, t) of a planar state.
    pub fn chi_2d(&self, c: f64, t: f64) -> Result<Complex64> {
        check_radius(c)?;
        let k = self.coefficients_2d(t)?;
        let CmQuantumNumbers::Planar { n, m } = self.numbers else {
            unreachable!()
        };
        let poly = laguerre(LaguerreSpec::new(n, f64::from(m))?, k.c * c * c)?;
        Ok(k.a * (k.b * c * c).exp() * (c.powi(m as i32) * poly))
    }

    /// Radial amplitude χ̃_nl(c, t) of a spatial state.
    pub fn chi_3d(&self, c: f64, t: f64) -> Result<Complex64> {
        check_radius(c)?;
        let k = self.coefficients_3d(t)?;
        let CmQuantumNumbers::Spatial { n, l } = self.numbers else {
            unreachable!()
        };
        let spec = LaguerreSpec::new((n - l) / 2, f64::from(l) + 0.5)?;
        let poly = laguerre(spec, k.c * c * c)?;
        Ok(k.a * (k.b * c * c).exp() * (c.powi(l as i32) * poly))
    }
}

fn gaussian_exponent(s: &PhaseSample) -> Complex64 {
    Complex64::new(
        -0.5 * s.effective_mass * s.phi_dot,
        0.5 * s.effective_mass * s.dln_abs_x_dt,
    )
}

fn check_radius(c: f64) -> Result<()> {
    if c >= 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(argument(format!("radius must be >= 0, got {c}")))
    }
}

/// Characteristic length a(t) = (M·φ̇)^{−1/2} of the Gaussian ground state.
pub fn cm_length(trajectory: &OscillatorTrajectory, t: f64) -> Result<f64> {
    Ok(trajectory.sample_at(t)?.mass_phi_dot().powf(-0.5))
}

/// Ground-state density |ψ₀₀₀(c, t)|² = exp(−c²/a²)/(a³·π^{3/2}).
pub fn cm_ground_density(trajectory: &OscillatorTrajectory, c: f64, t: f64) -> Result<f64> {
    let a = cm_length(trajectory, t)?;
    Ok(gaussian_density(a, c))
}

pub(crate) fn gaussian_density(a: f64, c: f64) -> f64 {
    (-(c * c) / (a * a)).exp() / (a * a * a * PI.powf(1.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::{solve_trajectory, Constant, SuddenQuench, Tabulated};
    use crate::quadrature::GaussLegendre;
    use std::f64::consts::FRAC_PI_4;

    fn traj(
        p: &dyn crate::oscillator::FrequencyProfile,
        t_end: f64,
        dt: f64,
    ) -> Arc<OscillatorTrajectory> {
        Arc::new(solve_trajectory(p, t_end, dt, CM_MASS).unwrap())
    }

    fn quench() -> Arc<OscillatorTrajectory> {
        let p = SuddenQuench::new(1.0, 2.0, 0.0).unwrap();
        traj(&p, 2.0 * FRAC_PI_4, FRAC_PI_4 / 1000.0)
    }

    #[test]
    fn static_ground_state_coefficients() {
        let tr = traj(&Constant::new(1.0).unwrap(), 2.0, 0.5);
        let st = CmState::new(CmQuantumNumbers::planar(0, 0), tr).unwrap();
        for &t in &[0.0, 0.5, 2.0] {
            let k = st.coefficients_2d(t).unwrap();
            assert!((k.a.norm() - 2.0).abs() < 1e-10);
            assert!((k.b - Complex64::new(-1.0, 0.0)).norm() < 1e-10);
            assert!((k.c - 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn free_and_quench_rates() {
        let free = Tabulated::new(vec![0.0, 2.0], vec![0.0, 0.0]).unwrap();
        let st = CmState::new(CmQuantumNumbers::planar(0, 0), traj(&free, 1.0, 0.01)).unwrap();
        assert!((st.coefficients_2d(1.0).unwrap().c - 1.0).abs() < 1e-12);

        let st = CmState::new(CmQuantumNumbers::planar(0, 0), quench()).unwrap();
        assert!((st.coefficients_2d(FRAC_PI_4).unwrap().c - 8.0).abs() < 1e-9);
    }

    #[test]
    fn laguerre_node_of_first_excited_state() {
        let tr = traj(&Constant::new(1.3).unwrap(), 1.0, 0.5);
        let st = CmState::new(CmQuantumNumbers::planar(1, 0), tr).unwrap();
        let c_node = st.coefficients_2d(0.5).unwrap().c.powf(-0.5);
        assert!(st.chi_2d(c_node, 0.5).unwrap().norm() < 1e-15);
        assert!(st.chi_2d(0.5 * c_node, 0.5).unwrap().norm() > 0.1);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(CmQuantumNumbers::spatial(1, 0).is_err());
        assert!(CmQuantumNumbers::spatial(1, 2).is_err());
        let tr = quench();
        let st = CmState::new(CmQuantumNumbers::spatial(2, 0).unwrap(), tr.clone()).unwrap();
        assert!(st.chi_3d(-0.1, 0.0).is_err());
        assert!(st.chi_3d(0.1, 1e-5).is_err());
        assert!(st.chi_2d(0.1, 0.0).is_err());
        let light =
            Arc::new(solve_trajectory(&Constant::new(1.0).unwrap(), 1.0, 0.1, 0.5).unwrap());
        assert!(CmState::new(CmQuantumNumbers::planar(0, 0), light.clone()).is_err());
        assert!(CmState::for_channel(CmQuantumNumbers::planar(0, 0), light).is_ok());
    }

    fn radial_norm(st: &CmState, t: f64) -> f64 {
        let rule = GaussLegendre::new(20).unwrap();
        let dim = st.numbers().dimension() as i32;
        let c_max = 12.0 / st.trajectory().sample_at(t).unwrap().mass_phi_dot().sqrt();
        rule.integrate_composite(0.0, c_max, 40, |c| {
            let v = if dim == 2 {
                st.chi_2d(c, t)?
            } else {
                st.chi_3d(c, t)?
            };
            Ok(v.norm_sqr() * c.powi(dim - 1))
        })
        .unwrap()
    }

    #[test]
    fn norm_is_conserved() {
        let tr = quench();
        for &t in &[0.0, 0.25 * FRAC_PI_4, FRAC_PI_4, 1.7 * FRAC_PI_4] {
            for &(n, l) in &[(0, 0), (1, 1), (2, 0), (2, 2), (5, 3)] {
                let st =
                    CmState::new(CmQuantumNumbers::spatial(n, l).unwrap(), tr.clone()).unwrap();
                assert!(
                    (radial_norm(&st, t) - 1.0).abs() < 1e-10,
                    "3D ({n},{l}) t={t}"
                );
            }
            for n in 0..=3 {
                for m in 0..=3 {
                    let st = CmState::new(CmQuantumNumbers::planar(n, m), tr.clone()).unwrap();
                    assert!(
                        (radial_norm(&st, t) - 1.0).abs() < 1e-10,
                        "2D ({n},{m}) t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn static_limit_density_is_stationary_and_textbook() {
        let w = 0.8;
        let tr = traj(&Constant::new(w).unwrap(), 5.0, 0.01);
        let st = CmState::new(CmQuantumNumbers::spatial(2, 0).unwrap(), tr.clone()).unwrap();
        let g = CmState::new(CmQuantumNumbers::spatial(0, 0).unwrap(), tr.clone()).unwrap();
        for &c in &[0.0, 0.3, 1.1, 2.5] {
            let d0 = st.chi_3d(c, 0.0).unwrap().norm_sqr();
            for &t in &[1.0, 2.37, 5.0] {
                let d = st.chi_3d(c, t).unwrap().norm_sqr();
                assert!((d - d0).abs() <= 1e-10 * d0.max(1e-300));
            }
            // |χ̃₀₀|² / 4π is the ground density with a = (Mω)^{−1/2}
            let rho = g.chi_3d(c, 2.0).unwrap().norm_sqr() / (4.0 * PI);
            let expect = (CM_MASS * w / PI).powf(1.5) * (-CM_MASS * w * c * c).exp();
            assert!((rho - expect).abs() < 1e-10 * expect);
            assert!((cm_ground_density(&tr, c, 2.0).unwrap() - expect).abs() < 1e-10 * expect);
        }
    }

    #[test]
    fn ground_density_values() {
        let tr = traj(&Constant::new(1.0).unwrap(), 1.0, 0.5);
        assert!((cm_ground_density(&tr, 0.0, 0.5).unwrap() - (2.0 / PI).powf(1.5)).abs() < 1e-10);
        assert!((cm_ground_density(&tr, 0.0, 0.5).unwrap() - 0.507_949).abs() < 1e-5);
        assert!((cm_length(&tr, 1.0).unwrap() - 0.5f64.sqrt()).abs() < 1e-10);

        let free = Tabulated::new(vec![0.0, 2.0], vec![0.0, 0.0]).unwrap();
        let tr = traj(&free, 1.0, 0.01);
        assert!((cm_length(&tr, 1.0).unwrap() - 1.0).abs() < 1e-12);

        let tr = quench();
        let a = cm_length(&tr, FRAC_PI_4).unwrap();
        assert!((a - 1.0 / (2.0 * 2f64.sqrt())).abs() < 1e-10);
        let rho0 = cm_ground_density(&tr, 0.0, FRAC_PI_4).unwrap();
        assert!((rho0 - (8.0 / PI).powf(1.5)).abs() < 1e-8);

        // ∫ ρ 4πc² dc = 1
        let rule = GaussLegendre::new(40).unwrap();
        for &t in &[0.0, 0.3 * FRAC_PI_4, FRAC_PI_4] {
            let total = rule
                .integrate_composite(0.0, 10.0 * cm_length(&tr, t).unwrap(), 8, |c| {
                    Ok(cm_ground_density(&tr, c, t)? * 4.0 * PI * c * c)
                })
                .unwrap();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }
}
