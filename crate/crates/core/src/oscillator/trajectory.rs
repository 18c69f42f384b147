//! Complex classical trajectory Ẍ = −ω₀²(t)·X and its phase quantities.

use num_complex::Complex64;

use super::profile::FrequencyProfile;
use crate::error::{argument, domain, numerical, Result};

/// Effective mass of the centre-of-mass channel.
pub const CM_MASS: f64 = 2.0;
/// Effective mass of the relative-motion channel (and of the mapped
/// harmonic-interaction channel).
pub const RM_MASS: f64 = 0.5;

/// Largest ω·h accepted for a single RK4 substep when the step count is
/// chosen automatically.
const MAX_PHASE_PER_SUBSTEP: f64 = 0.01;

/// Integration controls beyond the uniform output grid.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrajectoryOptions {
    /// RK4 substeps per output step; chosen from the frequency bound when `None`.
    pub substeps: Option<u32>,
    /// Initial (X, Ẋ); defaults to (1, i·ω₀(0)).
    pub initial: Option<(Complex64, Complex64)>,
}

/// Sampled solution on the uniform grid t = 0, dt, …, t_end.
#[derive(Debug, Clone)]
pub struct OscillatorTrajectory {
    dt: f64,
    times: Vec<f64>,
    x: Vec<Complex64>,
    x_dot: Vec<Complex64>,
    phi: Vec<f64>,
    phi_dot: Vec<f64>,
    dln_abs_x_dt: Vec<f64>,
    effective_mass: f64,
    wronskian: f64,
    substeps: u32,
}

/// Phase data of one sample, everything the closed forms need.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSample {
    pub t: f64,
    /// φ(t) − φ(0)
    pub phase: f64,
    pub phi_dot: f64,
    pub dln_abs_x_dt: f64,
    pub effective_mass: f64,
}

impl PhaseSample {
    /// m·φ̇, the inverse squared oscillator length.
    pub fn mass_phi_dot(&self) -> f64 {
        self.effective_mass * self.phi_dot
    }
}

impl OscillatorTrajectory {
    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn t_end(&self) -> f64 {
        *self.times.last().unwrap()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn x(&self) -> &[Complex64] {
        &self.x
    }

    pub fn x_dot(&self) -> &[Complex64] {
        &self.x_dot
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    pub fn phi_dot(&self) -> &[f64] {
        &self.phi_dot
    }

    pub fn dln_abs_x_dt(&self) -> &[f64] {
        &self.dln_abs_x_dt
    }

    pub fn abs_x(&self, i: usize) -> f64 {
        self.x[i].norm()
    }

    pub fn effective_mass(&self) -> f64 {
        self.effective_mass
    }

    /// Conserved Im(X̄·Ẋ) fixed by the initial conditions.
    pub fn wronskian(&self) -> f64 {
        self.wronskian
    }

    pub fn substeps(&self) -> u32 {
        self.substeps
    }

    /// Largest relative deviation of Im(X̄·Ẋ) from its initial value, measured
    /// on the integrated state (not on the Wronskian-derived φ̇).
    pub fn wronskian_drift(&self) -> f64 {
        self.x
            .iter()
            .zip(&self.x_dot)
            .map(|(x, v)| ((x.conj() * v).im / self.wronskian - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Grid index of `t`; times between samples are rejected.
    pub fn index_of(&self, t: f64) -> Result<usize> {
        let raw = t / self.dt;
        let i = raw.round();
        if i < 0.0 || i as usize >= self.len() || (raw - i).abs() > 1e-6 {
            return Err(argument(format!(
                "t = {t} is not on the trajectory grid (dt = {}, t_end = {})",
                self.dt,
                self.t_end()
            )));
        }
        Ok(i as usize)
    }

    pub fn sample(&self, i: usize) -> PhaseSample {
        PhaseSample {
            t: self.times[i],
            phase: self.phi[i] - self.phi[0],
            phi_dot: self.phi_dot[i],
            dln_abs_x_dt: self.dln_abs_x_dt[i],
            effective_mass: self.effective_mass,
        }
    }

    pub fn sample_at(&self, t: f64) -> Result<PhaseSample> {
        Ok(self.sample(self.index_of(t)?))
    }
}

/// Solves the classical oscillator from the ground-state initial conditions
/// X(0) = 1, Ẋ(0) = i·ω₀(0).
pub fn solve_trajectory(
    profile: &dyn FrequencyProfile,
    t_end: f64,
    dt: f64,
    effective_mass: f64,
) -> Result<OscillatorTrajectory> {
    solve_trajectory_with(
        profile,
        t_end,
        dt,
        effective_mass,
        TrajectoryOptions::default(),
    )
}

/// Number of uniform steps covering `[0, t_end]`; `t_end` must be a multiple of `dt`.
pub fn step_count(t_end: f64, dt: f64) -> Result<usize> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(argument(format!("dt must be positive, got {dt}")));
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(argument(format!("t_end must be positive, got {t_end}")));
    }
    let n = (t_end / dt).round();
    if (n * dt - t_end).abs() > 1e-9 * t_end.max(1.0) || n < 1.0 {
        return Err(argument(format!(
            "t_end = {t_end} is not an integer multiple of dt = {dt}"
        )));
    }
    Ok(n as usize)
}

pub fn solve_trajectory_with(
    profile: &dyn FrequencyProfile,
    t_end: f64,
    dt: f64,
    effective_mass: f64,
    options: TrajectoryOptions,
) -> Result<OscillatorTrajectory> {
    let n_steps = step_count(t_end, dt)?;
    if !(effective_mass > 0.0) {
        return Err(argument("effective mass must be positive"));
    }

    let (x0, v0) = match options.initial {
        Some(ic) => ic,
        None => {
            let w2 = profile.initial_omega_sq()?;
            if w2 < 0.0 {
                return Err(domain(format!(
                    "initial trap is inverted (omega^2(0) = {w2}); no ground state to start from"
                )));
            }
            // A free particle has no trap scale; the unit reference keeps φ̇(0) = 1.
            let w0 = if w2 > 0.0 { w2.sqrt() } else { 1.0 };
            (Complex64::new(1.0, 0.0), Complex64::new(0.0, w0))
        }
    };
    let wronskian = (x0.conj() * v0).im;
    if !(wronskian > 0.0) {
        return Err(argument(format!(
            "initial conditions give Im(conj(X)·X') = {wronskian}; phase must advance (φ̇ > 0)"
        )));
    }

    let substeps = match options.substeps {
        Some(0) => return Err(argument("substeps must be at least 1")),
        Some(s) => s,
        None => {
            let (lo, hi) = profile.bounds(0.0, t_end)?;
            let w_max = lo.abs().max(hi.abs()).sqrt();
            let mut s = 1u32;
            while dt / f64::from(s) * w_max > MAX_PHASE_PER_SUBSTEP && s < 1 << 16 {
                s *= 2;
            }
            s
        }
    };

    let breakpoints = profile.breakpoints();
    let mut state = State {
        x: x0,
        v: v0,
        phi: x0.arg(),
    };
    let mut out = Recorder::with_capacity(n_steps + 1, wronskian);
    out.push(0.0, &state)?;
    for i in 0..n_steps {
        let t0 = i as f64 * dt;
        let t1 = (i + 1) as f64 * dt;
        let mut cuts: Vec<f64> = breakpoints
            .iter()
            .copied()
            .filter(|&b| b > t0 && b < t1)
            .collect();
        cuts.sort_by(f64::total_cmp);
        let mut a = t0;
        for b in cuts.into_iter().chain(std::iter::once(t1)) {
            state = integrate_segment(profile, state, a, b, substeps, wronskian)?;
            a = b;
        }
        out.push(t1, &state)?;
    }

    Ok(OscillatorTrajectory {
        dt,
        times: out.times,
        x: out.x,
        x_dot: out.x_dot,
        phi: out.phi,
        phi_dot: out.phi_dot,
        dln_abs_x_dt: out.dln,
        effective_mass,
        wronskian,
        substeps,
    })
}

#[derive(Debug, Clone, Copy)]
struct State {
    x: Complex64,
    v: Complex64,
    phi: f64,
}

impl State {
    fn axpy(&self, h: f64, d: &State) -> State {
        State {
            x: self.x + d.x * h,
            v: self.v + d.v * h,
            phi: self.phi + d.phi * h,
        }
    }
}

fn derivative(s: &State, omega_sq: f64, wronskian: f64) -> State {
    State {
        x: s.v,
        v: -s.x * omega_sq,
        phi: wronskian / s.x.norm_sqr(),
    }
}

/// Classical RK4 over `[a, b]`, a segment on which ω₀² is continuous. The
/// right endpoint is evaluated as a left limit.
fn integrate_segment(
    profile: &dyn FrequencyProfile,
    mut s: State,
    a: f64,
    b: f64,
    substeps: u32,
    wronskian: f64,
) -> Result<State> {
    let h = (b - a) / f64::from(substeps);
    for j in 0..substeps {
        let t = a + f64::from(j) * h;
        let w_start = profile.omega_sq(t)?;
        let w_mid = profile.omega_sq(t + 0.5 * h)?;
        let w_end = if j + 1 == substeps {
            profile.omega_sq_left(b)?
        } else {
            profile.omega_sq_left(t + h)?
        };
        let k1 = derivative(&s, w_start, wronskian);
        let k2 = derivative(&s.axpy(0.5 * h, &k1), w_mid, wronskian);
        let k3 = derivative(&s.axpy(0.5 * h, &k2), w_mid, wronskian);
        let k4 = derivative(&s.axpy(h, &k3), w_end, wronskian);
        s = State {
            x: s.x + (k1.x + k2.x * 2.0 + k3.x * 2.0 + k4.x) * (h / 6.0),
            v: s.v + (k1.v + k2.v * 2.0 + k3.v * 2.0 + k4.v) * (h / 6.0),
            phi: s.phi + (k1.phi + 2.0 * k2.phi + 2.0 * k3.phi + k4.phi) * (h / 6.0),
        };
    }
    Ok(s)
}

struct Recorder {
    wronskian: f64,
    times: Vec<f64>,
    x: Vec<Complex64>,
    x_dot: Vec<Complex64>,
    phi: Vec<f64>,
    phi_dot: Vec<f64>,
    dln: Vec<f64>,
}

impl Recorder {
    fn with_capacity(n: usize, wronskian: f64) -> Self {
        Self {
            wronskian,
            times: Vec::with_capacity(n),
            x: Vec::with_capacity(n),
            x_dot: Vec::with_capacity(n),
            phi: Vec::with_capacity(n),
            phi_dot: Vec::with_capacity(n),
            dln: Vec::with_capacity(n),
        }
    }

    fn push(&mut self, t: f64, s: &State) -> Result<()> {
        let r2 = s.x.norm_sqr();
        if !(r2 > 1e-280) || !r2.is_finite() {
            return Err(numerical(format!("|X|^2 = {r2} at t = {t}")));
        }
        self.times.push(t);
        self.x.push(s.x);
        self.x_dot.push(s.v);
        self.phi.push(s.phi);
        self.phi_dot.push(self.wronskian / r2);
        self.dln.push((s.x.conj() * s.v).re / r2);
        Ok(())
    }
}
