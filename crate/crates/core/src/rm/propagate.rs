//! Crank–Nicolson propagation in real and imaginary time.

use num_complex::Complex64;

use super::grid::{RMState, RadialGrid};
use super::interaction::Interaction;
use super::operator::{Factored, Hamiltonian, Tridiagonal};
use crate::error::{argument, domain, numerical, Result};
use crate::oscillator::FrequencyProfile;

/// |g| at the outermost node above which propagation aborts.
pub const LEAK_THRESHOLD: f64 = 1e-4;
/// |g| at the outermost node tolerated in a relaxed ground state.
pub const CONFINEMENT_THRESHOLD: f64 = 1e-6;

const RELAX_DTAU: f64 = 1e-3;
const RELAX_MAX_STEPS: usize = 100_000;
const RELAX_ENERGY_TOL: f64 = 1e-12;
const POLISH_MAX_ITER: usize = 50;
/// Largest ω_max·h accepted for one Crank–Nicolson step when an output step
/// is subdivided automatically.
const MAX_CN_PHASE: f64 = 2.5e-4;

/// Relaxed ground state and its energy.
#[derive(Debug, Clone)]
pub struct GroundState {
    pub state: RMState,
    pub energy: f64,
    pub relaxation_steps: usize,
    /// ‖(H − E)·g‖ after the final inverse-iteration sweep.
    pub residual: f64,
}

/// l = 0 ground state of the static relative-motion Hamiltonian at
/// frequency squared `omega_sq`.
///
/// Imaginary-time Crank–Nicolson from an oscillator guess (τ-step 10⁻³,
/// halved whenever the energy rises) until the energy changes by less than
/// 10⁻¹² relative, followed by shifted inverse iteration so the result is an
/// eigenvector of the discrete Hamiltonian to round-off.
pub fn relax_ground_state(
    interaction: &dyn Interaction,
    omega_sq: f64,
    grid: &RadialGrid,
) -> Result<GroundState> {
    let effective = omega_sq - interaction.frequency_shift();
    if !(effective > 0.0) {
        return Err(domain(format!(
            "unbound relative-motion channel: omega^2 - shift = {effective}"
        )));
    }
    let ham = Hamiltonian::new(grid, interaction, omega_sq)?;
    let width = 0.5 * crate::oscillator::RM_MASS * effective.sqrt();
    let mut state = RMState::from_fn(*grid, 0.0, |b| {
        Complex64::new(b * (-width * b * b).exp(), 0.0)
    })?;

    let one = Complex64::new(1.0, 0.0);
    let mut dtau = RELAX_DTAU;
    let mut ops = imaginary_step(&ham, dtau)?;
    let mut energy = ham.energy(state.g())?;
    let mut steps = 0;
    loop {
        if steps >= RELAX_MAX_STEPS {
            return Err(numerical(format!(
                "ground-state relaxation did not converge in {RELAX_MAX_STEPS} steps"
            )));
        }
        steps += 1;
        let next = ops.0.solve(&ops.1.apply(state.g()));
        state = RMState::new(*grid, next, 0.0)?.normalized()?;
        let e = ham.energy(state.g())?;
        let change = e - energy;
        energy = e;
        if change.abs() < RELAX_ENERGY_TOL * e.abs().max(1e-300) {
            break;
        }
        if change > 1e2 * f64::EPSILON * e.abs() {
            dtau *= 0.5;
            ops = imaginary_step(&ham, dtau)?;
        }
    }

    // Shifted inverse iteration: (H − σ)·x = g with σ just below E.
    let sigma = energy - 1e-6 * energy.abs().max(1.0);
    let shifted = ham.combination(Complex64::new(-sigma, 0.0), one).factor()?;
    let mass = ham.combination(one, Complex64::new(0.0, 0.0));
    for _ in 0..POLISH_MAX_ITER {
        let next = RMState::new(*grid, shifted.solve(&mass.apply(state.g())), 0.0)?.normalized()?;
        let moved = next.distance(&state)?;
        state = next;
        if moved < 1e-14 {
            break;
        }
    }
    let energy = ham.energy(state.g())?;
    let residual = ham.residual(state.g(), energy)?;

    // Fix the global sign so the state is positive near the origin.
    if state.g()[0].re < 0.0 {
        let g = state.g().iter().map(|z| -z).collect();
        state = RMState::new(*grid, g, 0.0)?;
    }
    if state.boundary_amplitude() > CONFINEMENT_THRESHOLD {
        return Err(numerical(format!(
            "ground state reaches the grid edge (|g| = {:e} at b_max = {}); enlarge b_max",
            state.boundary_amplitude(),
            grid.b_max()
        )));
    }
    Ok(GroundState {
        state,
        energy,
        relaxation_steps: steps,
        residual,
    })
}

fn imaginary_step(ham: &Hamiltonian, dtau: f64) -> Result<(Factored, Tridiagonal)> {
    let one = Complex64::new(1.0, 0.0);
    let half = Complex64::new(0.5 * dtau, 0.0);
    Ok((
        ham.combination(one, half).factor()?,
        ham.combination(one, -half),
    ))
}

/// Running health figures of a propagation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PropagationDiagnostics {
    pub steps: usize,
    /// Largest |‖g‖² − 1| change across a single step.
    pub max_step_norm_drift: f64,
    /// |‖g‖² − ‖g₀‖²| at the end.
    pub norm_drift: f64,
    pub max_boundary_amplitude: f64,
}

#[derive(Debug)]
struct CachedStep {
    omega_sq: f64,
    tau: f64,
    lhs: Factored,
    rhs: Tridiagonal,
}

/// Real-time Crank–Nicolson stepper with the midpoint potential
/// V_eff(t + dt/2). Steps are split at profile breakpoints so no step
/// straddles a discontinuity.
#[derive(Debug)]
pub struct Propagator<'a> {
    state: RMState,
    interaction: &'a dyn Interaction,
    profile: &'a dyn FrequencyProfile,
    dt: f64,
    t0: f64,
    steps: usize,
    initial_norm: f64,
    breakpoints: Vec<f64>,
    cache: Vec<CachedStep>,
    diagnostics: PropagationDiagnostics,
}

impl<'a> Propagator<'a> {
    pub fn new(
        state: RMState,
        interaction: &'a dyn Interaction,
        profile: &'a dyn FrequencyProfile,
        dt: f64,
    ) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(argument(format!("dt must be positive, got {dt}")));
        }
        let initial_norm = state.norm_sqr();
        let mut breakpoints = profile.breakpoints();
        breakpoints.sort_by(f64::total_cmp);
        let diagnostics = PropagationDiagnostics {
            max_boundary_amplitude: state.boundary_amplitude(),
            ..Default::default()
        };
        Ok(Self {
            t0: state.t(),
            state,
            interaction,
            profile,
            dt,
            steps: 0,
            initial_norm,
            breakpoints,
            cache: Vec::new(),
            diagnostics,
        })
    }

    pub fn state(&self) -> &RMState {
        &self.state
    }

    pub fn diagnostics(&self) -> PropagationDiagnostics {
        self.diagnostics
    }

    pub fn step(&mut self) -> Result<()> {
        let ta = self.t0 + self.steps as f64 * self.dt;
        let tb = self.t0 + (self.steps + 1) as f64 * self.dt;
        let eps = 1e-9 * self.dt;
        let cuts: Vec<f64> = self
            .breakpoints
            .iter()
            .copied()
            .filter(|&b| b > ta + eps && b < tb - eps)
            .chain(std::iter::once(tb))
            .collect();
        let before = self.state.norm_sqr();
        let mut g = self.state.g().to_vec();
        let mut a = ta;
        for b in cuts {
            let omega_sq = self.profile.omega_sq(0.5 * (a + b))?;
            let op = self.operator(omega_sq, b - a)?;
            g = op.lhs.solve(&op.rhs.apply(&g));
            a = b;
        }
        self.steps += 1;
        self.state.set(g, tb);

        let after = self.state.norm_sqr();
        let d = &mut self.diagnostics;
        d.steps = self.steps;
        d.max_step_norm_drift = d.max_step_norm_drift.max((after - before).abs());
        d.norm_drift = (after - self.initial_norm).abs();
        let edge = self.state.boundary_amplitude();
        d.max_boundary_amplitude = d.max_boundary_amplitude.max(edge);
        if !after.is_finite() {
            return Err(numerical(format!(
                "propagation produced non-finite values at t = {tb}"
            )));
        }
        if edge > LEAK_THRESHOLD {
            return Err(numerical(format!(
                "wavefunction leaked to the grid edge (|g| = {edge:e} at t = {tb}); grid too small"
            )));
        }
        Ok(())
    }

    fn operator(&mut self, omega_sq: f64, tau: f64) -> Result<&CachedStep> {
        let hit = self
            .cache
            .iter()
            .position(|c| c.omega_sq == omega_sq && c.tau == tau);
        let idx = match hit {
            Some(i) => i,
            None => {
                let ham = Hamiltonian::new(self.state.grid(), self.interaction, omega_sq)?;
                let one = Complex64::new(1.0, 0.0);
                let half = Complex64::new(0.0, 0.5 * tau);
                let step = CachedStep {
                    omega_sq,
                    tau,
                    lhs: ham.combination(one, half).factor()?,
                    rhs: ham.combination(one, -half),
                };
                if self.cache.len() >= 4 {
                    self.cache.remove(0);
                }
                self.cache.push(step);
                self.cache.len() - 1
            }
        };
        Ok(&self.cache[idx])
    }
}

/// Snapshots of a propagation run.
#[derive(Debug, Clone)]
pub struct Propagation {
    /// Initial state followed by every `stride`-th step.
    pub snapshots: Vec<RMState>,
    pub diagnostics: PropagationDiagnostics,
}

/// Advances `state` by `n_steps` steps of size `dt`, keeping every
/// `stride`-th state.
pub fn propagate(
    state: &RMState,
    interaction: &dyn Interaction,
    profile: &dyn FrequencyProfile,
    dt: f64,
    n_steps: usize,
    stride: usize,
) -> Result<Propagation> {
    if stride == 0 {
        return Err(argument("output stride must be at least 1"));
    }
    let mut prop = Propagator::new(state.clone(), interaction, profile, dt)?;
    let mut snapshots = vec![state.clone()];
    for i in 1..=n_steps {
        prop.step()?;
        if i % stride == 0 {
            snapshots.push(prop.state().clone());
        }
    }
    Ok(Propagation {
        snapshots,
        diagnostics: prop.diagnostics(),
    })
}

/// Power-of-two number of Crank–Nicolson steps per output step `dt` keeping
/// ω_max·dt/s ≤ 2.5·10⁻⁴ over [0, t_end].
pub fn cn_substeps(profile: &dyn FrequencyProfile, t_end: f64, dt: f64) -> Result<u32> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(argument(format!("dt must be positive, got {dt}")));
    }
    let (lo, hi) = profile.bounds(0.0, t_end)?;
    let w_max = lo.abs().max(hi.abs()).sqrt();
    let mut s = 1u32;
    while dt / f64::from(s) * w_max > MAX_CN_PHASE && s < 1 << 16 {
        s *= 2;
    }
    Ok(s)
}

/// ⟨H⟩ of `state` under the static Hamiltonian at frequency squared `omega_sq`.
pub fn energy(state: &RMState, interaction: &dyn Interaction, omega_sq: f64) -> Result<f64> {
    Hamiltonian::new(state.grid(), interaction, omega_sq)?.energy(state.g())
}
