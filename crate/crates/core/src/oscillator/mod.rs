//! Classical harmonic oscillator driving every closed-form quantum solution.
//!
//! The confined channels evolve exactly through the complex solution X(t) of
//! Ẍ = −ω₀²(t)·X: with X = |X|·e^{iφ}, the phase rate φ̇ sets every Gaussian
//! width and d ln|X|/dt the accompanying chirp.

pub mod profile;
pub mod trajectory;

pub use profile::{
    build_profile, evaluate_omega_sq, profile_registry, Constant, FrequencyProfile, PeriodicDrive,
    Shifted, SuddenQuench, Tabulated,
};
pub use trajectory::{
    solve_trajectory, solve_trajectory_with, step_count, OscillatorTrajectory, PhaseSample,
    TrajectoryOptions, CM_MASS, RM_MASS,
};
