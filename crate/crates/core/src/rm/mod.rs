//! Relative-motion channel: interactions, radial grid propagation and the
//! closed-form harmonic case.
//!
//! The l = 0 relative state is stored as the reduced function g(b) = b·ψ(b)
//! (times √(4π)) on a uniform grid with g(0) = 0, and evolved by
//! Crank–Nicolson under V_eff(b, t) = ω₀²(t)·b²/4 + u(b).

pub mod grid;
pub mod interaction;
pub mod moshinsky;
mod operator;
pub mod propagate;

pub use grid::{RMState, RadialGrid};
pub use interaction::{
    build_interaction, check_bound, effective_potential, interaction_registry, Coulomb,
    Interaction, InverseSquare, Moshinsky, NoInteraction,
};
pub use moshinsky::MoshinskyTrajectory;
pub use propagate::{
    cn_substeps, energy, propagate, relax_ground_state, GroundState, Propagation,
    PropagationDiagnostics, Propagator, CONFINEMENT_THRESHOLD, LEAK_THRESHOLD,
};
