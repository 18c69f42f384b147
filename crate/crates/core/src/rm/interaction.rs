//! Interparticle interactions u(b) and the relative-motion effective potential.

use std::fmt::Debug;
use std::sync::Arc;

use crate::error::{argument, domain, Result};
use crate::oscillator::{FrequencyProfile, RM_MASS};
use crate::registry::{Params, Registry};

/// A central two-body interaction as a function of the separation b.
pub trait Interaction: Debug + Send + Sync {
    fn name(&self) -> &'static str;

    /// u(b), b > 0.
    fn potential(&self, b: f64) -> f64;

    /// Amount a harmonic interaction removes from the relative-motion
    /// frequency squared: ω̃² = ω₀² − shift.
    fn frequency_shift(&self) -> f64 {
        0.0
    }

    /// True when the relative motion stays a pure (shifted) oscillator and
    /// therefore has the closed-form solution.
    fn is_harmonic(&self) -> bool {
        false
    }
}

/// Non-interacting electrons.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoInteraction;

impl Interaction for NoInteraction {
    fn name(&self) -> &'static str {
        "none"
    }

    fn potential(&self, _b: f64) -> f64 {
        0.0
    }

    fn is_harmonic(&self) -> bool {
        true
    }
}

/// Harmonic coupling u(b) = −K·b²/2.
#[derive(Debug, Clone, Copy)]
pub struct Moshinsky {
    k: f64,
}

impl Moshinsky {
    pub fn new(k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(argument("force constant K must be finite"));
        }
        Ok(Self { k })
    }

    pub fn k(&self) -> f64 {
        self.k
    }
}

impl Interaction for Moshinsky {
    fn name(&self) -> &'static str {
        "moshinsky"
    }

    fn potential(&self, b: f64) -> f64 {
        -0.5 * self.k * b * b
    }

    fn frequency_shift(&self) -> f64 {
        self.k / RM_MASS
    }

    fn is_harmonic(&self) -> bool {
        true
    }
}

/// Coulomb repulsion u(b) = λ/b.
#[derive(Debug, Clone, Copy)]
pub struct Coulomb {
    lambda: f64,
}

impl Coulomb {
    pub fn new(lambda: f64) -> Result<Self> {
        Ok(Self {
            lambda: repulsive("coulomb", lambda)?,
        })
    }
}

impl Interaction for Coulomb {
    fn name(&self) -> &'static str {
        "coulomb"
    }

    fn potential(&self, b: f64) -> f64 {
        self.lambda / b
    }
}

/// Inverse-square repulsion u(b) = λ/b².
#[derive(Debug, Clone, Copy)]
pub struct InverseSquare {
    lambda: f64,
}

impl InverseSquare {
    pub fn new(lambda: f64) -> Result<Self> {
        Ok(Self {
            lambda: repulsive("inverse_square", lambda)?,
        })
    }
}

impl Interaction for InverseSquare {
    fn name(&self) -> &'static str {
        "inverse_square"
    }

    fn potential(&self, b: f64) -> f64 {
        self.lambda / (b * b)
    }
}

fn repulsive(what: &str, lambda: f64) -> Result<f64> {
    if lambda >= 0.0 && lambda.is_finite() {
        Ok(lambda)
    } else {
        Err(argument(format!(
            "{what} coupling must be >= 0, got {lambda}"
        )))
    }
}

/// V_eff(b) = (m_rm/2)·ω₀²·b² + u(b).
pub fn effective_potential(interaction: &dyn Interaction, omega_sq: f64, b: f64) -> Result<f64> {
    if !(b > 0.0) {
        return Err(argument(format!("separation must be > 0, got {b}")));
    }
    Ok(0.5 * RM_MASS * omega_sq * b * b + interaction.potential(b))
}

/// Fails unless ω₀²(t) − shift stays positive on `[0, t_end]` for a
/// frequency-lowering harmonic interaction.
pub fn check_bound(
    interaction: &dyn Interaction,
    profile: &dyn FrequencyProfile,
    t_end: f64,
) -> Result<()> {
    let shift = interaction.frequency_shift();
    if shift <= 0.0 {
        return Ok(());
    }
    let (lo, _) = profile.bounds(0.0, t_end)?;
    if lo - shift > 0.0 {
        Ok(())
    } else {
        Err(domain(format!(
            "unbound relative-motion channel: min omega^2 = {lo} <= {shift}"
        )))
    }
}

/// Registry preloaded with the built-in interactions:
///
/// | name             | keys     |
/// |------------------|----------|
/// | `none`           |          |
/// | `moshinsky`      | `k`      |
/// | `coulomb`        | `lambda` |
/// | `inverse_square` | `lambda` |
pub fn interaction_registry() -> Registry<dyn Interaction> {
    let mut reg: Registry<dyn Interaction> = Registry::empty("interaction");
    reg.register("none", |_| Ok(Arc::new(NoInteraction)))
        .register("moshinsky", |p| Ok(Arc::new(Moshinsky::new(p.f64("k")?)?)))
        .register("coulomb", |p| Ok(Arc::new(Coulomb::new(p.f64("lambda")?)?)))
        .register("inverse_square", |p| {
            Ok(Arc::new(InverseSquare::new(p.f64("lambda")?)?))
        });
    reg
}

pub fn build_interaction(kind: &str, params: &Params) -> Result<Arc<dyn Interaction>> {
    interaction_registry().build(kind, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::{Constant, SuddenQuench};
    use crate::Error;

    #[test]
    fn effective_potential_values() {
        let v = |i: &dyn Interaction, w2, b| effective_potential(i, w2, b).unwrap();
        assert_eq!(v(&NoInteraction, 1.0, 2.0), 1.0);
        assert_eq!(v(&Coulomb::new(1.0).unwrap(), 1.0, 1.0), 1.25);
        assert_eq!(v(&Moshinsky::new(0.25).unwrap(), 1.0, 2.0), 0.5);
        assert_eq!(v(&InverseSquare::new(2.0).unwrap(), 0.0, 2.0), 0.5);
        assert!(effective_potential(&NoInteraction, 1.0, 0.0).is_err());
        assert!(effective_potential(&NoInteraction, 1.0, -1.0).is_err());
    }

    #[test]
    fn harmonic_shift_matches_potential() {
        let m = Moshinsky::new(0.25).unwrap();
        assert_eq!(m.frequency_shift(), 0.5);
        for &b in &[0.3, 1.0, 4.0] {
            let direct = effective_potential(&m, 1.0, b).unwrap();
            let shifted =
                effective_potential(&NoInteraction, 1.0 - m.frequency_shift(), b).unwrap();
            assert!((direct - shifted).abs() < 1e-15);
        }
    }

    #[test]
    fn attractive_couplings_rejected() {
        assert!(Coulomb::new(-1.0).is_err());
        assert!(InverseSquare::new(-0.1).is_err());
        assert!(Moshinsky::new(f64::NAN).is_err());
    }

    #[test]
    fn boundedness() {
        let m = Moshinsky::new(0.6).unwrap();
        let err = check_bound(&m, &Constant::new(1.0).unwrap(), 1.0).unwrap_err();
        assert!(matches!(err, Error::Domain(_)));
        let q = SuddenQuench::new(1.0, 2.0, 0.0).unwrap();
        check_bound(&Moshinsky::new(0.25).unwrap(), &q, 5.0).unwrap();
        let down = SuddenQuench::new(2.0, 0.5, 0.0).unwrap();
        assert!(check_bound(&Moshinsky::new(0.25).unwrap(), &down, 5.0).is_err());
        check_bound(&Coulomb::new(1.0).unwrap(), &down, 5.0).unwrap();
    }

    #[test]
    fn registry_builds_every_builtin() {
        let reg = interaction_registry();
        let mut p = Params::new();
        p.insert("k", "0.25").insert("lambda", "1");
        for name in reg.names() {
            let i = reg.build(name, &p).unwrap();
            assert_eq!(i.name(), name);
        }
        assert!(build_interaction("yukawa", &p).is_err());
        assert!(build_interaction("coulomb", &Params::new()).is_err());
    }
}
