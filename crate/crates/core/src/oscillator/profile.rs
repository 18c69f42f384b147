//! Time dependence of the confining frequency, ω₀²(t).

use std::fmt::Debug;
use std::sync::Arc;

use crate::error::{argument, Error, Result};
use crate::registry::{Params, Registry};

/// A prescription for the squared confinement frequency.
///
/// Profiles may be discontinuous at a finite set of [`breakpoints`]. At such
/// a point `omega_sq` returns the right limit and `omega_sq_left` the left
/// limit, which lets integrators treat each smooth segment separately.
///
/// [`breakpoints`]: FrequencyProfile::breakpoints
pub trait FrequencyProfile: Debug + Send + Sync {
    /// Registry name of the variant.
    fn name(&self) -> &'static str;

    fn omega_sq(&self, t: f64) -> Result<f64>;

    fn omega_sq_left(&self, t: f64) -> Result<f64> {
        self.omega_sq(t)
    }

    /// Frequency squared of the static trap the system is prepared in
    /// (left limit at t = 0).
    fn initial_omega_sq(&self) -> Result<f64> {
        self.omega_sq_left(0.0)
    }

    /// Points where ω₀²(t) jumps or has a kink.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }

    /// Lower and upper bound of ω₀²(t) over `[t0, t1]`.
    fn bounds(&self, t0: f64, t1: f64) -> Result<(f64, f64)>;
}

/// Free-function form of [`FrequencyProfile::omega_sq`].
pub fn evaluate_omega_sq(profile: &dyn FrequencyProfile, t: f64) -> Result<f64> {
    profile.omega_sq(t)
}

fn positive(what: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(argument(format!("{what} must be positive, got {v}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constant {
    omega: f64,
}

impl Constant {
    pub fn new(omega: f64) -> Result<Self> {
        Ok(Self {
            omega: positive("omega", omega)?,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
}

impl FrequencyProfile for Constant {
    fn name(&self) -> &'static str {
        "constant"
    }

    fn omega_sq(&self, _t: f64) -> Result<f64> {
        Ok(self.omega * self.omega)
    }

    fn bounds(&self, _t0: f64, _t1: f64) -> Result<(f64, f64)> {
        let w2 = self.omega * self.omega;
        Ok((w2, w2))
    }
}

/// ω_i before `t_switch`, ω_f from `t_switch` on.
#[derive(Debug, Clone, PartialEq)]
pub struct SuddenQuench {
    omega_initial: f64,
    omega_final: f64,
    t_switch: f64,
}

impl SuddenQuench {
    pub fn new(omega_initial: f64, omega_final: f64, t_switch: f64) -> Result<Self> {
        if !t_switch.is_finite() || t_switch < 0.0 {
            return Err(argument(format!("t_switch must be >= 0, got {t_switch}")));
        }
        Ok(Self {
            omega_initial: positive("omega_initial", omega_initial)?,
            omega_final: positive("omega_final", omega_final)?,
            t_switch,
        })
    }

    pub fn omega_initial(&self) -> f64 {
        self.omega_initial
    }

    pub fn omega_final(&self) -> f64 {
        self.omega_final
    }

    pub fn t_switch(&self) -> f64 {
        self.t_switch
    }
}

impl FrequencyProfile for SuddenQuench {
    fn name(&self) -> &'static str {
        "sudden_quench"
    }

    fn omega_sq(&self, t: f64) -> Result<f64> {
        let w = if t < self.t_switch {
            self.omega_initial
        } else {
            self.omega_final
        };
        Ok(w * w)
    }

    fn omega_sq_left(&self, t: f64) -> Result<f64> {
        let w = if t <= self.t_switch {
            self.omega_initial
        } else {
            self.omega_final
        };
        Ok(w * w)
    }

    fn breakpoints(&self) -> Vec<f64> {
        vec![self.t_switch]
    }

    fn bounds(&self, t0: f64, t1: f64) -> Result<(f64, f64)> {
        let wi = self.omega_initial * self.omega_initial;
        let wf = self.omega_final * self.omega_final;
        // The prepared state counts as part of the run.
        let values: Vec<f64> = if t1 < self.t_switch {
            vec![wi]
        } else if t0 > self.t_switch {
            vec![wf]
        } else {
            vec![wi, wf]
        };
        Ok(min_max(&values))
    }
}

/// ω₀²(t) = ω_base²·(1 + amplitude·cos(ω_drive·t)).
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicDrive {
    omega_base: f64,
    amplitude: f64,
    omega_drive: f64,
}

impl PeriodicDrive {
    pub fn new(omega_base: f64, amplitude: f64, omega_drive: f64) -> Result<Self> {
        if !amplitude.is_finite() || !omega_drive.is_finite() {
            return Err(argument("drive parameters must be finite"));
        }
        Ok(Self {
            omega_base: positive("omega_base", omega_base)?,
            amplitude,
            omega_drive,
        })
    }
}

impl FrequencyProfile for PeriodicDrive {
    fn name(&self) -> &'static str {
        "periodic_drive"
    }

    fn omega_sq(&self, t: f64) -> Result<f64> {
        let w2 = self.omega_base * self.omega_base;
        Ok(w2 * (1.0 + self.amplitude * (self.omega_drive * t).cos()))
    }

    fn bounds(&self, _t0: f64, _t1: f64) -> Result<(f64, f64)> {
        let w2 = self.omega_base * self.omega_base;
        let a = self.amplitude.abs();
        Ok((w2 * (1.0 - a), w2 * (1.0 + a)))
    }
}

/// Piecewise-linear interpolation of tabulated ω₀² values.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    times: Vec<f64>,
    omega_sq: Vec<f64>,
}

impl Tabulated {
    pub fn new(times: Vec<f64>, omega_sq: Vec<f64>) -> Result<Self> {
        if times.len() < 2 || times.len() != omega_sq.len() {
            return Err(argument(
                "tabulated profile needs at least two (time, omega_sq) pairs of equal length",
            ));
        }
        if times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(argument("tabulated times must be strictly ascending"));
        }
        if times.iter().chain(&omega_sq).any(|v| !v.is_finite()) {
            return Err(argument("tabulated values must be finite"));
        }
        Ok(Self { times, omega_sq })
    }

    fn range_error(&self, t: f64) -> Error {
        Error::OutOfRange {
            what: "t",
            value: t,
            lo: self.times[0],
            hi: *self.times.last().unwrap(),
        }
    }
}

impl FrequencyProfile for Tabulated {
    fn name(&self) -> &'static str {
        "tabulated"
    }

    fn omega_sq(&self, t: f64) -> Result<f64> {
        let (lo, hi) = (self.times[0], *self.times.last().unwrap());
        if !(t >= lo && t <= hi) {
            return Err(self.range_error(t));
        }
        // index of the first node strictly greater than t, clamped to the last interval
        let j = self
            .times
            .partition_point(|&x| x <= t)
            .clamp(1, self.times.len() - 1);
        let (t0, t1) = (self.times[j - 1], self.times[j]);
        let (v0, v1) = (self.omega_sq[j - 1], self.omega_sq[j]);
        Ok(v0 + (v1 - v0) * (t - t0) / (t1 - t0))
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.times.clone()
    }

    fn bounds(&self, t0: f64, t1: f64) -> Result<(f64, f64)> {
        let mut values = vec![self.omega_sq(t0)?, self.omega_sq(t1)?];
        values.extend(
            self.times
                .iter()
                .zip(&self.omega_sq)
                .filter(|(t, _)| **t > t0 && **t < t1)
                .map(|(_, v)| *v),
        );
        Ok(min_max(&values))
    }
}

/// ω₀²(t) − shift, the relative-motion frequency of the harmonic-interaction model.
#[derive(Debug, Clone)]
pub struct Shifted {
    inner: Arc<dyn FrequencyProfile>,
    shift: f64,
}

impl Shifted {
    pub fn new(inner: Arc<dyn FrequencyProfile>, shift: f64) -> Self {
        Self { inner, shift }
    }
}

impl FrequencyProfile for Shifted {
    fn name(&self) -> &'static str {
        "shifted"
    }

    fn omega_sq(&self, t: f64) -> Result<f64> {
        Ok(self.inner.omega_sq(t)? - self.shift)
    }

    fn omega_sq_left(&self, t: f64) -> Result<f64> {
        Ok(self.inner.omega_sq_left(t)? - self.shift)
    }

    fn initial_omega_sq(&self) -> Result<f64> {
        Ok(self.inner.initial_omega_sq()? - self.shift)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.inner.breakpoints()
    }

    fn bounds(&self, t0: f64, t1: f64) -> Result<(f64, f64)> {
        let (lo, hi) = self.inner.bounds(t0, t1)?;
        Ok((lo - self.shift, hi - self.shift))
    }
}

fn min_max(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
}

/// Registry preloaded with the built-in profiles:
///
/// | name             | keys                                     |
/// |------------------|------------------------------------------|
/// | `constant`       | `omega`                                  |
/// | `sudden_quench`  | `omega_initial`, `omega_final`, `t_switch` (default 0) |
/// | `periodic_drive` | `omega_base`, `amplitude`, `omega_drive` |
/// | `tabulated`      | `times`, `omega_sq` (comma separated)    |
pub fn profile_registry() -> Registry<dyn FrequencyProfile> {
    let mut reg: Registry<dyn FrequencyProfile> = Registry::empty("frequency profile");
    reg.register("constant", |p| {
        Ok(Arc::new(Constant::new(p.f64("omega")?)?))
    })
    .register("sudden_quench", |p| {
        Ok(Arc::new(SuddenQuench::new(
            p.f64("omega_initial")?,
            p.f64("omega_final")?,
            p.f64_or("t_switch", 0.0)?,
        )?))
    })
    .register("periodic_drive", |p| {
        Ok(Arc::new(PeriodicDrive::new(
            p.f64("omega_base")?,
            p.f64("amplitude")?,
            p.f64("omega_drive")?,
        )?))
    })
    .register("tabulated", |p| {
        Ok(Arc::new(Tabulated::new(
            p.f64_list("times")?,
            p.f64_list("omega_sq")?,
        )?))
    });
    reg
}

/// Builds a profile from its registry name and parameters.
pub fn build_profile(kind: &str, params: &Params) -> Result<Arc<dyn FrequencyProfile>> {
    profile_registry().build(kind, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_profile_is_flat() {
        let p = Constant::new(1.0).unwrap();
        assert_eq!(evaluate_omega_sq(&p, 5.0).unwrap(), 1.0);
        assert!(Constant::new(0.0).is_err());
        assert!(Constant::new(-1.0).is_err());
    }

    #[test]
    fn quench_switches_at_t_switch() {
        let p = SuddenQuench::new(1.0, 2.0, 0.0).unwrap();
        assert_eq!(p.omega_sq(0.1).unwrap(), 4.0);
        assert_eq!(p.omega_sq(0.0).unwrap(), 4.0);
        assert_eq!(p.omega_sq_left(0.0).unwrap(), 1.0);
        assert_eq!(p.initial_omega_sq().unwrap(), 1.0);
        assert_eq!(p.bounds(0.0, 3.0).unwrap(), (1.0, 4.0));

        let late = SuddenQuench::new(1.0, 3.0, 2.0).unwrap();
        assert_eq!(late.omega_sq(1.999).unwrap(), 1.0);
        assert_eq!(late.omega_sq(2.0).unwrap(), 9.0);
        assert!(SuddenQuench::new(1.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn periodic_drive_at_origin() {
        let p = PeriodicDrive::new(1.0, 0.5, 2.0).unwrap();
        assert_eq!(p.omega_sq(0.0).unwrap(), 1.5);
        let half_period = std::f64::consts::PI / 2.0;
        assert!((p.omega_sq(half_period).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn tabulated_interpolates_and_rejects_outside() {
        let p = Tabulated::new(vec![0.0, 1.0, 3.0], vec![1.0, 3.0, 1.0]).unwrap();
        assert_eq!(p.omega_sq(0.5).unwrap(), 2.0);
        assert_eq!(p.omega_sq(1.0).unwrap(), 3.0);
        assert_eq!(p.omega_sq(2.0).unwrap(), 2.0);
        assert_eq!(p.omega_sq(3.0).unwrap(), 1.0);
        assert!(matches!(p.omega_sq(3.5), Err(Error::OutOfRange { .. })));
        assert!(matches!(p.omega_sq(-0.1), Err(Error::OutOfRange { .. })));
        assert_eq!(p.bounds(0.0, 3.0).unwrap(), (1.0, 3.0));
        assert_eq!(p.bounds(1.5, 2.5).unwrap(), (1.5, 2.5));
    }

    #[test]
    fn tabulated_requires_ascending_times() {
        assert!(Tabulated::new(vec![0.0, 0.0], vec![1.0, 1.0]).is_err());
        assert!(Tabulated::new(vec![1.0, 0.0], vec![1.0, 1.0]).is_err());
        assert!(Tabulated::new(vec![0.0], vec![1.0]).is_err());
    }

    #[test]
    fn shifted_profile_subtracts() {
        let inner: Arc<dyn FrequencyProfile> = Arc::new(SuddenQuench::new(1.0, 2.0, 0.0).unwrap());
        let s = Shifted::new(inner, 0.5);
        assert_eq!(s.initial_omega_sq().unwrap(), 0.5);
        assert_eq!(s.omega_sq(1.0).unwrap(), 3.5);
        assert_eq!(s.bounds(0.0, 1.0).unwrap(), (0.5, 3.5));
    }

    #[test]
    fn registry_builds_every_builtin() {
        let reg = profile_registry();
        let names: Vec<_> = reg.names().collect();
        assert_eq!(
            names,
            ["constant", "periodic_drive", "sudden_quench", "tabulated"]
        );

        let mut p = Params::new();
        p.insert("omega_initial", "1").insert("omega_final", "2");
        let q = reg.build("sudden_quench", &p).unwrap();
        assert_eq!(q.name(), "sudden_quench");
        assert_eq!(q.omega_sq(1.0).unwrap(), 4.0);
        p.finish().unwrap();

        let mut p = Params::new();
        p.insert("times", "0,1").insert("omega_sq", "0,0");
        assert_eq!(
            reg.build("tabulated", &p).unwrap().omega_sq(0.5).unwrap(),
            0.0
        );
    }
}
