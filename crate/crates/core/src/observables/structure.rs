//! Elastic structure factors of the centre-of-mass, relative and total
//! motion.

use crate::error::{argument, Error, Result};
use crate::rm::RMState;
use crate::specfun::{kummer_m, ln_binomial, ln_factorial, log_gamma, spherical_j0, KummerArgs};

/// Largest n + m accepted by [`structure_factor_cm`].
pub const MAX_PLANAR_ORDER: u32 = 30;

/// Estimated absolute rounding error above which the Kummer sum is refused.
const CANCELLATION_LIMIT: f64 = 1e-8;

/// e^{−k²/(4C)}: ground-state factor at inverse squared width C = M·φ̇.
pub fn gaussian_structure_factor(mass_phi_dot: f64, k: f64) -> Result<f64> {
    check_rate(mass_phi_dot)?;
    Ok((-k * k / (4.0 * mass_phi_dot)).exp())
}

fn check_rate(c: f64) -> Result<()> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(argument(format!("M·phi_dot must be positive, got {c}")))
    }
}

/// Structure factor ∫J₀(kc)|χ_nm(c)|² c dc of a planar eigenstate as a
/// finite Kummer-function sum,
///
/// f = n!/(n+m)! Σ_{s,t=0}^{n} (−1)^{s+t} C(n+m, n−s)·C(n+m, n−t)
///     ·Γ(m+s+t+1)/(s!·t!)·M(m+s+t+1, 1, −k²/(4C)),
///
/// with C = M·φ̇. Prefactors are combined in log space. Requests with
/// n + m > 30, or whose alternating sum would lose more than ~10⁻⁸ to
/// cancellation, are refused; in practice that admits n up to about 6.
pub fn structure_factor_cm(n: u32, m: u32, mass_phi_dot: f64, k: f64) -> Result<f64> {
    check_rate(mass_phi_dot)?;
    if !k.is_finite() {
        return Err(argument("wavenumber must be finite"));
    }
    if n + m > MAX_PLANAR_ORDER {
        return Err(Error::Capability(format!(
            "structure factor limited to n + m <= {MAX_PLANAR_ORDER}, got {}",
            n + m
        )));
    }
    let x = k * k / (4.0 * mass_phi_dot);
    let ln_pref = ln_factorial(n) - ln_factorial(n + m);
    let mut sum = 0.0;
    let mut scale = 0.0;
    for s in 0..=n {
        for t in 0..=n {
            let a = m + s + t + 1;
            let ln_c = ln_pref
                + ln_binomial(n + m, n - s)?
                + ln_binomial(n + m, n - t)?
                + log_gamma(f64::from(a))?
                - ln_factorial(s)
                - ln_factorial(t);
            let c = ln_c.exp();
            let sign = if (s + t) % 2 == 0 { 1.0 } else { -1.0 };
            sum += sign * c * kummer_m(KummerArgs::new(f64::from(a), 1.0, -x)?)?;
            scale += c;
        }
    }
    let rounding = scale * 8.0 * f64::EPSILON;
    if rounding > CANCELLATION_LIMIT {
        return Err(Error::Capability(format!(
            "structure factor for (n, m) = ({n}, {m}) loses ~{rounding:.1e} to cancellation"
        )));
    }
    Ok(sum)
}

/// f_RM(k/2) = ∫|g(b)|²·j₀(k·b/2) db by the grid's trapezoid rule (the
/// endpoints vanish).
pub fn structure_factor_rm_numeric(state: &RMState, k: f64) -> f64 {
    let grid = state.grid();
    let s: f64 = grid
        .nodes()
        .iter()
        .zip(state.g())
        .map(|(b, g)| g.norm_sqr() * spherical_j0(0.5 * k * b))
        .sum();
    s * grid.spacing()
}

/// f_tot = 2·f_CM(k)·f_RM(k/2).
pub fn structure_factor_total(f_cm: f64, f_rm_half_k: f64) -> f64 {
    2.0 * f_cm * f_rm_half_k
}
