use crate::error::{numerical, Result};

const TAYLOR_BELOW: f64 = 1e-4;
/// sinh overflows f64 just above this.
const SINH_MAX: f64 = 710.0;

/// sinh(x)/x, even, with the Taylor branch near zero.
pub fn sinhc(x: f64) -> Result<f64> {
    let ax = x.abs();
    if ax < TAYLOR_BELOW {
        let x2 = x * x;
        return Ok(1.0 + x2 / 6.0 + x2 * x2 / 120.0);
    }
    if ax > SINH_MAX || !ax.is_finite() {
        return Err(numerical(format!("sinh({x})/x overflows")));
    }
    Ok(ax.sinh() / ax)
}

/// Spherical Bessel j₀(x) = sin(x)/x.
pub fn spherical_j0(x: f64) -> f64 {
    if x.abs() < TAYLOR_BELOW {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}
