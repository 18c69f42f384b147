use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{argument, Result};

/// Series branch limit.
const SERIES_MAX_X: f64 = 2.0;
/// Beyond this the Hankel asymptotic expansion is accurate to round-off.
const ASYMPTOTIC_MIN_X: f64 = 25.0;

/// Bessel function of the first kind, order zero, for x ≥ 0.
pub fn bessel_j0(x: f64) -> Result<f64> {
    check(x)?;
    Ok(if x <= SERIES_MAX_X {
        j0_series(x)
    } else if x < ASYMPTOTIC_MIN_X {
        miller(x).0
    } else {
        hankel(x).0
    })
}

/// Bessel function of the first kind, order one, for x ≥ 0.
pub fn bessel_j1(x: f64) -> Result<f64> {
    check(x)?;
    Ok(if x == 0.0 {
        0.0
    } else if x < ASYMPTOTIC_MIN_X {
        miller(x).1
    } else {
        hankel(x).1
    })
}

fn check(x: f64) -> Result<()> {
    if x >= 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(argument(format!(
            "Bessel argument must be finite and >= 0, got {x}"
        )))
    }
}

fn j0_series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..40 {
        let k = f64::from(k);
        term *= q / (k * k);
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

/// Backward recurrence J_{k−1} = (2k/x)·J_k − J_{k+1}, normalized by
/// J₀ + 2·Σ J_{2k} = 1. Returns (J₀, J₁).
fn miller(x: f64) -> (f64, f64) {
    let start = 2 * (((1.5 * x + 40.0) / 2.0).ceil() as usize);
    let (mut above, mut cur) = (0.0f64, 1e-30f64);
    let mut norm = 0.0;
    let mut j1 = 0.0;
    for k in (1..=start).rev() {
        let below = 2.0 * k as f64 / x * cur - above;
        above = cur;
        cur = below;
        // `cur` now holds J_{k−1}
        if k - 1 == 1 {
            j1 = cur;
        }
        if (k - 1) % 2 == 0 && k > 1 {
            norm += 2.0 * cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            above *= 1e-250;
            norm *= 1e-250;
            j1 *= 1e-250;
        }
    }
    norm += cur;
    (cur / norm, j1 / norm)
}

/// Hankel expansion; (J₀, J₁).
fn hankel(x: f64) -> (f64, f64) {
    let amp = (2.0 / (PI * x)).sqrt();
    let pq = |nu: f64| {
        let mu = 4.0 * nu * nu;
        let (mut p, mut q) = (1.0, 0.0);
        let mut term = 1.0f64;
        let mut last = f64::INFINITY;
        for k in 1..60 {
            let kf = f64::from(k);
            term *= (mu - (2.0 * kf - 1.0).powi(2)) / (kf * 8.0 * x);
            if term.abs() >= last || term.abs() < 1e-18 {
                break;
            }
            last = term.abs();
            // signs follow (+, −, −, +) with period four on k
            match k % 4 {
                1 => q += term,
                2 => p -= term,
                3 => q -= term,
                _ => p += term,
            }
        }
        (p, q)
    };
    let (p0, q0) = pq(0.0);
    let (p1, q1) = pq(1.0);
    let chi0 = x - FRAC_PI_4;
    let chi1 = x - 3.0 * FRAC_PI_4;
    (
        amp * (p0 * chi0.cos() - q0 * chi0.sin()),
        amp * (p1 * chi1.cos() - q1 * chi1.sin()),
    )
}
