use std::f64::consts::PI;

use crate::error::{argument, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(argument(format!("log_gamma needs x > 0, got {x}")));
    }
    Ok(ln_gamma_positive(x))
}

fn ln_gamma_positive(x: f64) -> f64 {
    if x < 0.5 {
        // reflection keeps the Lanczos sum in its accurate range
        return (PI / (PI * x).sin()).ln() - ln_gamma_positive(1.0 - x);
    }
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

/// n! as a float; exact up to 22!.
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * f64::from(k))
}

pub fn ln_factorial(n: u32) -> f64 {
    if n < 2 {
        0.0
    } else if n <= 20 {
        factorial(n).ln()
    } else {
        ln_gamma_positive(f64::from(n) + 1.0)
    }
}

/// Binomial coefficient; exact integer arithmetic for n ≤ 60, log-Gamma beyond.
pub fn binomial(n: u32, k: u32) -> Result<f64> {
    if k > n {
        return Err(argument(format!("binomial({n}, {k}) needs k <= n")));
    }
    let k = k.min(n - k);
    if n <= 60 {
        let mut c: u128 = 1;
        for i in 0..k {
            c = c * u128::from(n - i) / u128::from(i + 1);
        }
        Ok(c as f64)
    } else {
        Ok(ln_binomial(n, k)?.exp().round())
    }
}

pub fn ln_binomial(n: u32, k: u32) -> Result<f64> {
    if k > n {
        return Err(argument(format!("binomial({n}, {k}) needs k <= n")));
    }
    Ok(ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k))
}
