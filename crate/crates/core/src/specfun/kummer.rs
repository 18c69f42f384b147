use super::laguerre::laguerre_unchecked;
use super::{SERIES_EPS, SERIES_MAX_TERMS, SERIES_QUIET_TERMS};
use crate::error::{argument, numerical, Result};

/// Arguments of Kummer's function M(a, b, x) = ₁F₁(a; b; x).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerArgs {
    pub a: f64,
    pub b: f64,
    pub x: f64,
}

impl KummerArgs {
    pub fn new(a: f64, b: f64, x: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && x.is_finite()) {
            return Err(argument("Kummer arguments must be finite"));
        }
        if is_nonpositive_integer(b) {
            return Err(argument(format!("M(a, b, x) undefined for b = {b}")));
        }
        Ok(Self { a, b, x })
    }
}

fn is_nonpositive_integer(v: f64) -> bool {
    v <= 0.0 && v == v.floor()
}

/// Kummer's confluent hypergeometric function M(a, b, x).
///
/// For x < 0 the Kummer transformation M(a,b,x) = eˣ·M(b−a,b,−x) is applied
/// (unless `a` is itself a nonpositive integer), so the summed series never
/// alternates on the structure-factor domain a ∈ ℕ, b = 1, x ≤ 0. There
/// b − a ≤ 0 is an integer and the transformed series is a finite polynomial,
/// evaluated through the Laguerre recurrence because its terms cancel badly
/// at large degree.
pub fn kummer_m(args: KummerArgs) -> Result<f64> {
    let KummerArgs { a, b, x } = KummerArgs::new(args.a, args.b, args.x)?;
    if x == 0.0 || a == 0.0 {
        return Ok(1.0);
    }
    if x < 0.0 && !is_nonpositive_integer(a) {
        let tail = terminating_or_series(b - a, b, -x)?;
        let v = x.exp() * tail;
        return if v.is_finite() {
            Ok(v)
        } else {
            Err(numerical(format!("M({a}, {b}, {x}) overflows")))
        };
    }
    terminating_or_series(a, b, x)
}

/// M(−n, b, x) = n!/(b)_n·L_n^{b−1}(x) when b > 0, the plain series otherwise.
fn terminating_or_series(a: f64, b: f64, x: f64) -> Result<f64> {
    if is_nonpositive_integer(a) && b > 0.0 && -a <= f64::from(u32::MAX) {
        let n = (-a) as u32;
        let ratio: f64 = (1..=n)
            .map(|j| f64::from(j) / (b + f64::from(j) - 1.0))
            .product();
        return Ok(ratio * laguerre_unchecked(n, b - 1.0, x));
    }
    series(a, b, x)
}

fn series(a: f64, b: f64, x: f64) -> Result<f64> {
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut quiet = 0;
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) / (b + kf) * x / (kf + 1.0);
        sum += term;
        if !sum.is_finite() {
            return Err(numerical(format!("M({a}, {b}, {x}) series overflows")));
        }
        if term == 0.0 || term.abs() < SERIES_EPS * sum.abs() {
            quiet += 1;
            if quiet >= SERIES_QUIET_TERMS {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(numerical(format!(
        "M({a}, {b}, {x}) did not converge in {SERIES_MAX_TERMS} terms"
    )))
}
