use crate::error::{argument, Result};

/// Degree and order of a generalized Laguerre polynomial L_n^α.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreSpec {
    pub n: u32,
    pub alpha: f64,
}

impl LaguerreSpec {
    pub fn new(n: u32, alpha: f64) -> Result<Self> {
        if !(alpha > -1.0) || !alpha.is_finite() {
            return Err(argument(format!(
                "Laguerre order must exceed -1, got {alpha}"
            )));
        }
        Ok(Self { n, alpha })
    }
}

/// L_n^α(x) by the three-term recurrence
/// (k+1)·L_{k+1} = (2k+1+α−x)·L_k − (k+α)·L_{k−1}.
pub fn laguerre(spec: LaguerreSpec, x: f64) -> Result<f64> {
    let LaguerreSpec { n, alpha } = LaguerreSpec::new(spec.n, spec.alpha)?;
    Ok(laguerre_unchecked(n, alpha, x))
}

pub(crate) fn laguerre_unchecked(n: u32, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let k = f64::from(k);
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}
