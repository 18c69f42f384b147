//! Discrete radial Hamiltonian with a compact fourth-order kinetic term.
//!
//! With Δ the second-difference matrix and B = tridiag(1, 10, 1)/12 the
//! Numerov mass matrix, the kinetic operator −(1/2m)·B⁻¹Δ/h² is symmetric
//! (B and Δ commute under Dirichlet conditions), so H = B⁻¹T + V is
//! symmetric and every Cayley step built from it is exactly unitary. All
//! linear systems are multiplied through by B and stay tridiagonal.

use num_complex::Complex64;

use super::grid::RadialGrid;
use super::interaction::{effective_potential, Interaction};
use crate::error::{numerical, Result};
use crate::oscillator::RM_MASS;

const B_OFF: f64 = 1.0 / 12.0;
const B_DIAG: f64 = 10.0 / 12.0;

#[derive(Debug, Clone)]
pub(crate) struct Hamiltonian {
    /// 1/(2m·h²)
    kappa: f64,
    v: Vec<f64>,
}

impl Hamiltonian {
    pub fn new(grid: &RadialGrid, interaction: &dyn Interaction, omega_sq: f64) -> Result<Self> {
        let h = grid.spacing();
        let v = grid
            .nodes()
            .into_iter()
            .map(|b| effective_potential(interaction, omega_sq, b))
            .collect::<Result<Vec<_>>>()?;
        if v.iter().any(|x| !x.is_finite()) {
            return Err(numerical("effective potential is not finite on the grid"));
        }
        Ok(Self {
            kappa: 1.0 / (2.0 * RM_MASS * h * h),
            v,
        })
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    /// The tridiagonal matrix β·B + α·(T + B·V).
    pub fn combination(&self, beta: Complex64, alpha: Complex64) -> Tridiagonal {
        let n = self.len();
        let k = self.kappa;
        let mut sub = vec![Complex64::new(0.0, 0.0); n];
        let mut diag = vec![Complex64::new(0.0, 0.0); n];
        let mut sup = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            diag[j] = beta * B_DIAG + alpha * (2.0 * k + B_DIAG * self.v[j]);
            if j > 0 {
                sub[j] = beta * B_OFF + alpha * (-k + B_OFF * self.v[j - 1]);
            }
            if j + 1 < n {
                sup[j] = beta * B_OFF + alpha * (-k + B_OFF * self.v[j + 1]);
            }
        }
        Tridiagonal { sub, diag, sup }
    }

    /// H·g = B⁻¹·T·g + V·g.
    pub fn apply(&self, g: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = g.len();
        let k = self.kappa;
        let tg: Vec<Complex64> = (0..n)
            .map(|j| {
                let left = if j > 0 {
                    g[j - 1]
                } else {
                    Complex64::new(0.0, 0.0)
                };
                let right = if j + 1 < n {
                    g[j + 1]
                } else {
                    Complex64::new(0.0, 0.0)
                };
                (g[j] * 2.0 - left - right) * k
            })
            .collect();
        let one = Complex64::new(1.0, 0.0);
        let mut out = self
            .combination(one, Complex64::new(0.0, 0.0))
            .factor()?
            .solve(&tg);
        for (o, (x, v)) in out.iter_mut().zip(g.iter().zip(&self.v)) {
            *o += x * v;
        }
        Ok(out)
    }

    /// ⟨g|H|g⟩/⟨g|g⟩.
    pub fn energy(&self, g: &[Complex64]) -> Result<f64> {
        let hg = self.apply(g)?;
        let num: Complex64 = g.iter().zip(&hg).map(|(a, b)| a.conj() * b).sum();
        let den: f64 = g.iter().map(|z| z.norm_sqr()).sum();
        Ok(num.re / den)
    }

    /// ‖(H − E)·g‖/‖g‖.
    pub fn residual(&self, g: &[Complex64], e: f64) -> Result<f64> {
        let hg = self.apply(g)?;
        let r: f64 = hg.iter().zip(g).map(|(a, b)| (a - b * e).norm_sqr()).sum();
        let den: f64 = g.iter().map(|z| z.norm_sqr()).sum();
        Ok((r / den).sqrt())
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Tridiagonal {
    sub: Vec<Complex64>,
    diag: Vec<Complex64>,
    sup: Vec<Complex64>,
}

impl Tridiagonal {
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|j| {
                let mut y = self.diag[j] * x[j];
                if j > 0 {
                    y += self.sub[j] * x[j - 1];
                }
                if j + 1 < n {
                    y += self.sup[j] * x[j + 1];
                }
                y
            })
            .collect()
    }

    /// Thomas elimination without pivoting.
    pub fn factor(&self) -> Result<Factored> {
        let n = self.diag.len();
        let mut inv = vec![Complex64::new(0.0, 0.0); n];
        let mut c = vec![Complex64::new(0.0, 0.0); n];
        let mut prev_c = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let d = self.diag[j]
                - if j > 0 {
                    self.sub[j] * prev_c
                } else {
                    Complex64::new(0.0, 0.0)
                };
            if d.norm() < 1e-300 || !d.re.is_finite() || !d.im.is_finite() {
                return Err(numerical(format!(
                    "zero pivot at row {j} of tridiagonal solve"
                )));
            }
            inv[j] = d.inv();
            c[j] = self.sup[j] * inv[j];
            prev_c = c[j];
        }
        Ok(Factored {
            sub: self.sub.clone(),
            inv,
            c,
        })
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Factored {
    sub: Vec<Complex64>,
    inv: Vec<Complex64>,
    c: Vec<Complex64>,
}

impl Factored {
    pub fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let n = rhs.len();
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        let mut prev = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let r = rhs[j]
                - if j > 0 {
                    self.sub[j] * prev
                } else {
                    Complex64::new(0.0, 0.0)
                };
            x[j] = r * self.inv[j];
            prev = x[j];
        }
        for j in (0..n.saturating_sub(1)).rev() {
            let next = x[j + 1];
            x[j] -= self.c[j] * next;
        }
        x
    }
}
