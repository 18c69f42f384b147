//! Uniform radial grid and the reduced relative-motion wavefunction on it.

use num_complex::Complex64;

use crate::error::{argument, Result};
use crate::oscillator::RM_MASS;

/// Nodes b_j = j·h, j = 1…n_points, h = b_max/n_points. The reduced
/// wavefunction vanishes at b = 0 and at the first node past b_max.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialGrid {
    b_max: f64,
    n_points: usize,
}

impl RadialGrid {
    pub const MIN_POINTS: usize = 8;

    pub fn new(b_max: f64, n_points: usize) -> Result<Self> {
        if !(b_max > 0.0 && b_max.is_finite()) {
            return Err(argument(format!("b_max must be positive, got {b_max}")));
        }
        if n_points < Self::MIN_POINTS {
            return Err(argument(format!(
                "radial grid needs at least {} points, got {n_points}",
                Self::MIN_POINTS
            )));
        }
        Ok(Self { b_max, n_points })
    }

    pub fn b_max(&self) -> f64 {
        self.b_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        self.b_max / self.n_points as f64
    }

    /// b at zero-based storage index `i` (node j = i + 1).
    pub fn node(&self, i: usize) -> f64 {
        (i + 1) as f64 * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.node(i)).collect()
    }

    /// Requires the spacing to be at most a twentieth of the shortest
    /// relative-motion oscillator length (m_rm·ω_max)^{−1/2}.
    pub fn check_resolution(&self, omega_sq_max: f64) -> Result<()> {
        if omega_sq_max <= 0.0 {
            return Ok(());
        }
        let length = (RM_MASS * omega_sq_max.sqrt()).powf(-0.5);
        if self.spacing() <= length / 20.0 {
            Ok(())
        } else {
            Err(argument(format!(
                "grid spacing {} exceeds oscillator length {length:.4} / 20",
                self.spacing()
            )))
        }
    }
}

/// Reduced radial function g(b) = b·ψ_RM(b)·√(4π), normalized so that
/// ∫₀^∞ |g|² db = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct RMState {
    grid: RadialGrid,
    g: Vec<Complex64>,
    t: f64,
}

impl RMState {
    pub fn new(grid: RadialGrid, g: Vec<Complex64>, t: f64) -> Result<Self> {
        if g.len() != grid.n_points() {
            return Err(argument(format!(
                "state has {} values for a {}-point grid",
                g.len(),
                grid.n_points()
            )));
        }
        if g.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(argument("state contains non-finite values"));
        }
        Ok(Self { grid, g, t })
    }

    /// Samples `f` at the grid nodes and normalizes.
    pub fn from_fn<F: FnMut(f64) -> Complex64>(grid: RadialGrid, t: f64, mut f: F) -> Result<Self> {
        let g = grid.nodes().into_iter().map(&mut f).collect();
        Self::new(grid, g, t)?.normalized()
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    pub fn g(&self) -> &[Complex64] {
        &self.g
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub(crate) fn set(&mut self, g: Vec<Complex64>, t: f64) {
        self.g = g;
        self.t = t;
    }

    /// Σ|g_j|²·h.
    pub fn norm_sqr(&self) -> f64 {
        self.grid.spacing() * self.g.iter().map(|z| z.norm_sqr()).sum::<f64>()
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm_sqr();
        if !(n > 0.0 && n.is_finite()) {
            return Err(argument("cannot normalize a zero state"));
        }
        let s = n.sqrt().recip();
        self.g.iter_mut().for_each(|z| *z *= s);
        Ok(self)
    }

    /// |g| at the outermost node.
    pub fn boundary_amplitude(&self) -> f64 {
        self.g[self.g.len() - 1].norm()
    }

    /// ⟨self|other⟩ = Σ conj(g_j)·g'_j·h on a shared grid.
    pub fn overlap(&self, other: &RMState) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(argument("overlap needs states on the same grid"));
        }
        let s: Complex64 = self.g.iter().zip(&other.g).map(|(a, b)| a.conj() * b).sum();
        Ok(s * self.grid.spacing())
    }

    /// ‖self − other‖ in the discrete L² norm.
    pub fn distance(&self, other: &RMState) -> Result<f64> {
        if self.grid != other.grid {
            return Err(argument("distance needs states on the same grid"));
        }
        let s: f64 = self
            .g
            .iter()
            .zip(&other.g)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        Ok((s * self.grid.spacing()).sqrt())
    }

    /// Radial probability density |g_j|² at each node.
    pub fn probability(&self) -> Vec<f64> {
        self.g.iter().map(|z| z.norm_sqr()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_layout() {
        let g = RadialGrid::new(20.0, 2000).unwrap();
        assert!((g.spacing() - 0.01).abs() < 1e-15);
        assert!((g.node(0) - 0.01).abs() < 1e-15);
        assert!((g.node(1999) - 20.0).abs() < 1e-12);
        assert!(RadialGrid::new(0.0, 100).is_err());
        assert!(RadialGrid::new(10.0, 3).is_err());
    }

    #[test]
    fn resolution_rule() {
        let g = RadialGrid::new(20.0, 2000).unwrap();
        g.check_resolution(4.0).unwrap();
        let coarse = RadialGrid::new(20.0, 200).unwrap();
        assert!(coarse.check_resolution(4.0).is_err());
        coarse.check_resolution(0.04).unwrap();
    }

    #[test]
    fn normalization_and_overlap() {
        let grid = RadialGrid::new(12.0, 600).unwrap();
        let s =
            RMState::from_fn(grid, 0.0, |b| Complex64::new(b * (-b * b / 4.0).exp(), 0.0)).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-14);
        assert!((s.overlap(&s).unwrap().re - 1.0).abs() < 1e-14);
        assert_eq!(s.distance(&s).unwrap(), 0.0);
        let phased = RMState::new(
            grid,
            s.g().iter().map(|z| z * Complex64::i()).collect(),
            0.0,
        )
        .unwrap();
        assert!((s.overlap(&phased).unwrap() - Complex64::i()).norm() < 1e-14);
        assert!(RMState::new(grid, vec![Complex64::new(0.0, 0.0); 10], 0.0).is_err());
        assert!(RMState::from_fn(grid, 0.0, |_| Complex64::new(0.0, 0.0)).is_err());
    }
}
