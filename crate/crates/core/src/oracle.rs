//! Brute-force cross-checks of the closed forms against independent
//! numerical evaluations. Each check returns one measured figure and the
//! bound it has to respect.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::cm::{CmQuantumNumbers, CmState};
use crate::error::Result;
use crate::observables::{
    gaussian_structure_factor, radial_fourier_transform, structure_factor_cm,
    structure_factor_rm_numeric, structure_factor_total, MoshinskyAtom,
};
use crate::oscillator::{
    solve_trajectory, solve_trajectory_with, Constant, FrequencyProfile, PeriodicDrive,
    SuddenQuench, Tabulated, TrajectoryOptions, CM_MASS,
};
use crate::quadrature::adaptive_gk15;
use crate::rm::{cn_substeps, propagate, Moshinsky, RadialGrid};
use crate::specfun::{
    bessel_j0, bessel_j1, kummer_m, laguerre, spherical_j0, KummerArgs, LaguerreSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

/// One measured figure against its threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub name: &'static str,
    pub measured: f64,
    pub threshold: f64,
    pub bound: Bound,
}

impl OracleCheck {
    fn at_most(name: &'static str, measured: f64, threshold: f64) -> Self {
        Self {
            name,
            measured,
            threshold,
            bound: Bound::AtMost,
        }
    }

    fn at_least(name: &'static str, measured: f64, threshold: f64) -> Self {
        Self {
            name,
            measured,
            threshold,
            bound: Bound::AtLeast,
        }
    }

    /// NaN never passes.
    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.measured <= self.threshold,
            Bound::AtLeast => self.measured >= self.threshold,
        }
    }
}

fn lag(n: u32, alpha: f64, x: f64) -> Result<f64> {
    laguerre(LaguerreSpec::new(n, alpha)?, x)
}

fn kummer(a: f64, b: f64, x: f64) -> Result<f64> {
    kummer_m(KummerArgs::new(a, b, x)?)
}

/// Recurrence against the explicit sum Σ_s C(n+α, n−s)(−x)^s/s! for n ≤ 10,
/// α ∈ {0, ½, 1, 3/2, 2}, x ∈ [0, 20]; relative error (floored at 10⁻⁵ of
/// the sum's rounding scale near roots).
pub fn laguerre_sum() -> Result<OracleCheck> {
    let mut worst = 0.0f64;
    for n in 0..=10u32 {
        for &alpha in &[0.0, 0.5, 1.0, 1.5, 2.0] {
            for i in 0..=200 {
                let x = 0.1 * f64::from(i);
                let (mut sum, mut scale) = (0.0, 0.0);
                for s in 0..=n {
                    let binom: f64 = (1..=n - s)
                        .map(|j| (alpha + f64::from(s) + f64::from(j)) / f64::from(j))
                        .product();
                    let pow: f64 = (1..=s).map(|j| -x / f64::from(j)).product();
                    sum += binom * pow;
                    scale += (binom * pow).abs();
                }
                let err = (lag(n, alpha, x)? - sum).abs() / f64::max(sum.abs(), 1e-5 * scale);
                worst = worst.max(err);
            }
        }
    }
    Ok(OracleCheck::at_most(
        "laguerre recurrence vs explicit sum",
        worst,
        1e-10,
    ))
}

/// x·y'' + (α+1−x)·y' + n·y with the derivatives from (L_n^α)' = −L_{n−1}^{α+1}.
pub fn laguerre_ode() -> Result<OracleCheck> {
    let mut worst = 0.0f64;
    for n in 2..=10u32 {
        for &alpha in &[0.0, 0.5, 1.0, 1.5, 2.0] {
            for i in 0..=40 {
                let x = 0.5 * f64::from(i);
                let terms = [
                    x * lag(n - 2, alpha + 2.0, x)?,
                    -(alpha + 1.0 - x) * lag(n - 1, alpha + 1.0, x)?,
                    f64::from(n) * lag(n, alpha, x)?,
                ];
                let scale = terms.iter().map(|t| t.abs()).fold(1.0, f64::max);
                worst = worst.max(terms.iter().sum::<f64>().abs() / scale);
            }
        }
    }
    Ok(OracleCheck::at_most(
        "laguerre differential equation",
        worst,
        1e-8,
    ))
}

/// x·J₀'' + J₀' + x·J₀ by five-point differences, plus J₀' = −J₁.
pub fn bessel_ode() -> Result<OracleCheck> {
    let h = 1e-2;
    let mut worst = 0.0f64;
    for i in 1..=120 {
        let x = 0.25 * f64::from(i);
        let f = |d: f64| bessel_j0(x + d * h);
        let (m2, m1, z, p1, p2) = (f(-2.0)?, f(-1.0)?, f(0.0)?, f(1.0)?, f(2.0)?);
        let d1 = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
        let d2 = (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12.0 * h * h);
        worst = worst
            .max((x * d2 + d1 + x * z).abs())
            .max((d1 + bessel_j1(x)?).abs());
    }
    Ok(OracleCheck::at_most(
        "bessel J0 differential equation",
        worst,
        1e-8,
    ))
}

/// (b−a)·M(a−1) + (2a−b+x)·M(a) − a·M(a+1) at b = 1, a = 2…12, x ∈ [−60, 0].
pub fn kummer_contiguity() -> Result<OracleCheck> {
    let b = 1.0;
    let mut worst = 0.0f64;
    for a in 2..=12 {
        let a = f64::from(a);
        for i in 0..=60 {
            let x = -f64::from(i);
            let terms = [
                (b - a) * kummer(a - 1.0, b, x)?,
                (2.0 * a - b + x) * kummer(a, b, x)?,
                -a * kummer(a + 1.0, b, x)?,
            ];
            let scale = terms.iter().map(|t| t.abs()).fold(0.0, f64::max);
            worst = worst.max(terms.iter().sum::<f64>().abs() / scale);
        }
    }
    Ok(OracleCheck::at_most(
        "kummer contiguous relation",
        worst,
        1e-8,
    ))
}

/// M(1, 1, x) = eˣ on x ∈ [−60, 40], relative.
pub fn kummer_exponential() -> Result<OracleCheck> {
    let mut worst = 0.0f64;
    for i in -120..=80 {
        let x = 0.5 * f64::from(i);
        worst = worst.max((kummer(1.0, 1.0, x)? - x.exp()).abs() / x.exp());
    }
    Ok(OracleCheck::at_most(
        "kummer M(1,1,x) = exp(x)",
        worst,
        1e-12,
    ))
}

/// M(a, 1, −50) for a = 1…31 against the forward recurrence in a started
/// from M(1, 1, x) = eˣ and M(2, 1, x) = (1 + x)·eˣ.
pub fn kummer_transformation() -> Result<OracleCheck> {
    let x = -50.0f64;
    let (mut prev, mut cur) = (x.exp(), (1.0 + x) * x.exp());
    let mut worst = (kummer(1.0, 1.0, x)? - prev).abs() / prev;
    for a in 2..=31u32 {
        worst = worst.max((kummer(f64::from(a), 1.0, x)? - cur).abs() / cur.abs());
        let af = f64::from(a);
        let next = ((2.0 * af - 1.0 + x) * cur + (1.0 - af) * prev) / af;
        prev = cur;
        cur = next;
    }
    Ok(OracleCheck::at_most(
        "kummer transformation at x = -50",
        worst,
        1e-10,
    ))
}

fn built_in_profiles() -> Result<Vec<Box<dyn FrequencyProfile>>> {
    Ok(vec![
        Box::new(Constant::new(1.0)?),
        Box::new(SuddenQuench::new(1.0, 2.0, 0.3)?),
        Box::new(PeriodicDrive::new(1.0, 0.5, 2.0)?),
        Box::new(Tabulated::new(
            vec![0.0, 5.0, 10.0, 20.0],
            vec![1.0, 4.0, 0.25, 1.0],
        )?),
    ])
}

/// Largest relative Wronskian drift φ̇·|X|² over the built-in profiles.
pub fn wronskian() -> Result<OracleCheck> {
    let mut worst = 0.0f64;
    for p in built_in_profiles()? {
        let tr = solve_trajectory(p.as_ref(), 20.0, 1e-2, CM_MASS)?;
        worst = worst.max(tr.wronskian_drift());
    }
    Ok(OracleCheck::at_most("wronskian conservation", worst, 1e-8))
}

/// Free motion X = 1 + i·t (with φ̇ = 1/(1+t²)) and uniform rotation
/// X = e^{iωt}, compared sample by sample.
pub fn analytic_trajectories() -> Result<OracleCheck> {
    let mut worst = 0.0f64;
    let free = Tabulated::new(vec![0.0, 10.0], vec![0.0, 0.0])?;
    let tr = solve_trajectory(&free, 10.0, 1e-2, CM_MASS)?;
    for (i, &t) in tr.times().iter().enumerate() {
        let x = Complex64::new(1.0, t);
        worst = worst
            .max((tr.x()[i] - x).norm() / x.norm())
            .max((tr.phi_dot()[i] * (1.0 + t * t) - 1.0).abs());
    }
    let w = 1.5;
    let tr = solve_trajectory(&Constant::new(w)?, 10.0, 1e-2, CM_MASS)?;
    for (i, &t) in tr.times().iter().enumerate() {
        worst = worst
            .max((tr.x()[i] - Complex64::from_polar(1.0, w * t)).norm())
            .max((tr.phi_dot()[i] - w).abs() / w)
            .max(tr.dln_abs_x_dt()[i].abs());
    }
    Ok(OracleCheck::at_most(
        "free and constant trajectories",
        worst,
        1e-8,
    ))
}

/// Convergence order of fixed-step RK4 on the quench ω: 1 → 2 at t = 0.5,
/// from the end-point error at h = 0.05 and 0.025 against the piecewise
/// exact solution.
pub fn rk4_order() -> Result<OracleCheck> {
    let (wi, wf, ts, t_end) = (1.0, 2.0, 0.5, 3.0);
    let p = SuddenQuench::new(wi, wf, ts)?;
    let xs = Complex64::from_polar(1.0, wi * ts);
    let vs = Complex64::new(0.0, wi) * xs;
    let exact = xs * (wf * (t_end - ts)).cos() + vs * ((wf * (t_end - ts)).sin() / wf);
    let error = |substeps: u32| -> Result<f64> {
        let opts = TrajectoryOptions {
            substeps: Some(substeps),
            initial: None,
        };
        let tr = solve_trajectory_with(&p, t_end, 0.05, CM_MASS, opts)?;
        Ok((tr.x()[tr.len() - 1] - exact).norm())
    };
    let order = (error(1)? / error(2)?).log2();
    Ok(OracleCheck::at_least("rk4 convergence order", order, 3.5))
}

/// Residual of i∂ₜχ = [−(∂²_c + (2/c)∂_c − l(l+1)/c²)/(2M) + Mω²c²/2]χ for
/// the 3D closed form under a quench, by central differences with equal
/// steps in c and t. Returns the residual norm at steps δ, δ/2, δ/4.
pub fn chi_3d_residuals(n: u32, l: u32) -> Result<[f64; 3]> {
    let profile = SuddenQuench::new(1.0, 2.0, 0.0)?;
    let dt = 1.25e-3;
    let tr = Arc::new(solve_trajectory(&profile, 1.2, dt, CM_MASS)?);
    let state = CmState::new(CmQuantumNumbers::spatial(n, l)?, tr)?;
    let t0 = 1.0;
    let omega_sq = profile.omega_sq(t0)?;
    let mut out = [0.0; 3];
    for (j, slot) in out.iter_mut().enumerate() {
        let d = 0.02 / f64::from(1u32 << j);
        let mut sq = 0.0;
        for i in 1..=40 {
            let c = 0.06 * f64::from(i);
            let chi = |dc: f64, dtt: f64| state.chi_3d(c + dc, t0 + dtt);
            let (m, p, z) = (chi(-d, 0.0)?, chi(d, 0.0)?, chi(0.0, 0.0)?);
            let dchi_dt = (chi(0.0, d)? - chi(0.0, -d)?) / (2.0 * d);
            let d1 = (p - m) / (2.0 * d);
            let d2 = (p - 2.0 * z + m) / (d * d);
            let lf = f64::from(l);
            let h = -(d2 + d1 * (2.0 / c) - z * (lf * (lf + 1.0) / (c * c))) / (2.0 * CM_MASS)
                + z * (0.5 * CM_MASS * omega_sq * c * c);
            sq += (Complex64::new(0.0, 1.0) * dchi_dt - h).norm_sqr();
        }
        *slot = sq.sqrt();
    }
    Ok(out)
}

/// Smallest observed order over the states (0,0), (2,0), (1,1), (2,2).
pub fn chi_3d_residual_order() -> Result<OracleCheck> {
    let mut order = f64::INFINITY;
    for &(n, l) in &[(0, 0), (2, 0), (1, 1), (2, 2)] {
        let r = chi_3d_residuals(n, l)?;
        order = order.min((r[0] / r[1]).log2()).min((r[1] / r[2]).log2());
    }
    Ok(OracleCheck::at_least(
        "3D closed-form residual order",
        order,
        1.8,
    ))
}

/// f(k) = ∫ J₀(kc)·|χ_nm(c)|²·c dc by adaptive Gauss–Kronrod, with
/// |χ_nm|² = 2·n!/(n+m)!·C^{m+1}·c^{2m}·e^{−Cc²}·[L_n^m(Cc²)]².
pub fn hankel_structure_factor(n: u32, m: u32, mass_phi_dot: f64, k: f64) -> Result<f64> {
    let norm: f64 = 2.0
        * (n + 1..=n + m).map(|j| 1.0 / f64::from(j)).product::<f64>()
        * mass_phi_dot.powi(m as i32 + 1);
    let spec = LaguerreSpec::new(n, f64::from(m))?;
    let c_max = (120.0 / mass_phi_dot).sqrt();
    let mut failure = None;
    let value = adaptive_gk15(
        |c| {
            let x = mass_phi_dot * c * c;
            let poly = laguerre(spec, x).unwrap_or(f64::NAN);
            match bessel_j0(k * c) {
                Ok(j) => j * norm * c.powi(2 * m as i32 + 1) * (-x).exp() * poly * poly,
                Err(e) => {
                    failure = Some(e);
                    0.0
                }
            }
        },
        0.0,
        c_max,
        1e-13,
        20_000,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(value),
    }
}

/// Largest |Kummer sum − Hankel quadrature| for n, m ≤ 3, M·φ̇ ∈ {½, 2, 8},
/// k ∈ [0, 10].
pub fn structure_factor_vs_hankel() -> Result<OracleCheck> {
    let mut worst = 0.0f64;
    for n in 0..=3 {
        for m in 0..=3 {
            for &rate in &[0.5, 2.0, 8.0] {
                for i in 0..=40 {
                    let k = 0.25 * f64::from(i);
                    let closed = structure_factor_cm(n, m, rate, k)?;
                    worst = worst.max((closed - hankel_structure_factor(n, m, rate, k)?).abs());
                }
            }
        }
    }
    Ok(OracleCheck::at_most(
        "kummer structure factor vs hankel",
        worst,
        1e-8,
    ))
}

/// The (0, 0) Kummer sum against e^{−k²/(4M·φ̇)}, relative.
pub fn ground_state_gaussian() -> Result<OracleCheck> {
    let mut worst = 0.0f64;
    for &rate in &[0.5, 2.0, 8.0] {
        for i in 0..=40 {
            let k = 0.25 * f64::from(i);
            let g = gaussian_structure_factor(rate, k)?;
            worst = worst.max((structure_factor_cm(0, 0, rate, k)? - g).abs() / g);
        }
    }
    Ok(OracleCheck::at_most(
        "ground-state structure factor is gaussian",
        worst,
        1e-14,
    ))
}

/// The planar ground-state factor against ∫ j₀(kc)·|χ̃₀₀|²·c² dc of the
/// spatial ground state.
pub fn planar_spatial_ground_states() -> Result<OracleCheck> {
    let mut worst = 0.0f64;
    for &rate in &[0.5f64, 2.0, 8.0] {
        // |χ̃₀₀|² = 4·C^{3/2}/√π·e^{−Cc²}
        let norm = 4.0 * rate.powf(1.5) / PI.sqrt();
        let c_max = (120.0 / rate).sqrt();
        for i in 0..=40 {
            let k = 0.25 * f64::from(i);
            let spatial = adaptive_gk15(
                |c| norm * c * c * (-rate * c * c).exp() * spherical_j0(k * c),
                0.0,
                c_max,
                1e-13,
                20_000,
            )?;
            worst = worst.max((structure_factor_cm(0, 0, rate, k)? - spatial).abs());
        }
    }
    Ok(OracleCheck::at_most(
        "planar and spatial ground states coincide",
        worst,
        1e-10,
    ))
}

/// Grid propagation of the harmonic interaction under a quench against the
/// mapped closed form. The first check is 1 − |⟨g_num|g_ana⟩| at `t_end`;
/// the second is the largest |f_tot| difference on k ∈ [0, 10] there.
pub fn moshinsky_quench(
    k_int: f64,
    omega_initial: f64,
    omega_final: f64,
    t_end: f64,
    n_points: usize,
    dt: f64,
) -> Result<[OracleCheck; 2]> {
    let profile: Arc<dyn FrequencyProfile> =
        Arc::new(SuddenQuench::new(omega_initial, omega_final, 0.0)?);
    let atom = MoshinskyAtom::new(k_int, profile.clone(), t_end, dt)?;
    let grid = RadialGrid::new(20.0, n_points)?;
    let interaction = Moshinsky::new(k_int)?;
    let initial = atom.rm().state_on(&grid, 0.0)?;
    let substeps = cn_substeps(profile.as_ref(), t_end, dt)?;
    let fine = dt / f64::from(substeps);
    let steps = (t_end / fine).round() as usize;
    let run = propagate(&initial, &interaction, profile.as_ref(), fine, steps, steps)?;
    let numeric = run.snapshots.last().expect("final snapshot");
    let analytic = atom.rm().state_on(&grid, t_end)?;
    let overlap = analytic.overlap(numeric)?.norm();

    let rate = atom.cm().sample_at(t_end)?.mass_phi_dot();
    let mut worst = 0.0f64;
    for i in 0..=100 {
        let k = 0.1 * f64::from(i);
        let f_cm = gaussian_structure_factor(rate, k)?;
        let pipeline = structure_factor_total(f_cm, structure_factor_rm_numeric(numeric, k));
        worst = worst.max((pipeline - atom.structure_factor_total(k, t_end)?).abs());
    }
    Ok([
        OracleCheck::at_most(
            "harmonic interaction grid vs closed form overlap",
            1.0 - overlap,
            1e-6,
        ),
        OracleCheck::at_most(
            "harmonic interaction pipeline structure factor",
            worst,
            1e-5,
        ),
    ])
}

/// Radial Fourier transform of the closed-form density against the
/// factorized total structure factor on k ∈ [0, 10].
pub fn consistency_triangle(k_int: f64, omega_final: f64, t: f64) -> Result<OracleCheck> {
    let profile: Arc<dyn FrequencyProfile> = Arc::new(SuddenQuench::new(1.0, omega_final, 0.0)?);
    let dt = t / (t / 1e-3).ceil();
    let atom = MoshinskyAtom::new(k_int, profile, t, dt)?;
    let r: Vec<f64> = (0..=800).map(|i| 0.01 * f64::from(i)).collect();
    let n = r
        .iter()
        .map(|&ri| atom.density(ri, t))
        .collect::<Result<Vec<_>>>()?;
    let mut worst = 0.0f64;
    for i in 0..=100 {
        let k = 0.1 * f64::from(i);
        worst = worst
            .max((radial_fourier_transform(&r, &n, k)? - atom.structure_factor_total(k, t)?).abs());
    }
    Ok(OracleCheck::at_most(
        "density transform vs total structure factor",
        worst,
        1e-5,
    ))
}

/// Every check, cheapest first.
pub fn run_all() -> Result<Vec<OracleCheck>> {
    let mut out = vec![
        laguerre_sum()?,
        laguerre_ode()?,
        bessel_ode()?,
        kummer_contiguity()?,
        kummer_exponential()?,
        kummer_transformation()?,
        wronskian()?,
        analytic_trajectories()?,
        rk4_order()?,
        chi_3d_residual_order()?,
        ground_state_gaussian()?,
        planar_spatial_ground_states()?,
        structure_factor_vs_hankel()?,
        consistency_triangle(0.25, 2.0, PI / 4.0)?,
    ];
    out.extend(moshinsky_quench(0.25, 1.0, 2.0, 5.0, 2000, 1e-3)?);
    Ok(out)
}
