use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::Arc;

use harmonium::cm::cm_ground_density;
use harmonium::observables::*;
use harmonium::oscillator::{solve_trajectory, Constant, FrequencyProfile, SuddenQuench, CM_MASS};
use harmonium::quadrature::adaptive_gk15;
use harmonium::rm::*;
use harmonium::Result;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};

fn quench() -> Arc<dyn FrequencyProfile> {
    Arc::new(SuddenQuench::new(1.0, 2.0, 0.0).unwrap())
}

fn grid() -> RadialGrid {
    RadialGrid::new(20.0, 2000).unwrap()
}

/// Normalized closed-form Hookean relative density, ψ ∝ (1 + b/2)·e^{−b²/8}.
struct Hookean {
    norm: f64,
}

impl Hookean {
    fn new() -> Self {
        let g2 = |b: f64| (b * (1.0 + b / 2.0) * (-b * b / 8.0).exp()).powi(2);
        let total = adaptive_gk15(g2, 0.0, 30.0, 1e-15, 1000).unwrap();
        Self { norm: 1.0 / total }
    }
}

impl RelativeDensity for Hookean {
    fn density(&self, b: f64) -> Result<f64> {
        Ok(self.norm * ((1.0 + b / 2.0) * (-b * b / 8.0).exp()).powi(2) / (4.0 * PI))
    }

    fn extent(&self) -> f64 {
        30.0
    }
}

#[test]
fn independent_electrons_in_a_static_trap() {
    let cm = solve_trajectory(&Constant::new(1.0).unwrap(), 1.0, 1e-2, CM_MASS).unwrap();
    let gs = relax_ground_state(&NoInteraction, 1.0, &grid()).unwrap();
    let numeric = GridDensity::new(&gs.state).unwrap();
    let atom = MoshinskyAtom::new(0.0, Arc::new(Constant::new(1.0).unwrap()), 1.0, 1e-2).unwrap();
    assert!((atom.density(0.0, 0.0).unwrap() - 2.0 / PI.powf(1.5)).abs() < 1e-10);
    for i in 0..=30 {
        let r = 0.1 * i as f64;
        let exact = 2.0 / PI.powf(1.5) * (-r * r).exp();
        assert!((atom.density(r, 1.0).unwrap() - exact).abs() < 1e-10 * exact.max(1e-3));
        let grid_value = density_3d(r, 1.0, &cm, &numeric).unwrap();
        assert!(
            (grid_value - exact).abs() < 1e-7 * exact.max(1e-3),
            "r={r}: {grid_value} vs {exact}"
        );
    }
}

#[test]
fn electron_count_is_two() {
    let atom = MoshinskyAtom::new(0.25, quench(), 5.0, 1e-3).unwrap();
    for i in 0..=10 {
        let t = 0.5 * i as f64;
        let rm = AnalyticDensity {
            trajectory: atom.rm(),
            t,
        };
        let count = electron_count(t, atom.cm(), &rm).unwrap();
        assert!((count - 2.0).abs() < 1e-10, "t={t}: {count}");
    }

    // relaxed Hookean state on the grid
    let half = Constant::new(0.5).unwrap();
    let cm = solve_trajectory(&half, 1.0, 1e-2, CM_MASS).unwrap();
    let gs = relax_ground_state(&Coulomb::new(1.0).unwrap(), 0.25, &grid()).unwrap();
    let count = electron_count(0.0, &cm, &GridDensity::new(&gs.state).unwrap()).unwrap();
    assert!((count - 2.0).abs() < 1e-6, "{count}");
}

#[test]
fn hookean_density_matches_closed_form_in_l1() {
    let half = Constant::new(0.5).unwrap();
    let cm = solve_trajectory(&half, 1.0, 1e-2, CM_MASS).unwrap();
    let gs = relax_ground_state(&Coulomb::new(1.0).unwrap(), 0.25, &grid()).unwrap();
    let numeric = GridDensity::new(&gs.state).unwrap();
    let exact = Hookean::new();
    let l1 = adaptive_gk15(
        |r| {
            let a = density_3d(r, 0.0, &cm, &numeric).unwrap();
            let b = density_3d(r, 0.0, &cm, &exact).unwrap();
            4.0 * PI * r * r * (a - b).abs()
        },
        0.0,
        18.0,
        1e-9,
        2000,
    )
    .unwrap();
    assert!(l1 < 1e-5, "{l1}");
}

/// Same radial integral by adaptive quadrature with the plain sinh form.
fn density_by_adaptive_quadrature(atom: &MoshinskyAtom, r: f64, t: f64, tol: f64) -> f64 {
    let a = atom.cm().sample_at(t).unwrap().mass_phi_dot().powf(-0.5);
    let u = r / a;
    let f = |y: f64| {
        let z = u * y;
        let s = if z == 0.0 { 1.0 } else { z.sinh() / z };
        y * y * (-0.25 * y * y - u * u).exp() * s * atom.rm().density(a * y, t).unwrap()
    };
    8.0 / PI.sqrt() * adaptive_gk15(f, 0.0, 2.0 * u + 30.0, tol * PI.sqrt() / 8.0, 5000).unwrap()
}

#[test]
fn density_quadrature_against_adaptive_reference() {
    let atom = MoshinskyAtom::new(0.25, quench(), PI, PI / 4000.0).unwrap();
    for &t in &[0.0, FRAC_PI_4, 0.5 * PI, PI] {
        for i in 0..=12 {
            let r = 0.25 * i as f64;
            let fast = atom.density(r, t).unwrap();
            let slow = density_by_adaptive_quadrature(&atom, r, t, 1e-13 * fast);
            assert!(
                (fast - slow).abs() < 1e-10 * slow,
                "t={t} r={r}: {fast} vs {slow}"
            );
        }
    }
}

#[test]
fn density_agrees_with_monte_carlo() {
    // n(r) = 16·∫|Ψ_CM(c)|²·|ψ_RM(2(r − c))|² d³c, importance-sampled with a
    // Gaussian proposal centred halfway to r.
    let t = FRAC_PI_4;
    let atom = MoshinskyAtom::new(0.25, quench(), t, t / 1000.0).unwrap();
    let sigma = (0.5 / atom.cm().sample_at(t).unwrap().mass_phi_dot()).sqrt();
    let normal = Normal::new(0.0, sigma).unwrap();
    let proposal_norm = (2.0 * PI * sigma * sigma).powf(-1.5);
    let mut rng = ChaCha20Rng::seed_from_u64(0x5eed);
    let samples = 16_000_000;
    for &r in &[0.0, 0.7] {
        let (mut sum, mut sq) = (0.0, 0.0);
        for _ in 0..samples {
            let d = [
                normal.sample(&mut rng),
                normal.sample(&mut rng),
                normal.sample(&mut rng),
            ];
            let c = [0.5 * r + d[0], d[1], d[2]];
            let q = proposal_norm
                * (-(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]) / (2.0 * sigma * sigma)).exp();
            let c_abs = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
            let b = 2.0 * ((r - c[0]).powi(2) + c[1] * c[1] + c[2] * c[2]).sqrt();
            let v = 16.0
                * cm_ground_density(atom.cm(), c_abs, t).unwrap()
                * atom.rm().density(b, t).unwrap()
                / q;
            sum += v;
            sq += v * v;
        }
        let mean = sum / samples as f64;
        let stderr = ((sq / samples as f64 - mean * mean) / samples as f64).sqrt();
        let quad = atom.density(r, t).unwrap();
        assert!(stderr < 3e-4 * quad, "stderr {stderr} of {quad}");
        assert!(
            (mean - quad).abs() < 1e-3 * quad,
            "r={r}: mc {mean} vs {quad}"
        );
    }
}

#[test]
fn static_relative_structure_factors() {
    let none = relax_ground_state(&NoInteraction, 1.0, &grid()).unwrap();
    let harmonic = relax_ground_state(&Moshinsky::new(0.25).unwrap(), 1.0, &grid()).unwrap();
    let w = 0.5f64.sqrt();
    for i in 0..=40 {
        let k = 0.25 * i as f64;
        let f = structure_factor_rm_numeric(&none.state, k);
        assert!((f - (-k * k / 8.0).exp()).abs() < 1e-8, "k={k}: {f}");
        let f = structure_factor_rm_numeric(&harmonic.state, k);
        assert!((f - (-k * k / (8.0 * w)).exp()).abs() < 1e-8, "k={k}: {f}");
    }
}

#[test]
fn total_structure_factor_bounds() {
    let atom = MoshinskyAtom::new(0.25, quench(), 5.0, 1e-3).unwrap();
    for i in 0..=50 {
        let t = 0.1 * i as f64;
        assert!((atom.structure_factor_total(0.0, t).unwrap() - 2.0).abs() < 1e-15);
        let mut last = 2.0;
        for j in 1..=40 {
            let f = atom.structure_factor_total(0.25 * j as f64, t).unwrap();
            assert!(f <= last && f >= 0.0);
            last = f;
        }
    }
    // static K = 0.25 closed form
    let atom = MoshinskyAtom::new(0.25, Arc::new(Constant::new(1.0).unwrap()), 1.0, 1e-2).unwrap();
    let w = 0.5f64.sqrt();
    for j in 0..=20 {
        let k = 0.5 * j as f64;
        let exact = 2.0 * (-k * k / 8.0).exp() * (-k * k / (8.0 * w)).exp();
        assert!((atom.structure_factor_total(k, 0.7).unwrap() - exact).abs() < 1e-10);
    }
}

#[test]
fn harmonic_quench_pipeline_matches_closed_form() {
    let [overlap, structure] =
        harmonium::oracle::moshinsky_quench(0.25, 1.0, 2.0, 5.0, 2000, 1e-3).unwrap();
    assert!(overlap.passed(), "{overlap:?}");
    assert!(structure.passed(), "{structure:?}");
}

#[test]
fn grid_density_of_a_propagated_state_keeps_two_electrons() {
    let profile = quench();
    let t_end = 2.0;
    let dt = 1e-3;
    let atom = MoshinskyAtom::new(0.25, profile.clone(), t_end, dt).unwrap();
    let interaction = Moshinsky::new(0.25).unwrap();
    let initial = atom.rm().state_on(&grid(), 0.0).unwrap();
    let s = cn_substeps(profile.as_ref(), t_end, dt).unwrap() as usize;
    let run = propagate(
        &initial,
        &interaction,
        profile.as_ref(),
        dt / s as f64,
        2000 * s,
        500 * s,
    )
    .unwrap();
    for snap in &run.snapshots {
        let t = snap.t();
        let rm = GridDensity::new(snap).unwrap();
        let count = electron_count(t, atom.cm(), &rm).unwrap();
        assert!((count - 2.0).abs() < 1e-6, "t={t}: {count}");
        for &r in &[0.0, 0.5, 1.5] {
            let numeric = density_3d(r, t, atom.cm(), &rm).unwrap();
            let exact = atom.density(r, t).unwrap();
            assert!((numeric - exact).abs() < 1e-5 * exact, "t={t} r={r}");
        }
    }
}

#[test]
fn static_densities_do_not_move() {
    let cases: Vec<(Box<dyn Interaction>, f64)> = vec![
        (Box::new(NoInteraction), 1.0),
        (Box::new(Moshinsky::new(0.25).unwrap()), 1.0),
        (Box::new(Coulomb::new(1.0).unwrap()), 0.5),
    ];
    for (interaction, w) in cases {
        let profile = Constant::new(w).unwrap();
        let cm = solve_trajectory(&profile, 10.0, 1e-3, CM_MASS).unwrap();
        let gs = relax_ground_state(interaction.as_ref(), w * w, &grid()).unwrap();
        let run = propagate(
            &gs.state,
            interaction.as_ref(),
            &profile,
            1e-3,
            10_000,
            2000,
        )
        .unwrap();
        let radii: Vec<f64> = (0..=20).map(|i| 0.25 * i as f64).collect();
        let reference: Vec<f64> = radii
            .iter()
            .map(|&r| density_3d(r, 0.0, &cm, &GridDensity::new(&gs.state).unwrap()).unwrap())
            .collect();
        for snap in &run.snapshots {
            let rm = GridDensity::new(snap).unwrap();
            for (r, n0) in radii.iter().zip(&reference) {
                let n = density_3d(*r, snap.t(), &cm, &rm).unwrap();
                assert!(
                    (n - n0).abs() < 1e-8 * n0,
                    "{} t={} r={r}",
                    interaction.name(),
                    snap.t()
                );
            }
        }
    }
}

#[test]
fn radial_transform_rejects_bad_grids() {
    assert!(radial_fourier_transform(&[0.0, 1.0], &[1.0, 1.0], 1.0).is_err());
    assert!(radial_fourier_transform(&[0.1, 0.2, 0.3], &[1.0; 3], 1.0).is_err());
    assert!(radial_fourier_transform(&[0.0, 0.1, 0.3], &[1.0; 3], 1.0).is_err());
}
