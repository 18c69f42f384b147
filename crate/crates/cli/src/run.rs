//! Scenario execution and the run manifest.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use harmonium::observables::{
    density_3d, electron_count, gaussian_structure_factor, structure_factor_cm,
    structure_factor_rm_numeric, structure_factor_total, GridDensity, MoshinskyAtom,
};
use harmonium::oscillator::{solve_trajectory, OscillatorTrajectory, CM_MASS, RM_MASS};
use harmonium::rm::{cn_substeps, relax_ground_state, PropagationDiagnostics, Propagator};
use serde_json::{json, Value};

use crate::config::{Mode, RunConfig};
use crate::error::{CliError, Result};
use crate::output::{CsvWriter, DENSITY, OSCILLATOR, STRUCTURE_FACTOR};

pub const MANIFEST: &str = "manifest.json";

/// Convergence and health figures recorded in the manifest.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Diagnostics {
    pub output_times: usize,
    pub wronskian_drift: Option<f64>,
    pub cn_substeps: Option<u32>,
    pub ground_state_energy: Option<f64>,
    pub relaxation_steps: Option<usize>,
    pub relaxation_residual: Option<f64>,
    pub propagation: Option<PropagationDiagnostics>,
    /// Largest |∫n·4πr²dr − 2| over the output times.
    pub electron_count_deviation: Option<f64>,
    /// Largest 1 − |⟨g_grid|g_closed⟩| over the output times (harmonic cases).
    pub closed_form_overlap_deficit: Option<f64>,
    /// Largest |f_tot − closed form| over outputs (harmonic cases).
    pub closed_form_structure_factor_deviation: Option<f64>,
}

impl Diagnostics {
    pub fn to_json(&self) -> Value {
        let p = self.propagation;
        json!({
            "output_times": self.output_times,
            "oscillator_wronskian_drift": self.wronskian_drift,
            "cn_substeps": self.cn_substeps,
            "ground_state_energy": self.ground_state_energy,
            "relaxation_steps": self.relaxation_steps,
            "relaxation_residual": self.relaxation_residual,
            "propagation_steps": p.map(|p| p.steps),
            "norm_drift": p.map(|p| p.norm_drift),
            "max_step_norm_drift": p.map(|p| p.max_step_norm_drift),
            "max_boundary_amplitude": p.map(|p| p.max_boundary_amplitude),
            "electron_count_deviation": self.electron_count_deviation,
            "closed_form_overlap_deficit": self.closed_form_overlap_deficit,
            "closed_form_structure_factor_deviation": self.closed_form_structure_factor_deviation,
        })
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub output_dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub diagnostics: Diagnostics,
    pub wall_clock_seconds: f64,
}

fn max_into(slot: &mut Option<f64>, v: f64) {
    *slot = Some(slot.map_or(v, |s| s.max(v)));
}

/// Executes a validated configuration, writing the CSVs and the manifest
/// into `config.output_dir`. The manifest is written whether the run
/// completes or fails.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let dir = config.output_dir.clone();
    std::fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    let start = Instant::now();
    let mut diag = Diagnostics::default();
    let mut files = Vec::new();
    let result = match config.mode {
        Mode::Dynamics => dynamics(config, &dir, &mut diag, &mut files),
        Mode::Eigenstate2d => eigenstate_2d(config, &dir, &mut diag, &mut files),
    };
    let wall = start.elapsed().as_secs_f64();
    let error = result
        .as_ref()
        .err()
        .map(|e| json!({"kind": e.kind(), "message": e.to_string(), "exit_code": e.exit_code()}));
    let manifest = json!({
        "schema": "harmonium.manifest v1",
        "code_version": env!("CARGO_PKG_VERSION"),
        "status": if result.is_ok() { "completed" } else { "failed" },
        "error": error,
        "config": config.echo,
        "wall_clock_seconds": wall,
        "diagnostics": diag.to_json(),
        "outputs": files
            .iter()
            .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
            .collect::<Vec<_>>(),
    });
    let path = dir.join(MANIFEST);
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    let written = std::fs::write(&path, text + "\n").map_err(|e| CliError::io(&path, e));
    result?;
    written?;
    files.push(path);
    Ok(RunOutcome {
        output_dir: dir,
        files,
        diagnostics: diag,
        wall_clock_seconds: wall,
    })
}

struct Writers {
    oscillator: CsvWriter,
    density: Option<CsvWriter>,
    structure: Option<CsvWriter>,
}

impl Writers {
    fn open(config: &RunConfig, dir: &Path) -> Result<Self> {
        Ok(Self {
            oscillator: CsvWriter::create(dir.join("oscillator.csv"), OSCILLATOR)?,
            density: match config.density {
                Some(_) => Some(CsvWriter::create(dir.join("density.csv"), DENSITY)?),
                None => None,
            },
            structure: match config.structure_factor {
                Some(_) => Some(CsvWriter::create(
                    dir.join("structure_factor.csv"),
                    STRUCTURE_FACTOR,
                )?),
                None => None,
            },
        })
    }

    fn oscillator_row(&mut self, cm: &OscillatorTrajectory, i: usize) -> Result<()> {
        self.oscillator
            .row(&[cm.times()[i], cm.abs_x(i), cm.phi()[i], cm.phi_dot()[i]])
    }

    fn finish(self, files: &mut Vec<PathBuf>) -> Result<()> {
        files.push(self.oscillator.finish()?);
        if let Some(w) = self.density {
            files.push(w.finish()?);
        }
        if let Some(w) = self.structure {
            files.push(w.finish()?);
        }
        Ok(())
    }
}

/// Closed-form atom for harmonic interactions (K = 0 for none).
fn closed_form(config: &RunConfig) -> Result<Option<MoshinskyAtom>> {
    if !config.interaction.is_harmonic() {
        return Ok(None);
    }
    let k = config.interaction.frequency_shift() * RM_MASS;
    Ok(Some(MoshinskyAtom::new(
        k,
        config.profile.clone(),
        config.t_end,
        config.dt,
    )?))
}

fn dynamics(
    config: &RunConfig,
    dir: &Path,
    diag: &mut Diagnostics,
    files: &mut Vec<PathBuf>,
) -> Result<()> {
    let profile = config.profile.as_ref();
    let interaction = config.interaction.as_ref();
    let atom = closed_form(config)?;
    let cm = match &atom {
        Some(a) => a.cm().clone(),
        None => Arc::new(solve_trajectory(profile, config.t_end, config.dt, CM_MASS)?),
    };
    diag.wronskian_drift = Some(cm.wronskian_drift());

    let grid = config.grid()?;
    let gs = relax_ground_state(interaction, profile.initial_omega_sq()?, &grid)?;
    diag.ground_state_energy = Some(gs.energy);
    diag.relaxation_steps = Some(gs.relaxation_steps);
    diag.relaxation_residual = Some(gs.residual);

    let substeps = cn_substeps(profile, config.t_end, config.dt)?;
    diag.cn_substeps = Some(substeps);
    let mut prop = Propagator::new(
        gs.state,
        interaction,
        profile,
        config.dt / f64::from(substeps),
    )?;
    diag.propagation = Some(prop.diagnostics());

    let r_nodes = config.density.map(|d| d.nodes()).unwrap_or_default();
    let k_nodes = config
        .structure_factor
        .map(|s| s.nodes())
        .unwrap_or_default();
    let mut out = Writers::open(config, dir)?;
    let n = config.n_steps();
    for i in 0..=n {
        if i % config.output_stride == 0 {
            let t = cm.times()[i];
            let state = prop.state();
            diag.output_times += 1;
            out.oscillator_row(&cm, i)?;

            let rm = GridDensity::new(state)?;
            let count = electron_count(t, &cm, &rm)?;
            max_into(&mut diag.electron_count_deviation, (count - 2.0).abs());
            if let Some(w) = &mut out.density {
                for &r in &r_nodes {
                    w.row(&[t, r, density_3d(r, t, &cm, &rm)?])?;
                }
            }
            let rate = cm.sample(i).mass_phi_dot();
            if let Some(atom) = &atom {
                let closed = atom.rm().state_on(&grid, t)?;
                let deficit = 1.0 - closed.overlap(state)?.norm();
                max_into(&mut diag.closed_form_overlap_deficit, deficit);
            }
            if let Some(w) = &mut out.structure {
                for &k in &k_nodes {
                    let f_cm = gaussian_structure_factor(rate, k)?;
                    let f_rm = structure_factor_rm_numeric(state, k);
                    let f_tot = structure_factor_total(f_cm, f_rm);
                    w.row(&[t, k, f_cm, f_rm, f_tot])?;
                    if let Some(atom) = &atom {
                        let dev = (f_tot - atom.structure_factor_total(k, t)?).abs();
                        max_into(&mut diag.closed_form_structure_factor_deviation, dev);
                    }
                }
            }
        }
        if i < n {
            for _ in 0..substeps {
                let stepped = prop.step();
                diag.propagation = Some(prop.diagnostics());
                stepped?;
            }
        }
    }
    out.finish(files)
}

fn eigenstate_2d(
    config: &RunConfig,
    dir: &Path,
    diag: &mut Diagnostics,
    files: &mut Vec<PathBuf>,
) -> Result<()> {
    let (n, m) = config.eigenstate.expect("validated eigenstate");
    structure_factor_cm(n, m, 1.0, 0.0)?;
    let atom = closed_form(config)?.expect("validated harmonic interaction");
    let cm = atom.cm().clone();
    diag.wronskian_drift = Some(cm.wronskian_drift());
    let k_nodes = config
        .structure_factor
        .map(|s| s.nodes())
        .unwrap_or_default();
    let mut out = Writers::open(config, dir)?;
    for i in (0..=config.n_steps()).step_by(config.output_stride) {
        let t = cm.times()[i];
        diag.output_times += 1;
        out.oscillator_row(&cm, i)?;
        let rate = cm.sample(i).mass_phi_dot();
        let rm_rate = atom.rm().mass_phi_dot(t)?;
        if let Some(w) = &mut out.structure {
            for &k in &k_nodes {
                let f_cm = structure_factor_cm(n, m, rate, k)?;
                let f_rm = gaussian_structure_factor(rm_rate, 0.5 * k)?;
                w.row(&[t, k, f_cm, f_rm, structure_factor_total(f_cm, f_rm)])?;
            }
        }
    }
    out.finish(files)
}
