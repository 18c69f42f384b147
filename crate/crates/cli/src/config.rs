//! Sectioned `key = value` run configuration.
//!
//! ```text
//! [run]               name, mode (dynamics | eigenstate_2d), output_dir
//! [profile]           kind + the profile's own keys
//! [interaction]       kind + the interaction's own keys
//! [eigenstate]        n, m                     (eigenstate_2d only)
//! [grid]              b_max, n_points          (dynamics only)
//! [time]              t_end, dt, output_stride
//! [density]           r_max, r_points          (dynamics only)
//! [structure_factor]  k_max, k_points
//! ```
//!
//! `#` starts a comment. Unknown sections or keys are errors, and every
//! problem in a file is reported at once.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use harmonium::oscillator::{build_profile, step_count, FrequencyProfile};
use harmonium::registry::Params;
use harmonium::rm::{build_interaction, check_bound, Interaction, RadialGrid};

use crate::error::{CliError, ConfigIssue, Result};

pub const DEFAULT_DT: f64 = 1e-3;
pub const DEFAULT_B_MAX: f64 = 20.0;
pub const DEFAULT_N_POINTS: usize = 2000;
pub const DEFAULT_OUTPUT_STRIDE: usize = 100;
pub const MIN_N_POINTS: usize = 200;

const SECTIONS: [&str; 8] = [
    "run",
    "profile",
    "interaction",
    "eigenstate",
    "grid",
    "time",
    "density",
    "structure_factor",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Ground-state start, 3D densities and structure factors over time.
    Dynamics,
    /// Planar centre-of-mass eigenstate (n, m), structure factors only.
    Eigenstate2d,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Dynamics => "dynamics",
            Self::Eigenstate2d => "eigenstate_2d",
        }
    }
}

/// `points` uniform nodes on [0, max].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeSpec {
    pub max: f64,
    pub points: usize,
}

impl NodeSpec {
    pub fn nodes(&self) -> Vec<f64> {
        let step = self.max / (self.points - 1) as f64;
        (0..self.points).map(|i| i as f64 * step).collect()
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub name: String,
    pub mode: Mode,
    pub output_dir: PathBuf,
    pub profile: Arc<dyn FrequencyProfile>,
    pub interaction: Arc<dyn Interaction>,
    pub eigenstate: Option<(u32, u32)>,
    pub b_max: f64,
    pub n_points: usize,
    pub t_end: f64,
    pub dt: f64,
    pub output_stride: usize,
    pub density: Option<NodeSpec>,
    pub structure_factor: Option<NodeSpec>,
    /// Sections as given, with defaults filled in.
    pub echo: BTreeMap<String, BTreeMap<String, String>>,
}

impl RunConfig {
    pub fn n_steps(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }

    pub fn grid(&self) -> Result<RadialGrid> {
        Ok(RadialGrid::new(self.b_max, self.n_points)?)
    }
}

struct Collector {
    issues: Vec<ConfigIssue>,
}

impl Collector {
    fn take<T>(&mut self, context: &str, r: harmonium::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                let domain = matches!(e, harmonium::Error::Domain(_));
                self.issues.push(ConfigIssue {
                    message: format!("[{context}] {e}"),
                    domain,
                });
                None
            }
        }
    }

    fn push(&mut self, message: impl Into<String>) {
        self.issues.push(ConfigIssue::new(message));
    }
}

fn split_sections(text: &str, out: &mut Collector) -> BTreeMap<String, BTreeMap<String, String>> {
    let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                out.push(format!("line {line_no}: malformed section header `{line}`"));
                current = None;
                continue;
            };
            let name = name.trim().to_string();
            if !SECTIONS.contains(&name.as_str()) {
                out.push(format!("line {line_no}: unknown section [{name}]"));
                current = None;
                continue;
            }
            if sections.contains_key(&name) {
                out.push(format!("line {line_no}: section [{name}] appears twice"));
            }
            sections.entry(name.clone()).or_default();
            current = Some(name);
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            out.push(format!(
                "line {line_no}: expected `key = value`, got `{line}`"
            ));
            continue;
        };
        let (key, value) = (key.trim().to_string(), value.trim().to_string());
        let Some(section) = &current else {
            out.push(format!("line {line_no}: `{key}` outside any known section"));
            continue;
        };
        let entries = sections.get_mut(section).expect("section registered");
        if entries.insert(key.clone(), value).is_some() {
            out.push(format!(
                "line {line_no}: duplicate key `{key}` in [{section}]"
            ));
        }
    }
    sections
}

fn params_of(entries: Option<&BTreeMap<String, String>>, skip: &str) -> Params {
    let mut p = Params::new();
    for (k, v) in entries.into_iter().flatten() {
        if k != skip {
            p.insert(k.clone(), v.clone());
        }
    }
    p
}

fn report_unused(section: &str, params: &Params, out: &mut Collector) {
    for key in params.unused() {
        out.push(format!("[{section}] unknown key `{key}`"));
    }
}

fn positive(section: &str, key: &str, v: f64, out: &mut Collector) -> Option<f64> {
    if v > 0.0 {
        Some(v)
    } else {
        out.push(format!("[{section}] `{key}` must be positive, got {v}"));
        None
    }
}

fn node_spec(
    sections: &BTreeMap<String, BTreeMap<String, String>>,
    section: &str,
    max_key: &str,
    points_key: &str,
    out: &mut Collector,
) -> Option<NodeSpec> {
    let entries = sections.get(section)?;
    let p = params_of(Some(entries), "");
    let max = out.take(section, p.f64(max_key));
    let points = out.take(section, p.usize(points_key));
    report_unused(section, &p, out);
    let max = positive(section, max_key, max?, out)?;
    let points = points?;
    if points < 2 {
        out.push(format!(
            "[{section}] `{points_key}` must be at least 2, got {points}"
        ));
        return None;
    }
    Some(NodeSpec { max, points })
}

/// Parses and validates a configuration, reporting every problem found.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let mut out = Collector { issues: Vec::new() };
    let sections = split_sections(text, &mut out);
    let mut echo = sections.clone();

    // [run]
    let run = params_of(sections.get("run"), "");
    let name = match run.raw("name") {
        Some(n) if !n.is_empty() => Some(n.to_string()),
        _ => {
            out.push("[run] missing required key `name`");
            None
        }
    };
    let mode = match run.raw("mode").unwrap_or("dynamics") {
        "dynamics" => Some(Mode::Dynamics),
        "eigenstate_2d" => Some(Mode::Eigenstate2d),
        other => {
            out.push(format!(
                "[run] unknown mode `{other}` (known: dynamics, eigenstate_2d)"
            ));
            None
        }
    };
    let output_dir = run
        .raw("output_dir")
        .map(PathBuf::from)
        .or_else(|| name.as_ref().map(|n| PathBuf::from("output").join(n)));
    report_unused("run", &run, &mut out);

    // [profile] and [interaction] go through the registries.
    let profile = match sections.get("profile").and_then(|s| s.get("kind")) {
        Some(kind) => {
            let p = params_of(sections.get("profile"), "kind");
            let built = out.take("profile", build_profile(kind, &p));
            report_unused("profile", &p, &mut out);
            built
        }
        None => {
            out.push("[profile] missing required key `kind`");
            None
        }
    };
    let interaction = match sections.get("interaction").and_then(|s| s.get("kind")) {
        Some(kind) => {
            let p = params_of(sections.get("interaction"), "kind");
            let built = out.take("interaction", build_interaction(kind, &p));
            report_unused("interaction", &p, &mut out);
            built
        }
        None => {
            out.push("[interaction] missing required key `kind`");
            None
        }
    };

    // [time]
    let time = params_of(sections.get("time"), "");
    let t_end = out
        .take("time", time.f64("t_end"))
        .and_then(|v| positive("time", "t_end", v, &mut out));
    let dt = out
        .take("time", time.f64_or("dt", DEFAULT_DT))
        .and_then(|v| positive("time", "dt", v, &mut out));
    let output_stride = match time.raw("output_stride") {
        Some(_) => out.take("time", time.usize("output_stride")),
        None => Some(DEFAULT_OUTPUT_STRIDE),
    };
    if output_stride == Some(0) {
        out.push("[time] `output_stride` must be at least 1");
    }
    report_unused("time", &time, &mut out);
    if let (Some(t_end), Some(dt)) = (t_end, dt) {
        out.take("time", step_count(t_end, dt));
    }
    let entry = echo.entry("time".into()).or_default();
    entry
        .entry("dt".into())
        .or_insert_with(|| DEFAULT_DT.to_string());
    entry
        .entry("output_stride".into())
        .or_insert_with(|| DEFAULT_OUTPUT_STRIDE.to_string());

    // [grid]
    let (mut b_max, mut n_points) = (DEFAULT_B_MAX, DEFAULT_N_POINTS);
    if mode == Some(Mode::Dynamics) {
        let grid = params_of(sections.get("grid"), "");
        if let Some(v) = out.take("grid", grid.f64_or("b_max", DEFAULT_B_MAX)) {
            b_max = positive("grid", "b_max", v, &mut out).unwrap_or(DEFAULT_B_MAX);
        }
        if grid.contains("n_points") {
            if let Some(n) = out.take("grid", grid.usize("n_points")) {
                n_points = n;
            }
        }
        if n_points < MIN_N_POINTS {
            out.push(format!(
                "[grid] `n_points` must be at least {MIN_N_POINTS}, got {n_points}"
            ));
        }
        report_unused("grid", &grid, &mut out);
        let entry = echo.entry("grid".into()).or_default();
        entry.insert("b_max".into(), b_max.to_string());
        entry.insert("n_points".into(), n_points.to_string());
    } else if sections.contains_key("grid") {
        out.push("[grid] only used in dynamics mode");
    }

    // observables
    let density = node_spec(&sections, "density", "r_max", "r_points", &mut out);
    let structure_factor = node_spec(&sections, "structure_factor", "k_max", "k_points", &mut out);

    // [eigenstate]
    let mut eigenstate = None;
    match mode {
        Some(Mode::Eigenstate2d) => {
            let e = params_of(sections.get("eigenstate"), "");
            let n = out.take("eigenstate", e.usize("n"));
            let m = out.take("eigenstate", e.usize("m"));
            report_unused("eigenstate", &e, &mut out);
            if let (Some(n), Some(m)) = (n, m) {
                match (u32::try_from(n), u32::try_from(m)) {
                    (Ok(n), Ok(m)) => eigenstate = Some((n, m)),
                    _ => out.push("[eigenstate] quantum numbers too large"),
                }
            }
            if sections.contains_key("density") {
                out.push(
                    "[density] densities are defined only in dynamics mode, not eigenstate_2d",
                );
            }
            if !sections.contains_key("structure_factor") {
                out.push("[structure_factor] required in eigenstate_2d mode");
            }
            if let Some(i) = &interaction {
                if !i.is_harmonic() {
                    out.push(format!(
                        "[interaction] eigenstate_2d needs a closed-form relative channel \
                         (none or moshinsky), got `{}`",
                        i.name()
                    ));
                }
            }
        }
        Some(Mode::Dynamics) if sections.contains_key("eigenstate") => {
            out.push("[eigenstate] only used in eigenstate_2d mode");
        }
        _ => {}
    }

    // cross checks
    if let (Some(profile), Some(interaction), Some(t_end)) = (&profile, &interaction, t_end) {
        out.take(
            "interaction",
            check_bound(interaction.as_ref(), profile.as_ref(), t_end),
        );
        if mode == Some(Mode::Dynamics) && b_max > 0.0 && n_points >= MIN_N_POINTS {
            if let (Some((_, hi)), Ok(grid)) = (
                out.take("profile", profile.bounds(0.0, t_end)),
                RadialGrid::new(b_max, n_points),
            ) {
                out.take("grid", grid.check_resolution(hi));
            }
        }
    }

    if !out.issues.is_empty() {
        return Err(CliError::Config(out.issues));
    }
    Ok(RunConfig {
        name: name.expect("validated"),
        mode: mode.expect("validated"),
        output_dir: output_dir.expect("validated"),
        profile: profile.expect("validated"),
        interaction: interaction.expect("validated"),
        eigenstate,
        b_max,
        n_points,
        t_end: t_end.expect("validated"),
        dt: dt.expect("validated"),
        output_stride: output_stride.expect("validated"),
        density,
        structure_factor,
        echo,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "
        [run]
        name = minimal
        [profile]
        kind = constant
        omega = 1
        [interaction]
        kind = none
        [time]
        t_end = 1
    ";

    fn issues(text: &str) -> Vec<ConfigIssue> {
        match parse_config(text) {
            Err(CliError::Config(v)) => v,
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse_config(MINIMAL).unwrap();
        assert_eq!(c.dt, 1e-3);
        assert_eq!(c.b_max, 20.0);
        assert_eq!(c.n_points, 2000);
        assert_eq!(c.output_stride, DEFAULT_OUTPUT_STRIDE);
        assert_eq!(c.mode, Mode::Dynamics);
        assert_eq!(c.output_dir, PathBuf::from("output/minimal"));
        assert_eq!(c.echo["grid"]["n_points"], "2000");
        assert!(c.density.is_none() && c.structure_factor.is_none());
    }

    #[test]
    fn every_problem_is_reported() {
        let text = "
            [run]
            mode = sideways
            colour = blue
            [profile]
            kind = constant
            omega = 1
            omgea = 2
            [interaction]
            kind = none
            [time]
            t_end = 1
            dt = 0.3
            [mystery]
            stray line
        ";
        let found = issues(text);
        let all = found
            .iter()
            .map(|i| i.message.as_str())
            .collect::<Vec<_>>()
            .join("\n");
        for needle in [
            "`name`",
            "sideways",
            "`colour`",
            "`omgea`",
            "multiple",
            "[mystery]",
            "stray line",
        ] {
            assert!(all.contains(needle), "missing `{needle}` in\n{all}");
        }
    }

    #[test]
    fn unbound_harmonic_interaction_is_a_domain_problem() {
        let text = MINIMAL.replace("kind = none", "kind = moshinsky\nk = 0.6");
        let found = issues(&text);
        assert_eq!(found.len(), 1);
        assert!(found[0].domain);
        assert!(found[0].message.contains("unbound relative-motion channel"));
        assert_eq!(CliError::Config(found).exit_code(), 4);
    }

    #[test]
    fn planar_mode_rejects_densities_and_grid_interactions() {
        let text = "
            [run]
            name = planar
            mode = eigenstate_2d
            [profile]
            kind = constant
            omega = 1
            [interaction]
            kind = coulomb
            lambda = 1
            [eigenstate]
            n = 1
            m = 0
            [time]
            t_end = 1
            [density]
            r_max = 5
            r_points = 11
            [structure_factor]
            k_max = 5
            k_points = 11
        ";
        let all: Vec<String> = issues(text).into_iter().map(|i| i.message).collect();
        assert_eq!(all.len(), 2, "{all:?}");
        assert!(all.iter().any(|m| m.contains("only in dynamics mode")));
        assert!(all
            .iter()
            .any(|m| m.contains("closed-form relative channel")));
    }

    #[test]
    fn grid_checks() {
        let coarse = format!("{MINIMAL}\n[grid]\nn_points = 150");
        assert!(issues(&coarse)[0].message.contains("at least 200"));
        let stretched = format!("{MINIMAL}\n[grid]\nb_max = 400\nn_points = 200");
        assert!(issues(&stretched)[0].message.contains("oscillator length"));
    }

    #[test]
    fn node_specs() {
        let s = NodeSpec {
            max: 2.0,
            points: 5,
        };
        assert_eq!(s.nodes(), vec![0.0, 0.5, 1.0, 1.5, 2.0]);
    }
}
