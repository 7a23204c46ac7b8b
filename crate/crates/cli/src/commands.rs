//! The four commands behind the binary. Each returns the summary document
//! it prints, so tests can drive the full pipeline in-process.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use dressed_trap_core::constants::rad_s_to_h_khz;
use dressed_trap_core::scenario::derived_quantities;
use dressed_trap_core::{
    adiabaticity_report, eval_grid, find_minima, frame, ring_radius, simulate_atom,
    track_minimum, well_azimuth, well_separation, AtomState, Error as CoreError, PlaneGrid,
    QuadrupoleField, RfFieldSpec, ScenarioKind, TrapConfiguration, WellAzimuthLaw,
};

use crate::config::{ConfigKind, ResolvedSpec, RunSpec};
use crate::error::CliError;
use crate::output::{write_grid_csv, write_trajectory_csv};

pub const SCHEMA_VERSION: u32 = 1;

fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("summary serializes");
    s.push('\n');
    s
}

fn create_output(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn write_summary_file(path: Option<&Path>, json: &str) -> Result<(), CliError> {
    if let Some(path) = path {
        let mut w = create_output(path)?;
        w.write_all(json.as_bytes())?;
        w.flush()?;
    }
    Ok(())
}

#[derive(Serialize)]
struct GridSummary {
    schema_version: u32,
    command: &'static str,
    resolved_spec: ResolvedSpec,
    out_path: String,
    rows: usize,
    failed_points: usize,
    v_min_h_khz: f64,
    v_max_h_khz: f64,
    min_x_um: f64,
    min_y_um: f64,
    min_rho_um: f64,
}

/// Evaluates the configured grid and writes the CSV to `out`
/// (default `grid.csv`). The returned summary reports the extrema and the
/// minimum cell.
pub fn cmd_grid(spec: &RunSpec, out: Option<&Path>, threads: usize) -> Result<String, CliError> {
    let g = &spec.grid;
    let plane = PlaneGrid::new(
        spec.config.z0_um,
        g.x_min_um,
        g.x_max_um,
        g.y_min_um,
        g.y_max_um,
        g.nx,
        g.ny,
    )?;
    let result = eval_grid(&spec.config, spec.kind.model(), plane, g.t_s, threads.max(1))?;

    let out_path = out.map(PathBuf::from).unwrap_or_else(|| PathBuf::from("grid.csv"));
    let mut w = create_output(&out_path)?;
    write_grid_csv(&mut w, &result)?;
    w.flush()?;

    let finite = result.v_over_hbar.iter().copied().filter(|v| v.is_finite());
    let v_min = finite.clone().fold(f64::INFINITY, f64::min);
    let v_max = finite.fold(f64::NEG_INFINITY, f64::max);
    let (mi, mj) = result.min_cell().ok_or_else(|| {
        CliError::Config("grid evaluation produced no finite values".to_string())
    })?;
    let (min_x, min_y) = (plane.x_at(mi), plane.y_at(mj));

    Ok(to_pretty_json(&GridSummary {
        schema_version: SCHEMA_VERSION,
        command: "grid",
        resolved_spec: spec.resolved(),
        out_path: out_path.display().to_string(),
        rows: result.v_over_hbar.len(),
        failed_points: result.failed_points,
        v_min_h_khz: rad_s_to_h_khz(v_min),
        v_max_h_khz: rad_s_to_h_khz(v_max),
        min_x_um: min_x,
        min_y_um: min_y,
        min_rho_um: min_x.hypot(min_y),
    }))
}

#[derive(Serialize)]
struct AzimuthLawJson {
    law: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi_min_rad: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rate_rad_s: Option<f64>,
}

#[derive(Serialize)]
struct MinimumJson {
    x_um: f64,
    y_um: f64,
    rho_um: f64,
    phi_min_rad: f64,
    v_h_khz: f64,
    hessian_lo_rad_s_per_um2: f64,
    hessian_hi_rad_s_per_um2: f64,
    classification: &'static str,
}

#[derive(Serialize)]
struct SweepRow {
    #[serde(rename = "Bq_G_per_cm")]
    bq_g_per_cm: f64,
    ring_radius_um: Vec<Option<f64>>,
}

#[derive(Serialize)]
struct SweepTable {
    #[serde(rename = "f_MHz_values")]
    f_mhz_values: Vec<f64>,
    rows: Vec<SweepRow>,
}

#[derive(Serialize)]
struct DeriveSummary {
    schema_version: u32,
    command: &'static str,
    resolved_spec: ResolvedSpec,
    ring_radius_um: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ring_radius_reason: Option<String>,
    well_separation_um: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    well_separation_reason: Option<String>,
    #[serde(rename = "critical_gradient_G_per_cm")]
    critical_gradient_g_per_cm: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    well_azimuth: Option<AzimuthLawJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    minima: Vec<MinimumJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sweep: Option<SweepTable>,
}

/// Reports the derived quantities of the configuration; optionally locates
/// minima from the configured seeds and sweeps the ring radius over a
/// quadrupole-gradient range.
pub fn cmd_derive(spec: &RunSpec, out: Option<&Path>) -> Result<String, CliError> {
    let config = &spec.config;
    let kind = match spec.kind {
        ConfigKind::Scenario(k) => Some(k),
        ConfigKind::General => None,
    };
    let q = derived_quantities(config, kind);

    let reason = |missing: &str| Some(format!("below resonance at the trapping plane ({missing})"));
    let ring_radius_reason =
        if q.ring_radius_um.is_none() { reason("no resonance ring") } else { None };
    let well_separation_reason =
        if q.well_separation_um.is_none() { reason("no double well") } else { None };

    let well_azimuth = q.well_azimuth.map(|law| match law {
        WellAzimuthLaw::Fixed { phi_rad } => {
            AzimuthLawJson { law: "fixed", phi_min_rad: Some(phi_rad), rate_rad_s: None }
        }
        WellAzimuthLaw::Rotating { rate_rad_s } => {
            AzimuthLawJson { law: "rotating", phi_min_rad: None, rate_rad_s: Some(rate_rad_s) }
        }
        WellAzimuthLaw::Oscillating { rate_rad_s } => {
            AzimuthLawJson { law: "oscillating", phi_min_rad: None, rate_rad_s: Some(rate_rad_s) }
        }
    });

    let minima = if spec.seeds.is_empty() {
        Vec::new()
    } else {
        find_minima(config, spec.kind.model(), spec.grid.t_s, &spec.seeds)?
            .into_iter()
            .map(|m| MinimumJson {
                x_um: m.x_um,
                y_um: m.y_um,
                rho_um: m.x_um.hypot(m.y_um),
                phi_min_rad: m.azimuth_rad,
                v_h_khz: rad_s_to_h_khz(m.v_over_hbar_rad_s),
                hessian_lo_rad_s_per_um2: m.hessian_eigs.0,
                hessian_hi_rad_s_per_um2: m.hessian_eigs.1,
                classification: match m.class {
                    dressed_trap_core::landscape::CurvatureClass::Minimum => "minimum",
                    dressed_trap_core::landscape::CurvatureClass::Saddle => "saddle",
                    dressed_trap_core::landscape::CurvatureClass::Degenerate => "degenerate",
                },
            })
            .collect()
    };

    let sweep = spec.sweep.as_ref().map(|s| {
        let rows = (0..s.n_points)
            .map(|i| {
                let bq = s.bq_from_g_per_cm
                    + (s.bq_to_g_per_cm - s.bq_from_g_per_cm) * i as f64
                        / (s.n_points - 1) as f64;
                let radii = s
                    .f_mhz_values
                    .iter()
                    .map(|f_mhz| {
                        let rf = RfFieldSpec {
                            omega_rad_s: 2.0 * PI * f_mhz * 1.0e6,
                            ..config.rf
                        };
                        let quad = QuadrupoleField::new(bq).expect("sweep gradients validated");
                        let swept =
                            TrapConfiguration::new(config.species, quad, rf, config.z0_um)
                                .expect("sweep keeps the validated species and plane");
                        ring_radius(&swept).ok()
                    })
                    .collect();
                SweepRow { bq_g_per_cm: bq, ring_radius_um: radii }
            })
            .collect();
        SweepTable { f_mhz_values: s.f_mhz_values.clone(), rows }
    });

    let json = to_pretty_json(&DeriveSummary {
        schema_version: SCHEMA_VERSION,
        command: "derive",
        resolved_spec: spec.resolved(),
        ring_radius_um: q.ring_radius_um,
        ring_radius_reason,
        well_separation_um: q.well_separation_um,
        well_separation_reason,
        critical_gradient_g_per_cm: q.critical_gradient_g_per_cm,
        well_azimuth,
        minima,
        sweep,
    });
    write_summary_file(out, &json)?;
    Ok(json)
}

#[derive(Serialize)]
struct TrackSample {
    t_s: f64,
    phi_min_rad: f64,
    rho_min_um: f64,
    v_min_h_khz: f64,
    phi_law_rad: f64,
}

#[derive(Serialize)]
struct AdiabaticityJson {
    modulation_rate_rad_s: f64,
    carrier_ratio: f64,
    rabi_min_rad_s: f64,
    rabi_ratio: f64,
    carrier_ok: bool,
    rabi_ok: bool,
}

#[derive(Serialize)]
struct TrackSummary {
    schema_version: u32,
    command: &'static str,
    resolved_spec: ResolvedSpec,
    series: Vec<TrackSample>,
    /// Largest circular distance between the tracked azimuth and the
    /// analytic law, radians.
    max_law_deviation_rad: f64,
    adiabaticity: AdiabaticityJson,
}

/// Tracks the moving potential minimum of a time-dependent scenario and
/// compares it against the analytic azimuth law.
pub fn cmd_track(spec: &RunSpec, out: Option<&Path>) -> Result<String, CliError> {
    let kind = match spec.kind {
        ConfigKind::Scenario(k) if k.is_time_dependent() => k,
        _ => {
            return Err(CliError::KindMismatch(format!(
                "scenario is not time-dependent: `{}`",
                spec.kind.name()
            )))
        }
    };
    let time = spec.time.expect("time settings are materialized for modulated kinds");
    let track = track_minimum(&spec.config, kind, time.t0_s, time.t1_s, time.n_samples)
        .map_err(CliError::from)?;

    let mut max_dev: f64 = 0.0;
    let series: Vec<TrackSample> = track
        .iter()
        .map(|p| {
            let law = well_azimuth(&spec.config, kind, p.t_s).map_err(CoreError::from)?;
            let dev = circular_distance(p.phi_rad, law);
            max_dev = max_dev.max(dev);
            Ok(TrackSample {
                t_s: p.t_s,
                phi_min_rad: p.phi_rad,
                rho_min_um: p.rho_um,
                v_min_h_khz: rad_s_to_h_khz(p.v_over_hbar_rad_s),
                phi_law_rad: law,
            })
        })
        .collect::<Result<_, CoreError>>()?;

    let report = adiabaticity_report(&spec.config, kind)?;
    let json = to_pretty_json(&TrackSummary {
        schema_version: SCHEMA_VERSION,
        command: "track",
        resolved_spec: spec.resolved(),
        series,
        max_law_deviation_rad: max_dev,
        adiabaticity: AdiabaticityJson {
            modulation_rate_rad_s: report.modulation_rate_rad_s,
            carrier_ratio: report.carrier_ratio,
            rabi_min_rad_s: report.rabi_min_rad_s,
            rabi_ratio: report.rabi_ratio,
            carrier_ok: report.carrier_ok,
            rabi_ok: report.rabi_ok,
        },
    });
    write_summary_file(out, &json)?;
    Ok(json)
}

fn circular_distance(a: f64, b: f64) -> f64 {
    frame::wrap_angle(a - b).abs()
}

#[derive(Serialize)]
struct SimulateSummary {
    schema_version: u32,
    command: &'static str,
    resolved_spec: ResolvedSpec,
    out_path: String,
    steps: usize,
    escaped: bool,
    /// Note attached when the trajectory was cut short at the domain edge.
    #[serde(skip_serializing_if = "Option::is_none")]
    truncation_note: Option<&'static str>,
    final_energy_drift_rel: f64,
    max_energy_drift_rel: f64,
}

/// Integrates a classical test atom and writes the trajectory CSV to
/// `out` (default `trajectory.csv`).
pub fn cmd_simulate(spec: &RunSpec, out: Option<&Path>) -> Result<String, CliError> {
    let settings = spec.simulate.as_ref().ok_or_else(|| {
        CliError::Config("missing `simulate` block (initial state, duration_s, dt_s)".into())
    })?;
    let start = AtomState {
        x_um: settings.x0_um,
        y_um: settings.y0_um,
        vx_um_s: settings.vx0_um_s,
        vy_um_s: settings.vy0_um_s,
        t_s: 0.0,
    };
    let traj = simulate_atom(
        &spec.config,
        spec.kind.model(),
        start,
        settings.duration_s,
        settings.dt_s,
        settings.domain_radius_um,
    )?;

    let out_path = out.map(PathBuf::from).unwrap_or_else(|| PathBuf::from("trajectory.csv"));
    let mut w = create_output(&out_path)?;
    write_trajectory_csv(&mut w, &traj)?;
    w.flush()?;

    let e0 = traj.energy_over_hbar[0];
    let drift = |e: f64| (e - e0).abs() / e0.abs().max(f64::MIN_POSITIVE);
    let final_drift = drift(*traj.energy_over_hbar.last().expect("at least one sample"));
    let max_drift = traj.energy_over_hbar.iter().copied().map(drift).fold(0.0, f64::max);

    Ok(to_pretty_json(&SimulateSummary {
        schema_version: SCHEMA_VERSION,
        command: "simulate",
        resolved_spec: spec.resolved(),
        out_path: out_path.display().to_string(),
        steps: traj.states.len() - 1,
        escaped: traj.escaped,
        truncation_note: traj
            .escaped
            .then_some("atom left the evaluation domain; partial trajectory written"),
        final_energy_drift_rel: final_drift,
        max_energy_drift_rel: max_drift,
    }))
}
