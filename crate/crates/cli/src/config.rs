//! Run-configuration files: flat JSON with unit-suffixed keys, strict
//! validation (unknown keys are errors), and a fully materialized echo of
//! every default so runs are reproducible from their own output.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use serde::{Deserialize, Serialize};

use dressed_trap_core::{
    make_scenario, AtomSpecies, PhaseModulation, QuadrupoleField, RfFieldSpec, ScenarioKind,
    TrapConfiguration,
};

use crate::error::CliError;

/// Scenario selector: one of the named geometries, or the general
/// evaluation route with no constraint checking beyond type invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConfigKind {
    Scenario(ScenarioKind),
    General,
}

impl ConfigKind {
    pub fn name(&self) -> &'static str {
        match self {
            ConfigKind::Scenario(k) => k.name(),
            ConfigKind::General => "general",
        }
    }

    pub fn model(&self) -> dressed_trap_core::PotentialModel {
        match self {
            ConfigKind::Scenario(k) => dressed_trap_core::PotentialModel::ClosedForm(*k),
            ConfigKind::General => dressed_trap_core::PotentialModel::General,
        }
    }
}

fn kind_from_name(name: &str) -> Result<ConfigKind, CliError> {
    if name == "general" {
        return Ok(ConfigKind::General);
    }
    ScenarioKind::ALL
        .iter()
        .find(|k| k.name() == name)
        .map(|k| ConfigKind::Scenario(*k))
        .ok_or_else(|| {
            let mut names: Vec<&str> = ScenarioKind::ALL.iter().map(|k| k.name()).collect();
            names.push("general");
            CliError::Config(format!("unknown kind `{name}`; expected one of {}", names.join(", ")))
        })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    kind: Option<String>,
    #[serde(rename = "Bq_G_per_cm")]
    bq_g_per_cm: Option<f64>,
    #[serde(rename = "Bx_G")]
    bx_g: Option<f64>,
    #[serde(rename = "By_G")]
    by_g: Option<f64>,
    #[serde(rename = "Bz_G")]
    bz_g: Option<f64>,
    alpha_rad: Option<f64>,
    beta_rad: Option<f64>,
    #[serde(rename = "f_MHz")]
    f_mhz: Option<f64>,
    z0_um: Option<f64>,
    #[serde(rename = "F")]
    f_quantum: Option<f64>,
    #[serde(rename = "mF")]
    m_f: Option<f64>,
    #[serde(rename = "gF")]
    g_f: Option<f64>,
    mass_kg: Option<f64>,
    modulation: Option<String>,
    omega_l_rad_s: Option<f64>,
    omega_m_rad_s: Option<f64>,
    grid: Option<RawGridBlock>,
    time: Option<RawTimeBlock>,
    seeds: Option<Vec<[f64; 2]>>,
    simulate: Option<RawSimulateBlock>,
    sweep: Option<RawSweepBlock>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGridBlock {
    x_min_um: Option<f64>,
    x_max_um: Option<f64>,
    y_min_um: Option<f64>,
    y_max_um: Option<f64>,
    nx: Option<usize>,
    ny: Option<usize>,
    t_s: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTimeBlock {
    t0_s: Option<f64>,
    t1_s: Option<f64>,
    n_samples: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSimulateBlock {
    x0_um: Option<f64>,
    y0_um: Option<f64>,
    vx0_um_s: Option<f64>,
    vy0_um_s: Option<f64>,
    duration_s: Option<f64>,
    dt_s: Option<f64>,
    domain_radius_um: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweepBlock {
    #[serde(rename = "Bq_from_G_per_cm")]
    bq_from_g_per_cm: Option<f64>,
    #[serde(rename = "Bq_to_G_per_cm")]
    bq_to_g_per_cm: Option<f64>,
    n_points: Option<usize>,
    #[serde(rename = "f_MHz_values")]
    f_mhz_values: Option<Vec<f64>>,
}

/// Materialized grid settings.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct GridSettings {
    pub x_min_um: f64,
    pub x_max_um: f64,
    pub y_min_um: f64,
    pub y_max_um: f64,
    pub nx: usize,
    pub ny: usize,
    pub t_s: f64,
}

/// Materialized tracking window.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct TimeSettings {
    pub t0_s: f64,
    pub t1_s: f64,
    pub n_samples: usize,
}

/// Materialized trajectory settings.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct SimulateSettings {
    pub x0_um: f64,
    pub y0_um: f64,
    pub vx0_um_s: f64,
    pub vy0_um_s: f64,
    pub duration_s: f64,
    pub dt_s: f64,
    pub domain_radius_um: f64,
}

/// Materialized gradient-sweep settings.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SweepSettings {
    #[serde(rename = "Bq_from_G_per_cm")]
    pub bq_from_g_per_cm: f64,
    #[serde(rename = "Bq_to_G_per_cm")]
    pub bq_to_g_per_cm: f64,
    pub n_points: usize,
    #[serde(rename = "f_MHz_values")]
    pub f_mhz_values: Vec<f64>,
}

/// A fully validated run: the physical configuration plus materialized
/// per-command settings.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub kind: ConfigKind,
    pub config: TrapConfiguration,
    pub grid: GridSettings,
    pub time: Option<TimeSettings>,
    pub seeds: Vec<(f64, f64)>,
    pub simulate: Option<SimulateSettings>,
    pub sweep: Option<SweepSettings>,
}

/// The resolved-spec echo included in every summary output: all defaults
/// materialized, keys identical to the config schema.
#[derive(Debug, Clone, Serialize)]
pub struct ResolvedSpec {
    pub kind: &'static str,
    #[serde(rename = "Bq_G_per_cm")]
    pub bq_g_per_cm: f64,
    #[serde(rename = "Bx_G")]
    pub bx_g: f64,
    #[serde(rename = "By_G")]
    pub by_g: f64,
    #[serde(rename = "Bz_G")]
    pub bz_g: f64,
    pub alpha_rad: f64,
    pub beta_rad: f64,
    #[serde(rename = "f_MHz")]
    pub f_mhz: f64,
    pub z0_um: f64,
    #[serde(rename = "F")]
    pub f_quantum: f64,
    #[serde(rename = "mF")]
    pub m_f: f64,
    #[serde(rename = "gF")]
    pub g_f: f64,
    pub mass_kg: f64,
    pub modulation: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_l_rad_s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_m_rad_s: Option<f64>,
    pub grid: GridSettings,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time: Option<TimeSettings>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub seeds: Vec<(f64, f64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simulate: Option<SimulateSettings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepSettings>,
}

impl RunSpec {
    pub fn resolved(&self) -> ResolvedSpec {
        let rf = &self.config.rf;
        let (modulation, omega_l, omega_m) = match rf.modulation {
            PhaseModulation::None => ("none", None, None),
            PhaseModulation::Linear { rate_rad_s } => ("linear", Some(rate_rad_s), None),
            PhaseModulation::Periodic { rate_rad_s } => ("periodic", None, Some(rate_rad_s)),
        };
        ResolvedSpec {
            kind: self.kind.name(),
            bq_g_per_cm: self.config.quad.gradient_g_per_cm(),
            bx_g: rf.amp_x_g,
            by_g: rf.amp_y_g,
            bz_g: rf.amp_z_g,
            alpha_rad: rf.alpha_rad,
            beta_rad: rf.beta_rad,
            f_mhz: rf.omega_rad_s / (2.0 * std::f64::consts::PI) / 1.0e6,
            z0_um: self.config.z0_um,
            f_quantum: self.config.species.f,
            m_f: self.config.species.m_f,
            g_f: self.config.species.g_f,
            mass_kg: self.config.species.mass_kg,
            modulation,
            omega_l_rad_s: omega_l,
            omega_m_rad_s: omega_m,
            grid: self.grid,
            time: self.time,
            seeds: self.seeds.clone(),
            simulate: self.simulate,
            sweep: self.sweep.clone(),
        }
    }

    /// Modulation rate of the configuration, if any.
    pub fn modulation_rate(&self) -> Option<f64> {
        self.config.rf.modulation.rate_rad_s()
    }
}

pub fn parse_config(path: &Path) -> Result<RunSpec, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<RunSpec, CliError> {
    let raw: RawConfig = serde_json::from_str(text)
        .map_err(|e| CliError::Config(format!("config is not valid JSON for this schema: {e}")))?;
    validate(raw)
}

fn require<T>(value: Option<T>, key: &str, unit: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Config(format!("missing required key `{key}` ({unit})")))
}

fn check_positive(value: f64, key: &str, unit: &str) -> Result<f64, CliError> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CliError::Config(format!("`{key}` must be a positive number ({unit}), got {value}")))
    }
}

fn check_finite(value: f64, key: &str, unit: &str) -> Result<f64, CliError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::Config(format!("`{key}` must be finite ({unit}), got {value}")))
    }
}

fn validate(raw: RawConfig) -> Result<RunSpec, CliError> {
    let kind = kind_from_name(&require(raw.kind, "kind", "scenario name")?)?;

    let bq = check_positive(
        require(raw.bq_g_per_cm, "Bq_G_per_cm", "Gauss per centimetre")?,
        "Bq_G_per_cm",
        "Gauss per centimetre",
    )?;
    let f_mhz =
        check_positive(require(raw.f_mhz, "f_MHz", "megahertz")?, "f_MHz", "megahertz")?;
    let z0 = check_positive(
        require(raw.z0_um, "z0_um", "micrometres")?,
        "z0_um",
        "micrometres",
    )?;
    let omega = 2.0 * std::f64::consts::PI * f_mhz * 1.0e6;

    let rb = AtomSpecies::rb87();
    let species = AtomSpecies::new(
        raw.f_quantum.unwrap_or(rb.f),
        raw.m_f.unwrap_or(rb.m_f),
        raw.g_f.unwrap_or(rb.g_f),
        raw.mass_kg.unwrap_or(rb.mass_kg),
    )
    .map_err(|e| CliError::Config(format!("species keys `F`/`mF`/`gF`/`mass_kg`: {e}")))?;

    let bx = check_finite(raw.bx_g.unwrap_or(0.0), "Bx_G", "Gauss")?;
    let by = check_finite(raw.by_g.unwrap_or(0.0), "By_G", "Gauss")?;
    let bz = check_finite(raw.bz_g.unwrap_or(0.0), "Bz_G", "Gauss")?;
    // a ring-family kind pins alpha to -pi/2; supplying it explicitly is
    // allowed but must then satisfy the constraint check below
    let default_alpha = match kind {
        ConfigKind::Scenario(k) if k.is_ring_family() => -FRAC_PI_2,
        _ => 0.0,
    };
    let alpha = check_finite(raw.alpha_rad.unwrap_or(default_alpha), "alpha_rad", "radians")?;
    let beta = check_finite(raw.beta_rad.unwrap_or(0.0), "beta_rad", "radians")?;

    let default_modulation = match kind {
        ConfigKind::Scenario(ScenarioKind::RotatingWell) => "linear",
        ConfigKind::Scenario(ScenarioKind::OscillatingWell) => "periodic",
        _ => "none",
    };
    let modulation_name = raw.modulation.as_deref().unwrap_or(default_modulation);
    let modulation = match modulation_name {
        "none" => {
            if raw.omega_l_rad_s.is_some() {
                return Err(CliError::Config(
                    "`omega_l_rad_s` requires `modulation` = \"linear\"".into(),
                ));
            }
            if raw.omega_m_rad_s.is_some() {
                return Err(CliError::Config(
                    "`omega_m_rad_s` requires `modulation` = \"periodic\"".into(),
                ));
            }
            PhaseModulation::None
        }
        "linear" => PhaseModulation::Linear {
            rate_rad_s: check_positive(
                require(raw.omega_l_rad_s, "omega_l_rad_s", "radians per second")?,
                "omega_l_rad_s",
                "radians per second",
            )?,
        },
        "periodic" => PhaseModulation::Periodic {
            rate_rad_s: check_positive(
                require(raw.omega_m_rad_s, "omega_m_rad_s", "radians per second")?,
                "omega_m_rad_s",
                "radians per second",
            )?,
        },
        other => {
            return Err(CliError::Config(format!(
                "unknown `modulation` value `{other}`; expected none, linear, or periodic"
            )))
        }
    };

    let quad = QuadrupoleField::new(bq)
        .map_err(|e| CliError::Config(format!("`Bq_G_per_cm`: {e}")))?;
    let rf = RfFieldSpec::new(bx, by, bz, alpha, beta, omega, modulation)
        .map_err(|e| CliError::Config(e.to_string()))?;

    let config = match kind {
        ConfigKind::Scenario(k) => make_scenario(k, species, quad, rf, z0)
            .map_err(|e| CliError::Config(e.to_string()))?,
        ConfigKind::General => TrapConfiguration::new(species, quad, rf, z0)
            .map_err(|e| CliError::Config(e.to_string()))?,
    };

    let grid = {
        let g = raw.grid.unwrap_or(RawGridBlock {
            x_min_um: None,
            x_max_um: None,
            y_min_um: None,
            y_max_um: None,
            nx: None,
            ny: None,
            t_s: None,
        });
        let settings = GridSettings {
            x_min_um: check_finite(g.x_min_um.unwrap_or(-200.0), "grid.x_min_um", "micrometres")?,
            x_max_um: check_finite(g.x_max_um.unwrap_or(200.0), "grid.x_max_um", "micrometres")?,
            y_min_um: check_finite(g.y_min_um.unwrap_or(-200.0), "grid.y_min_um", "micrometres")?,
            y_max_um: check_finite(g.y_max_um.unwrap_or(200.0), "grid.y_max_um", "micrometres")?,
            nx: g.nx.unwrap_or(201),
            ny: g.ny.unwrap_or(201),
            t_s: check_finite(g.t_s.unwrap_or(0.0), "grid.t_s", "seconds")?,
        };
        if settings.nx < 2 || settings.ny < 2 {
            return Err(CliError::Config(format!(
                "`grid.nx`/`grid.ny` must be at least 2 (counts), got {}x{}",
                settings.nx, settings.ny
            )));
        }
        if settings.x_min_um >= settings.x_max_um || settings.y_min_um >= settings.y_max_um {
            return Err(CliError::Config(
                "`grid` bounds must satisfy x_min_um < x_max_um and y_min_um < y_max_um \
                 (micrometres)"
                    .into(),
            ));
        }
        settings
    };

    let time = match (raw.time, modulation) {
        (None, PhaseModulation::None) => None,
        (time, modulation) => {
            // default window: two modulation periods at 64 samples per
            // period (static kinds get a one-second window)
            let period = modulation.rate_rad_s().map(|r| 2.0 * std::f64::consts::PI / r);
            let t = time.unwrap_or(RawTimeBlock { t0_s: None, t1_s: None, n_samples: None });
            let t0 = check_finite(t.t0_s.unwrap_or(0.0), "time.t0_s", "seconds")?;
            let t1 = check_finite(
                t.t1_s.unwrap_or_else(|| t0 + period.map_or(1.0, |p| 2.0 * p)),
                "time.t1_s",
                "seconds",
            )?;
            if t1 <= t0 {
                return Err(CliError::Config(format!(
                    "`time.t1_s` must exceed `time.t0_s` (seconds), got {t0} .. {t1}"
                )));
            }
            let n_samples = t.n_samples.unwrap_or_else(|| {
                let periods = period.map_or(1.0, |p| (t1 - t0) / p);
                (64.0 * periods.max(1.0)).ceil() as usize + 1
            });
            if n_samples < 2 {
                return Err(CliError::Config(format!(
                    "`time.n_samples` must be at least 2 (count), got {n_samples}"
                )));
            }
            Some(TimeSettings { t0_s: t0, t1_s: t1, n_samples })
        }
    };

    let seeds = raw
        .seeds
        .unwrap_or_default()
        .into_iter()
        .map(|[x, y]| {
            check_finite(x, "seeds[..][0]", "micrometres")?;
            check_finite(y, "seeds[..][1]", "micrometres")?;
            Ok((x, y))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let simulate = match raw.simulate {
        None => None,
        Some(s) => Some(SimulateSettings {
            x0_um: check_finite(
                require(s.x0_um, "simulate.x0_um", "micrometres")?,
                "simulate.x0_um",
                "micrometres",
            )?,
            y0_um: check_finite(
                require(s.y0_um, "simulate.y0_um", "micrometres")?,
                "simulate.y0_um",
                "micrometres",
            )?,
            vx0_um_s: check_finite(
                s.vx0_um_s.unwrap_or(0.0),
                "simulate.vx0_um_s",
                "micrometres per second",
            )?,
            vy0_um_s: check_finite(
                s.vy0_um_s.unwrap_or(0.0),
                "simulate.vy0_um_s",
                "micrometres per second",
            )?,
            duration_s: check_positive(
                require(s.duration_s, "simulate.duration_s", "seconds")?,
                "simulate.duration_s",
                "seconds",
            )?,
            dt_s: check_positive(
                require(s.dt_s, "simulate.dt_s", "seconds")?,
                "simulate.dt_s",
                "seconds",
            )?,
            domain_radius_um: check_positive(
                s.domain_radius_um.unwrap_or(500.0),
                "simulate.domain_radius_um",
                "micrometres",
            )?,
        }),
    };

    let sweep = match raw.sweep {
        None => None,
        Some(s) => {
            let from = check_positive(
                require(s.bq_from_g_per_cm, "sweep.Bq_from_G_per_cm", "Gauss per centimetre")?,
                "sweep.Bq_from_G_per_cm",
                "Gauss per centimetre",
            )?;
            let to = check_positive(
                require(s.bq_to_g_per_cm, "sweep.Bq_to_G_per_cm", "Gauss per centimetre")?,
                "sweep.Bq_to_G_per_cm",
                "Gauss per centimetre",
            )?;
            if to <= from {
                return Err(CliError::Config(
                    "`sweep.Bq_to_G_per_cm` must exceed `sweep.Bq_from_G_per_cm`".into(),
                ));
            }
            let n_points = s.n_points.unwrap_or(96);
            if n_points < 2 {
                return Err(CliError::Config(format!(
                    "`sweep.n_points` must be at least 2 (count), got {n_points}"
                )));
            }
            let f_values = s.f_mhz_values.unwrap_or_else(|| vec![f_mhz]);
            for f in &f_values {
                check_positive(*f, "sweep.f_MHz_values[..]", "megahertz")?;
            }
            Some(SweepSettings {
                bq_from_g_per_cm: from,
                bq_to_g_per_cm: to,
                n_points,
                f_mhz_values: f_values,
            })
        }
    };

    Ok(RunSpec { kind, config, grid, time, seeds, simulate, sweep })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_ring_config_parses_with_defaults() {
        let spec = parse_config_str(
            r#"{"kind": "ring", "Bq_G_per_cm": 150.0, "Bx_G": 0.7, "By_G": 0.7,
                "f_MHz": 1.5, "z0_um": 10.0}"#,
        )
        .unwrap();
        assert_eq!(spec.kind, ConfigKind::Scenario(ScenarioKind::Ring));
        assert_eq!(spec.config.rf.alpha_rad, -FRAC_PI_2);
        assert_eq!(spec.config.species.m_f, 2.0);
        assert_eq!(spec.grid.nx, 201);
        let echo = spec.resolved();
        assert_eq!(echo.kind, "ring");
        assert_eq!(echo.mass_kg, 1.44316060e-25);
    }

    #[test]
    fn broken_ring_constraint_names_the_rule() {
        let err = parse_config_str(
            r#"{"kind": "ring", "Bq_G_per_cm": 150.0, "Bx_G": 0.7, "By_G": 0.5,
                "f_MHz": 1.5, "z0_um": 10.0}"#,
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("Bx = By"), "got: {msg}");
        assert_eq!(err.exit_code() as i32, 1);
    }

    #[test]
    fn empty_config_reports_missing_kind() {
        let err = parse_config_str("{}").unwrap_err();
        assert!(err.to_string().contains("`kind`"), "got: {err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = parse_config_str(
            r#"{"kind": "ring", "Bq_G_per_cm": 150.0, "Bx_G": 0.7, "By_G": 0.7,
                "f_MHz": 1.5, "z0_um": 10.0, "Bx_Gauss": 1.0}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("Bx_Gauss"), "got: {err}");
    }

    #[test]
    fn rotating_well_defaults_modulation_and_requires_rate() {
        let err = parse_config_str(
            r#"{"kind": "rotating_well", "Bq_G_per_cm": 150.0, "Bx_G": 0.7, "By_G": 0.7,
                "Bz_G": 0.7, "f_MHz": 1.5, "z0_um": 10.0}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("omega_l_rad_s"), "got: {err}");

        let spec = parse_config_str(
            r#"{"kind": "rotating_well", "Bq_G_per_cm": 150.0, "Bx_G": 0.7, "By_G": 0.7,
                "Bz_G": 0.7, "f_MHz": 1.5, "z0_um": 10.0, "omega_l_rad_s": 1.0}"#,
        )
        .unwrap();
        assert_eq!(spec.modulation_rate(), Some(1.0));
        // default tracking window: two periods, 64 samples each
        let time = spec.time.unwrap();
        assert!((time.t1_s - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        assert_eq!(time.n_samples, 129);
    }

    #[test]
    fn modulation_rate_without_modulation_is_an_error() {
        let err = parse_config_str(
            r#"{"kind": "ring", "Bq_G_per_cm": 150.0, "Bx_G": 0.7, "By_G": 0.7,
                "f_MHz": 1.5, "z0_um": 10.0, "omega_l_rad_s": 1.0}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("omega_l_rad_s"), "got: {err}");
    }

    #[test]
    fn general_kind_skips_scenario_constraints() {
        let spec = parse_config_str(
            r#"{"kind": "general", "Bq_G_per_cm": 150.0, "f_MHz": 1.5, "z0_um": 10.0}"#,
        )
        .unwrap();
        assert_eq!(spec.kind, ConfigKind::General);
        assert_eq!(spec.config.rf.amp_x_g, 0.0);
    }

    #[test]
    fn units_show_up_in_diagnostics() {
        let err = parse_config_str(
            r#"{"kind": "ring", "Bq_G_per_cm": 150.0, "Bx_G": 0.7, "By_G": 0.7,
                "f_MHz": 1.5, "z0_um": -4.0}"#,
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("z0_um") && msg.contains("micrometres"), "got: {msg}");
    }
}
