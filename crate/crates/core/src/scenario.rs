//! Named trap geometries, their closed-form potentials on the trapping
//! plane, and derived quantities (well separation, ring radius, azimuth
//! laws).
//!
//! Each geometry constrains the RF field:
//!
//! | kind              | constraint                                              |
//! |-------------------|---------------------------------------------------------|
//! | `DoubleWell`      | x-polarized: B_y = B_z = 0                              |
//! | `Ring`            | circular: B_x = B_y, B_z = 0, α = −π/2                  |
//! | `SplitArcs`       | elliptical: B_x ≠ B_y, B_z = 0, α = −π/2                |
//! | `AsymSplitArcs`   | split arcs plus B_z > 0                                 |
//! | `AsymRing`        | ring plus B_z > 0                                       |
//! | `RotatingWell`    | asym ring with linear phase modulation β(t) = ω_l·t     |
//! | `OscillatingWell` | asym ring with periodic modulation β(t) = π·cos(ω_m·t)  |
//!
//! The closed forms are specializations of the general Rabi expression and
//! are only valid under their constraints, so constraint violations are
//! hard errors. A circular component quoted as cos(ωt + π/2) corresponds
//! to α = −π/2 under this crate's cos(ωt − α) sign convention; storing the
//! opposite sign flips the coupling cross term and yields a maximum where
//! the ring minimum should be.

use std::f64::consts::FRAC_PI_2;

use crate::constants::CM_PER_UM;
use crate::dressed::{assemble_sample, detuning_on_plane, potential, DressedSample};
use crate::error::{Error, Result};
use crate::field::{PhaseModulation, Position, QuadrupoleField, RfFieldSpec};
use crate::frame::wrap_angle;
use crate::species::AtomSpecies;

/// The named trapping geometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    DoubleWell,
    Ring,
    SplitArcs,
    AsymSplitArcs,
    AsymRing,
    RotatingWell,
    OscillatingWell,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 7] = [
        ScenarioKind::DoubleWell,
        ScenarioKind::Ring,
        ScenarioKind::SplitArcs,
        ScenarioKind::AsymSplitArcs,
        ScenarioKind::AsymRing,
        ScenarioKind::RotatingWell,
        ScenarioKind::OscillatingWell,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::DoubleWell => "double_well",
            ScenarioKind::Ring => "ring",
            ScenarioKind::SplitArcs => "split_arcs",
            ScenarioKind::AsymSplitArcs => "asym_split_arcs",
            ScenarioKind::AsymRing => "asym_ring",
            ScenarioKind::RotatingWell => "rotating_well",
            ScenarioKind::OscillatingWell => "oscillating_well",
        }
    }

    pub fn is_time_dependent(&self) -> bool {
        matches!(self, ScenarioKind::RotatingWell | ScenarioKind::OscillatingWell)
    }

    /// Kinds whose in-plane minima sit on the resonance ring.
    pub fn is_ring_family(&self) -> bool {
        !matches!(self, ScenarioKind::DoubleWell)
    }

    /// Kinds with a single azimuthal well on the ring, locatable by an
    /// azimuth law (B_z-tilted geometries).
    pub fn has_azimuthal_well(&self) -> bool {
        matches!(
            self,
            ScenarioKind::AsymRing | ScenarioKind::RotatingWell | ScenarioKind::OscillatingWell
        )
    }
}

/// Complete input for a trap evaluation: atom, static trap, RF field, and
/// trapping-plane height (the plane is z = −z0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapConfiguration {
    pub species: AtomSpecies,
    pub quad: QuadrupoleField,
    pub rf: RfFieldSpec,
    pub z0_um: f64,
}

impl TrapConfiguration {
    pub fn new(
        species: AtomSpecies,
        quad: QuadrupoleField,
        rf: RfFieldSpec,
        z0_um: f64,
    ) -> Result<Self> {
        if !(z0_um > 0.0) || !z0_um.is_finite() {
            return Err(Error::InvalidPlane(z0_um));
        }
        if !species.is_low_field_seeking() {
            return Err(Error::InvalidParameter(format!(
                "state |F={}, mF={}> with gF={} is not low-field seeking (mF*gF must be > 0)",
                species.f, species.m_f, species.g_f
            )));
        }
        Ok(Self { species, quad, rf, z0_um })
    }
}

const CIRCULAR_ALPHA_TOL: f64 = 1e-12;

fn require(kind: ScenarioKind, ok: bool, constraint: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ScenarioViolation { kind: kind.name(), constraint: constraint.to_string() })
    }
}

/// Checks the RF constraints of `kind` against a configuration.
pub fn validate_kind(kind: ScenarioKind, config: &TrapConfiguration) -> Result<()> {
    let rf = &config.rf;
    let circular = (rf.alpha_rad + FRAC_PI_2).abs() <= CIRCULAR_ALPHA_TOL;
    match kind {
        ScenarioKind::DoubleWell => {
            require(kind, rf.amp_x_g > 0.0, "Bx must be positive")?;
            require(kind, rf.amp_y_g == 0.0 && rf.amp_z_g == 0.0, "requires By = Bz = 0")?;
            require(kind, rf.modulation.is_static(), "requires no phase modulation")?;
        }
        ScenarioKind::Ring => {
            require(kind, rf.amp_x_g > 0.0 && rf.amp_x_g == rf.amp_y_g, "requires Bx = By > 0")?;
            require(kind, rf.amp_z_g == 0.0, "requires Bz = 0")?;
            require(kind, circular, "requires alpha = -pi/2 (circular polarization)")?;
            require(kind, rf.modulation.is_static(), "requires no phase modulation")?;
        }
        ScenarioKind::SplitArcs => {
            require(
                kind,
                rf.amp_x_g > 0.0 && rf.amp_y_g > 0.0 && rf.amp_x_g != rf.amp_y_g,
                "requires Bx != By with both positive",
            )?;
            require(kind, rf.amp_z_g == 0.0, "requires Bz = 0")?;
            require(kind, circular, "requires alpha = -pi/2 (circular polarization)")?;
            require(kind, rf.modulation.is_static(), "requires no phase modulation")?;
        }
        ScenarioKind::AsymSplitArcs => {
            require(
                kind,
                rf.amp_x_g > 0.0 && rf.amp_y_g > 0.0 && rf.amp_x_g != rf.amp_y_g,
                "requires Bx != By with both positive",
            )?;
            require(kind, rf.amp_z_g > 0.0, "requires Bz > 0")?;
            require(kind, circular, "requires alpha = -pi/2 (circular polarization)")?;
            require(kind, rf.modulation.is_static(), "requires no phase modulation")?;
        }
        ScenarioKind::AsymRing => {
            require(kind, rf.amp_x_g > 0.0 && rf.amp_x_g == rf.amp_y_g, "requires Bx = By > 0")?;
            require(kind, rf.amp_z_g > 0.0, "requires Bz > 0")?;
            require(kind, circular, "requires alpha = -pi/2 (circular polarization)")?;
            require(kind, rf.modulation.is_static(), "requires no phase modulation")?;
        }
        ScenarioKind::RotatingWell | ScenarioKind::OscillatingWell => {
            require(kind, rf.amp_x_g > 0.0 && rf.amp_x_g == rf.amp_y_g, "requires Bx = By > 0")?;
            require(kind, rf.amp_z_g > 0.0, "requires Bz > 0")?;
            require(kind, circular, "requires alpha = -pi/2 (circular polarization)")?;
            let want_linear = kind == ScenarioKind::RotatingWell;
            match (want_linear, rf.modulation) {
                (true, PhaseModulation::Linear { .. }) => {}
                (false, PhaseModulation::Periodic { .. }) => {}
                (true, _) => return require(kind, false, "requires linear phase modulation"),
                (false, _) => return require(kind, false, "requires periodic phase modulation"),
            }
        }
    }
    Ok(())
}

/// Builds and validates a configuration for a named geometry.
pub fn make_scenario(
    kind: ScenarioKind,
    species: AtomSpecies,
    quad: QuadrupoleField,
    rf: RfFieldSpec,
    z0_um: f64,
) -> Result<TrapConfiguration> {
    let config = TrapConfiguration::new(species, quad, rf, z0_um)?;
    validate_kind(kind, &config)?;
    Ok(config)
}

/// Which evaluation route to use for a potential: the general expression,
/// or a scenario's dedicated closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialModel {
    General,
    ClosedForm(ScenarioKind),
}

impl PotentialModel {
    /// Dressed sample on the trapping plane z = −z0 at (x, y) and time t.
    pub fn sample(
        &self,
        config: &TrapConfiguration,
        x_um: f64,
        y_um: f64,
        t_s: f64,
    ) -> Result<DressedSample> {
        match self {
            PotentialModel::General => {
                let r = Position::new(x_um, y_um, -config.z0_um);
                potential(&config.species, config.quad, &config.rf, r, t_s)
            }
            PotentialModel::ClosedForm(kind) => closed_form_sample(config, *kind, x_um, y_um, t_s),
        }
    }

    /// V/ħ on the trapping plane.
    pub fn v_over_hbar(
        &self,
        config: &TrapConfiguration,
        x_um: f64,
        y_um: f64,
        t_s: f64,
    ) -> Result<f64> {
        Ok(self.sample(config, x_um, y_um, t_s)?.v_over_hbar_rad_s)
    }
}

/// Dedicated closed-form evaluation for a scenario kind, as a full sample.
///
/// Matches the general route to better than 1e−10 relative everywhere (the
/// scenario test suite holds the two against each other).
pub fn closed_form_sample(
    config: &TrapConfiguration,
    kind: ScenarioKind,
    x_um: f64,
    y_um: f64,
    t_s: f64,
) -> Result<DressedSample> {
    validate_kind(kind, config)?;
    let rf = &config.rf;
    let z0 = config.z0_um;
    let rho2 = x_um * x_um + y_um * y_um;
    let d2 = rho2 + 4.0 * z0 * z0;
    let d = d2.sqrt();
    let (bx, by, bz) = (rf.amp_x_g, rf.amp_y_g, rf.amp_z_g);

    let bracket = match kind {
        ScenarioKind::DoubleWell => {
            if rho2 == 0.0 {
                bx * bx
            } else {
                bx * bx / rho2 * (4.0 * x_um * x_um * z0 * z0 / d2 + y_um * y_um)
            }
        }
        ScenarioKind::Ring => bx * bx * ring_bracket(z0, d),
        ScenarioKind::SplitArcs => split_arc_bracket(bx, by, x_um, y_um, z0, rho2, d),
        ScenarioKind::AsymSplitArcs => {
            let beta = rf.beta_eff(t_s);
            split_arc_bracket(bx, by, x_um, y_um, z0, rho2, d)
                + bz * bz * rho2 / d2
                + 4.0 * by * bz * y_um * z0 * beta.sin() / d2
                - 2.0 * by * bz * x_um * beta.cos() / d
                - 4.0 * bz * bx * z0 * x_um * beta.cos() / d2
                + 2.0 * bz * bx * y_um * beta.sin() / d
        }
        // the three tilted-ring kinds share one spatial form; only the
        // effective phase law differs
        ScenarioKind::AsymRing | ScenarioKind::RotatingWell | ScenarioKind::OscillatingWell => {
            let beta = rf.beta_eff(t_s);
            bx * bx * ring_bracket(z0, d) + bz * bz * rho2 / d2
                - 2.0 * bx * bz * (x_um * beta.cos() - y_um * beta.sin()) / d
                    * (2.0 * z0 / d + 1.0)
        }
    };

    let half_coupling = 0.5 * config.species.gyromagnetic_rad_s_per_g().abs();
    let rabi = half_coupling * bracket.max(0.0).sqrt();
    let delta =
        detuning_on_plane(&config.species, config.quad, z0, rho2.sqrt(), rf.omega_rad_s)?;
    Ok(assemble_sample(
        &config.species,
        rf,
        Position::new(x_um, y_um, -z0),
        t_s,
        delta,
        rabi,
    ))
}

/// V/ħ from the scenario's closed form.
pub fn closed_form_potential(
    config: &TrapConfiguration,
    kind: ScenarioKind,
    x_um: f64,
    y_um: f64,
    t_s: f64,
) -> Result<f64> {
    Ok(closed_form_sample(config, kind, x_um, y_um, t_s)?.v_over_hbar_rad_s)
}

fn ring_bracket(z0: f64, d: f64) -> f64 {
    4.0 * z0 * z0 / (d * d) + 4.0 * z0 / d + 1.0
}

fn split_arc_bracket(bx: f64, by: f64, x: f64, y: f64, z0: f64, rho2: f64, d: f64) -> f64 {
    if rho2 == 0.0 {
        return (bx + by) * (bx + by);
    }
    let d2 = d * d;
    4.0 * z0 * z0 / d2 * ((bx * bx * x * x + by * by * y * y) / rho2)
        + (bx * bx * y * y + by * by * x * x) / rho2
        + 4.0 * bx * by * z0 / d
}

/// ħω/(g_F μ_B B_0^S) with B_0^S = 2·B_q·z0, the knob every in-plane
/// resonance quantity is built from.
fn resonance_ratio(species: &AtomSpecies, quad: QuadrupoleField, z0_um: f64, omega: f64) -> f64 {
    let b0 = 2.0 * quad.gradient_g_per_cm() * z0_um * CM_PER_UM;
    omega / (species.gyromagnetic_rad_s_per_g() * b0)
}

/// Double-well separation d = 4z0·√((ħω/(2 g_F μ_B z0 B_q))² − 1).
pub fn well_separation(config: &TrapConfiguration) -> Result<f64> {
    let ratio =
        resonance_ratio(&config.species, config.quad, config.z0_um, config.rf.omega_rad_s);
    if ratio <= 1.0 {
        return Err(Error::NoDoubleWell);
    }
    Ok(4.0 * config.z0_um * (ratio * ratio - 1.0).sqrt())
}

/// Resonance-ring radius R = 2z0·√((ħω/(g_F μ_B B_0^S))² − 1); exactly
/// half the double-well separation.
pub fn ring_radius(config: &TrapConfiguration) -> Result<f64> {
    let ratio =
        resonance_ratio(&config.species, config.quad, config.z0_um, config.rf.omega_rad_s);
    if ratio <= 1.0 {
        return Err(Error::NoRing);
    }
    Ok(2.0 * config.z0_um * (ratio * ratio - 1.0).sqrt())
}

/// Quadrupole gradient at which the resonance ring collapses to a point
/// (ħω = g_F μ_B B_0^S), in G/cm.
pub fn critical_gradient(species: &AtomSpecies, omega_rad_s: f64, z0_um: f64) -> f64 {
    omega_rad_s / (species.gyromagnetic_rad_s_per_g() * 2.0 * z0_um * CM_PER_UM)
}

/// Analytic azimuth of the potential well on the ring, φ_min = −β(t):
/// constant −β for the static tilted ring, −ω_l·t for linear modulation,
/// −π·cos(ω_m·t) for periodic modulation (kept unwrapped so the turning
/// points land on ±π).
pub fn well_azimuth(config: &TrapConfiguration, kind: ScenarioKind, t_s: f64) -> Result<f64> {
    if !kind.has_azimuthal_well() {
        return Err(Error::KindMismatch {
            expected: "a kind with an azimuthal well (asym_ring, rotating_well, oscillating_well)",
            got: kind.name(),
        });
    }
    validate_kind(kind, config)?;
    let phi = -config.rf.beta_eff(t_s);
    match kind {
        ScenarioKind::OscillatingWell => Ok(phi),
        _ => Ok(wrap_angle(phi)),
    }
}

/// Time law of the azimuthal well for a configuration, if it has one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WellAzimuthLaw {
    /// φ_min = −β, constant.
    Fixed { phi_rad: f64 },
    /// φ_min(t) = −ω_l·t.
    Rotating { rate_rad_s: f64 },
    /// φ_min(t) = −π·cos(ω_m·t); the rotation sense reverses every π/ω_m.
    Oscillating { rate_rad_s: f64 },
}

/// Derived quantities of a configuration: well separation, ring radius
/// (when the RF is above resonance at the plane centre), and the azimuth
/// law for kinds with a tilted well.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedQuantities {
    pub well_separation_um: Option<f64>,
    pub ring_radius_um: Option<f64>,
    pub critical_gradient_g_per_cm: f64,
    pub well_azimuth: Option<WellAzimuthLaw>,
}

pub fn derived_quantities(config: &TrapConfiguration, kind: Option<ScenarioKind>) -> DerivedQuantities {
    let well_azimuth = match (kind, config.rf.modulation) {
        (Some(k), PhaseModulation::None) if k.has_azimuthal_well() => {
            Some(WellAzimuthLaw::Fixed { phi_rad: wrap_angle(-config.rf.beta_rad) })
        }
        (Some(k), PhaseModulation::Linear { rate_rad_s }) if k.has_azimuthal_well() => {
            Some(WellAzimuthLaw::Rotating { rate_rad_s })
        }
        (Some(k), PhaseModulation::Periodic { rate_rad_s }) if k.has_azimuthal_well() => {
            Some(WellAzimuthLaw::Oscillating { rate_rad_s })
        }
        _ => None,
    };
    DerivedQuantities {
        well_separation_um: well_separation(config).ok(),
        ring_radius_um: ring_radius(config).ok(),
        critical_gradient_g_per_cm: critical_gradient(
            &config.species,
            config.rf.omega_rad_s,
            config.z0_um,
        ),
        well_azimuth,
    }
}

/// Convenience constructors for the RF specs of each named geometry.
pub mod rf_specs {
    use super::*;

    pub fn double_well(amp_x_g: f64, omega_rad_s: f64) -> Result<RfFieldSpec> {
        RfFieldSpec::new(amp_x_g, 0.0, 0.0, 0.0, 0.0, omega_rad_s, PhaseModulation::None)
    }

    pub fn ring(amp_g: f64, omega_rad_s: f64) -> Result<RfFieldSpec> {
        RfFieldSpec::new(amp_g, amp_g, 0.0, -FRAC_PI_2, 0.0, omega_rad_s, PhaseModulation::None)
    }

    pub fn split_arcs(amp_x_g: f64, amp_y_g: f64, omega_rad_s: f64) -> Result<RfFieldSpec> {
        RfFieldSpec::new(amp_x_g, amp_y_g, 0.0, -FRAC_PI_2, 0.0, omega_rad_s, PhaseModulation::None)
    }

    pub fn asym_split_arcs(
        amp_x_g: f64,
        amp_y_g: f64,
        amp_z_g: f64,
        beta_rad: f64,
        omega_rad_s: f64,
    ) -> Result<RfFieldSpec> {
        RfFieldSpec::new(
            amp_x_g,
            amp_y_g,
            amp_z_g,
            -FRAC_PI_2,
            beta_rad,
            omega_rad_s,
            PhaseModulation::None,
        )
    }

    pub fn asym_ring(
        amp_g: f64,
        amp_z_g: f64,
        beta_rad: f64,
        omega_rad_s: f64,
    ) -> Result<RfFieldSpec> {
        RfFieldSpec::new(
            amp_g,
            amp_g,
            amp_z_g,
            -FRAC_PI_2,
            beta_rad,
            omega_rad_s,
            PhaseModulation::None,
        )
    }

    pub fn rotating_well(
        amp_g: f64,
        amp_z_g: f64,
        rate_rad_s: f64,
        omega_rad_s: f64,
    ) -> Result<RfFieldSpec> {
        RfFieldSpec::new(
            amp_g,
            amp_g,
            amp_z_g,
            -FRAC_PI_2,
            0.0,
            omega_rad_s,
            PhaseModulation::Linear { rate_rad_s },
        )
    }

    pub fn oscillating_well(
        amp_g: f64,
        amp_z_g: f64,
        rate_rad_s: f64,
        omega_rad_s: f64,
    ) -> Result<RfFieldSpec> {
        RfFieldSpec::new(
            amp_g,
            amp_g,
            amp_z_g,
            -FRAC_PI_2,
            0.0,
            omega_rad_s,
            PhaseModulation::Periodic { rate_rad_s },
        )
    }
}
