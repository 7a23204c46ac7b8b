//! Azimuthal structure of the ring-family potentials: radial profiles,
//! time tracking of the moving minimum, and adiabaticity diagnostics.

use crate::error::{Error, Result};
use crate::scenario::{
    ring_radius, validate_kind, PotentialModel, ScenarioKind, TrapConfiguration,
};

use super::minimize::golden_section_min;

/// Radial golden-section tolerance, micrometres.
const RADIAL_TOL_UM: f64 = 1e-4;
/// Azimuthal golden-section tolerance, radians.
const ANGULAR_TOL_RAD: f64 = 1e-6;
/// Angles in the coarse scan that seeds the tracker.
const COARSE_ANGLES: usize = 256;
/// Half-width of the warm-started azimuthal search bracket, radians.
/// Comfortably covers the largest per-sample well motion at the default
/// sampling density (the periodic law moves at most 2π²/64 ≈ 0.31 rad per
/// sample) while staying wide enough that a genuinely lost well surfaces
/// as a jump ≥ π/2 instead of silently pinning to the bracket edge.
const TRACK_BRACKET_RAD: f64 = 2.0;
/// Consecutive-sample azimuth jumps at least this large abort tracking.
const LOST_TRACK_JUMP_RAD: f64 = std::f64::consts::FRAC_PI_2;
/// Modulation-to-carrier (and modulation-to-Rabi) ratio above which the
/// adiabatic following of the moving well is considered at risk.
const ADIABATIC_RATIO_WARN: f64 = 1e-2;

/// One azimuth of a ring profile: the radial minimum along that direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingProfilePoint {
    pub phi_rad: f64,
    pub rho_um: f64,
    pub v_over_hbar_rad_s: f64,
}

/// One time sample of the tracked potential minimum. Azimuths continue
/// smoothly across ±π (no 2π jumps), so successive samples can be
/// differenced directly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackPoint {
    pub t_s: f64,
    pub phi_rad: f64,
    pub rho_um: f64,
    pub v_over_hbar_rad_s: f64,
}

fn radial_window(config: &TrapConfiguration) -> Result<(f64, f64)> {
    let r = ring_radius(config)?;
    Ok((0.2 * r, 3.0 * r))
}

/// Radial minimum along azimuth `phi` by golden section over [0.2R, 3R].
fn radial_min(
    config: &TrapConfiguration,
    model: PotentialModel,
    phi: f64,
    t_s: f64,
    window: (f64, f64),
) -> (f64, f64) {
    let (sin_phi, cos_phi) = phi.sin_cos();
    golden_section_min(
        |rho| {
            model
                .v_over_hbar(config, rho * cos_phi, rho * sin_phi, t_s)
                .unwrap_or(f64::INFINITY)
        },
        window.0,
        window.1,
        RADIAL_TOL_UM,
        200,
    )
}

/// Radial minimum per azimuth on a uniform mesh over [0, 2π).
pub fn ring_profile(
    config: &TrapConfiguration,
    kind: ScenarioKind,
    t_s: f64,
    n_angles: usize,
) -> Result<Vec<RingProfilePoint>> {
    if !kind.is_ring_family() {
        return Err(Error::KindMismatch { expected: "a ring-family kind", got: kind.name() });
    }
    validate_kind(kind, config)?;
    if n_angles == 0 {
        return Err(Error::InvalidParameter("ring_profile needs at least one angle".into()));
    }
    let window = radial_window(config)?;
    let model = PotentialModel::ClosedForm(kind);
    Ok((0..n_angles)
        .map(|k| {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / n_angles as f64;
            let (rho, v) = radial_min(config, model, phi, t_s, window);
            RingProfilePoint { phi_rad: phi, rho_um: rho, v_over_hbar_rad_s: v }
        })
        .collect())
}

/// Azimuthal minimum near `phi_guess`: golden section on φ with a nested
/// radial minimization per angle. Returns (φ, ρ, V).
fn azimuthal_min(
    config: &TrapConfiguration,
    model: PotentialModel,
    t_s: f64,
    window: (f64, f64),
    phi_guess: f64,
    half_bracket: f64,
) -> (f64, f64, f64) {
    let (phi, _) = golden_section_min(
        |phi| radial_min(config, model, phi, t_s, window).1,
        phi_guess - half_bracket,
        phi_guess + half_bracket,
        ANGULAR_TOL_RAD,
        200,
    );
    let (rho, v) = radial_min(config, model, phi, t_s, window);
    (phi, rho, v)
}

/// Follows the azimuthal potential well over [t0, t1] with `n_samples`
/// uniform time samples (≥ 2).
///
/// The first sample seeds from a full coarse scan; later samples
/// warm-start from the previous azimuth, so sampling must be dense enough
/// that the well moves less than the search bracket between samples
/// (64 samples per modulation period is comfortable). A jump of π/2 or
/// more between consecutive samples aborts with `LostTracking`.
pub fn track_minimum(
    config: &TrapConfiguration,
    kind: ScenarioKind,
    t0_s: f64,
    t1_s: f64,
    n_samples: usize,
) -> Result<Vec<TrackPoint>> {
    if !kind.has_azimuthal_well() {
        return Err(Error::KindMismatch {
            expected: "a kind with an azimuthal well (asym_ring, rotating_well, oscillating_well)",
            got: kind.name(),
        });
    }
    validate_kind(kind, config)?;
    if n_samples < 2 {
        return Err(Error::InvalidParameter(format!(
            "tracking needs at least 2 samples, got {n_samples}"
        )));
    }
    if !(t1_s > t0_s) {
        return Err(Error::InvalidParameter("tracking needs t1 > t0".into()));
    }
    let window = radial_window(config)?;
    let model = PotentialModel::ClosedForm(kind);

    let mut out = Vec::with_capacity(n_samples);
    for k in 0..n_samples {
        let t = t0_s + (t1_s - t0_s) * k as f64 / (n_samples - 1) as f64;
        let point = if k == 0 {
            let mut best = (f64::INFINITY, 0.0);
            for a in 0..COARSE_ANGLES {
                let phi = 2.0 * std::f64::consts::PI * a as f64 / COARSE_ANGLES as f64;
                let (_, v) = radial_min(config, model, phi, t, window);
                if v < best.0 {
                    best = (v, phi);
                }
            }
            let spacing = 2.0 * std::f64::consts::PI / COARSE_ANGLES as f64;
            let (phi, rho, v) =
                azimuthal_min(config, model, t, window, best.1, 2.0 * spacing);
            // anchor the series in (-pi, pi]; later samples continue from
            // it without wrapping
            TrackPoint {
                t_s: t,
                phi_rad: crate::frame::wrap_angle(phi),
                rho_um: rho,
                v_over_hbar_rad_s: v,
            }
        } else {
            let prev: &TrackPoint = out.last().expect("tracking starts with a sample");
            let (phi, rho, v) =
                azimuthal_min(config, model, t, window, prev.phi_rad, TRACK_BRACKET_RAD);
            let jump = (phi - prev.phi_rad).abs();
            if jump >= LOST_TRACK_JUMP_RAD {
                return Err(Error::LostTracking { t_prev: prev.t_s, t, jump_rad: jump });
            }
            TrackPoint { t_s: t, phi_rad: phi, rho_um: rho, v_over_hbar_rad_s: v }
        };
        out.push(point);
    }
    Ok(out)
}

/// Adiabaticity check for the time-dependent kinds: the modulation rate
/// against the carrier and against the smallest Rabi splitting seen along
/// one period of the tracked minimum path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticityReport {
    pub modulation_rate_rad_s: f64,
    pub carrier_ratio: f64,
    pub rabi_min_rad_s: f64,
    pub rabi_ratio: f64,
    /// Ratio ω_mod/ω within the comfort zone.
    pub carrier_ok: bool,
    /// Ratio ω_mod/Ω_min within the comfort zone.
    pub rabi_ok: bool,
}

pub fn adiabaticity_report(
    config: &TrapConfiguration,
    kind: ScenarioKind,
) -> Result<AdiabaticityReport> {
    if !kind.is_time_dependent() {
        return Err(Error::NotTimeDependent);
    }
    validate_kind(kind, config)?;
    let rate = config
        .rf
        .modulation
        .rate_rad_s()
        .expect("time-dependent kinds carry a modulation rate");

    let period = 2.0 * std::f64::consts::PI / rate;
    let path = track_minimum(config, kind, 0.0, period, 65)?;
    let model = PotentialModel::ClosedForm(kind);
    let mut rabi_min = f64::INFINITY;
    for p in &path {
        let (s, c) = p.phi_rad.sin_cos();
        let sample = model.sample(config, p.rho_um * c, p.rho_um * s, p.t_s)?;
        rabi_min = rabi_min.min(sample.rabi_rad_s);
    }

    let carrier_ratio = rate / config.rf.omega_rad_s;
    let rabi_ratio = rate / rabi_min;
    Ok(AdiabaticityReport {
        modulation_rate_rad_s: rate,
        carrier_ratio,
        rabi_min_rad_s: rabi_min,
        rabi_ratio,
        carrier_ok: carrier_ratio <= ADIABATIC_RATIO_WARN,
        rabi_ok: rabi_ratio <= ADIABATIC_RATIO_WARN,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{make_scenario, rf_specs, well_azimuth};
    use crate::{AtomSpecies, QuadrupoleField};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn quad() -> QuadrupoleField {
        QuadrupoleField::new(150.0).unwrap()
    }

    fn omega_std() -> f64 {
        2.0 * PI * 1.5e6
    }

    #[test]
    fn ring_profile_is_flat_for_the_ring() {
        let config =
            make_scenario(ScenarioKind::Ring, AtomSpecies::rb87(), quad(), rf_specs::ring(0.7, omega_std()).unwrap(), 10.0)
                .unwrap();
        let profile = ring_profile(&config, ScenarioKind::Ring, 0.0, 32).unwrap();
        let v0 = profile[0].v_over_hbar_rad_s;
        for p in &profile {
            assert_relative_eq!(p.v_over_hbar_rad_s, v0, max_relative = 1e-10);
            assert!((p.rho_um - 142.0974).abs() < 0.01);
        }
    }

    #[test]
    fn split_arcs_profile_has_two_wells_on_the_x_axis() {
        let config = make_scenario(
            ScenarioKind::SplitArcs,
            AtomSpecies::rb87(),
            quad(),
            rf_specs::split_arcs(0.7, 0.14, omega_std()).unwrap(),
            10.0,
        )
        .unwrap();
        let n = 72;
        let profile = ring_profile(&config, ScenarioKind::SplitArcs, 0.0, n).unwrap();
        // count local minima of V(phi) on the circular mesh
        let mut minima = Vec::new();
        for k in 0..n {
            let prev = profile[(k + n - 1) % n].v_over_hbar_rad_s;
            let next = profile[(k + 1) % n].v_over_hbar_rad_s;
            let here = profile[k].v_over_hbar_rad_s;
            if here < prev && here < next {
                minima.push(profile[k].phi_rad);
            }
        }
        assert_eq!(minima.len(), 2, "minima at {minima:?}");
        for phi in minima {
            let dist_to_axis = phi.min((phi - PI).abs()).min((phi - 2.0 * PI).abs());
            assert!(dist_to_axis < 2.0 * PI / n as f64 + 1e-9, "phi = {phi}");
        }
    }

    #[test]
    fn asym_ring_profile_minimum_follows_beta() {
        let beta = 0.9;
        let config = make_scenario(
            ScenarioKind::AsymRing,
            AtomSpecies::rb87(),
            quad(),
            rf_specs::asym_ring(0.7, 0.35, beta, omega_std()).unwrap(),
            10.0,
        )
        .unwrap();
        let track = track_minimum(&config, ScenarioKind::AsymRing, 0.0, 1.0, 5).unwrap();
        let expected = well_azimuth(&config, ScenarioKind::AsymRing, 0.0).unwrap();
        for p in &track {
            assert!((p.phi_rad - expected).abs() < 1e-3, "phi = {}, want {expected}", p.phi_rad);
        }
        // static kind: the azimuth must not drift
        assert!((track[0].phi_rad - track[4].phi_rad).abs() < 1e-6);
    }

    #[test]
    fn rotating_well_tracks_linear_law() {
        let rate = 1.0;
        let config = make_scenario(
            ScenarioKind::RotatingWell,
            AtomSpecies::rb87(),
            quad(),
            rf_specs::rotating_well(0.7, 0.7, rate, omega_std()).unwrap(),
            10.0,
        )
        .unwrap();
        let t1 = 2.0 * PI;
        let track = track_minimum(&config, ScenarioKind::RotatingWell, 0.0, t1, 65).unwrap();
        for p in &track {
            let want = -rate * p.t_s;
            assert!(
                (p.phi_rad - want).abs() < 1e-3,
                "t = {}: phi = {}, want {want}",
                p.t_s,
                p.phi_rad
            );
        }
    }

    #[test]
    fn oscillating_well_reverses_at_half_modulation_period() {
        let rate = 1.0;
        let config = make_scenario(
            ScenarioKind::OscillatingWell,
            AtomSpecies::rb87(),
            quad(),
            rf_specs::oscillating_well(0.7, 0.7, rate, omega_std()).unwrap(),
            10.0,
        )
        .unwrap();
        let t1 = 2.0 * PI;
        let n = 129;
        let track = track_minimum(&config, ScenarioKind::OscillatingWell, 0.0, t1, n).unwrap();
        // circular comparison against -pi*cos(w t): the tracker may anchor
        // at +pi instead of -pi at t = 0
        for p in &track {
            let want = -PI * (rate * p.t_s).cos();
            let diff = crate::frame::wrap_angle(p.phi_rad - want).abs();
            let diff = diff.min((2.0 * PI - diff).abs());
            assert!(diff < 1e-3, "t = {}: phi = {}, want {want}", p.t_s, p.phi_rad);
        }
        // one full circuit by t = pi, then the direction reverses
        let half = n / 2;
        let circuit = (track[half].phi_rad - track[0].phi_rad).abs();
        assert!((circuit - 2.0 * PI).abs() < 1e-2, "circuit = {circuit}");
        let before = track[half].phi_rad - track[half - 1].phi_rad;
        let after = track[half + 1].phi_rad - track[half].phi_rad;
        assert!(before * after < 0.0, "no reversal: {before} then {after}");
    }

    #[test]
    fn sparse_sampling_loses_the_rotating_well() {
        let config = make_scenario(
            ScenarioKind::RotatingWell,
            AtomSpecies::rb87(),
            quad(),
            rf_specs::rotating_well(0.7, 0.7, 1.0, omega_std()).unwrap(),
            10.0,
        )
        .unwrap();
        // 2 samples across a full period put the well 2pi*~0.5 ahead of
        // the warm-start bracket
        let err =
            track_minimum(&config, ScenarioKind::RotatingWell, 0.0, 3.5, 2).unwrap_err();
        assert!(matches!(err, Error::LostTracking { .. }), "got {err:?}");
    }

    #[test]
    fn track_rejects_kinds_without_a_well() {
        let config =
            make_scenario(ScenarioKind::Ring, AtomSpecies::rb87(), quad(), rf_specs::ring(0.7, omega_std()).unwrap(), 10.0)
                .unwrap();
        assert!(matches!(
            track_minimum(&config, ScenarioKind::Ring, 0.0, 1.0, 8),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn adiabaticity_passes_for_slow_modulation() {
        let config = make_scenario(
            ScenarioKind::RotatingWell,
            AtomSpecies::rb87(),
            quad(),
            rf_specs::rotating_well(0.7, 0.7, 1.0, omega_std()).unwrap(),
            10.0,
        )
        .unwrap();
        let report = adiabaticity_report(&config, ScenarioKind::RotatingWell).unwrap();
        assert!(report.carrier_ok && report.rabi_ok);
        assert_relative_eq!(report.carrier_ratio, 1.061e-7, max_relative = 1e-3);
        assert!(report.rabi_min_rad_s > 0.0);
    }

    #[test]
    fn adiabaticity_warns_for_fast_modulation() {
        let config = make_scenario(
            ScenarioKind::RotatingWell,
            AtomSpecies::rb87(),
            quad(),
            rf_specs::rotating_well(0.7, 0.7, 2.0 * PI * 1.0e5, omega_std()).unwrap(),
            10.0,
        )
        .unwrap();
        let report = adiabaticity_report(&config, ScenarioKind::RotatingWell).unwrap();
        assert!(!report.carrier_ok);
    }

    #[test]
    fn adiabaticity_rejects_static_kinds() {
        let config = make_scenario(
            ScenarioKind::AsymRing,
            AtomSpecies::rb87(),
            quad(),
            rf_specs::asym_ring(0.7, 0.35, 0.0, omega_std()).unwrap(),
            10.0,
        )
        .unwrap();
        assert_eq!(
            adiabaticity_report(&config, ScenarioKind::AsymRing),
            Err(Error::NotTimeDependent)
        );
    }
}
