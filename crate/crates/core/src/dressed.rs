//! Dressed-state core: detuning, Rabi coupling, and the adiabatic
//! potential V/ħ = m_F·√(δ² + Ω²).
//!
//! Two independent routes compute the Rabi magnitude:
//!
//! * [`rabi_general`] — the closed lab-frame expression in the trap
//!   coordinates (products of field amplitudes with geometric factors of
//!   x, y, z);
//! * [`local_harmonics`] + [`rabi_from_harmonics`] — rotate the RF field
//!   into the local frame, decompose the two perpendicular components as
//!   single harmonics A·cos(ωt + ψ), and combine the amplitudes with their
//!   relative phase γ.
//!
//! The two must agree to near machine precision; the test suites hold them
//! against each other. Only the perpendicular components couple — the
//! parallel RF component never enters Ω.

use crate::error::{Error, Result};
use crate::field::{plane_field_magnitude, static_field, Position, RfFieldSpec};
use crate::frame::{wrap_angle, LocalFrame};
use crate::field::QuadrupoleField;
use crate::species::AtomSpecies;

/// Fraction of the carrier frequency above which the rotating-wave
/// approximation is considered strained. Advisory only.
pub const RWA_STRAIN_RATIO: f64 = 0.1;

/// One evaluation of the dressed potential at a point and time.
///
/// All three frequencies are angular (rad/s); `v_over_hbar_rad_s` carries
/// the sign of m_F. `rwa_strained` flags Ω > 0.1·ω — the rotating-wave
/// approximation is losing headroom there; the flag never blocks anything.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DressedSample {
    pub detuning_rad_s: f64,
    pub rabi_rad_s: f64,
    pub v_over_hbar_rad_s: f64,
    pub position: Position,
    pub time_s: f64,
    pub rwa_strained: bool,
}

/// Harmonic content of the RF field perpendicular to the local static
/// field: amplitudes of the two perpendicular components, their relative
/// phase γ ∈ (−π, π], and the (unused) parallel amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalRfHarmonics {
    pub amp_perp1_g: f64,
    pub amp_perp2_g: f64,
    pub relative_phase_rad: f64,
    pub amp_par_g: f64,
}

/// Detuning δ = ω − (g_F μ_B/ħ)·|B^S(r)|.
pub fn detuning(
    species: &AtomSpecies,
    quad: QuadrupoleField,
    r: Position,
    omega_rad_s: f64,
) -> f64 {
    omega_rad_s - species.gyromagnetic_rad_s_per_g() * static_field(quad, r).magnitude()
}

/// Detuning on the trapping plane z = −z0 at in-plane radius ρ; strictly
/// decreasing in ρ.
pub fn detuning_on_plane(
    species: &AtomSpecies,
    quad: QuadrupoleField,
    z0_um: f64,
    rho_um: f64,
    omega_rad_s: f64,
) -> Result<f64> {
    Ok(omega_rad_s
        - species.gyromagnetic_rad_s_per_g() * plane_field_magnitude(quad, z0_um, rho_um)?)
}

/// Rabi magnitude |Ω| from the general lab-frame expression.
///
/// On the axis x = y = 0 (z ≠ 0) the expression has removable 0/0 factors;
/// the analytic limit Ω² = (g_F μ_B/2ħ)²·[B_x² + B_y² + 2B_xB_y sinα·sign(z)]
/// is used there, which is independent of the approach direction.
pub fn rabi_general(
    species: &AtomSpecies,
    quad: QuadrupoleField,
    rf: &RfFieldSpec,
    r: Position,
    t_s: f64,
) -> Result<f64> {
    if static_field(quad, r).magnitude() == 0.0 {
        return Err(Error::DegenerateFrame);
    }
    let half_coupling = 0.5 * species.gyromagnetic_rad_s_per_g().abs();
    let (bx, by, bz) = (rf.amp_x_g, rf.amp_y_g, rf.amp_z_g);
    let alpha = rf.alpha_rad;
    let beta = rf.beta_eff(t_s);
    let (x, y, z) = (r.x_um, r.y_um, r.z_um);
    let rho2 = x * x + y * y;

    let bracket = if rho2 == 0.0 {
        bx * bx + by * by + 2.0 * bx * by * alpha.sin() * z.signum()
    } else {
        let d2 = rho2 + 4.0 * z * z;
        let d = d2.sqrt();
        (4.0 * z * z / d2) * ((bx * bx * x * x + by * by * y * y) / rho2)
            + (bx * bx * y * y + by * by * x * x) / rho2
            + bz * bz * (rho2 / d2)
            - 2.0 * bx * by * x * y * alpha.cos() / d2
            + 4.0 * bx * by * z * alpha.sin() / d
            + 4.0 * by * bz * y * z * (alpha - beta).cos() / d2
            + 2.0 * by * bz * x * (alpha - beta).sin() / d
            + 4.0 * bz * bx * z * x * beta.cos() / d2
            + 2.0 * bz * bx * y * beta.sin() / d
    };
    Ok(half_coupling * bracket.max(0.0).sqrt())
}

/// Decomposes the local RF components at the frozen phase β(t_ref) into
/// single harmonics A_i·cos(ωt + ψ_i) and returns the amplitudes together
/// with γ = ψ2 − ψ1. If either perpendicular amplitude vanishes γ is set
/// to zero (the cross term it feeds is zero anyway).
pub fn local_harmonics(rf: &RfFieldSpec, frame: &LocalFrame, t_ref_s: f64) -> LocalRfHarmonics {
    let beta = rf.beta_eff(t_ref_s);
    let (st, ct) = frame.theta_rad.sin_cos();
    let (sp, cp) = frame.phi_rad.sin_cos();
    let (sa, ca) = rf.alpha_rad.sin_cos();
    let (sb, cb) = beta.sin_cos();
    let (bx, by, bz) = (rf.amp_x_g, rf.amp_y_g, rf.amp_z_g);

    // each component is  C·cos ωt + S·sin ωt  =  A·cos(ωt + ψ), ψ = atan2(−S, C)
    let c1 = bx * ct * cp + by * ct * sp * ca + bz * st * cb;
    let s1 = by * ct * sp * sa + bz * st * sb;
    let c2 = bx * sp - by * cp * ca;
    let s2 = -by * cp * sa;
    let c3 = bx * st * cp + by * st * sp * ca - bz * ct * cb;
    let s3 = by * st * sp * sa - bz * ct * sb;

    let a1 = c1.hypot(s1);
    let a2 = c2.hypot(s2);
    let gamma = if a1 == 0.0 || a2 == 0.0 {
        0.0
    } else {
        wrap_angle((-s2).atan2(c2) - (-s1).atan2(c1))
    };
    LocalRfHarmonics {
        amp_perp1_g: a1,
        amp_perp2_g: a2,
        relative_phase_rad: gamma,
        amp_par_g: c3.hypot(s3),
    }
}

/// Rabi magnitude from perpendicular harmonics:
/// |Ω| = (g_F μ_B/2ħ)·√(A1² + A2² + 2·A1·A2·sinγ).
pub fn rabi_from_harmonics(species: &AtomSpecies, h: &LocalRfHarmonics) -> f64 {
    let radicand = h.amp_perp1_g * h.amp_perp1_g
        + h.amp_perp2_g * h.amp_perp2_g
        + 2.0 * h.amp_perp1_g * h.amp_perp2_g * h.relative_phase_rad.sin();
    debug_assert!(radicand >= -1e-12 * (h.amp_perp1_g + h.amp_perp2_g).powi(2));
    0.5 * species.gyromagnetic_rad_s_per_g().abs() * radicand.max(0.0).sqrt()
}

/// Full dressed sample at a point: detuning, Rabi magnitude, and
/// V/ħ = m_F·√(δ² + Ω²).
pub fn potential(
    species: &AtomSpecies,
    quad: QuadrupoleField,
    rf: &RfFieldSpec,
    r: Position,
    t_s: f64,
) -> Result<DressedSample> {
    let delta = detuning(species, quad, r, rf.omega_rad_s);
    let rabi = rabi_general(species, quad, rf, r, t_s)?;
    Ok(assemble_sample(species, rf, r, t_s, delta, rabi))
}

/// Builds a `DressedSample` from already-computed δ and Ω (shared by the
/// general route and the per-scenario closed forms).
pub(crate) fn assemble_sample(
    species: &AtomSpecies,
    rf: &RfFieldSpec,
    r: Position,
    t_s: f64,
    delta_rad_s: f64,
    rabi_rad_s: f64,
) -> DressedSample {
    DressedSample {
        detuning_rad_s: delta_rad_s,
        rabi_rad_s,
        v_over_hbar_rad_s: species.m_f * delta_rad_s.hypot(rabi_rad_s),
        position: r,
        time_s: t_s,
        rwa_strained: rabi_rad_s > RWA_STRAIN_RATIO * rf.omega_rad_s,
    }
}
