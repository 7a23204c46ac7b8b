//! Static quadrupole field and the phase-modulated RF field.

use std::f64::consts::PI;

use crate::constants::CM_PER_UM;
use crate::error::{Error, Result};

/// Laboratory-frame position in micrometres.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position {
    pub x_um: f64,
    pub y_um: f64,
    pub z_um: f64,
}

impl Position {
    pub fn new(x_um: f64, y_um: f64, z_um: f64) -> Self {
        Self { x_um, y_um, z_um }
    }

    /// In-plane radius √(x²+y²).
    pub fn rho_um(&self) -> f64 {
        self.x_um.hypot(self.y_um)
    }
}

/// A magnetic field vector in Gauss, components along (ê_x, ê_y, ê_z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FieldVector {
    pub fn magnitude(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// Static quadrupole trap field B_q·(x, y, −2z).
///
/// The stored gradient is the radial one, in Gauss per centimetre; the
/// axial gradient is twice that.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadrupoleField {
    gradient_g_per_cm: f64,
}

impl QuadrupoleField {
    pub fn new(gradient_g_per_cm: f64) -> Result<Self> {
        if !(gradient_g_per_cm > 0.0) || !gradient_g_per_cm.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "quadrupole gradient must be positive, got {gradient_g_per_cm} G/cm"
            )));
        }
        Ok(Self { gradient_g_per_cm })
    }

    pub fn gradient_g_per_cm(&self) -> f64 {
        self.gradient_g_per_cm
    }
}

/// Evaluates the static quadrupole field at `r`, in Gauss.
pub fn static_field(quad: QuadrupoleField, r: Position) -> FieldVector {
    let scale = quad.gradient_g_per_cm() * CM_PER_UM;
    FieldVector {
        x: scale * r.x_um,
        y: scale * r.y_um,
        z: scale * (-2.0 * r.z_um),
    }
}

/// |B^S| on the trapping plane z = −z0 at in-plane radius ρ:
/// B_0^S·√(1 + ρ²/(4z0²)) with B_0^S = 2·B_q·z0.
pub fn plane_field_magnitude(quad: QuadrupoleField, z0_um: f64, rho_um: f64) -> Result<f64> {
    if !(z0_um > 0.0) || !z0_um.is_finite() {
        return Err(Error::InvalidPlane(z0_um));
    }
    let b0 = 2.0 * quad.gradient_g_per_cm() * z0_um * CM_PER_UM;
    Ok(b0 * (1.0 + rho_um * rho_um / (4.0 * z0_um * z0_um)).sqrt())
}

/// Time law for the phase of the RF z-component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhaseModulation {
    /// Fixed phase β.
    None,
    /// β(t) = ω_l·t: the azimuthal well rotates uniformly.
    Linear { rate_rad_s: f64 },
    /// β(t) = π·cos(ω_m·t): the well oscillates back and forth, reversing
    /// every π/ω_m.
    Periodic { rate_rad_s: f64 },
}

impl PhaseModulation {
    pub fn is_static(&self) -> bool {
        matches!(self, PhaseModulation::None)
    }

    /// Modulation rate, if any (ω_l or ω_m).
    pub fn rate_rad_s(&self) -> Option<f64> {
        match self {
            PhaseModulation::None => None,
            PhaseModulation::Linear { rate_rad_s } | PhaseModulation::Periodic { rate_rad_s } => {
                Some(*rate_rad_s)
            }
        }
    }
}

/// RF field specification: B^RF(t) = (B_x cos ωt, B_y cos(ωt−α), B_z cos(ωt−β(t))).
///
/// Amplitudes are non-negative Gauss; α and β are phase lags in radians;
/// ω is the carrier angular frequency. Under modulation the z-phase β is
/// replaced by the modulation law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RfFieldSpec {
    pub amp_x_g: f64,
    pub amp_y_g: f64,
    pub amp_z_g: f64,
    pub alpha_rad: f64,
    pub beta_rad: f64,
    pub omega_rad_s: f64,
    pub modulation: PhaseModulation,
}

impl RfFieldSpec {
    pub fn new(
        amp_x_g: f64,
        amp_y_g: f64,
        amp_z_g: f64,
        alpha_rad: f64,
        beta_rad: f64,
        omega_rad_s: f64,
        modulation: PhaseModulation,
    ) -> Result<Self> {
        for (name, amp) in [("Bx", amp_x_g), ("By", amp_y_g), ("Bz", amp_z_g)] {
            if !(amp >= 0.0) || !amp.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "RF amplitude {name} must be non-negative, got {amp} G"
                )));
            }
        }
        if !(omega_rad_s > 0.0) || !omega_rad_s.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "RF carrier frequency must be positive, got {omega_rad_s} rad/s"
            )));
        }
        if !alpha_rad.is_finite() || !beta_rad.is_finite() {
            return Err(Error::InvalidParameter("RF phases must be finite".into()));
        }
        if let Some(rate) = modulation.rate_rad_s() {
            if !(rate > 0.0) || !rate.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "modulation rate must be positive, got {rate} rad/s"
                )));
            }
        }
        Ok(Self { amp_x_g, amp_y_g, amp_z_g, alpha_rad, beta_rad, omega_rad_s, modulation })
    }

    /// Effective z-phase at time `t`: β, ω_l·t, or π·cos(ω_m·t).
    pub fn beta_eff(&self, t_s: f64) -> f64 {
        match self.modulation {
            PhaseModulation::None => self.beta_rad,
            PhaseModulation::Linear { rate_rad_s } => rate_rad_s * t_s,
            PhaseModulation::Periodic { rate_rad_s } => PI * (rate_rad_s * t_s).cos(),
        }
    }
}

/// Instantaneous RF field in laboratory coordinates at time `t`.
pub fn rf_field_lab(rf: &RfFieldSpec, t_s: f64) -> FieldVector {
    let wt = rf.omega_rad_s * t_s;
    let beta = rf.beta_eff(t_s);
    FieldVector {
        x: rf.amp_x_g * wt.cos(),
        y: rf.amp_y_g * (wt - rf.alpha_rad).cos(),
        z: rf.amp_z_g * (wt - beta).cos(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn quad150() -> QuadrupoleField {
        QuadrupoleField::new(150.0).unwrap()
    }

    #[test]
    fn static_field_zero_at_centre() {
        let b = static_field(quad150(), Position::new(0.0, 0.0, 0.0));
        assert_eq!((b.x, b.y, b.z), (0.0, 0.0, 0.0));
    }

    #[test]
    fn static_field_hand_values() {
        let b = static_field(quad150(), Position::new(0.0, 0.0, -10.0));
        assert_relative_eq!(b.z, 0.3, max_relative = 1e-15);
        assert_eq!((b.x, b.y), (0.0, 0.0));

        let b = static_field(quad150(), Position::new(100.0, 0.0, -10.0));
        assert_relative_eq!(b.x, 1.5, max_relative = 1e-15);
        assert_relative_eq!(b.z, 0.3, max_relative = 1e-15);
        assert_eq!(b.y, 0.0);
    }

    #[test]
    fn static_field_linear_in_gradient() {
        let r = Position::new(37.0, -12.0, 5.5);
        let b1 = static_field(QuadrupoleField::new(97.0).unwrap(), r);
        let b2 = static_field(QuadrupoleField::new(194.0).unwrap(), r);
        assert_relative_eq!(b2.x, 2.0 * b1.x, max_relative = 1e-15);
        assert_relative_eq!(b2.y, 2.0 * b1.y, max_relative = 1e-15);
        assert_relative_eq!(b2.z, 2.0 * b1.z, max_relative = 1e-15);
    }

    #[test]
    fn plane_field_reference_values() {
        assert_relative_eq!(
            plane_field_magnitude(quad150(), 10.0, 0.0).unwrap(),
            0.3,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            plane_field_magnitude(quad150(), 10.0, 141.49).unwrap(),
            2.1434481,
            max_relative = 1e-7
        );
    }

    #[test]
    fn plane_field_rejects_nonpositive_z0() {
        assert_eq!(plane_field_magnitude(quad150(), 0.0, 1.0), Err(Error::InvalidPlane(0.0)));
        assert!(plane_field_magnitude(quad150(), -3.0, 1.0).is_err());
    }

    #[test]
    fn plane_field_matches_static_field_norm() {
        let quad = quad150();
        let z0 = 10.0;
        let mut state: u64 = 0x9e3779b97f4a7c15;
        for _ in 0..1000 {
            // xorshift64* is plenty for scattering test points
            state ^= state >> 12;
            state ^= state << 25;
            state ^= state >> 27;
            let x = ((state.wrapping_mul(0x2545F4914F6CDD1D) >> 11) as f64
                / (1u64 << 53) as f64
                - 0.5)
                * 400.0;
            state ^= state >> 12;
            state ^= state << 25;
            state ^= state >> 27;
            let y = ((state.wrapping_mul(0x2545F4914F6CDD1D) >> 11) as f64
                / (1u64 << 53) as f64
                - 0.5)
                * 400.0;
            let from_plane = plane_field_magnitude(quad, z0, x.hypot(y)).unwrap();
            let from_field = static_field(quad, Position::new(x, y, -z0)).magnitude();
            assert_relative_eq!(from_plane, from_field, max_relative = 1e-12);
        }
    }

    #[test]
    fn rf_field_phase_conventions() {
        let rf = RfFieldSpec::new(0.7, 0.0, 0.0, 0.0, 0.0, 1.0e6, PhaseModulation::None).unwrap();
        let b = rf_field_lab(&rf, 0.0);
        assert_eq!((b.x, b.y, b.z), (0.7, 0.0, 0.0));

        // circular polarization: By component is zero at t = 0 when alpha = -pi/2
        let rf =
            RfFieldSpec::new(0.7, 0.7, 0.0, -PI / 2.0, 0.0, 1.0e6, PhaseModulation::None).unwrap();
        let b = rf_field_lab(&rf, 0.0);
        assert_relative_eq!(b.x, 0.7, max_relative = 1e-15);
        assert!(b.y.abs() < 1e-15);
    }

    #[test]
    fn linear_modulation_shifts_carrier() {
        let omega = 2.0 * PI * 1.5e6;
        let rate = 12.5;
        let rf = RfFieldSpec::new(
            0.0,
            0.0,
            0.7,
            0.0,
            0.0,
            omega,
            PhaseModulation::Linear { rate_rad_s: rate },
        )
        .unwrap();
        for &t in &[0.0, 1.3e-7, 0.42, 2.0] {
            let b = rf_field_lab(&rf, t);
            assert_relative_eq!(b.z, 0.7 * ((omega - rate) * t).cos(), max_relative = 1e-9);
        }
    }

    #[test]
    fn periodic_modulation_phase_law() {
        let rf = RfFieldSpec::new(
            0.0,
            0.0,
            1.0,
            0.0,
            0.3,
            1.0e6,
            PhaseModulation::Periodic { rate_rad_s: 2.0 },
        )
        .unwrap();
        assert_relative_eq!(rf.beta_eff(0.0), PI, max_relative = 1e-15);
        assert_relative_eq!(rf.beta_eff(PI / 2.0), -PI, max_relative = 1e-12);
    }

    #[test]
    fn rejects_invalid_rf() {
        assert!(RfFieldSpec::new(-0.1, 0.0, 0.0, 0.0, 0.0, 1.0, PhaseModulation::None).is_err());
        assert!(RfFieldSpec::new(0.1, 0.0, 0.0, 0.0, 0.0, 0.0, PhaseModulation::None).is_err());
        assert!(RfFieldSpec::new(
            0.1,
            0.0,
            0.0,
            0.0,
            0.0,
            1.0,
            PhaseModulation::Linear { rate_rad_s: 0.0 }
        )
        .is_err());
    }
}
