//! Physical constants and the unit conventions used throughout the crate.
//!
//! Lengths are micrometres, magnetic fields Gauss, times seconds. Energies
//! are carried as angular frequencies E/ħ in rad/s and converted to h·kHz
//! (or temperature) only at output boundaries. This keeps every quantity
//! within a few orders of magnitude of unity for the parameter ranges of
//! interest.

/// Bohr magneton over Planck constant, MHz per Gauss (CODATA, 8 digits).
pub const BOHR_MAGNETON_MHZ_PER_G: f64 = 1.3996245;

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054571817e-34;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.380649e-23;

/// Centimetres per micrometre, for field-gradient unit conversion.
pub const CM_PER_UM: f64 = 1.0e-4;

/// Converts an angular frequency in rad/s to the equivalent V/h in kHz.
pub fn rad_s_to_h_khz(omega: f64) -> f64 {
    omega / (2.0 * std::f64::consts::PI) / 1.0e3
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn khz_conversion_round_numbers() {
        let two_pi = 2.0 * std::f64::consts::PI;
        assert!((rad_s_to_h_khz(two_pi * 1.0e3) - 1.0).abs() < 1e-12);
        assert_eq!(rad_s_to_h_khz(0.0), 0.0);
    }
}
