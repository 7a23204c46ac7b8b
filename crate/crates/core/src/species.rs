use std::f64::consts::PI;

use crate::constants::BOHR_MAGNETON_MHZ_PER_G;
use crate::error::{Error, Result};

/// An atom in a fixed Zeeman hyperfine sub-level |F, m_F⟩.
///
/// `f` and `m_f` are half-integers stored as `f64` (validated on
/// construction); `g_f` is the dimensionless Landé factor of the hyperfine
/// manifold and `mass_kg` the atomic mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSpecies {
    pub f: f64,
    pub m_f: f64,
    pub g_f: f64,
    pub mass_kg: f64,
}

impl AtomSpecies {
    pub fn new(f: f64, m_f: f64, g_f: f64, mass_kg: f64) -> Result<Self> {
        if !f.is_finite() || f < 0.0 || !is_half_integer(f) {
            return Err(Error::InvalidParameter(format!(
                "F must be a non-negative half-integer, got {f}"
            )));
        }
        if !m_f.is_finite() || !is_half_integer(m_f) || !is_integer(f - m_f) {
            return Err(Error::InvalidParameter(format!(
                "mF must step from F in integers, got mF = {m_f} with F = {f}"
            )));
        }
        if m_f.abs() > f + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "|mF| must not exceed F, got mF = {m_f} with F = {f}"
            )));
        }
        if !g_f.is_finite() || g_f == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "gF must be finite and non-zero, got {g_f}"
            )));
        }
        if !(mass_kg > 0.0) || !mass_kg.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mass must be positive, got {mass_kg} kg"
            )));
        }
        Ok(Self { f, m_f, g_f, mass_kg })
    }

    /// ⁸⁷Rb in |F=2, m_F=2⟩ with g_F = +1/2, the stock low-field seeker.
    pub fn rb87() -> Self {
        Self { f: 2.0, m_f: 2.0, g_f: 0.5, mass_kg: 1.44316060e-25 }
    }

    /// Low-field-seeking (trappable) states have m_F·g_F > 0.
    pub fn is_low_field_seeking(&self) -> bool {
        self.m_f * self.g_f > 0.0
    }

    /// g_F·μ_B/ħ in rad/s per Gauss; carries the sign of g_F.
    pub fn gyromagnetic_rad_s_per_g(&self) -> f64 {
        self.g_f * BOHR_MAGNETON_MHZ_PER_G * 1.0e6 * 2.0 * PI
    }

    /// Number of Zeeman sub-levels, 2F+1.
    pub fn multiplicity(&self) -> usize {
        (2.0 * self.f).round() as usize + 1
    }
}

fn is_half_integer(x: f64) -> bool {
    let doubled = 2.0 * x;
    (doubled - doubled.round()).abs() < 1e-9
}

fn is_integer(x: f64) -> bool {
    (x - x.round()).abs() < 1e-9
}
