//! Interaction matrix of the dressed atom in the rotating frame and its
//! eigenvalues.
//!
//! In the local frame, after the rotating-wave approximation, the
//! Hamiltonian over the |F, m⟩ manifold (m ordered F … −F) divided by
//! g_F·μ_B is tridiagonal, with all entries in Gauss:
//!
//! * diagonal: m·b, where b = |B^S| − ħω/(g_F μ_B) is the Zeeman shift
//!   from resonance;
//! * coupling between m and m−1: √(F(F+1) − m(m−1))/4 · (A1 − i·A2·e^{iγ}),
//!   through the perpendicular RF amplitudes A1, A2 with relative phase γ.
//!
//! Its spectrum is m·√(b² + (A1² + A2² + 2A1A2 sinγ)/4); tests hold the
//! numeric diagonalization against that closed form.

use num_complex::Complex64;

use crate::dressed::LocalRfHarmonics;
use crate::eigen::jacobi_eigenvalues;
use crate::error::{Error, Result};
use crate::species::AtomSpecies;

/// Hermitian tridiagonal interaction matrix in units of g_F·μ_B·Gauss.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl InteractionMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }
}

/// Ladder matrix element ⟨m|F₊|m−1⟩/ħ = √(F(F+1) − m(m−1)).
fn ladder_coefficient(f: f64, m: f64) -> f64 {
    (f * (f + 1.0) - m * (m - 1.0)).sqrt()
}

/// Builds the interaction matrix for the species' F manifold.
///
/// `zeeman_shift_g` is |B^S| − ħω/(g_F μ_B) in Gauss (negative above
/// resonance); the RF enters through the perpendicular harmonics. Supported
/// manifolds: F ∈ {1/2, 1, 3/2, 2}.
pub fn interaction_matrix(
    species: &AtomSpecies,
    zeeman_shift_g: f64,
    h: &LocalRfHarmonics,
) -> Result<InteractionMatrix> {
    let twice_f = (2.0 * species.f).round() as i64;
    if !(1..=4).contains(&twice_f) {
        return Err(Error::UnsupportedF(species.f));
    }
    let dim = twice_f as usize + 1;
    let f = species.f;

    let coupling = 0.25
        * Complex64::new(
            h.amp_perp1_g + h.amp_perp2_g * h.relative_phase_rad.sin(),
            -h.amp_perp2_g * h.relative_phase_rad.cos(),
        );

    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        let m = f - i as f64;
        entries[i * dim + i] = Complex64::new(m * zeeman_shift_g, 0.0);
        if i + 1 < dim {
            let c = ladder_coefficient(f, m) * coupling;
            entries[i * dim + (i + 1)] = c;
            entries[(i + 1) * dim + i] = c.conj();
        }
    }
    Ok(InteractionMatrix { dim, entries })
}

/// Ascending real spectrum of a Hermitian interaction matrix, in Gauss.
///
/// The complex Hermitian problem H = A + iB is embedded into the real
/// symmetric [[A, −B], [B, A]], whose spectrum is that of H with every
/// eigenvalue doubled.
pub fn eigenvalues(m: &InteractionMatrix) -> Result<Vec<f64>> {
    let n = m.dim;
    let nn = 2 * n;
    let mut embedded = vec![0.0; nn * nn];
    for i in 0..n {
        for j in 0..n {
            let e = m.entries[i * n + j];
            embedded[i * nn + j] = e.re;
            embedded[(i + n) * nn + (j + n)] = e.re;
            embedded[i * nn + (j + n)] = -e.im;
            embedded[(i + n) * nn + j] = e.im;
        }
    }
    let mut all = jacobi_eigenvalues(&mut embedded, nn)?;
    all.sort_by(f64::total_cmp);
    Ok(all.into_iter().step_by(2).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn harmonics(a1: f64, a2: f64, gamma: f64) -> LocalRfHarmonics {
        LocalRfHarmonics {
            amp_perp1_g: a1,
            amp_perp2_g: a2,
            relative_phase_rad: gamma,
            amp_par_g: 0.0,
        }
    }

    fn species_with_f(f: f64) -> AtomSpecies {
        AtomSpecies::new(f, f, 0.5, 1.44316060e-25).unwrap()
    }

    /// Closed-form spectrum {m·√(b² + (A1²+A2²+2A1A2 sinγ)/4)}, ascending.
    fn closed_form_spectrum(f: f64, b: f64, h: &LocalRfHarmonics) -> Vec<f64> {
        let radicand = b * b
            + 0.25
                * (h.amp_perp1_g * h.amp_perp1_g
                    + h.amp_perp2_g * h.amp_perp2_g
                    + 2.0 * h.amp_perp1_g * h.amp_perp2_g * h.relative_phase_rad.sin());
        let root = radicand.sqrt();
        let dim = (2.0 * f).round() as i64 + 1;
        let mut out: Vec<f64> = (0..dim).map(|i| (f - i as f64) * root).collect();
        out.sort_by(f64::total_cmp);
        out
    }

    #[test]
    fn f2_matrix_reproduces_literal_coefficients() {
        let sp = species_with_f(2.0);
        let m = interaction_matrix(&sp, 0.37, &harmonics(1.0, 0.0, 0.0)).unwrap();
        assert_eq!(m.dim(), 5);
        // outer couplings 1/2, inner couplings sqrt(6)/4, all real for A2 = 0
        assert_relative_eq!(m.entry(0, 1).re, 0.5, max_relative = 1e-15);
        assert_relative_eq!(m.entry(1, 2).re, 6.0_f64.sqrt() / 4.0, max_relative = 1e-15);
        assert_relative_eq!(m.entry(2, 3).re, 6.0_f64.sqrt() / 4.0, max_relative = 1e-15);
        assert_relative_eq!(m.entry(3, 4).re, 0.5, max_relative = 1e-15);
        // diagonal runs m = 2..-2 times the Zeeman shift
        for (i, expect) in [2.0, 1.0, 0.0, -1.0, -2.0].into_iter().enumerate() {
            assert_relative_eq!(m.entry(i, i).re, expect * 0.37, max_relative = 1e-15);
        }
    }

    #[test]
    fn f1_couplings() {
        let sp = species_with_f(1.0);
        let m = interaction_matrix(&sp, 0.0, &harmonics(1.0, 0.0, 0.0)).unwrap();
        assert_relative_eq!(m.entry(0, 1).re, 2.0_f64.sqrt() / 4.0, max_relative = 1e-15);
        assert_relative_eq!(m.entry(1, 2).re, 2.0_f64.sqrt() / 4.0, max_relative = 1e-15);
    }

    #[test]
    fn matrix_is_hermitian_tridiagonal() {
        let sp = species_with_f(2.0);
        let m = interaction_matrix(&sp, -0.8, &harmonics(0.3, 0.9, 1.1)).unwrap();
        for i in 0..5 {
            for j in 0..5 {
                let e = m.entry(i, j);
                let et = m.entry(j, i);
                assert_eq!(e.re, et.re);
                assert_eq!(e.im, -et.im);
                if i.abs_diff(j) > 1 {
                    assert_eq!(e, Complex64::new(0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn unsupported_f_is_rejected() {
        let sp = species_with_f(2.5);
        assert_eq!(
            interaction_matrix(&sp, 0.0, &harmonics(1.0, 0.0, 0.0)),
            Err(Error::UnsupportedF(2.5))
        );
    }

    #[test]
    fn diagonal_spectrum() {
        let sp = species_with_f(2.0);
        let m = interaction_matrix(&sp, 1.0, &harmonics(0.0, 0.0, 0.0)).unwrap();
        let l = eigenvalues(&m).unwrap();
        for (got, want) in l.iter().zip([-2.0, -1.0, 0.0, 1.0, 2.0]) {
            assert_relative_eq!(*got, want, epsilon = 1e-13);
        }
    }

    #[test]
    fn pure_coupling_spectrum() {
        let sp = species_with_f(2.0);
        let m = interaction_matrix(&sp, 0.0, &harmonics(1.0, 0.0, 0.0)).unwrap();
        let l = eigenvalues(&m).unwrap();
        for (got, want) in l.iter().zip([-1.0, -0.5, 0.0, 0.5, 1.0]) {
            assert_relative_eq!(*got, want, epsilon = 1e-13);
        }
    }

    #[test]
    fn random_spectra_match_closed_form_all_f() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x0e16);
        for &f in &[0.5, 1.0, 1.5, 2.0] {
            let sp = species_with_f(f);
            for _ in 0..1000 {
                let b = rng.random_range(-2.0..2.0);
                let h = harmonics(
                    rng.random_range(0.0..1.5),
                    rng.random_range(0.0..1.5),
                    rng.random_range(-PI..PI),
                );
                let m = interaction_matrix(&sp, b, &h).unwrap();
                let got = eigenvalues(&m).unwrap();
                let want = closed_form_spectrum(f, b, &h);
                let scale = want.last().unwrap().abs().max(1e-12);
                for (g, w) in got.iter().zip(&want) {
                    assert!(
                        (g - w).abs() / scale < 1e-10,
                        "F={f} b={b} h={h:?}: got {g}, want {w}"
                    );
                }
            }
        }
    }
}
