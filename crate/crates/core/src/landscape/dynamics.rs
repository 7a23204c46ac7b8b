//! Classical test-atom motion in the plane z = −z0: velocity-Verlet
//! integration of m·r̈ = −ħ·∇(V/ħ), with the atom frozen in its dressed
//! state. For the modulated kinds the potential is evaluated at the
//! current integration time, so a slowly rotating well drags the atom
//! with it.

use crate::constants::HBAR;
use crate::error::{Error, Result};
use crate::scenario::{PotentialModel, TrapConfiguration};

use super::gradient::gradient;

/// μm²/m² — (ħ/m)·∇(V/ħ) comes out in m²/(s²·μm) with micrometre inputs.
const M2_TO_UM2: f64 = 1.0e12;

/// Planar state of a classical test atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomState {
    pub x_um: f64,
    pub y_um: f64,
    pub vx_um_s: f64,
    pub vy_um_s: f64,
    pub t_s: f64,
}

/// An integrated trajectory with a per-sample total-energy log
/// (kinetic + potential, as E/ħ in rad/s). `escaped` marks trajectories
/// cut short at the domain boundary; the recorded part remains valid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<AtomState>,
    pub energy_over_hbar: Vec<f64>,
    pub escaped: bool,
}

/// Integrates the atom through `duration_s` with step `dt_s`, stopping
/// early if it leaves the disc of radius `domain_radius_um`.
pub fn simulate_atom(
    config: &TrapConfiguration,
    model: PotentialModel,
    start: AtomState,
    duration_s: f64,
    dt_s: f64,
    domain_radius_um: f64,
) -> Result<Trajectory> {
    if !(dt_s > 0.0) || !dt_s.is_finite() {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt_s} s")));
    }
    if !(duration_s >= dt_s) {
        return Err(Error::InvalidParameter("duration must cover at least one step".into()));
    }
    if !(domain_radius_um > 0.0) {
        return Err(Error::InvalidParameter("domain radius must be positive".into()));
    }

    let accel_per_grad = HBAR / config.species.mass_kg * M2_TO_UM2;
    let kin_factor = config.species.mass_kg / (2.0 * HBAR) / M2_TO_UM2;
    let accel = |x: f64, y: f64, t: f64| -> (f64, f64) {
        let (gx, gy) = gradient(config, model, x, y, t);
        (-accel_per_grad * gx, -accel_per_grad * gy)
    };
    let energy = |s: &AtomState| -> f64 {
        let v = model.v_over_hbar(config, s.x_um, s.y_um, s.t_s).unwrap_or(f64::NAN);
        v + kin_factor * (s.vx_um_s * s.vx_um_s + s.vy_um_s * s.vy_um_s)
    };

    let n_steps = (duration_s / dt_s).round() as usize;
    let mut states = Vec::with_capacity(n_steps + 1);
    let mut energies = Vec::with_capacity(n_steps + 1);
    let mut s = start;
    states.push(s);
    energies.push(energy(&s));

    let mut escaped = false;
    let (mut ax, mut ay) = accel(s.x_um, s.y_um, s.t_s);
    for _ in 0..n_steps {
        let t_next = s.t_s + dt_s;
        s.x_um += s.vx_um_s * dt_s + 0.5 * ax * dt_s * dt_s;
        s.y_um += s.vy_um_s * dt_s + 0.5 * ay * dt_s * dt_s;
        let (ax_new, ay_new) = accel(s.x_um, s.y_um, t_next);
        s.vx_um_s += 0.5 * (ax + ax_new) * dt_s;
        s.vy_um_s += 0.5 * (ay + ay_new) * dt_s;
        s.t_s = t_next;
        (ax, ay) = (ax_new, ay_new);

        states.push(s);
        energies.push(energy(&s));
        if s.x_um.hypot(s.y_um) > domain_radius_um {
            escaped = true;
            break;
        }
    }
    Ok(Trajectory { states, energy_over_hbar: energies, escaped })
}
