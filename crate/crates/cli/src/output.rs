//! Data-file writers. Both CSV formats carry exact headers and render
//! numbers through [`fmt_sig9`](crate::format::fmt_sig9), so regenerating
//! a file from the same inputs reproduces it byte for byte.

use std::io::{self, Write};

use dressed_trap_core::constants::rad_s_to_h_khz;
use dressed_trap_core::{PotentialGrid, Trajectory};

use crate::format::fmt_sig9;

pub const GRID_HEADER: &str = "x_um,y_um,t_s,V_h_kHz,delta_rad_s,rabi_rad_s";
pub const TRAJECTORY_HEADER: &str = "t_s,x_um,y_um,vx_um_s,vy_um_s,E_over_h_kHz";

/// Writes a potential grid as CSV, y-major (x varies fastest).
pub fn write_grid_csv(w: &mut impl Write, grid: &PotentialGrid) -> io::Result<()> {
    writeln!(w, "{GRID_HEADER}")?;
    let t = fmt_sig9(grid.time_s);
    for j in 0..grid.grid.ny {
        let y = fmt_sig9(grid.grid.y_at(j));
        for i in 0..grid.grid.nx {
            let idx = j * grid.grid.nx + i;
            writeln!(
                w,
                "{},{},{},{},{},{}",
                fmt_sig9(grid.grid.x_at(i)),
                y,
                t,
                fmt_sig9(rad_s_to_h_khz(grid.v_over_hbar[idx])),
                fmt_sig9(grid.detuning[idx]),
                fmt_sig9(grid.rabi[idx]),
            )?;
        }
    }
    Ok(())
}

/// Writes an integrated trajectory as CSV, one row per stored step.
pub fn write_trajectory_csv(w: &mut impl Write, traj: &Trajectory) -> io::Result<()> {
    writeln!(w, "{TRAJECTORY_HEADER}")?;
    for (state, energy) in traj.states.iter().zip(&traj.energy_over_hbar) {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            fmt_sig9(state.t_s),
            fmt_sig9(state.x_um),
            fmt_sig9(state.y_um),
            fmt_sig9(state.vx_um_s),
            fmt_sig9(state.vy_um_s),
            fmt_sig9(rad_s_to_h_khz(*energy)),
        )?;
    }
    Ok(())
}
