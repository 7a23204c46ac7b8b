//! Numerical services over the trap potentials: grid evaluation, finite
//! differences, minimum finding and classification, azimuthal profiling,
//! minimum tracking in time, adiabaticity diagnostics, and classical
//! test-atom dynamics.

mod dynamics;
mod gradient;
mod grid;
mod minima;
mod minimize;
mod profile;

pub use dynamics::{simulate_atom, AtomState, Trajectory};
pub use gradient::{gradient, gradient_with, GRADIENT_STEP_UM};
pub use grid::{eval_grid, PlaneGrid, PotentialGrid};
pub use minima::{find_minima, CurvatureClass, MinimumRecord};
pub use minimize::{golden_section_min, nelder_mead_2d, NelderMead2dResult};
pub use profile::{
    adiabaticity_report, ring_profile, track_minimum, AdiabaticityReport, RingProfilePoint,
    TrackPoint,
};
