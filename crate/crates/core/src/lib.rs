//! RF-dressed adiabatic potentials for ultracold atoms in a quadrupole
//! magnetic trap.
//!
//! A static quadrupole field B_q·(x, y, −2z) dressed by an arbitrarily
//! polarized, phase-modulated RF field produces an adiabatic potential
//! V = m_F·ħ·√(δ² + |Ω|²) for an atom in the Zeeman sub-level |F, m_F⟩,
//! where δ is the detuning of the RF carrier from the local Larmor
//! frequency and Ω the Rabi coupling built from the RF components
//! perpendicular to the local static field. Confined to a plane z = −z0
//! by an external sheet potential (taken as given here), the choice of RF
//! polarization and phase carves the in-plane landscape into double wells,
//! rings, split arcs, and tilted rings whose single well can be steered —
//! or rotated and oscillated in time — through the phase of the RF
//! z-component.
//!
//! The crate is organized in four layers:
//!
//! * [`field`], [`frame`], [`species`], [`constants`] — fields, local
//!   quantization frames, atoms, units;
//! * [`dressed`], [`spin`], [`eigen`] — detuning/Rabi/potential through
//!   two independent routes plus the (2F+1)-level interaction matrix and
//!   its spectrum;
//! * [`scenario`] — the named trap geometries, their closed-form
//!   potentials and derived quantities (well separation, ring radius,
//!   well azimuth laws);
//! * [`landscape`] — grids, finite differences, minimum finding and
//!   classification, azimuthal profiles, time tracking of moving minima,
//!   adiabaticity diagnostics, and classical test-atom dynamics.
//!
//! Unit conventions: micrometres, Gauss, seconds; energies as E/ħ in
//! rad/s (see [`constants`]).

pub mod constants;
pub mod dressed;
pub mod eigen;
pub mod error;
pub mod field;
pub mod frame;
pub mod landscape;
pub mod scenario;
pub mod species;
pub mod spin;

pub use dressed::{
    detuning, detuning_on_plane, local_harmonics, potential, rabi_from_harmonics, rabi_general,
    DressedSample, LocalRfHarmonics,
};
pub use error::{Error, Result};
pub use field::{
    plane_field_magnitude, rf_field_lab, static_field, FieldVector, PhaseModulation, Position,
    QuadrupoleField, RfFieldSpec,
};
pub use frame::{local_frame, rf_field_local, rotation_matrices, LocalFrame, RotationMatrices};
pub use landscape::{
    adiabaticity_report, eval_grid, find_minima, gradient, ring_profile, simulate_atom,
    track_minimum, AtomState, MinimumRecord, PlaneGrid, PotentialGrid, Trajectory,
};
pub use scenario::{
    closed_form_potential, closed_form_sample, critical_gradient, derived_quantities,
    make_scenario, ring_radius, well_azimuth, well_separation, DerivedQuantities, PotentialModel,
    ScenarioKind, TrapConfiguration, WellAzimuthLaw,
};
pub use species::AtomSpecies;
pub use spin::{eigenvalues, interaction_matrix, InteractionMatrix};
