use thiserror::Error;

/// Errors produced by the trap-potential library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The trapping plane z = -z0 requires z0 > 0.
    #[error("invalid trapping plane: z0 must be positive, got {0} um")]
    InvalidPlane(f64),

    /// The static field vanishes at the trap centre, so the quantization
    /// axis (and with it the local frame) is undefined there.
    #[error("local frame undefined: static field is zero at the requested point")]
    DegenerateFrame,

    #[error("unsupported hyperfine number F = {0}; supported values are 1/2, 1, 3/2, 2")]
    UnsupportedF(f64),

    #[error("eigensolver did not converge within {0} sweeps")]
    EigensolverStalled(usize),

    /// A scenario constraint was violated while building or evaluating a
    /// named trap geometry.
    #[error("scenario `{kind}` constraint violated: {constraint}")]
    ScenarioViolation { kind: &'static str, constraint: String },

    /// An operation was asked to run on a scenario kind it does not apply to.
    #[error("operation requires {expected}, got scenario `{got}`")]
    KindMismatch { expected: &'static str, got: &'static str },

    /// The RF frequency is below the Zeeman splitting everywhere on the
    /// trapping plane, so the double-well separation is undefined.
    #[error("no double well: RF frequency is below resonance at the trapping plane")]
    NoDoubleWell,

    /// Same condition as `NoDoubleWell`, for the ring-family radius.
    #[error("no resonance ring: RF frequency is below resonance at the trapping plane")]
    NoRing,

    #[error("scenario is not time-dependent")]
    NotTimeDependent,

    /// The tracked minimum jumped too far between consecutive samples.
    #[error("minimum tracking lost between t = {t_prev} s and t = {t} s: azimuth jumped {jump_rad} rad")]
    LostTracking { t_prev: f64, t: f64, jump_rad: f64 },

    /// A per-seed minimization failed to converge within the iteration cap.
    #[error("minimization did not converge within {0} iterations")]
    Unconverged(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
