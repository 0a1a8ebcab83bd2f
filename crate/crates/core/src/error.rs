use thiserror::Error;

/// Errors raised by curve evaluation and the geometry kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter {t} lies outside [{min}, {max}]")]
    OutOfRange { t: f64, min: f64, max: f64 },

    #[error("curve is not regular at t = {t} (speed {speed:e})")]
    DegenerateCurve { t: f64, speed: f64 },

    #[error("integration produced a non-finite state at t = {t}")]
    NonFiniteState { t: f64 },

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("input vectors are linearly dependent")]
    DependentInput,

    #[error("sample grids do not match: {0}")]
    GridMismatch(String),

    #[error("Frenet frame undefined at t = {t} (curvature vanishes)")]
    FrenetUndefined { t: f64 },

    #[error("involute has a cusp on the window (at s = {s})")]
    CuspOnWindow { s: f64 },

    #[error("curves coincide at t = {t}")]
    CoincidentCurves { t: f64 },

    #[error("normal development collapses to the origin")]
    DegenerateDevelopment,

    #[error("point ({x}, {y}, {z}) is not in the upper half-space")]
    NotInHalfSpace { x: f64, y: f64, z: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("circle fit is degenerate (samples are collinear)")]
    DegenerateFit,

    #[error("curve is not unit speed (speed deviates from 1 by {deviation:e})")]
    NotUnitSpeed { deviation: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
