//! Crate-wide error type.
//!
//! Error payloads are reported as `f64` regardless of the scalar the caller
//! works in; they are diagnostics, not data.

use thiserror::Error;

/// Errors raised by constructors and domain-restricted operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An angle argument fell outside its documented range.
    #[error("{name} = {value} outside [{min}, {max}]")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// A parameter was non-finite or violated a sign constraint.
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    /// Amplitudes do not sum to unit norm within tolerance.
    #[error("state not normalized: |norm - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },

    /// A bipartition must name a nonempty proper subset of the four
    /// subsystems.
    #[error("bipartition must be a nonempty proper subset of {{A, B, a, b}}")]
    InvalidBipartition,

    /// The fast-path concurrence was asked for on a matrix that is not in
    /// X form.
    #[error("density matrix not in X form: off-pattern magnitude {magnitude:e}")]
    NotXForm { magnitude: f64 },

    /// The dissipative time mapping is only defined while excitation flows
    /// monotonically into the field, i.e. for Omega*t below pi/2.
    #[error("dissipative mapping undefined at Omega*t = {omega_t} (>= pi/2)")]
    DissipativeDomain { omega_t: f64 },

    /// tan(alpha) diverges, so the weighted concurrence combination is
    /// undefined.
    #[error("tan(alpha) diverges at alpha = pi/2")]
    TanDiverges,

    /// A sample grid was empty or not strictly ascending.
    #[error("time samples must be nonempty and ascending")]
    BadTimeGrid,

    /// A scan was requested with too few samples to bracket roots reliably.
    #[error("scan needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
