use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Gibbs parameters for which the pressure series diverges.
    #[error("inadmissible Gibbs parameters: require q < t·ln(α), got q = {q}, t·ln(α) = {bound}")]
    InadmissibleGibbs { q: f64, bound: f64 },

    /// A Moran-type equation has no root in the searched interval.
    #[error("no root in (0, {d_max}]: {reason}")]
    RootOutOfRange { d_max: f64, reason: String },

    /// Digit search walked past the iteration cap (input too close to zero).
    #[error("digit search exceeded {0} iterations")]
    DigitOverflow(u64),

    /// A digit law assigns zero mass to a digit present in the prefix.
    #[error("law assigns zero mass to digit {0}")]
    ZeroMass(u64),

    /// A prefix disagrees with the constrained digits of a pattern.
    #[error("prefix inconsistent with pattern at position {position}: expected digit {expected}, found {found}")]
    PatternMismatch {
        position: u64,
        expected: u64,
        found: u64,
    },

    /// A pattern fails the hypotheses required before dimension claims.
    #[error("pattern fails admissibility hypotheses: {0}")]
    InadmissiblePattern(String),

    /// Cylinder length underflows the float backend; use the log-scale form.
    #[error("cylinder length underflows (log-length {log_length}); use the log-scale form")]
    Underflow { log_length: f64 },

    /// Malformed textual input (decimal strings, digit listings, grids).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
