//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameter validation failed; the message names the violated constraint.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// An operation was called outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Evaluation was requested at (or too close to) a pole.
    #[error("pole error: {0}")]
    Pole(String),

    /// A floating evaluation cannot meet its accuracy contract because an
    /// intermediate quantity is too close to zero.
    #[error("conditioning error: {0}")]
    Conditioning(String),

    /// A series or summation failed to reach the requested accuracy.
    #[error("precision error: {0}")]
    Precision(String),

    /// An exact identity that must hold for valid inputs failed; this signals
    /// a bug in the decomposition pipeline, not a user error.
    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    /// The requested weight pattern is not in the divisor-generated lattice;
    /// the payload lists the residual Hurwitz terms (j, leftover weight).
    #[error("irreducible combination: residual Hurwitz terms {0:?}")]
    IrreducibleCombination(Vec<(u32, String)>),

    /// An exact claim checked by construction failed. Loud by design.
    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
