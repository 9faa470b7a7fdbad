// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by the census engine.
///
/// Variants map onto the failure classes the CLI distinguishes: invalid
/// input, verification failure, and range refusal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{value} is not the shape of an S4 discriminant: v_{prime} = {exponent}")]
    NotAnS4Shape { value: u128, prime: u128, exponent: u32 },
    #[error("{value} is not the shape of an octahedral conductor: v_{prime} = {exponent}")]
    NotAConductorShape { value: u128, prime: u128, exponent: u32 },
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("polynomial {0} is reducible")]
    Reducible(String),
    #[error("polynomial parse error: {0}")]
    Parse(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("inconsistent triple: {0}")]
    InconsistentTriple(String),
    #[error("table violation at p = {prime}: {detail}")]
    TableViolation { prime: u128, detail: String },
    #[error("class group certification failed: {0}")]
    Certification(String),
    #[error("census range too small: {0}")]
    Range(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
