use thiserror::Error;

use crate::ring::Elem;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: expected {}", expected.join(" or "))]
    Parse { offset: usize, expected: Vec<String> },

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("invalid element literal: {0}")]
    InvalidElement(String),

    #[error("ring order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: u128, cap: usize },

    #[error("axiom `{axiom}` violated at {witness:?}")]
    AxiomViolation { axiom: String, witness: Vec<Elem> },

    #[error("scalar action axiom `{axiom}` violated at {witness}")]
    ActionAxiomViolation { axiom: String, witness: String },

    #[error("characteristic {characteristic} does not divide the scalar modulus {modulus}")]
    CharacteristicMismatch { characteristic: u64, modulus: u64 },

    #[error("scalar ring must be commutative with unity: {0}")]
    InvalidScalarRing(String),

    #[error("element {0} has no right projection")]
    NoRightProjection(Elem),

    #[error("element {0} has no left projection")]
    NoLeftProjection(Elem),

    #[error("element {x} has several right projection candidates {candidates:?}")]
    AmbiguousRightProjection { x: Elem, candidates: Vec<Elem> },

    #[error("element {x} has several left projection candidates {candidates:?}")]
    AmbiguousLeftProjection { x: Elem, candidates: Vec<Elem> },

    #[error("element {0} has no central cover")]
    NoCentralCover(Elem),

    #[error("no greatest projection among {candidates:?}")]
    NoGreatestElement { candidates: Vec<Elem> },

    #[error("annihilator family grew past {cap} sets")]
    FamilyCapExceeded { cap: usize },

    #[error("involution is not well defined on the quotient: {0}")]
    InvolutionNotWellDefined(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("formula mismatch at {coset}: formula gives {formula}, definition gives {brute}")]
    FormulaMismatch { coset: String, formula: String, brute: String },

    #[error("verification of `{claim}` failed at {witness}")]
    VerificationFailed { claim: String, witness: String },

    #[error("{0}")]
    Io(String),
}

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
