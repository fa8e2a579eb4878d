use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("expected {expected} bytes, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("field element limb {index} is outside the headroom bound")]
    LimbOutOfRange { index: usize },
    #[error("non-canonical encoding")]
    NonCanonical,
    #[error("not on curve")]
    NotOnCurve,
    #[error("invalid sign bit for x = 0")]
    InvalidSign,
    #[error("non-invertible")]
    NonInvertible,
    #[error("transcript mismatch (different nonces)")]
    TranscriptMismatch,
    #[error("non-invertible hram")]
    NonInvertibleHram,
    #[error("recovery failed: recovered scalar does not match the public key")]
    RecoveryFailed,
}
