//! Ed25519 built from field arithmetic upward, together with a laboratory
//! for the "hashed private key aliasing" signer bug.
//!
//! The layers, bottom to top:
//!
//! * [`field`]: arithmetic in GF(2^255 - 19) on ten 25.5-bit limbs.
//! * [`sha512`]: incremental SHA-512.
//! * [`scalar`]: arithmetic modulo the prime group order `l`.
//! * [`edwards`]: the twisted Edwards group and its point encoding.
//! * [`signer`]: a correct, non-mutating Ed25519 signer and verifier.
//! * [`insecure_demo`]: a signer that writes `S` back into its hashed key
//!   buffer. Never use it for anything but demonstrations.
//! * [`attack`]: recovery of the secret scalar from two signatures of that
//!   signer on one message, and forgery with the recovered key.
//! * [`harness`]: the detection suites (determinism, multi-message,
//!   field differential, zero regression, RFC 8032 vectors).

pub mod attack;
pub mod cli;
pub mod edwards;
mod error;
pub mod field;
pub mod harness;
pub mod insecure_demo;
pub mod scalar;
pub mod sha512;
pub mod signer;

pub use error::{Error, Result};
