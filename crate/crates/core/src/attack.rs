//! Secret-scalar recovery from the first two signatures a fresh
//! [`VulnerableSigner`](crate::insecure_demo::VulnerableSigner) produces for
//! one message, and forgery with the recovered scalar.
//!
//! Both signatures share the nonce `r` and the challenge `h`, and the second
//! one was computed with the first `S` in place of the secret:
//!
//! ```text
//! S1 = r + h * a    (mod l)
//! S2 = r + h * S1   (mod l)
//! ```
//!
//! so `r = S2 - h * S1` and `a = (S1 - r) / h`. Only public data is used.

use crate::edwards::{EncodedPoint, GroupElement};
use crate::scalar::Scalar;
use crate::sha512::Sha512;
use crate::signer::{hram, Signature};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackTranscript {
    pub public_key: EncodedPoint,
    pub message: Vec<u8>,
    pub sig1: Signature,
    pub sig2: Signature,
}

/// The secret scalar modulo l and the nonce of the attacked message.
///
/// `a` is the residue of the clamped secret, which can itself exceed l.
/// Both give the same public key and the same signatures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecoveredKey {
    pub a: Scalar,
    pub r: Scalar,
    pub hram: Scalar,
}

pub fn recover(t: &AttackTranscript) -> Result<RecoveredKey> {
    if t.sig1.r_encoded != t.sig2.r_encoded {
        return Err(Error::TranscriptMismatch);
    }
    let s1 = t.sig1.s_scalar()?;
    let s2 = t.sig2.s_scalar()?;

    let h = hram(&t.sig1.r_encoded, &t.public_key, &t.message);
    let h_inv = h.invert().map_err(|_| Error::NonInvertibleHram)?;

    let r = s2.sub(&h.mul(&s1));
    let a = s1.sub(&r).mul(&h_inv);

    if GroupElement::scalar_mult_base(a.as_bytes()).compress() != t.public_key {
        return Err(Error::RecoveryFailed);
    }
    Ok(RecoveredKey { a, r, hram: h })
}

/// Signs `message` with a recovered scalar. The nonce comes from
/// `H(nonce_seed || message)`; a verifier has no way to tell.
pub fn forge(
    key: &RecoveredKey,
    public_key: &EncodedPoint,
    message: &[u8],
    nonce_seed: &[u8; 32],
) -> Signature {
    let mut d = Sha512::new();
    d.update(nonce_seed).update(message);
    let r = Scalar::reduce512(&d.finalize()).expect("digest is 64 bytes");
    let r_encoded = GroupElement::scalar_mult_base(r.as_bytes()).compress();
    let h = hram(&r_encoded, public_key, message);
    let s = Scalar::mul_add(&h, &key.a, &r);
    Signature { r_encoded, s: s.to_bytes() }
}
