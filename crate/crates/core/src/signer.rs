//! Ed25519 key generation, signing and verification.
//!
//! [`KeyPair::sign`] borrows the key immutably and keeps every intermediate
//! in locals, so the hashed key material cannot be altered by signing.

use crate::edwards::{EncodedPoint, GroupElement};
use crate::scalar::{mul_add_raw, ClampedScalar, Scalar};
use crate::sha512::{sha512, Sha512};
use crate::{Error, Result};

pub const SEED_LEN: usize = 32;
pub const PUBLIC_KEY_LEN: usize = 32;
pub const SIGNATURE_LEN: usize = 64;

/// A signature as it travels on the wire: `R || S`. `S` is kept as raw
/// bytes so that a non-canonical value can be represented and rejected.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Signature {
    pub r_encoded: EncodedPoint,
    pub s: [u8; 32],
}

impl Signature {
    pub fn from_bytes(bytes: &[u8]) -> Result<Signature> {
        if bytes.len() != SIGNATURE_LEN {
            return Err(Error::WrongLength { expected: SIGNATURE_LEN, actual: bytes.len() });
        }
        let mut r_encoded = [0u8; 32];
        let mut s = [0u8; 32];
        r_encoded.copy_from_slice(&bytes[..32]);
        s.copy_from_slice(&bytes[32..]);
        Ok(Signature { r_encoded, s })
    }

    pub fn to_bytes(&self) -> [u8; SIGNATURE_LEN] {
        let mut out = [0u8; SIGNATURE_LEN];
        out[..32].copy_from_slice(&self.r_encoded);
        out[32..].copy_from_slice(&self.s);
        out
    }

    /// `S` as a scalar, if it is canonical.
    pub fn s_scalar(&self) -> Result<Scalar> {
        Scalar::from_canonical_bytes(self.s)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct KeyPair {
    seed: [u8; SEED_LEN],
    hashed: [u8; 64],
    secret: ClampedScalar,
    public: EncodedPoint,
}

impl core::fmt::Debug for KeyPair {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("KeyPair").field("public", &hex::encode(self.public)).finish_non_exhaustive()
    }
}

impl KeyPair {
    pub fn from_seed(seed: &[u8]) -> Result<KeyPair> {
        let seed: [u8; SEED_LEN] = seed
            .try_into()
            .map_err(|_| Error::WrongLength { expected: SEED_LEN, actual: seed.len() })?;
        let hashed = sha512(&seed);
        let secret = ClampedScalar::from_bytes_clamped(hashed[..32].try_into().unwrap());
        let public = GroupElement::scalar_mult_base(secret.as_bytes()).compress();
        Ok(KeyPair { seed, hashed, secret, public })
    }

    pub fn generate<R: rand::RngCore + rand::CryptoRng>(rng: &mut R) -> KeyPair {
        let mut seed = [0u8; SEED_LEN];
        rng.fill_bytes(&mut seed);
        KeyPair::from_seed(&seed).expect("seed has the right length")
    }

    pub fn seed(&self) -> &[u8; SEED_LEN] {
        &self.seed
    }

    /// H(k), the 64-byte hashed private key.
    pub fn hashed(&self) -> &[u8; 64] {
        &self.hashed
    }

    pub fn secret_scalar(&self) -> &ClampedScalar {
        &self.secret
    }

    pub fn public(&self) -> &EncodedPoint {
        &self.public
    }

    /// Seed, hashed key and public key, concatenated. Used to check that
    /// signing leaves the key untouched.
    pub fn to_bytes(&self) -> [u8; 128] {
        let mut out = [0u8; 128];
        out[..32].copy_from_slice(&self.seed);
        out[32..96].copy_from_slice(&self.hashed);
        out[96..].copy_from_slice(&self.public);
        out
    }

    pub fn sign(&self, message: &[u8]) -> Signature {
        let mut h = Sha512::new();
        let r = Scalar::reduce512(&h.update(&self.hashed[32..]).update(message).finalize_reset())
            .expect("digest is 64 bytes");
        let r_encoded = GroupElement::scalar_mult_base(r.as_bytes()).compress();
        let hram = challenge(&mut h, &r_encoded, &self.public, message);
        let s = mul_add_raw(hram.as_bytes(), self.secret.as_bytes(), r.as_bytes());
        Signature { r_encoded, s: s.to_bytes() }
    }
}

/// The challenge `H(R || A || M) mod l`.
pub fn hram(r_encoded: &EncodedPoint, public: &EncodedPoint, message: &[u8]) -> Scalar {
    challenge(&mut Sha512::new(), r_encoded, public, message)
}

fn challenge(h: &mut Sha512, r_encoded: &[u8], public: &[u8], message: &[u8]) -> Scalar {
    h.reset();
    let digest = h.update(r_encoded).update(public).update(message).finalize_reset();
    Scalar::reduce512(&digest).expect("digest is 64 bytes")
}

/// Strict verification: `R` and `A` must decode, `S` must be below l, and
/// `S B = R + h A` must hold exactly (no cofactor clearing). Malformed
/// input of any kind yields `false`.
pub fn verify(public: &[u8], message: &[u8], signature: &[u8]) -> bool {
    let Ok(public): core::result::Result<EncodedPoint, _> = public.try_into() else {
        return false;
    };
    let Ok(sig) = Signature::from_bytes(signature) else {
        return false;
    };
    verify_signature(&public, message, &sig)
}

pub fn verify_signature(public: &EncodedPoint, message: &[u8], sig: &Signature) -> bool {
    let Ok(s) = sig.s_scalar() else {
        return false;
    };
    let Ok(a) = GroupElement::decompress(public) else {
        return false;
    };
    let Ok(r) = GroupElement::decompress(&sig.r_encoded) else {
        return false;
    };
    let h = hram(&sig.r_encoded, public, message);
    GroupElement::double_scalar_mult_vartime(&s, &a.negate(), &h) == r
}
