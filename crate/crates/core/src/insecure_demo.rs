//! **INSECURE. DEMONSTRATION ONLY.**
//!
//! A stateful signer that keeps the 64-byte hashed private key in a
//! persistent buffer and computes `S` *into* that buffer, aliasing the
//! output of `mul_add` with one of its inputs:
//!
//! ```text
//! mul_add(hashed_private_key, hram, hashed_private_key, r)
//! ```
//!
//! The first signature is correct. From then on the first half of the
//! buffer holds the previous `S` instead of the secret scalar, every later
//! signature is invalid, and two signatures of one message reveal the key
//! (see [`crate::attack`]). The second half of the buffer, which seeds the
//! nonce, is never touched, so the same message always gets the same `R`.

use crate::edwards::{EncodedPoint, GroupElement};
use crate::scalar::{mul_add_raw, ClampedScalar, Scalar};
use crate::sha512::Sha512;
use crate::signer::{KeyPair, Signature};

#[derive(Clone, Debug)]
pub struct VulnerableSigner {
    hashed_private_key: [u8; 64],
    public_key: EncodedPoint,
    sign_count: u64,
}

impl VulnerableSigner {
    pub fn new(key: &KeyPair) -> VulnerableSigner {
        VulnerableSigner {
            hashed_private_key: *key.hashed(),
            public_key: *key.public(),
            sign_count: 0,
        }
    }

    pub fn from_seed(seed: &[u8]) -> crate::Result<VulnerableSigner> {
        Ok(VulnerableSigner::new(&KeyPair::from_seed(seed)?))
    }

    pub fn public_key(&self) -> &EncodedPoint {
        &self.public_key
    }

    pub fn sign_count(&self) -> u64 {
        self.sign_count
    }

    /// A copy of the 64-byte buffer as it stands now.
    pub fn snapshot(&self) -> [u8; 64] {
        self.hashed_private_key
    }

    pub fn sign(&mut self, message: &[u8]) -> Signature {
        let mut digest = Sha512::new();
        digest.update(&self.hashed_private_key[32..]).update(message);
        let r = Scalar::reduce512(&digest.finalize_reset()).expect("digest is 64 bytes");
        let r_encoded = GroupElement::scalar_mult_base(r.as_bytes()).compress();

        digest.reset();
        digest.update(&r_encoded).update(&self.public_key).update(message);
        let hram = Scalar::reduce512(&digest.finalize_reset()).expect("digest is 64 bytes");

        let first_half: [u8; 32] = self.hashed_private_key[..32].try_into().unwrap();
        // A fresh buffer holds H(k), whose first half is clamped into a.
        // After that it holds the previous S and is consumed as is.
        let a = if self.sign_count == 0 {
            *ClampedScalar::from_bytes_clamped(&first_half).as_bytes()
        } else {
            first_half
        };
        let s = mul_add_raw(hram.as_bytes(), &a, r.as_bytes());
        self.hashed_private_key[..32].copy_from_slice(s.as_bytes());
        self.sign_count += 1;

        let mut s_out = [0u8; 32];
        s_out.copy_from_slice(&self.hashed_private_key[..32]);
        Signature { r_encoded, s: s_out }
    }
}
