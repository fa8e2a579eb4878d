//! Integers modulo the prime group order
//! l = 2^252 + 27742317777372353535851937790883648493.
//!
//! Products are formed by 64-bit schoolbook multiplication and reduced with
//! Barrett's method (base 2^64, k = 4). None of this is constant time.

use crate::{Error, Result};

/// l, little-endian 64-bit words.
const L: [u64; 4] =
    [0x5812631a5cf5d3ed, 0x14def9dea2f79cd6, 0x0000000000000000, 0x1000000000000000];

/// floor(2^512 / l), 261 bits.
const MU: [u64; 5] = [
    0xed9ce5a30a2c131b,
    0x2106215d086329a7,
    0xffffffffffffffeb,
    0xffffffffffffffff,
    0x000000000000000f,
];

/// l - 2, the Fermat inversion exponent.
const L_MINUS_2: [u64; 4] =
    [0x5812631a5cf5d3eb, 0x14def9dea2f79cd6, 0x0000000000000000, 0x1000000000000000];

/// An integer modulo l, always stored in canonical form (< l).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar([u8; 32]);

impl Scalar {
    pub const ZERO: Scalar = Scalar([0; 32]);
    pub const ONE: Scalar = Scalar([
        1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0,
        0, 0,
    ]);

    /// Accepts only encodings of integers below l.
    pub fn from_canonical_bytes(bytes: [u8; 32]) -> Result<Scalar> {
        if lt(&to_words(&bytes), &L) {
            Ok(Scalar(bytes))
        } else {
            Err(Error::NonCanonical)
        }
    }

    pub fn from_bytes_mod_order(bytes: [u8; 32]) -> Scalar {
        let w = to_words(&bytes);
        let mut wide = [0u64; 8];
        wide[..4].copy_from_slice(&w);
        Scalar::from_words(barrett_reduce(&wide))
    }

    /// Reduces a 64-byte little-endian integer modulo l.
    pub fn reduce512(wide: &[u8]) -> Result<Scalar> {
        if wide.len() != 64 {
            return Err(Error::WrongLength { expected: 64, actual: wide.len() });
        }
        let mut words = [0u64; 8];
        for (w, chunk) in words.iter_mut().zip(wide.chunks_exact(8)) {
            *w = u64::from_le_bytes(chunk.try_into().unwrap());
        }
        Ok(Scalar::from_words(barrett_reduce(&words)))
    }

    pub fn from_u64(v: u64) -> Scalar {
        Scalar::from_words([v, 0, 0, 0])
    }

    pub fn to_bytes(&self) -> [u8; 32] {
        self.0
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 32]
    }

    /// `(a * b + c) mod l`.
    pub fn mul_add(a: &Scalar, b: &Scalar, c: &Scalar) -> Scalar {
        mul_add_raw(&a.0, &b.0, &c.0)
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        let wide = mul_wide(&to_words(&self.0), &to_words(&rhs.0));
        Scalar::from_words(barrett_reduce(&wide))
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        let (sum, carry) = add_words(&to_words(&self.0), &to_words(&rhs.0));
        debug_assert!(!carry);
        Scalar::from_words(sub_if_ge(sum))
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        let (diff, borrow) = sub_words(&to_words(&self.0), &to_words(&rhs.0));
        if borrow {
            Scalar::from_words(add_words(&diff, &L).0)
        } else {
            Scalar::from_words(diff)
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar::ZERO.sub(self)
    }

    /// Multiplicative inverse by Fermat, `self^(l-2)`. Variable time.
    pub fn invert(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::NonInvertible);
        }
        let mut acc = Scalar::ONE;
        for i in (0..256).rev() {
            acc = acc.mul(&acc);
            if (L_MINUS_2[i / 64] >> (i % 64)) & 1 == 1 {
                acc = acc.mul(self);
            }
        }
        Ok(acc)
    }

    fn from_words(w: [u64; 4]) -> Scalar {
        debug_assert!(lt(&w, &L));
        let mut out = [0u8; 32];
        for (chunk, word) in out.chunks_exact_mut(8).zip(w) {
            chunk.copy_from_slice(&word.to_le_bytes());
        }
        Scalar(out)
    }
}

/// The clamped secret integer `a` derived from the first half of H(k):
/// bits 0..=2 and 255 cleared, bit 254 set. It is a 255-bit integer and is
/// *not* reduced modulo l; it only feeds scalar multiplication and
/// [`mul_add_raw`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ClampedScalar([u8; 32]);

impl ClampedScalar {
    pub fn from_bytes_clamped(bytes: &[u8; 32]) -> ClampedScalar {
        let mut b = *bytes;
        b[0] &= 0b1111_1000;
        b[31] &= 0b0111_1111;
        b[31] |= 0b0100_0000;
        ClampedScalar(b)
    }

    pub fn as_bytes(&self) -> &[u8; 32] {
        &self.0
    }

    /// The residue of `a` modulo l.
    pub fn reduce(&self) -> Scalar {
        Scalar::from_bytes_mod_order(self.0)
    }
}

/// `(a * b + c) mod l` for arbitrary 256-bit little-endian integers.
pub fn mul_add_raw(a: &[u8; 32], b: &[u8; 32], c: &[u8; 32]) -> Scalar {
    let prod = Scalar::from_words(barrett_reduce(&mul_wide(&to_words(a), &to_words(b))));
    prod.add(&Scalar::from_bytes_mod_order(*c))
}

fn to_words(bytes: &[u8; 32]) -> [u64; 4] {
    let mut w = [0u64; 4];
    for (word, chunk) in w.iter_mut().zip(bytes.chunks_exact(8)) {
        *word = u64::from_le_bytes(chunk.try_into().unwrap());
    }
    w
}

fn lt(a: &[u64; 4], b: &[u64; 4]) -> bool {
    for i in (0..4).rev() {
        if a[i] != b[i] {
            return a[i] < b[i];
        }
    }
    false
}

fn add_words(a: &[u64; 4], b: &[u64; 4]) -> ([u64; 4], bool) {
    let mut out = [0u64; 4];
    let mut carry = false;
    for i in 0..4 {
        let (s1, c1) = a[i].overflowing_add(b[i]);
        let (s2, c2) = s1.overflowing_add(carry as u64);
        out[i] = s2;
        carry = c1 | c2;
    }
    (out, carry)
}

fn sub_words(a: &[u64; 4], b: &[u64; 4]) -> ([u64; 4], bool) {
    let mut out = [0u64; 4];
    let mut borrow = false;
    for i in 0..4 {
        let (d1, b1) = a[i].overflowing_sub(b[i]);
        let (d2, b2) = d1.overflowing_sub(borrow as u64);
        out[i] = d2;
        borrow = b1 | b2;
    }
    (out, borrow)
}

fn sub_if_ge(x: [u64; 4]) -> [u64; 4] {
    if lt(&x, &L) {
        x
    } else {
        sub_words(&x, &L).0
    }
}

/// Schoolbook product of little-endian word vectors, truncated to `N` words.
fn mul_trunc<const N: usize>(a: &[u64], b: &[u64]) -> [u64; N] {
    let mut out = [0u64; N];
    for i in 0..a.len().min(N) {
        let mut carry = 0u128;
        for j in 0..b.len() {
            if i + j >= N {
                break;
            }
            let t = out[i + j] as u128 + a[i] as u128 * b[j] as u128 + carry;
            out[i + j] = t as u64;
            carry = t >> 64;
        }
        if i + b.len() < N {
            out[i + b.len()] = carry as u64;
        }
    }
    out
}

fn mul_wide(a: &[u64; 4], b: &[u64; 4]) -> [u64; 8] {
    mul_trunc::<8>(a, b)
}

/// Barrett reduction of x < 2^512 modulo l.
fn barrett_reduce(x: &[u64; 8]) -> [u64; 4] {
    // q1 = floor(x / b^(k-1)), q3 = floor(q1 * mu / b^(k+1))
    let q1 = &x[3..8];
    let q2 = mul_trunc::<10>(q1, &MU);
    let q3 = &q2[5..10];

    // r = (x - q3 * l) mod b^(k+1)
    let r2 = mul_trunc::<5>(q3, &L);
    let mut r = [0u64; 5];
    let mut borrow = false;
    for i in 0..5 {
        let (d1, b1) = x[i].overflowing_sub(r2[i]);
        let (d2, b2) = d1.overflowing_sub(borrow as u64);
        r[i] = d2;
        borrow = b1 | b2;
    }

    // r < 3l, so at most two subtractions
    debug_assert!(r[4] == 0);
    let r = [r[0], r[1], r[2], r[3]];
    sub_if_ge(sub_if_ge(r))
}
