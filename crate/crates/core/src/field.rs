//! Arithmetic in GF(q), q = 2^255 - 19.
//!
//! An element is ten signed limbs in radix 2^25.5: limb `i` carries the
//! coefficient of 2^ceil(25.5 i), so even limbs hold 26 bits and odd limbs 25
//! bits once carried. The representation is not unique. Two limb vectors can
//! differ and still denote the same residue, and a vector whose integer value
//! is exactly `q` (for instance `[2^26-19, 2^25-1, 2^26-1, ..., 2^25-1]`) is a
//! representation of zero. Only [`FieldElement::contract`] yields the unique
//! encoding, and every comparison in this module goes through it.
//!
//! # Headroom
//!
//! Every operation returns limbs with `|limb| <= LIMB_BOUND = 2^26`, and the
//! multiplier requires the same of its inputs. A single product term is then
//! at most `2 * 19 * 2^26 * 2^26 = 38 * 2^52`, and a column of ten such terms
//! is below `2^60.6`, leaving more than two bits of the `i64` accumulator
//! unused. The bound is our own analysis and is checked with `debug_assert!`.

use core::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Result};

pub const NUM_LIMBS: usize = 10;

/// Largest limb magnitude accepted by the multiplier and produced by every
/// operation.
pub const LIMB_BOUND: i32 = 1 << 26;

const LIMB_BITS: [u32; NUM_LIMBS] = [26, 25, 26, 25, 26, 25, 26, 25, 26, 25];
/// Bit offset of each limb, `ceil(25.5 * i)`.
const LIMB_POS: [u32; NUM_LIMBS] = [0, 26, 51, 77, 102, 128, 153, 179, 204, 230];

/// q in limb form. Integer-valued, so this is also a non-canonical zero.
const Q_LIMBS: [i64; NUM_LIMBS] = [
    (1 << 26) - 19,
    (1 << 25) - 1,
    (1 << 26) - 1,
    (1 << 25) - 1,
    (1 << 26) - 1,
    (1 << 25) - 1,
    (1 << 26) - 1,
    (1 << 25) - 1,
    (1 << 26) - 1,
    (1 << 25) - 1,
];

/// An element of GF(2^255 - 19) in (possibly non-canonical) limb form.
#[derive(Clone, Copy, Debug)]
pub struct FieldElement(pub(crate) [i32; NUM_LIMBS]);

/// The twisted Edwards constant d = -121665/121666.
pub(crate) const EDWARDS_D: FieldElement = FieldElement([
    56195235, 13857412, 51736253, 6949390, 114729, 24766616, 60832955, 30306712, 48412415, 21499315,
]);

/// 2d.
pub(crate) const EDWARDS_D2: FieldElement = FieldElement([
    45281625, 27714825, 36363642, 13898781, 229458, 15978800, 54557047, 27058993, 29715967, 9444199,
]);

/// 2^((q-1)/4), a square root of -1.
pub(crate) const SQRT_M1: FieldElement = FieldElement([
    34513072, 25610706, 9377949, 3500415, 12389472, 33281959, 41962654, 31548777, 326685, 11406482,
]);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement([0; NUM_LIMBS]);
    pub const ONE: FieldElement = FieldElement([1, 0, 0, 0, 0, 0, 0, 0, 0, 0]);

    /// Builds an element from raw limbs, rejecting any limb beyond the
    /// headroom bound. No carrying is performed.
    pub fn from_limbs(limbs: [i32; NUM_LIMBS]) -> Result<FieldElement> {
        match limbs.iter().position(|l| l.unsigned_abs() > LIMB_BOUND as u32) {
            Some(index) => Err(Error::LimbOutOfRange { index }),
            None => Ok(FieldElement(limbs)),
        }
    }

    pub fn limbs(&self) -> [i32; NUM_LIMBS] {
        self.0
    }

    /// Decodes 32 little-endian bytes. Values at or above q, including those
    /// with bit 255 set, are reduced rather than rejected.
    pub fn expand(bytes: &[u8; 32]) -> FieldElement {
        let mut words = [0u64; 4];
        for (w, chunk) in words.iter_mut().zip(bytes.chunks_exact(8)) {
            *w = u64::from_le_bytes(chunk.try_into().unwrap());
        }
        let top = (words[3] >> 63) as i64;
        words[3] &= (1 << 63) - 1;

        let mut h = [0i64; NUM_LIMBS];
        for i in 0..NUM_LIMBS {
            let (w, off, bits) = (LIMB_POS[i] / 64, LIMB_POS[i] % 64, LIMB_BITS[i]);
            let mut v = words[w as usize] >> off;
            if off + bits > 64 {
                v |= words[w as usize + 1] << (64 - off);
            }
            h[i] = (v & ((1 << bits) - 1)) as i64;
        }
        // 2^255 = 19 (mod q)
        h[0] += 19 * top;
        carry(h)
    }

    /// Canonical 32-byte little-endian encoding of the value, always < q.
    pub fn contract(&self) -> [u8; 32] {
        let mut h = self.0.map(i64::from);

        // Two wrapping carry passes and a final carry out of limb 0 leave
        // every limb in [0, 2^bits), so the value is in [0, 2^255).
        for _ in 0..2 {
            for i in 0..NUM_LIMBS {
                let c = h[i] >> LIMB_BITS[i];
                h[i] -= c << LIMB_BITS[i];
                if i < NUM_LIMBS - 1 {
                    h[i + 1] += c;
                } else {
                    h[0] += 19 * c;
                }
            }
        }
        let c = h[0] >> 26;
        h[0] -= c << 26;
        h[1] += c;

        for _ in 0..2 {
            conditional_subtract_q(&mut h);
        }

        let mut words = [0u64; 4];
        for i in 0..NUM_LIMBS {
            debug_assert!(h[i] >= 0 && h[i] < (1 << LIMB_BITS[i]));
            let (w, off, bits) = (LIMB_POS[i] / 64, LIMB_POS[i] % 64, LIMB_BITS[i]);
            let v = h[i] as u64;
            words[w as usize] |= v << off;
            if off + bits > 64 {
                words[w as usize + 1] |= v >> (64 - off);
            }
        }
        let mut out = [0u8; 32];
        for (chunk, w) in out.chunks_exact_mut(8).zip(words) {
            chunk.copy_from_slice(&w.to_le_bytes());
        }
        out
    }

    /// Zero test on the canonical encoding.
    pub fn is_zero(&self) -> bool {
        self.contract() == [0u8; 32]
    }

    /// Parity of the canonical value; this is the "sign" of x in a point
    /// encoding.
    pub fn is_negative(&self) -> bool {
        self.contract()[0] & 1 == 1
    }

    pub fn square(&self) -> FieldElement {
        self * self
    }

    /// `self^(2^k)`, k >= 1.
    pub fn pow2k(&self, k: u32) -> FieldElement {
        debug_assert!(k > 0);
        let mut z = self.square();
        for _ in 1..k {
            z = z.square();
        }
        z
    }

    /// Returns `(self^(2^250 - 1), self^11)`, the shared prefix of the
    /// inversion and square-root exponent chains.
    fn pow250_minus_1(&self) -> (FieldElement, FieldElement) {
        let t0 = self.square(); // 2
        let t1 = t0.pow2k(2) * self; // 9
        let t0 = t0 * t1; // 11
        let t2 = t0.square() * t1; // 2^5 - 1
        let t2 = t2.pow2k(5) * t2; // 2^10 - 1
        let t3 = t2.pow2k(10) * t2; // 2^20 - 1
        let t4 = t3.pow2k(20) * t3; // 2^40 - 1
        let t4 = t4.pow2k(10) * t2; // 2^50 - 1
        let t5 = t4.pow2k(50) * t4; // 2^100 - 1
        let t6 = t5.pow2k(100) * t5; // 2^200 - 1
        let t6 = t6.pow2k(50) * t4; // 2^250 - 1
        (t6, t0)
    }

    /// `self^(q-2)`. Inverts nonzero elements; maps zero to zero.
    pub fn invert(&self) -> FieldElement {
        let (t, z11) = self.pow250_minus_1();
        t.pow2k(5) * z11
    }

    /// `self^((q-5)/8) = self^(2^252 - 3)`.
    pub fn pow_p58(&self) -> FieldElement {
        let (t, _) = self.pow250_minus_1();
        t.pow2k(2) * self
    }

    /// Computes a square root of `u/v`. The first element is `false` when
    /// `u/v` is not a square, in which case the returned value is meaningless.
    pub fn sqrt_ratio(u: &FieldElement, v: &FieldElement) -> (bool, FieldElement) {
        let v3 = v.square() * v;
        let v7 = v3.square() * v;
        // x = u v^3 (u v^7)^((q-5)/8) = (u/v)^((q+3)/8)
        let mut x = (u * v3) * (u * v7).pow_p58();
        let check = v * x.square();
        if check == *u {
            return (true, x);
        }
        if check == -u {
            x = x * SQRT_M1;
            return (true, x);
        }
        (false, x)
    }

    /// Returns `b` if `choice`, else `a`, without branching on `choice`.
    pub fn select(a: &FieldElement, b: &FieldElement, choice: bool) -> FieldElement {
        let mask = -(choice as i32);
        FieldElement(std::array::from_fn(|i| a.0[i] ^ (mask & (a.0[i] ^ b.0[i]))))
    }

    fn check_headroom(&self) -> bool {
        self.0.iter().all(|l| l.unsigned_abs() <= LIMB_BOUND as u32)
    }
}

fn conditional_subtract_q(h: &mut [i64; NUM_LIMBS]) {
    let mut t = [0i64; NUM_LIMBS];
    let mut borrow = 0i64;
    for i in 0..NUM_LIMBS {
        let v = h[i] - Q_LIMBS[i] + borrow;
        borrow = v >> LIMB_BITS[i];
        t[i] = v - (borrow << LIMB_BITS[i]);
    }
    // borrow is -1 when h < q: keep h. Otherwise take h - q.
    let keep = borrow;
    for i in 0..NUM_LIMBS {
        h[i] = (h[i] & keep) | (t[i] & !keep);
    }
}

/// Carries a wide limb vector back into bounded limbs.
fn carry(mut h: [i64; NUM_LIMBS]) -> FieldElement {
    for i in 0..NUM_LIMBS {
        let c = h[i] >> LIMB_BITS[i];
        h[i] -= c << LIMB_BITS[i];
        if i < NUM_LIMBS - 1 {
            h[i + 1] += c;
        } else {
            h[0] += 19 * c;
        }
    }
    let c = h[0] >> 26;
    h[0] -= c << 26;
    h[1] += c;

    let out = FieldElement(h.map(|x| x as i32));
    debug_assert!(out.check_headroom());
    out
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &FieldElement) -> bool {
        self.contract() == other.contract()
    }
}

impl Eq for FieldElement {}

impl<'a> Add<&'a FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        carry(std::array::from_fn(|i| self.0[i] as i64 + rhs.0[i] as i64))
    }
}

impl<'a> Sub<&'a FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        carry(std::array::from_fn(|i| self.0[i] as i64 - rhs.0[i] as i64))
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        carry(self.0.map(|x| -(x as i64)))
    }
}

impl<'a> Mul<&'a FieldElement> for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        debug_assert!(self.check_headroom() && rhs.check_headroom());
        let (f, g) = (&self.0, &rhs.0);
        let mut h = [0i64; NUM_LIMBS];
        for i in 0..NUM_LIMBS {
            for j in 0..NUM_LIMBS {
                // Two odd offsets each round up by half a bit, so their sum
                // lands one bit above the product's limb; columns past the
                // top wrap with 2^255 = 19.
                let mut factor = 1i64;
                if i & j & 1 == 1 {
                    factor *= 2;
                }
                if i + j >= NUM_LIMBS {
                    factor *= 19;
                }
                h[(i + j) % NUM_LIMBS] += f[i] as i64 * g[j] as i64 * factor;
            }
        }
        carry(h)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &'a FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
        impl $tr<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// A zero test that looks at limbs without contracting them first.
///
/// **Broken on purpose.** It is correct only for canonical inputs and
/// reports non-canonical zeros (such as the limb form of q) as nonzero.
/// Kept so the regression suite can show the difference; use
/// [`FieldElement::is_zero`] instead.
pub mod legacy_unreduced {
    use super::FieldElement;

    pub fn is_nonzero_naive_unreduced(f: &FieldElement) -> bool {
        f.0.iter().any(|&l| l != 0)
    }
}
