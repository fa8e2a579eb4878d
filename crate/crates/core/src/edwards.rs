//! The twisted Edwards curve -x^2 + y^2 = 1 + d x^2 y^2 over GF(2^255 - 19)
//! with d = -121665/121666, and its 32-byte point encoding.
//!
//! Points use extended coordinates (X : Y : Z : T) with x = X/Z, y = Y/Z and
//! T = XY/Z. Addition uses the unified formulas of Hisil, Wong, Carter and
//! Dawson for a = -1, which are complete on this curve because d is not a
//! square, so doubling and the identity need no special cases.

#![allow(non_snake_case)]

use crate::field::{FieldElement, EDWARDS_D, EDWARDS_D2};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// A point encoding: y in the low 255 bits, little-endian, with the parity
/// of x in bit 255.
pub type EncodedPoint = [u8; 32];

#[derive(Clone, Copy, Debug)]
pub struct GroupElement {
    pub(crate) X: FieldElement,
    pub(crate) Y: FieldElement,
    pub(crate) Z: FieldElement,
    pub(crate) T: FieldElement,
}

/// The standard base point, y = 4/5 with x even.
pub const BASEPOINT: GroupElement = GroupElement {
    X: FieldElement([
        52811034, 25909283, 16144682, 17082669, 27570973, 30858332, 40966398, 8378388, 20764389,
        8758491,
    ]),
    Y: FieldElement([
        40265304, 26843545, 13421772, 20132659, 26843545, 6710886, 53687091, 13421772, 40265318,
        26843545,
    ]),
    Z: FieldElement::ONE,
    T: FieldElement([
        28827043, 27438313, 39759291, 244362, 8635006, 11264893, 19351346, 13413597, 16611511,
        27139452,
    ]),
};

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement {
        X: FieldElement::ZERO,
        Y: FieldElement::ONE,
        Z: FieldElement::ONE,
        T: FieldElement::ZERO,
    };

    pub fn add(&self, other: &GroupElement) -> GroupElement {
        let a = (self.Y - self.X) * (other.Y - other.X);
        let b = (self.Y + self.X) * (other.Y + other.X);
        let c = self.T * EDWARDS_D2 * other.T;
        let zz = self.Z * other.Z;
        let d = zz + zz;
        let (e, f, g, h) = (b - a, d - c, d + c, b + a);
        GroupElement { X: e * f, Y: g * h, Z: f * g, T: e * h }
    }

    pub fn double(&self) -> GroupElement {
        let a = self.X.square();
        let b = self.Y.square();
        let z2 = self.Z.square();
        let c = z2 + z2;
        let d = -a;
        let e = (self.X + self.Y).square() - a - b;
        let g = d + b;
        let f = g - c;
        let h = d - b;
        GroupElement { X: e * f, Y: g * h, Z: f * g, T: e * h }
    }

    pub fn negate(&self) -> GroupElement {
        GroupElement { X: -self.X, Y: self.Y, Z: self.Z, T: -self.T }
    }

    pub fn sub(&self, other: &GroupElement) -> GroupElement {
        self.add(&other.negate())
    }

    fn select(a: &GroupElement, b: &GroupElement, choice: bool) -> GroupElement {
        GroupElement {
            X: FieldElement::select(&a.X, &b.X, choice),
            Y: FieldElement::select(&a.Y, &b.Y, choice),
            Z: FieldElement::select(&a.Z, &b.Z, choice),
            T: FieldElement::select(&a.T, &b.T, choice),
        }
    }

    /// `k * B` for any 256-bit little-endian integer `k`. Always performs
    /// 256 doublings and 256 additions; the bit only picks which result is
    /// kept.
    pub fn scalar_mult_base(k: &[u8; 32]) -> GroupElement {
        let mut acc = GroupElement::IDENTITY;
        for i in (0..256).rev() {
            acc = acc.double();
            let sum = acc.add(&BASEPOINT);
            let bit = (k[i / 8] >> (i % 8)) & 1 == 1;
            acc = GroupElement::select(&acc, &sum, bit);
        }
        acc
    }

    /// `k * self`, variable time.
    pub fn mul_vartime(&self, k: &[u8; 32]) -> GroupElement {
        let mut acc = GroupElement::IDENTITY;
        for i in (0..256).rev() {
            acc = acc.double();
            if (k[i / 8] >> (i % 8)) & 1 == 1 {
                acc = acc.add(self);
            }
        }
        acc
    }

    /// `s * B + h * p`, variable time (Straus' interleaving).
    pub fn double_scalar_mult_vartime(s: &Scalar, p: &GroupElement, h: &Scalar) -> GroupElement {
        let table = [BASEPOINT, *p, BASEPOINT.add(p)];
        let (s, h) = (s.as_bytes(), h.as_bytes());
        let mut acc = GroupElement::IDENTITY;
        for i in (0..256).rev() {
            acc = acc.double();
            let sb = (s[i / 8] >> (i % 8)) & 1;
            let hb = (h[i / 8] >> (i % 8)) & 1;
            match (sb, hb) {
                (1, 0) => acc = acc.add(&table[0]),
                (0, 1) => acc = acc.add(&table[1]),
                (1, 1) => acc = acc.add(&table[2]),
                _ => {}
            }
        }
        acc
    }

    pub fn compress(&self) -> EncodedPoint {
        let zinv = self.Z.invert();
        let x = self.X * zinv;
        let y = self.Y * zinv;
        let mut out = y.contract();
        out[31] |= (x.is_negative() as u8) << 7;
        out
    }

    pub fn decompress(bytes: &EncodedPoint) -> Result<GroupElement> {
        let sign = bytes[31] >> 7 == 1;
        let mut y_bytes = *bytes;
        y_bytes[31] &= 0x7f;
        let y = FieldElement::expand(&y_bytes);
        if y.contract() != y_bytes {
            return Err(Error::NonCanonical);
        }

        // x^2 = (y^2 - 1) / (d y^2 + 1)
        let yy = y.square();
        let u = yy - FieldElement::ONE;
        let v = yy * EDWARDS_D + FieldElement::ONE;
        let (is_square, mut x) = FieldElement::sqrt_ratio(&u, &v);
        if !is_square {
            return Err(Error::NotOnCurve);
        }
        if x.is_zero() && sign {
            return Err(Error::InvalidSign);
        }
        if x.is_negative() != sign {
            x = -x;
        }
        Ok(GroupElement { X: x, Y: y, Z: FieldElement::ONE, T: x * y })
    }

    /// Checks the projective curve equation and the T coordinate.
    pub fn is_on_curve(&self) -> bool {
        let xx = self.X.square();
        let yy = self.Y.square();
        let zz = self.Z.square();
        let lhs = (yy - xx) * zz;
        let rhs = zz.square() + EDWARDS_D * xx * yy;
        !self.Z.is_zero() && lhs == rhs && self.T * self.Z == self.X * self.Y
    }

    pub fn is_identity(&self) -> bool {
        *self == GroupElement::IDENTITY
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &GroupElement) -> bool {
        self.X * other.Z == other.X * self.Z && self.Y * other.Z == other.Y * self.Z
    }
}

impl Eq for GroupElement {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::oracle;
    use num_bigint::BigUint;
    use rand::{Rng, RngCore, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    const IDENTITY_ENCODING: [u8; 32] = {
        let mut b = [0u8; 32];
        b[0] = 1;
        b
    };

    fn random_point(rng: &mut impl RngCore) -> GroupElement {
        let mut k = [0u8; 32];
        rng.fill_bytes(&mut k);
        GroupElement::scalar_mult_base(&k)
    }

    #[test]
    fn basepoint_matches_oracle() {
        let (x, y) = oracle::basepoint_affine();
        assert_eq!(oracle::fe_value(&BASEPOINT.X), x);
        assert_eq!(oracle::fe_value(&BASEPOINT.Y), y);
        assert_eq!(oracle::fe_value(&BASEPOINT.T), (&x * &y) % oracle::q());
        assert!(BASEPOINT.is_on_curve());

        let mut want = oracle::to_bytes32(&y);
        want[31] |= ((&x & BigUint::from(1u32)) == BigUint::from(1u32)) as u8 * 0x80;
        assert_eq!(BASEPOINT.compress(), want);
        assert_eq!(hex::encode(BASEPOINT.compress()), "58".to_string() + &"66".repeat(31));
    }

    #[test]
    fn scalar_mult_base_small_values() {
        assert_eq!(GroupElement::scalar_mult_base(&[0u8; 32]).compress(), IDENTITY_ENCODING);
        let mut one = [0u8; 32];
        one[0] = 1;
        assert_eq!(GroupElement::scalar_mult_base(&one), BASEPOINT);
        let l = oracle::to_bytes32(&oracle::l());
        assert!(GroupElement::scalar_mult_base(&l).is_identity());
    }

    #[test]
    fn identity_and_inverse() {
        let mut rng = ChaCha20Rng::seed_from_u64(31);
        for _ in 0..20 {
            let p = random_point(&mut rng);
            assert_eq!(p.add(&GroupElement::IDENTITY), p);
            assert!(p.add(&p.negate()).is_identity());
            assert_eq!(p.add(&GroupElement::IDENTITY).compress(), p.compress());
        }
        assert_eq!(GroupElement::IDENTITY.compress(), IDENTITY_ENCODING);
    }

    #[test]
    fn doubling_agrees_with_addition_and_affine_oracle() {
        assert_eq!(BASEPOINT.add(&BASEPOINT).compress(), BASEPOINT.double().compress());
        let (x, y) = oracle::basepoint_affine();
        let (x2, y2) = oracle::edwards_add_affine(&(x.clone(), y.clone()), &(x, y));
        let want = oracle::encode_affine(&x2, &y2);
        assert_eq!(BASEPOINT.double().compress(), want);

        let mut rng = ChaCha20Rng::seed_from_u64(32);
        for _ in 0..10 {
            let p = random_point(&mut rng);
            assert_eq!(p.double(), p.add(&p));
        }
    }

    #[test]
    fn addition_matches_affine_oracle() {
        let mut rng = ChaCha20Rng::seed_from_u64(33);
        for _ in 0..10 {
            let p = random_point(&mut rng);
            let q = random_point(&mut rng);
            let pa = oracle::affine_of(&p);
            let qa = oracle::affine_of(&q);
            let (x, y) = oracle::edwards_add_affine(&pa, &qa);
            assert_eq!(p.add(&q).compress(), oracle::encode_affine(&x, &y));
        }
    }

    #[test]
    fn associativity_and_commutativity() {
        let mut rng = ChaCha20Rng::seed_from_u64(34);
        for _ in 0..10 {
            let (p, q, r) =
                (random_point(&mut rng), random_point(&mut rng), random_point(&mut rng));
            assert_eq!(p.add(&q).add(&r).compress(), p.add(&q.add(&r)).compress());
            assert_eq!(p.add(&q).compress(), q.add(&p).compress());
        }
    }

    #[test]
    fn base_mult_is_additive() {
        let mut rng = ChaCha20Rng::seed_from_u64(35);
        for _ in 0..10 {
            let (k1, k2) = (rng.gen::<u64>() as u128, rng.gen::<u64>() as u128);
            let enc = |v: u128| {
                let mut b = [0u8; 32];
                b[..16].copy_from_slice(&v.to_le_bytes());
                b
            };
            let lhs = GroupElement::scalar_mult_base(&enc(k1 + k2));
            let rhs = GroupElement::scalar_mult_base(&enc(k1))
                .add(&GroupElement::scalar_mult_base(&enc(k2)));
            assert_eq!(lhs.compress(), rhs.compress());
        }
    }

    #[test]
    fn random_walk_stays_on_curve() {
        let mut rng = ChaCha20Rng::seed_from_u64(36);
        let mut p = BASEPOINT;
        for _ in 0..1000 {
            p = if rng.gen_bool(0.5) { p.double() } else { p.add(&BASEPOINT) };
            assert!(p.is_on_curve());
        }
    }

    #[test]
    fn double_scalar_mult() {
        let mut rng = ChaCha20Rng::seed_from_u64(37);
        let p = random_point(&mut rng);
        let s0 = GroupElement::double_scalar_mult_vartime(&Scalar::ZERO, &p, &Scalar::ZERO);
        assert!(s0.is_identity());
        let b = GroupElement::double_scalar_mult_vartime(&Scalar::ONE, &p, &Scalar::ZERO);
        assert_eq!(b, BASEPOINT);
        for _ in 0..5 {
            let mut wide = [0u8; 64];
            rng.fill_bytes(&mut wide);
            let s = Scalar::reduce512(&wide).unwrap();
            rng.fill_bytes(&mut wide);
            let h = Scalar::reduce512(&wide).unwrap();
            let p = random_point(&mut rng);
            let got = GroupElement::double_scalar_mult_vartime(&s, &p, &h);
            let want =
                GroupElement::scalar_mult_base(s.as_bytes()).add(&p.mul_vartime(h.as_bytes()));
            assert_eq!(got.compress(), want.compress());
        }
    }

    #[test]
    fn compress_decompress_round_trip() {
        let mut rng = ChaCha20Rng::seed_from_u64(38);
        assert!(GroupElement::decompress(&IDENTITY_ENCODING).unwrap().is_identity());
        assert_eq!(GroupElement::decompress(&BASEPOINT.compress()).unwrap(), BASEPOINT);
        for _ in 0..20 {
            let p = random_point(&mut rng);
            let e = p.compress();
            let back = GroupElement::decompress(&e).unwrap();
            assert!(back.is_on_curve());
            assert_eq!(back, p);
            assert_eq!(back.compress(), e);
        }
    }

    #[test]
    fn decompress_rejects_non_canonical_y() {
        // y = q encodes to the same residue as y = 0
        let q = oracle::to_bytes32(&oracle::q());
        assert_eq!(GroupElement::decompress(&q), Err(Error::NonCanonical));
        let mut q1 = oracle::to_bytes32(&(oracle::q() + 1u32));
        assert_eq!(GroupElement::decompress(&q1), Err(Error::NonCanonical));
        q1[31] |= 0x80;
        assert_eq!(GroupElement::decompress(&q1), Err(Error::NonCanonical));
    }

    #[test]
    fn decompress_rejects_non_residue() {
        // smallest y whose x^2 candidate is a non-residue, per the oracle
        let y = oracle::first_y_off_curve();
        let e = oracle::to_bytes32(&y);
        assert_eq!(GroupElement::decompress(&e), Err(Error::NotOnCurve));
    }

    #[test]
    fn decompress_rejects_negative_zero() {
        // y = 1 gives x = 0
        let mut e = IDENTITY_ENCODING;
        e[31] |= 0x80;
        assert_eq!(GroupElement::decompress(&e), Err(Error::InvalidSign));
        // y = -1 also gives x = 0
        let mut m1 = oracle::to_bytes32(&(oracle::q() - 1u32));
        assert!(GroupElement::decompress(&m1).is_ok());
        m1[31] |= 0x80;
        assert_eq!(GroupElement::decompress(&m1), Err(Error::InvalidSign));
    }
}
