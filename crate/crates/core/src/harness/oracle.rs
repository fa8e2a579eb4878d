//! Arbitrary-precision reference arithmetic for differential testing.
//!
//! Everything here is computed with `num-bigint` straight from the
//! definitions and never shares code with the limb, Barrett or curve
//! implementations it checks. Not used by any signing path.

use num_bigint::{BigInt, BigUint, Sign};

use crate::edwards::GroupElement;
use crate::field::{FieldElement, NUM_LIMBS};

pub fn q() -> BigUint {
    (BigUint::from(1u32) << 255) - 19u32
}

pub fn l() -> BigUint {
    (BigUint::from(1u32) << 252)
        + "27742317777372353535851937790883648493".parse::<BigUint>().unwrap()
}

/// -121665/121666 mod q.
pub fn d() -> BigUint {
    let q = q();
    (&q - 121665u32) * inv_mod(&BigUint::from(121666u32), &q) % &q
}

pub fn inv_mod(a: &BigUint, p: &BigUint) -> BigUint {
    a.modpow(&(p - 2u32), p)
}

/// Little-endian 32-byte encoding. Panics if `v >= 2^256`.
pub fn to_bytes32(v: &BigUint) -> [u8; 32] {
    let b = v.to_bytes_le();
    assert!(b.len() <= 32);
    let mut out = [0u8; 32];
    out[..b.len()].copy_from_slice(&b);
    out
}

/// Exact integer value of a limb vector, `sum limb_i 2^ceil(25.5 i)`.
pub fn limbs_integer(limbs: &[i32; NUM_LIMBS]) -> BigInt {
    let mut acc = BigInt::from(0);
    for (i, &limb) in limbs.iter().enumerate() {
        let pos = (51 * i as u32).div_ceil(2);
        acc += BigInt::from(limb) << pos;
    }
    acc
}

/// The value of a limb vector reduced into [0, q).
pub fn limbs_to_biguint(limbs: &[i32; NUM_LIMBS]) -> BigUint {
    let q = BigInt::from_biguint(Sign::Plus, q());
    let r = ((limbs_integer(limbs) % &q) + &q) % &q;
    r.to_biguint().unwrap()
}

pub fn fe_value(f: &FieldElement) -> BigUint {
    limbs_to_biguint(&f.limbs())
}

/// Square root mod q, if one exists.
pub fn sqrt_mod_q(v: &BigUint) -> Option<BigUint> {
    let q = q();
    let v = v % &q;
    let mut x = v.modpow(&((&q + 3u32) / 8u32), &q);
    if (&x * &x) % &q != v {
        let i = BigUint::from(2u32).modpow(&((&q - 1u32) / 4u32), &q);
        x = (x * i) % &q;
    }
    ((&x * &x) % &q == v).then_some(x)
}

/// Affine coordinates of the base point: y = 4/5, x even.
pub fn basepoint_affine() -> (BigUint, BigUint) {
    let q = q();
    let y = BigUint::from(4u32) * inv_mod(&BigUint::from(5u32), &q) % &q;
    let x = recover_x(&y, false).expect("base point is on the curve");
    (x, y)
}

pub fn recover_x(y: &BigUint, odd: bool) -> Option<BigUint> {
    let q = q();
    let yy = y * y % &q;
    let num = (&yy + &q - 1u32) % &q;
    let den = (d() * &yy + 1u32) % &q;
    let x = sqrt_mod_q(&(num * inv_mod(&den, &q) % &q))?;
    let is_odd = x.bit(0);
    Some(if is_odd == odd { x } else { (&q - x) % &q })
}

/// Affine twisted Edwards addition with a = -1.
pub fn edwards_add_affine(p: &(BigUint, BigUint), r: &(BigUint, BigUint)) -> (BigUint, BigUint) {
    let q = q();
    let (x1, y1) = p;
    let (x2, y2) = r;
    let t = d() * x1 * x2 % &q * y1 * y2 % &q;
    let x3 = (x1 * y2 + y1 * x2) % &q * inv_mod(&((BigUint::from(1u32) + &t) % &q), &q) % &q;
    let y3 = (y1 * y2 + x1 * x2) % &q * inv_mod(&((BigUint::from(1u32) + &q - &t) % &q), &q) % &q;
    (x3, y3)
}

pub fn affine_of(p: &GroupElement) -> (BigUint, BigUint) {
    let q = q();
    let zinv = inv_mod(&fe_value(&p.Z), &q);
    (fe_value(&p.X) * &zinv % &q, fe_value(&p.Y) * &zinv % &q)
}

pub fn encode_affine(x: &BigUint, y: &BigUint) -> [u8; 32] {
    let mut out = to_bytes32(y);
    if x.bit(0) {
        out[31] |= 0x80;
    }
    out
}

pub fn is_on_curve_affine(x: &BigUint, y: &BigUint) -> bool {
    let q = q();
    let xx = x * x % &q;
    let yy = y * y % &q;
    let lhs = (&yy + &q - &xx) % &q;
    let rhs = (BigUint::from(1u32) + d() * xx % &q * yy) % &q;
    lhs == rhs
}

/// The smallest y for which no x puts (x, y) on the curve.
pub fn first_y_off_curve() -> BigUint {
    let mut y = BigUint::from(2u32);
    while recover_x(&y, false).is_some() {
        y += 1u32;
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_self_checks() {
        let (x, y) = basepoint_affine();
        assert!(is_on_curve_affine(&x, &y));
        let (x2, y2) = edwards_add_affine(&(x.clone(), y.clone()), &(x, y));
        assert!(is_on_curve_affine(&x2, &y2));
        let y = first_y_off_curve();
        assert!(recover_x(&y, false).is_none());
    }
}
