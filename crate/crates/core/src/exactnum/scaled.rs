use num_bigint::BigInt;

use super::{pow_p, IntPoly};
use crate::error::Result;

/// A polynomial of `Q[x]` whose denominators are powers of `p`, stored as
/// `poly * p^shift` with `poly` not divisible by `p` unless zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPoly {
    poly: IntPoly,
    shift: i64,
    p: u64,
}

impl ScaledPoly {
    pub fn new(poly: IntPoly, shift: i64, p: u64) -> Self {
        let mut s = ScaledPoly { poly, shift, p };
        s.normalize();
        s
    }

    pub fn from_int(poly: IntPoly, p: u64) -> Self {
        Self::new(poly, 0, p)
    }

    pub fn constant(c: i64, p: u64) -> Self {
        Self::from_int(IntPoly::from_i64(&[c]), p)
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn normalize(&mut self) {
        if self.poly.is_zero() {
            self.shift = 0;
            return;
        }
        let v = self.poly.v_p(self.p).unwrap();
        if v > 0 {
            self.poly = self.poly.div_p_power(self.p, v);
            self.shift += v as i64;
        }
    }

    /// The polynomial over `Z` when all coefficients are integral.
    pub fn to_int_poly(&self) -> Option<IntPoly> {
        if self.shift < 0 {
            return None;
        }
        Some(self.poly.scale(&pow_p(self.p, self.shift as u64)))
    }

    pub fn mul(&self, other: &ScaledPoly) -> ScaledPoly {
        ScaledPoly::new(&self.poly * &other.poly, self.shift + other.shift, self.p)
    }

    pub fn mul_int(&self, other: &IntPoly) -> ScaledPoly {
        ScaledPoly::new(&self.poly * other, self.shift, self.p)
    }

    fn aligned(&self, other: &ScaledPoly) -> (IntPoly, IntPoly, i64) {
        let s = self.shift.min(other.shift);
        let a = self.poly.scale(&pow_p(self.p, (self.shift - s) as u64));
        let b = other.poly.scale(&pow_p(self.p, (other.shift - s) as u64));
        (a, b, s)
    }

    pub fn add(&self, other: &ScaledPoly) -> ScaledPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, s) = self.aligned(other);
        ScaledPoly::new(&a + &b, s, self.p)
    }

    pub fn sub(&self, other: &ScaledPoly) -> ScaledPoly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return ScaledPoly::new(-&other.poly, other.shift, self.p);
        }
        let (a, b, s) = self.aligned(other);
        ScaledPoly::new(&a - &b, s, self.p)
    }

    /// Remainder modulo a monic integer polynomial.
    pub fn rem_monic(&self, phi: &IntPoly) -> Result<ScaledPoly> {
        Ok(ScaledPoly::new(self.poly.rem_monic(phi)?, self.shift, self.p))
    }

    /// Drops everything divisible by `p^bound` in `Z_(p)[x]`.
    pub fn truncate(&self, bound: i64) -> ScaledPoly {
        let room = bound - self.shift;
        if room <= 0 {
            return ScaledPoly::new(IntPoly::zero(), 0, self.p);
        }
        let m: BigInt = pow_p(self.p, room as u64);
        ScaledPoly::new(self.poly.reduce_symmetric(&m), self.shift, self.p)
    }
}
