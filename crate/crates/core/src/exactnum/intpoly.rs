use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{padic_val_int, pow_p};
use crate::error::{OmError, Result};

/// Dense polynomial over `Z`, constant term first.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is the
/// empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs: v }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of the coefficients (non-negative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        IntPoly { coeffs: self.coeffs.iter().map(|a| a / &c).collect() }
    }

    /// Minimum `p`-adic valuation of the coefficients; `None` for zero.
    pub fn v_p(&self, p: u64) -> Option<u64> {
        self.coeffs.iter().filter_map(|c| padic_val_int(c, p)).min()
    }

    /// Exact division of every coefficient by `p^k`.
    pub fn div_p_power(&self, p: u64, k: u64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let d = pow_p(p, k);
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| {
                    let (q, r) = c.div_rem(&d);
                    debug_assert!(r.is_zero(), "coefficient not divisible by p^k");
                    q
                })
                .collect(),
        }
    }

    /// Coefficients reduced into the symmetric range modulo `m`.
    pub fn reduce_symmetric(&self, m: &BigInt) -> Self {
        let half = m / 2;
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(m);
                    if r > half {
                        r - m
                    } else {
                        r
                    }
                })
                .collect(),
        )
    }

    /// Division by a monic polynomial of positive degree.
    pub fn divrem_monic(&self, phi: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        if !phi.is_monic() || phi.deg() == 0 {
            return Err(OmError::NotMonicDivisor);
        }
        let m = phi.deg();
        if self.coeffs.len() <= m {
            return Ok((Self::zero(), self.clone()));
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - m];
        for k in (0..q.len()).rev() {
            let c = std::mem::take(&mut r[k + m]);
            if c.is_zero() {
                continue;
            }
            for (j, pc) in phi.coeffs[..m].iter().enumerate() {
                if !pc.is_zero() {
                    r[k + j] -= &c * pc;
                }
            }
            q[k] = c;
        }
        r.truncate(m);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem_monic(&self, phi: &IntPoly) -> Result<IntPoly> {
        Ok(self.divrem_monic(phi)?.1)
    }

    /// The first `count` coefficients (all when `None`) of the `phi`-adic
    /// expansion `self = sum a_s phi^s`. Zero expands to `[0]`.
    pub fn phi_expansion(&self, phi: &IntPoly, count: Option<usize>) -> Result<Vec<IntPoly>> {
        if !phi.is_monic() || phi.deg() == 0 {
            return Err(OmError::NotMonicDivisor);
        }
        let mut out = Vec::new();
        let mut g = self.clone();
        loop {
            if count.is_some_and(|c| out.len() >= c) {
                break;
            }
            let (q, r) = g.divrem_monic(phi)?;
            out.push(r);
            if q.is_zero() {
                break;
            }
            g = q;
        }
        if let Some(c) = count {
            while out.len() < c {
                out.push(Self::zero());
            }
        }
        Ok(out)
    }

    /// Inverse of [`IntPoly::phi_expansion`].
    pub fn from_expansion(coeffs: &[IntPoly], phi: &IntPoly) -> IntPoly {
        let mut acc = IntPoly::zero();
        for a in coeffs.iter().rev() {
            acc = &(&acc * phi) + a;
        }
        acc
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.deg();
        let lb = b.leading().expect("nonzero divisor").clone();
        let mut r = self.clone();
        while !r.is_zero() && r.deg() >= db {
            let lr = r.leading().unwrap().clone();
            let shift = r.deg() - db;
            r = &r.scale(&lb) - &b.scale(&lr).shift_up(shift);
        }
        r
    }

    /// Primitive gcd over `Q[x]` with positive leading coefficient.
    pub fn gcd_rational(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a
    }

    /// Exact quotient over `Z` when `d` divides `self`; `None` otherwise.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let ld = d.leading().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let (c, rem) = r[k + dd].div_rem(ld);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= &c * dc;
            }
            q[k] = c;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = a.is_one();
            match i {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !unit {
                        write!(f, "{}*", a)?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn zip_with(a: &IntPoly, b: &IntPoly, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> IntPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let zero = BigInt::zero();
    IntPoly::new(
        (0..n)
            .map(|i| op(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero)))
            .collect(),
    )
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
