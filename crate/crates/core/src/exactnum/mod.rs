//! Exact arithmetic kernel: p-adic valuations on `Q`, dense integer
//! polynomials and polynomials carrying a power of `p` as a scale factor.

mod intpoly;
mod resultant;
mod scaled;

pub use intpoly::IntPoly;
pub use resultant::resultant_int;
pub use scaled::ScaledPoly;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{OmError, Result};

/// Exact rational number.
pub type BigRat = num_rational::BigRational;

/// A rational value or the infinity of a pseudo-valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValOrInf {
    Finite(BigRat),
    Infinite,
}

impl ValOrInf {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ValOrInf::Infinite)
    }

    pub fn finite(&self) -> Option<&BigRat> {
        match self {
            ValOrInf::Finite(v) => Some(v),
            ValOrInf::Infinite => None,
        }
    }
}

impl fmt::Display for ValOrInf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValOrInf::Finite(v) => write!(f, "{}", v),
            ValOrInf::Infinite => write!(f, "inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn padic_val_int(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    if p == 2 {
        return x.trailing_zeros();
    }
    let p = BigInt::from(p);
    let mut n = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// `v_p(x)` for a nonzero rational.
pub fn padic_val(x: &BigRat, p: u64) -> Result<i64> {
    let num = padic_val_int(x.numer(), p).ok_or(OmError::ZeroValuation)?;
    let den = padic_val_int(x.denom(), p).expect("denominator is nonzero");
    Ok(num as i64 - den as i64)
}

/// `p^k` as a big integer.
pub fn pow_p(p: u64, k: u64) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

/// Rational from an integer pair.
pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

/// Rational from an integer.
pub fn rat_int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Floor of a rational.
pub fn floor_rat(x: &BigRat) -> BigInt {
    x.floor().to_integer()
}

/// Ceiling of a rational.
pub fn ceil_rat(x: &BigRat) -> BigInt {
    x.ceil().to_integer()
}

/// Extended gcd on machine integers: returns `(g, a, b)` with `a*x + b*y = g`.
pub fn ext_gcd(x: i64, y: i64) -> (i64, i64, i64) {
    let e = x.extended_gcd(&y);
    (e.gcd, e.x, e.y)
}

/// Bézout pair `(ell, ell')` with `ell*h + ell'*e = 1` and `0 <= ell < e`.
pub fn bezout_pair(h: i64, e: i64) -> (i64, i64) {
    let (g, a, _) = ext_gcd(h, e);
    debug_assert_eq!(g, 1);
    let ell = a.rem_euclid(e);
    let ell_prime = (1 - ell * h) / e;
    (ell, ell_prime)
}

/// Deterministic primality test for machine-size integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut k: u64| {
        let mut r = 1u64;
        while k > 0 {
            if k & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            k >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Renders a rational as `num/den`, always with an explicit denominator.
pub fn rat_to_fraction_string(x: &BigRat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// True when the rational is an integer.
pub fn is_integral(x: &BigRat) -> bool {
    x.denom().is_one()
}
