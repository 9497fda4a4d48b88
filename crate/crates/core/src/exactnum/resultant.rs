use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{OmError, Result};

/// Resultant of two nonzero integer polynomials, computed as the determinant
/// of the Sylvester matrix by fraction-free Gaussian elimination.
pub fn resultant_int(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(OmError::ZeroPolynomial),
    };
    if m == 0 && n == 0 {
        return Ok(BigInt::one());
    }
    if m == 0 {
        return Ok(num_traits::pow(f.coeff(0), n));
    }
    if n == 0 {
        return Ok(num_traits::pow(g.coeff(0), m));
    }
    let size = m + n;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    Ok(bareiss_det(rows))
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn small_resultants() {
        assert_eq!(resultant_int(&p(&[-1, 1]), &p(&[1, 1])).unwrap(), BigInt::from(2));
        assert_eq!(resultant_int(&p(&[0, 1]), &p(&[1, 0, 1])).unwrap(), BigInt::one());
        // Res(f, f') for x^2 - 17 is -disc = -68 up to the leading-term sign rule.
        let f = p(&[-17, 0, 1]);
        assert_eq!(resultant_int(&f, &f.derivative()).unwrap(), BigInt::from(-68));
        assert_eq!(resultant_int(&p(&[1, 1]), &p(&[1, 1])).unwrap(), BigInt::zero());
        assert_eq!(resultant_int(&IntPoly::zero(), &f), Err(OmError::ZeroPolynomial));
    }

    #[test]
    fn resultant_is_product_over_roots() {
        // (x-1)(x-2) against (x-3)(x+4): prod (a_i - b_j)
        let f = &p(&[-1, 1]) * &p(&[-2, 1]);
        let g = &p(&[-3, 1]) * &p(&[4, 1]);
        let expect = (1 - 3) * (1 + 4) * (2 - 3) * (2 + 4);
        assert_eq!(resultant_int(&f, &g).unwrap(), BigInt::from(expect));
    }
}
