use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{FFPoly, TowerField};
use crate::error::{OmError, Result};

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// with multiplicities, sorted by degree and then by coefficients.
///
/// `seed` drives the equal-degree splitting; the result does not depend on it.
pub fn ff_factor(tower: &TowerField, g: &FFPoly, seed: u64) -> Result<Vec<(FFPoly, usize)>> {
    if g.is_zero() {
        return Err(OmError::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (part, mult) in squarefree(tower, &tower.poly_monic(g)) {
        for (block, d) in distinct_degree(tower, &part) {
            for irr in equal_degree(tower, &block, d, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by_key(|(f, _)| f.sort_key());
    Ok(out)
}

/// Largest `k` with `psi^k | g`.
pub fn ff_ord(tower: &TowerField, g: &FFPoly, psi: &FFPoly) -> Result<usize> {
    if g.is_zero() {
        return Err(OmError::ZeroPolynomial);
    }
    if psi.deg() == 0 {
        return Err(OmError::Precondition("ord with respect to a constant".into()));
    }
    let mut k = 0;
    let mut h = g.clone();
    loop {
        let (q, r) = tower.poly_divrem(&h, psi);
        if !r.is_zero() {
            return Ok(k);
        }
        h = q;
        k += 1;
    }
}

fn pth_root_poly(tower: &TowerField, g: &FFPoly) -> FFPoly {
    let p = tower.p() as usize;
    let cs = g.coeffs().iter().step_by(p).map(|c| tower.pth_root(c)).collect();
    FFPoly::new(g.floor(), cs, tower)
}

/// Square-free decomposition of a monic polynomial.
fn squarefree(tower: &TowerField, g: &FFPoly) -> Vec<(FFPoly, usize)> {
    let mut out = Vec::new();
    if g.deg() == 0 {
        return out;
    }
    let p = tower.p() as usize;
    let d = tower.poly_derivative(g);
    if d.is_zero() {
        for (h, m) in squarefree(tower, &pth_root_poly(tower, g)) {
            out.push((h, m * p));
        }
        return out;
    }
    let mut c = tower.poly_gcd(g, &d);
    let mut w = tower.poly_div_exact(g, &c);
    let mut i = 1;
    while w.deg() > 0 {
        let y = tower.poly_gcd(&w, &c);
        let z = tower.poly_div_exact(&w, &y);
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = tower.poly_div_exact(&c, &w);
    }
    if c.deg() > 0 {
        for (h, m) in squarefree(tower, &pth_root_poly(tower, &c)) {
            out.push((h, m * p));
        }
    }
    out
}

/// Splits a square-free monic polynomial into products of equal-degree irreducibles.
fn distinct_degree(tower: &TowerField, g: &FFPoly) -> Vec<(FFPoly, usize)> {
    let mut out = Vec::new();
    let y = FFPoly::y(g.floor(), tower);
    let mut rest = g.clone();
    let mut h = y.clone();
    let mut d = 0;
    while rest.deg() >= 2 * (d + 1) {
        d += 1;
        h = tower.frobenius_power(&h, &rest);
        let block = tower.poly_gcd(&tower.poly_sub(&h, &y), &rest);
        if block.deg() > 0 {
            rest = tower.poly_div_exact(&rest, &block);
            h = tower.poly_rem(&h, &rest);
            out.push((block, d));
        }
    }
    if rest.deg() > 0 {
        let n = rest.deg();
        out.push((rest, n));
    }
    out
}

fn equal_degree(tower: &TowerField, g: &FFPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FFPoly> {
    let n = g.deg();
    if n == d {
        return vec![g.clone()];
    }
    let k = g.floor();
    let q = tower.order(k);
    loop {
        let cs = (0..n).map(|_| tower.random_elem(k, rng)).collect();
        let a = FFPoly::new(k, cs, tower);
        if a.deg() == 0 {
            continue;
        }
        let b = if tower.p() == 2 {
            let mut acc = a.clone();
            let mut sq = a.clone();
            let two = BigUint::from(2u32);
            for _ in 1..tower.dim(k) * d {
                sq = tower.poly_pow_mod(&sq, &two, g);
                acc = tower.poly_add(&acc, &sq);
            }
            acc
        } else {
            let e = (num_traits::pow(q.clone(), d) - BigUint::from(1u32)) / BigUint::from(2u32);
            let r = tower.poly_pow_mod(&a, &e, g);
            tower.poly_sub(&r, &FFPoly::constant(tower.one(k), tower))
        };
        let s = tower.poly_gcd(&b, g);
        if s.deg() > 0 && s.deg() < n {
            let other = tower.poly_div_exact(g, &s);
            let mut out = equal_degree(tower, &s, d, rng);
            out.extend(equal_degree(tower, &other, d, rng));
            return out;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> TowerField {
        TowerField::prime(2)
    }

    fn product(t: &TowerField, fs: &[(FFPoly, usize)], floor: usize) -> FFPoly {
        let mut acc = FFPoly::constant(t.one(floor), t);
        for (f, m) in fs {
            acc = t.poly_mul(&acc, &t.poly_pow(f, *m));
        }
        acc
    }

    #[test]
    fn basic_factorizations_over_f2() {
        let t = f2();
        let mut y12 = vec![0u64; 13];
        y12[12] = 1;
        let g = FFPoly::from_u64(0, &y12, &t);
        assert_eq!(ff_factor(&t, &g, 1).unwrap(), vec![(FFPoly::y(0, &t), 12)]);
        let g = FFPoly::from_u64(0, &[1, 1, 1], &t);
        assert_eq!(ff_factor(&t, &g, 1).unwrap(), vec![(g.clone(), 1)]);
        let g = FFPoly::from_u64(0, &[1, 0, 1], &t);
        assert_eq!(ff_factor(&t, &g, 1).unwrap(), vec![(FFPoly::from_u64(0, &[1, 1], &t), 2)]);
        assert_eq!(ff_factor(&t, &FFPoly::zero(0), 1), Err(OmError::ZeroPolynomial));
    }

    #[test]
    fn orders() {
        let t = f2();
        let y = FFPoly::y(0, &t);
        let y1 = FFPoly::from_u64(0, &[1, 1], &t);
        let c = FFPoly::from_u64(0, &[1, 1, 1], &t);
        assert_eq!(ff_ord(&t, &t.poly_pow(&y, 3), &y).unwrap(), 3);
        assert_eq!(ff_ord(&t, &c, &y1).unwrap(), 0);
        let g = t.poly_mul(&t.poly_pow(&y1, 2), &c);
        assert_eq!(ff_ord(&t, &g, &y1).unwrap(), 2);
    }

    #[test]
    fn factorization_over_f9_tower_reassembles() {
        let t0 = TowerField::prime(3);
        let t = t0.extend(&FFPoly::from_u64(0, &[1, 0, 1], &t0)).unwrap();
        let z = t.generator(1);
        // (y - z)^3 (y^2 + z) (y + 1)
        let a = FFPoly::new(1, vec![t.neg(&z), t.one(1)], &t);
        let b = FFPoly::new(1, vec![z.clone(), t.zero(1), t.one(1)], &t);
        let c = FFPoly::new(1, vec![t.one(1), t.one(1)], &t);
        let g = t.poly_mul(&t.poly_mul(&t.poly_pow(&a, 3), &b), &c);
        let fs = ff_factor(&t, &g, 7).unwrap();
        assert_eq!(product(&t, &fs, 1), g);
        let total: usize = fs.iter().map(|(f, m)| f.deg() * m).sum();
        assert_eq!(total, g.deg());
        for (f, _) in &fs {
            assert!(t.is_irreducible(f));
        }
        let seeds: Vec<_> = (0..4).map(|s| ff_factor(&t, &g, s).unwrap()).collect();
        assert!(seeds.windows(2).all(|w| w[0] == w[1]));
    }
}
