#![allow(dead_code)]

pub mod props;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use omlocal::exactnum::{resultant_int, IntPoly};

pub const DEGREE_TWELVE: [i64; 13] =
    [1125899906842816, 1600, 1728, 2080, 1328, 992, 544, 240, 100, 36, 12, 2, 1];

pub fn degree_twelve() -> IntPoly {
    IntPoly::from_i64(&DEGREE_TWELVE)
}

pub fn is_square_free(f: &IntPoly) -> bool {
    f.gcd_rational(&f.derivative()).deg() == 0
}

/// Recursion guard for residue-class descent.
const MAX_DEPTH: usize = 200;

fn eval_mod(g: &IntPoly, a: &BigInt, m: &BigInt) -> BigInt {
    g.eval(a).mod_floor(m)
}

/// `g(a + p·y)` with the p-content removed.
fn rescale(g: &IntPoly, a: &BigInt, p: u64) -> IntPoly {
    let lin = IntPoly::new(vec![a.clone(), BigInt::from(p)]);
    let mut acc = IntPoly::zero();
    for c in g.coeffs().iter().rev() {
        acc = &(&acc * &lin) + &IntPoly::constant(c.clone());
    }
    let k = acc.v_p(p).expect("nonzero polynomial");
    acc.div_p_power(p, k)
}

/// Number of roots in `Z_p` of a square-free integer polynomial with
/// nonzero reduction mod p.
fn zp_roots(g: &IntPoly, p: u64, depth: usize) -> usize {
    assert!(depth < MAX_DEPTH, "root descent did not separate roots");
    let m = BigInt::from(p);
    let dg = g.derivative();
    let mut count = 0;
    for a in 0..p {
        let a = BigInt::from(a);
        if !eval_mod(g, &a, &m).is_zero() {
            continue;
        }
        if !eval_mod(&dg, &a, &m).is_zero() {
            count += 1;
        } else {
            count += zp_roots(&rescale(g, &a, p), p, depth + 1);
        }
    }
    count
}

/// Roots in `Q_p` of a monic square-free integer polynomial.
pub fn qp_root_count(f: &IntPoly, p: u64) -> usize {
    assert!(f.is_monic());
    zp_roots(f, p, 0)
}

fn interpolate(points: &[(BigInt, BigInt)]) -> IntPoly {
    let mut acc: Vec<BigRational> = vec![BigRational::zero(); points.len()];
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c.clone();
                next[k] -= c.clone() * BigRational::from_integer(xj.clone());
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = BigRational::new(yi.clone(), denom);
        for (k, c) in basis.into_iter().enumerate() {
            acc[k] += c * scale.clone();
        }
    }
    IntPoly::new(
        acc.into_iter()
            .map(|c| {
                assert!(c.is_integer(), "interpolated coefficient is not integral");
                c.to_integer()
            })
            .collect(),
    )
}

fn normalize_sign(g: IntPoly) -> IntPoly {
    if g.leading().is_some_and(|c| c.is_negative()) {
        g.scale(&BigInt::from(-1))
    } else {
        g
    }
}

/// Monic square root of a monic perfect square.
fn poly_sqrt(q: &IntPoly) -> Option<IntPoly> {
    let n2 = q.deg();
    if n2 % 2 != 0 {
        return None;
    }
    let n = n2 / 2;
    let mut r = vec![BigInt::zero(); n + 1];
    r[n] = BigInt::one();
    for k in 1..=n {
        let target = n2 - k;
        let mut acc = q.coeff(target);
        for i in (n - k + 1)..=n {
            let j = target - i;
            if j > n - k && j <= n {
                acc -= &r[i] * &r[j];
            }
        }
        let (quo, rem) = acc.div_rem(&BigInt::from(2));
        if !rem.is_zero() {
            return None;
        }
        r[n - k] = quo;
    }
    let root = IntPoly::new(r);
    (&root * &root == *q).then_some(root)
}

/// `∏_{i<j} (x − θ_i − θ_j − c·θ_i·θ_j)` over the roots of a monic `f`.
pub fn pair_resolvent(f: &IntPoly, c: i64) -> IntPoly {
    let n = f.deg();
    let cc = BigInt::from(c);
    let full: Vec<(BigInt, BigInt)> = (0..=(n * n) as i64)
        .map(|x0| {
            let x0 = BigInt::from(x0);
            let lin = IntPoly::new(vec![x0.clone(), BigInt::from(-1)]);
            let unit = IntPoly::new(vec![BigInt::one(), cc.clone()]);
            let mut g = IntPoly::zero();
            for (k, a) in f.coeffs().iter().enumerate() {
                let term = &lin.pow(k as u32) * &unit.pow((n - k) as u32);
                g = &g + &term.scale(a);
            }
            (x0, resultant_int(f, &g).unwrap())
        })
        .collect();
    let diagonal: Vec<(BigInt, BigInt)> = (0..=n as i64)
        .map(|x0| {
            let x0 = BigInt::from(x0);
            let g = IntPoly::new(vec![x0.clone(), BigInt::from(-2), -cc.clone()]);
            (x0, resultant_int(f, &g).unwrap())
        })
        .collect();
    let t = normalize_sign(interpolate(&full));
    let d = normalize_sign(interpolate(&diagonal));
    let square = t.div_exact(&d).expect("diagonal factor divides");
    poly_sqrt(&square).expect("off-diagonal part is a square")
}

/// Degrees of the irreducible factors of `f` over `Q_p`, sorted, for monic
/// square-free `f` of degree at most 4.
pub fn factor_degrees(f: &IntPoly, p: u64) -> Vec<usize> {
    let n = f.deg();
    assert!((1..=4).contains(&n));
    let roots = qp_root_count(f, p);
    let mut out = match (n, roots) {
        (1, 1) => vec![1],
        (2, 2) => vec![1, 1],
        (2, 0) => vec![2],
        (3, 3) => vec![1, 1, 1],
        (3, 1) => vec![1, 2],
        (3, 0) => vec![3],
        (4, 4) => vec![1, 1, 1, 1],
        (4, 2) => vec![1, 1, 2],
        (4, 1) => vec![1, 3],
        (4, 0) => {
            let resolvent = (1..)
                .map(|c| pair_resolvent(f, c))
                .find(is_square_free)
                .unwrap();
            if qp_root_count(&resolvent, p) == 0 {
                vec![4]
            } else {
                vec![2, 2]
            }
        }
        _ => panic!("impossible root count {} for degree {}", roots, n),
    };
    out.sort_unstable();
    out
}
