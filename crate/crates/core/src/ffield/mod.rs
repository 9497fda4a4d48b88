//! Residue field towers `F_0 = F_p ⊂ F_1 ⊂ … ⊂ F_k` with
//! `F_{j+1} = F_j[y]/(ψ_j)`, their elements, and polynomials over any floor.
//!
//! An element of floor `j+1` is a polynomial of degree `< f_j` over floor `j`
//! in the class `z_j` of `y`. It is stored flat: the `f_j` coefficients are
//! concatenated, each occupying `dim(j)` digits mod `p`.

mod factor;
mod poly;

pub use factor::{ff_factor, ff_ord};
pub use poly::FFPoly;

use num_bigint::BigUint;

use crate::error::{OmError, Result};

/// Element of one floor of a [`TowerField`].
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct FFElem {
    floor: usize,
    digits: Vec<u64>,
}

impl FFElem {
    pub fn floor(&self) -> usize {
        self.floor
    }

    /// Coordinates over `F_p` in the tower monomial basis.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }
}

/// A tower of finite fields over `F_p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerField {
    p: u64,
    floors: Vec<FFPoly>,
    dims: Vec<usize>,
}

impl TowerField {
    /// The prime field alone.
    pub fn prime(p: u64) -> Self {
        TowerField { p, floors: Vec::new(), dims: vec![1] }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Index of the top floor (number of defining polynomials).
    pub fn top(&self) -> usize {
        self.floors.len()
    }

    /// Defining polynomial `ψ_j` of floor `j+1`.
    pub fn defining(&self, j: usize) -> &FFPoly {
        &self.floors[j]
    }

    /// Degree `f_j` of floor `j+1` over floor `j`.
    pub fn rel_degree(&self, j: usize) -> usize {
        self.floors[j].deg()
    }

    /// Absolute degree of floor `k` over `F_p`.
    pub fn dim(&self, k: usize) -> usize {
        self.dims[k]
    }

    /// Number of elements of floor `k`.
    pub fn order(&self, k: usize) -> BigUint {
        num_traits::pow(BigUint::from(self.p), self.dims[k])
    }

    /// The tower truncated to floors `0..=k`.
    pub fn truncate(&self, k: usize) -> TowerField {
        TowerField {
            p: self.p,
            floors: self.floors[..k].to_vec(),
            dims: self.dims[..=k].to_vec(),
        }
    }

    /// Adds the floor `F_top[y]/(psi)`.
    pub fn extend(&self, psi: &FFPoly) -> Result<TowerField> {
        let top = self.top();
        if psi.floor() != top || !psi.is_monic(self) || psi.deg() == 0 {
            return Err(OmError::Precondition(
                "defining polynomial must be monic of positive degree over the top floor".into(),
            ));
        }
        if top >= 1 && psi.deg() == 1 && psi.coeff(0).is_zero() {
            return Err(OmError::TrivialGenerator);
        }
        if !self.is_irreducible(psi) {
            return Err(OmError::Reducible);
        }
        let mut floors = self.floors.clone();
        floors.push(psi.clone());
        let mut dims = self.dims.clone();
        dims.push(self.dims[top] * psi.deg());
        Ok(TowerField { p: self.p, floors, dims })
    }

    pub fn zero(&self, k: usize) -> FFElem {
        FFElem { floor: k, digits: vec![0; self.dims[k]] }
    }

    pub fn one(&self, k: usize) -> FFElem {
        self.from_int(k, 1)
    }

    /// Image of an integer in floor `k`.
    pub fn from_int(&self, k: usize, n: i64) -> FFElem {
        let mut e = self.zero(k);
        e.digits[0] = n.rem_euclid(self.p as i64) as u64;
        e
    }

    /// Element of floor `k` from flat digits (reduced mod `p`).
    pub fn from_digits(&self, k: usize, digits: &[u64]) -> FFElem {
        assert_eq!(digits.len(), self.dims[k], "digit count must match the floor dimension");
        FFElem { floor: k, digits: digits.iter().map(|d| d % self.p).collect() }
    }

    /// The class `z_{k-1}` of `y` in floor `k >= 1`.
    pub fn generator(&self, k: usize) -> FFElem {
        assert!(k >= 1 && k <= self.top());
        let f = self.rel_degree(k - 1);
        if f >= 2 {
            let mut chunks = vec![self.zero(k - 1); f];
            chunks[1] = self.one(k - 1);
            self.join(k, &chunks)
        } else {
            let c = self.floors[k - 1].coeff(0);
            self.embed(&self.neg(&c), k)
        }
    }

    /// Canonical image of `a` in a higher floor.
    pub fn embed(&self, a: &FFElem, k: usize) -> FFElem {
        assert!(a.floor <= k);
        let mut digits = a.digits.clone();
        digits.resize(self.dims[k], 0);
        FFElem { floor: k, digits }
    }

    /// Coefficients of `a` (floor `k >= 1`) as a polynomial in `z_{k-1}`.
    pub fn split(&self, a: &FFElem) -> Vec<FFElem> {
        let k = a.floor;
        assert!(k >= 1);
        let d = self.dims[k - 1];
        a.digits.chunks(d).map(|c| FFElem { floor: k - 1, digits: c.to_vec() }).collect()
    }

    fn join(&self, k: usize, chunks: &[FFElem]) -> FFElem {
        let mut digits = Vec::with_capacity(self.dims[k]);
        for c in chunks {
            digits.extend_from_slice(&c.digits);
        }
        FFElem { floor: k, digits }
    }

    /// `a` viewed as a polynomial of degree `< f_{k-1}` over floor `k-1`.
    pub fn elem_to_poly(&self, a: &FFElem) -> FFPoly {
        FFPoly::new(a.floor - 1, self.split(a), self)
    }

    /// Evaluates a polynomial over floor `k-1` at `z_{k-1}`.
    pub fn poly_to_elem(&self, k: usize, g: &FFPoly) -> FFElem {
        assert_eq!(g.floor() + 1, k);
        let r = self.poly_rem(g, &self.floors[k - 1]);
        let f = self.rel_degree(k - 1);
        let chunks: Vec<FFElem> = (0..f).map(|i| r.coeff_or_zero(i, self)).collect();
        self.join(k, &chunks)
    }

    pub fn add(&self, a: &FFElem, b: &FFElem) -> FFElem {
        debug_assert_eq!(a.floor, b.floor);
        let p = self.p;
        FFElem {
            floor: a.floor,
            digits: a.digits.iter().zip(&b.digits).map(|(x, y)| (x + y) % p).collect(),
        }
    }

    pub fn neg(&self, a: &FFElem) -> FFElem {
        let p = self.p;
        FFElem { floor: a.floor, digits: a.digits.iter().map(|&x| (p - x) % p).collect() }
    }

    pub fn sub(&self, a: &FFElem, b: &FFElem) -> FFElem {
        self.add(a, &self.neg(b))
    }

    /// Product by an integer.
    pub fn scale_int(&self, a: &FFElem, n: u64) -> FFElem {
        let p = self.p as u128;
        let n = n as u128 % p;
        FFElem {
            floor: a.floor,
            digits: a.digits.iter().map(|&x| ((x as u128 * n) % p) as u64).collect(),
        }
    }

    pub fn mul(&self, a: &FFElem, b: &FFElem) -> FFElem {
        debug_assert_eq!(a.floor, b.floor);
        let k = a.floor;
        if k == 0 {
            let v = (a.digits[0] as u128 * b.digits[0] as u128) % self.p as u128;
            return FFElem { floor: 0, digits: vec![v as u64] };
        }
        let xa = self.split(a);
        let xb = self.split(b);
        let f = xa.len();
        let mut prod = vec![self.zero(k - 1); 2 * f - 1];
        for (i, ai) in xa.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in xb.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                prod[i + j] = self.add(&prod[i + j], &self.mul(ai, bj));
            }
        }
        let psi = &self.floors[k - 1];
        for d in (f..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[d], self.zero(k - 1));
            if c.is_zero() {
                continue;
            }
            for j in 0..f {
                let t = self.mul(&c, &psi.coeff_or_zero(j, self));
                prod[d - f + j] = self.sub(&prod[d - f + j], &t);
            }
        }
        prod.truncate(f);
        self.join(k, &prod)
    }

    pub fn pow(&self, a: &FFElem, e: &BigUint) -> FFElem {
        let mut acc = self.one(a.floor);
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn pow_u64(&self, a: &FFElem, e: u64) -> FFElem {
        self.pow(a, &BigUint::from(e))
    }

    /// Power with a possibly negative exponent.
    pub fn pow_i64(&self, a: &FFElem, e: i64) -> Result<FFElem> {
        if e >= 0 {
            Ok(self.pow_u64(a, e as u64))
        } else {
            Ok(self.pow_u64(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self, a: &FFElem) -> Result<FFElem> {
        if a.is_zero() {
            return Err(OmError::Precondition("zero has no inverse".into()));
        }
        let e = self.order(a.floor) - BigUint::from(2u32);
        Ok(self.pow(a, &e))
    }

    /// The unique `p`-th root (inverse Frobenius).
    pub fn pth_root(&self, a: &FFElem) -> FFElem {
        let d = self.dims[a.floor];
        let e = num_traits::pow(BigUint::from(self.p), d - 1);
        self.pow(a, &e)
    }

    /// Element of floor `k` with the given index in base-`p` digit order.
    pub fn elem_from_index(&self, k: usize, mut idx: u128) -> FFElem {
        let mut e = self.zero(k);
        for d in e.digits.iter_mut() {
            *d = (idx % self.p as u128) as u64;
            idx /= self.p as u128;
        }
        e
    }

    /// Random element of floor `k`.
    pub fn random_elem<R: rand::Rng>(&self, k: usize, rng: &mut R) -> FFElem {
        let mut e = self.zero(k);
        for d in e.digits.iter_mut() {
            *d = rng.gen_range(0..self.p);
        }
        e
    }

    /// Monic irreducible polynomials of the given degree over floor `k`,
    /// excluding `y`, searched in increasing index order; returns the first.
    pub fn least_irreducible(&self, k: usize, degree: usize) -> Result<FFPoly> {
        assert!(degree >= 1);
        let q = self.order(k);
        let total = num_traits::pow(q.clone(), degree);
        let q128: u128 = q.try_into().map_err(|_| OmError::NoIrreducible { floor: k, degree })?;
        let total: u128 =
            total.try_into().map_err(|_| OmError::NoIrreducible { floor: k, degree })?;
        for idx in 0..total {
            let mut rest = idx;
            let mut coeffs = Vec::with_capacity(degree + 1);
            for _ in 0..degree {
                coeffs.push(self.elem_from_index(k, rest % q128));
                rest /= q128;
            }
            coeffs.push(self.one(k));
            let cand = FFPoly::new(k, coeffs, self);
            if degree == 1 && cand.coeff(0).is_zero() {
                continue;
            }
            if self.is_irreducible(&cand) {
                return Ok(cand);
            }
        }
        Err(OmError::NoIrreducible { floor: k, degree })
    }

    /// Reduction of an integer polynomial modulo `p`.
    pub fn reduce_int_poly(&self, g: &crate::exactnum::IntPoly) -> FFPoly {
        use num_integer::Integer;
        let p = num_bigint::BigInt::from(self.p);
        let coeffs = g
            .coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(&p);
                let v = r.to_u64_digits().1.first().copied().unwrap_or(0);
                self.from_int(0, v as i64)
            })
            .collect();
        FFPoly::new(0, coeffs, self)
    }

    /// Formats an element as a polynomial in `z{j}`.
    pub fn fmt_elem(&self, a: &FFElem) -> String {
        if a.floor == 0 {
            return a.digits[0].to_string();
        }
        let parts = self.split(a);
        let var = format!("z{}", a.floor - 1);
        let mut terms = Vec::new();
        for (i, c) in parts.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = self.fmt_elem(c);
            let cs = if cs.contains(' ') { format!("({})", cs) } else { cs };
            let mono = match i {
                0 => String::new(),
                1 => var.clone(),
                _ => format!("{}^{}", var, i),
            };
            terms.push(match (i, cs.as_str()) {
                (0, _) => cs,
                (_, "1") => mono,
                _ => format!("{}*{}", cs, mono),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl FFElem {
    /// Unsigned integer value of a floor-0 element.
    pub fn as_u64(&self) -> u64 {
        self.digits[0]
    }
}
