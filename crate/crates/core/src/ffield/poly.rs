use num_bigint::BigUint;

use super::{FFElem, TowerField};

/// Polynomial in `y` over one floor of a tower, constant term first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FFPoly {
    floor: usize,
    coeffs: Vec<FFElem>,
}

impl FFPoly {
    pub fn new(floor: usize, mut coeffs: Vec<FFElem>, tower: &TowerField) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.floor == floor && c.digits.len() == tower.dim(floor)));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FFPoly { floor, coeffs }
    }

    /// Polynomial whose coefficients are integers mod `p`, embedded in `floor`.
    pub fn from_u64(floor: usize, coeffs: &[u64], tower: &TowerField) -> Self {
        let cs = coeffs.iter().map(|&c| tower.from_int(floor, (c % tower.p()) as i64)).collect();
        Self::new(floor, cs, tower)
    }

    pub fn zero(floor: usize) -> Self {
        FFPoly { floor, coeffs: Vec::new() }
    }

    pub fn constant(c: FFElem, tower: &TowerField) -> Self {
        Self::new(c.floor, vec![c], tower)
    }

    /// The monomial `y` over `floor`.
    pub fn y(floor: usize, tower: &TowerField) -> Self {
        Self::new(floor, vec![tower.zero(floor), tower.one(floor)], tower)
    }

    pub fn floor(&self) -> usize {
        self.floor
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&FFElem> {
        self.coeffs.last()
    }

    /// Coefficient of `y^i`; panics beyond the degree.
    pub fn coeff(&self, i: usize) -> FFElem {
        self.coeffs[i].clone()
    }

    pub fn coeff_or_zero(&self, i: usize, tower: &TowerField) -> FFElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| tower.zero(self.floor))
    }

    pub fn is_monic(&self, tower: &TowerField) -> bool {
        self.leading().is_some_and(|c| *c == tower.one(self.floor))
    }

    /// True for the polynomial `y`.
    pub fn is_y(&self) -> bool {
        self.coeffs.len() == 2 && self.coeffs[0].is_zero() && self.coeffs[1].digits[0] == 1 && {
            self.coeffs[1].digits[1..].iter().all(|&d| d == 0)
        }
    }

    /// Multiplicity of `y` as a factor.
    pub fn ord_y(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `y^k`; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        FFPoly { floor: self.floor, coeffs: self.coeffs.iter().skip(k).cloned().collect() }
    }

    /// Canonical key used to order factor lists.
    pub fn sort_key(&self) -> (usize, Vec<u64>) {
        let mut flat = Vec::new();
        for c in self.coeffs.iter().rev() {
            flat.extend(c.digits.iter().rev());
        }
        (self.coeffs.len(), flat)
    }
}

impl TowerField {
    pub fn poly_add(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        debug_assert_eq!(a.floor, b.floor);
        let n = a.coeffs.len().max(b.coeffs.len());
        let cs = (0..n).map(|i| self.add(&a.coeff_or_zero(i, self), &b.coeff_or_zero(i, self))).collect();
        FFPoly::new(a.floor, cs, self)
    }

    pub fn poly_neg(&self, a: &FFPoly) -> FFPoly {
        FFPoly { floor: a.floor, coeffs: a.coeffs.iter().map(|c| self.neg(c)).collect() }
    }

    pub fn poly_sub(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        self.poly_add(a, &self.poly_neg(b))
    }

    pub fn poly_scale(&self, a: &FFPoly, c: &FFElem) -> FFPoly {
        FFPoly::new(a.floor, a.coeffs.iter().map(|x| self.mul(x, c)).collect(), self)
    }

    pub fn poly_mul(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        if a.is_zero() || b.is_zero() {
            return FFPoly::zero(a.floor);
        }
        let k = a.floor;
        let mut out = vec![self.zero(k); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = self.add(&out[i + j], &self.mul(x, y));
                }
            }
        }
        FFPoly::new(k, out, self)
    }

    /// Multiplication by `y^k`.
    pub fn poly_shift_up(&self, a: &FFPoly, k: usize) -> FFPoly {
        if a.is_zero() {
            return a.clone();
        }
        let mut cs = vec![self.zero(a.floor); k];
        cs.extend(a.coeffs.iter().cloned());
        FFPoly { floor: a.floor, coeffs: cs }
    }

    /// Euclidean division; `b` must be nonzero.
    pub fn poly_divrem(&self, a: &FFPoly, b: &FFPoly) -> (FFPoly, FFPoly) {
        let db = b.degree().expect("division by the zero polynomial");
        let k = a.floor;
        if a.coeffs.len() <= db {
            return (FFPoly::zero(k), a.clone());
        }
        let lead_inv = self.inv(b.leading().unwrap()).expect("nonzero leading coefficient");
        let mut r = a.coeffs.clone();
        let mut q = vec![self.zero(k); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mul(&r[i + db], &lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[i + j] = self.sub(&r[i + j], &self.mul(&c, bc));
            }
            q[i] = c;
        }
        r.truncate(db);
        (FFPoly::new(k, q, self), FFPoly::new(k, r, self))
    }

    pub fn poly_rem(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        self.poly_divrem(a, b).1
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn poly_div_exact(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        let (q, r) = self.poly_divrem(a, b);
        debug_assert!(r.is_zero());
        q
    }

    pub fn poly_monic(&self, a: &FFPoly) -> FFPoly {
        match a.leading() {
            None => a.clone(),
            Some(l) => self.poly_scale(a, &self.inv(l).unwrap()),
        }
    }

    /// Monic gcd (zero when both inputs vanish).
    pub fn poly_gcd(&self, a: &FFPoly, b: &FFPoly) -> FFPoly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = self.poly_rem(&x, &y);
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    pub fn poly_derivative(&self, a: &FFPoly) -> FFPoly {
        let cs = a.coeffs.iter().enumerate().skip(1).map(|(i, c)| self.scale_int(c, i as u64)).collect();
        FFPoly::new(a.floor, cs, self)
    }

    /// `a^e mod m`.
    pub fn poly_pow_mod(&self, a: &FFPoly, e: &BigUint, m: &FFPoly) -> FFPoly {
        let mut acc = FFPoly::constant(self.one(a.floor), self);
        let base = self.poly_rem(a, m);
        for i in (0..e.bits()).rev() {
            acc = self.poly_rem(&self.poly_mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.poly_rem(&self.poly_mul(&acc, &base), m);
            }
        }
        self.poly_rem(&acc, m)
    }

    pub fn poly_pow(&self, a: &FFPoly, e: usize) -> FFPoly {
        let mut acc = FFPoly::constant(self.one(a.floor), self);
        for _ in 0..e {
            acc = self.poly_mul(&acc, a);
        }
        acc
    }

    /// Evaluation at an element of the same or a higher floor.
    pub fn poly_eval(&self, a: &FFPoly, x: &FFElem) -> FFElem {
        let k = x.floor;
        let mut acc = self.zero(k);
        for c in a.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.embed(c, k));
        }
        acc
    }

    /// `a(y + c)`.
    pub fn poly_translate(&self, a: &FFPoly, c: &FFElem) -> FFPoly {
        let lin = FFPoly::new(a.floor, vec![c.clone(), self.one(a.floor)], self);
        let mut acc = FFPoly::zero(a.floor);
        for co in a.coeffs.iter().rev() {
            acc = self.poly_add(&self.poly_mul(&acc, &lin), &FFPoly::constant(co.clone(), self));
        }
        acc
    }

    /// Image of a polynomial under embedding of its coefficients into floor `k`.
    pub fn poly_embed(&self, a: &FFPoly, k: usize) -> FFPoly {
        FFPoly::new(k, a.coeffs.iter().map(|c| self.embed(c, k)).collect(), self)
    }

    /// `y^(q^n) mod m` by repeated Frobenius, where `q` is the floor size.
    pub(crate) fn frobenius_power(&self, h: &FFPoly, m: &FFPoly) -> FFPoly {
        let p = BigUint::from(self.p());
        let mut out = h.clone();
        for _ in 0..self.dim(m.floor) {
            out = self.poly_pow_mod(&out, &p, m);
        }
        out
    }

    /// Irreducibility over the polynomial's floor.
    pub fn is_irreducible(&self, g: &FFPoly) -> bool {
        let n = match g.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        if n == 1 {
            return true;
        }
        let g = self.poly_monic(g);
        let y = FFPoly::y(g.floor, self);
        let mut h = y.clone();
        for _ in 1..=n / 2 {
            h = self.frobenius_power(&h, &g);
            let d = self.poly_gcd(&self.poly_sub(&h, &y), &g);
            if d.deg() > 0 {
                return false;
            }
        }
        true
    }

    /// Human-readable rendering in `y` with tower generators `z{j}`.
    pub fn fmt_poly(&self, a: &FFPoly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, c) in a.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = self.fmt_elem(c);
            let cs = if cs.contains(' ') { format!("({})", cs) } else { cs };
            let mono = match i {
                0 => String::new(),
                1 => "y".to_string(),
                _ => format!("y^{}", i),
            };
            terms.push(match (i, cs.as_str()) {
                (0, _) => cs,
                (_, "1") => mono,
                _ => format!("{}*{}", cs, mono),
            });
        }
        terms.join(" + ")
    }
}
