use num_integer::Integer;

use super::OMType;
use crate::error::{OmError, Result};
use crate::exactnum::{IntPoly, ScaledPoly};
use crate::ffield::{ff_ord, FFElem, FFPoly};
use crate::newton::{lower_hull, NewtonPolygon, PPoint};

/// Outcome of evaluating a polynomial at one level with a given slope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelEval {
    /// `min(e·y_s + h·s)` over the cloud, i.e. the level value `v_i(g)`
    /// for the slope `h/e`.
    pub v: i64,
    /// Left end abscissa of the λ-component.
    pub s: i64,
    /// Right end abscissa of the λ-component.
    pub s_prime: i64,
    /// Residual polynomial over floor `i`.
    pub residual: FFPoly,
}

impl OMType {
    /// `v_i(g)` for `0 <= i <= r`; `None` for `g = 0`.
    pub fn v_value_level(&self, i: usize, g: &IntPoly) -> Option<i64> {
        if g.is_zero() {
            return None;
        }
        if i == 0 {
            return g.v_p(self.p()).map(|v| v as i64);
        }
        let lvl = self.level(i);
        let step = lvl.e * lvl.big_v + lvl.h;
        let exp = g.phi_expansion(&lvl.phi, None).expect("key polynomials are monic");
        exp.iter()
            .enumerate()
            .filter_map(|(s, a)| self.v_value_level(i - 1, a).map(|v| lvl.e * v + s as i64 * step))
            .min()
    }

    /// Expansion coefficients and cloud points `(s, v_{i-1}(a_s) + s·V_i)`
    /// at level `1 <= i <= r+1`.
    pub fn cloud(&self, i: usize, g: &IntPoly, count: Option<usize>) -> Result<(Vec<IntPoly>, Vec<PPoint>)> {
        let phi = self
            .phi(i)
            .ok_or_else(|| OmError::Precondition(format!("level {} has no key polynomial", i)))?;
        let big_v = self.big_v(i);
        let exp = g.phi_expansion(phi, count)?;
        let pts = exp
            .iter()
            .enumerate()
            .map(|(s, a)| match self.v_value_level(i - 1, a) {
                Some(v) => PPoint::finite(s as i64, v + s as i64 * big_v),
                None => PPoint::infinite(s as i64),
            })
            .collect();
        Ok((exp, pts))
    }

    /// `N_i(g)` on the first `omega + 1` points (all points when `None`).
    pub fn newton_i(&self, i: usize, g: &IntPoly, omega: Option<usize>) -> Result<NewtonPolygon> {
        if g.is_zero() {
            return Err(OmError::ZeroPolynomial);
        }
        let (_, pts) = self.cloud(i, g, omega.map(|w| w + 1))?;
        lower_hull(&pts)
    }

    /// Value, λ-component and residual polynomial of `g` at level `i` for
    /// the slope `h/e`. Level 0 ignores the slope.
    pub fn analyze(&self, i: usize, h: i64, e: i64, g: &IntPoly, count: Option<usize>) -> Result<LevelEval> {
        if g.is_zero() {
            return Err(OmError::ZeroPolynomial);
        }
        let tower = self.tower();
        if i == 0 {
            let v = g.v_p(self.p()).unwrap();
            let residual = tower.reduce_int_poly(&g.div_p_power(self.p(), v));
            return Ok(LevelEval { v: v as i64, s: 0, s_prime: 0, residual });
        }
        let (exp, pts) = self.cloud(i, g, count)?;
        let key = |pt: &PPoint| pt.y.map(|y| e * y + h * pt.x);
        let v = pts.iter().filter_map(key).min().unwrap();
        let on: Vec<i64> = pts.iter().filter(|pt| key(pt) == Some(v)).map(|pt| pt.x).collect();
        let (s, s_prime) = (on[0], *on.last().unwrap());
        let d = (s_prime - s) / e;
        let z = tower.generator(i);
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        for j in 0..=d {
            let sj = (s + j * e) as usize;
            if key(&pts[sj]) != Some(v) {
                coeffs.push(tower.zero(i));
                continue;
            }
            let a = &exp[sj];
            let c = if i == 1 {
                let r0 = self.analyze(0, 0, 1, a, None)?.residual;
                tower.poly_to_elem(1, &r0)
            } else {
                let lvl = self.level(i - 1);
                let sub = self.analyze(i - 1, lvl.h, lvl.e, a, None)?;
                let num = sub.s - lvl.ell * sub.v;
                debug_assert_eq!(num.mod_floor(&lvl.e), 0);
                let t = Integer::div_floor(&num, &lvl.e);
                let base = tower.poly_to_elem(i, &sub.residual);
                tower.mul(&tower.pow_i64(&z, t)?, &base)
            };
            coeffs.push(c);
        }
        let residual = FFPoly::new(i, coeffs, tower);
        Ok(LevelEval { v, s, s_prime, residual })
    }

    /// `R_i(g)` for the slope `h/e` at level `i`.
    pub fn residual_poly(&self, i: usize, h: i64, e: i64, g: &IntPoly) -> Result<FFPoly> {
        Ok(self.analyze(i, h, e, g, None)?.residual)
    }

    /// Analysis of `poly·p^shift` using `R_i(p^k) = R_i(p)^k`.
    pub fn analyze_scaled(&self, i: usize, h: i64, e: i64, g: &ScaledPoly) -> Result<LevelEval> {
        let mut ev = self.analyze(i, h, e, g.poly(), None)?;
        let k = g.shift();
        if k != 0 {
            let tower = self.tower();
            let cp = self.analyze(i, h, e, &IntPoly::constant(self.p().into()), None)?;
            debug_assert_eq!(cp.residual.deg(), 0);
            let unit = tower.pow_i64(&cp.residual.coeff(0), k)?;
            ev.v += k * cp.v;
            ev.residual = tower.poly_scale(&ev.residual, &unit);
        }
        Ok(ev)
    }

    /// `R_r(g)` at the top level with the type's own slope, or `R_0(g)` for
    /// order 0.
    pub fn top_residual(&self, g: &IntPoly) -> Result<FFPoly> {
        let r = self.order();
        if r == 0 {
            return self.residual_poly(0, 0, 1, g);
        }
        let l = self.level(r);
        self.residual_poly(r, l.h, l.e, g)
    }

    /// `ord_t(g)`: multiplicity of `ψ_r` in `R_r(g)`.
    pub fn ord_in_type(&self, g: &IntPoly) -> Result<usize> {
        let r = self.order();
        let psi = if r == 0 { self.psi0().clone() } else { self.level(r).psi.clone() };
        ff_ord(self.tower(), &self.top_residual(g)?, &psi)
    }

    /// Residue class in `F_{r+1}` of `g(α)` for `g` with `v_r(g) = 0`,
    /// where `α` is a root of any representative.
    pub fn residue_class(&self, g: &ScaledPoly) -> Result<FFElem> {
        let r = self.order();
        let tower = self.tower();
        if r == 0 {
            let ev = self.analyze_scaled(0, 0, 1, g)?;
            if ev.v != 0 {
                return Err(OmError::Precondition("residue of an element of nonzero value".into()));
            }
            return Ok(tower.poly_to_elem(1, &ev.residual));
        }
        let l = self.level(r);
        let ev = self.analyze_scaled(r, l.h, l.e, g)?;
        if ev.v != 0 {
            return Err(OmError::Precondition("residue of an element of nonzero value".into()));
        }
        let z = tower.generator(r + 1);
        let t = ev.s / l.e;
        let base = tower.poly_to_elem(r + 1, &ev.residual);
        Ok(tower.mul(&tower.pow_i64(&z, t)?, &base))
    }
}
