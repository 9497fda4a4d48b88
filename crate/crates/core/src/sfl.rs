//! Single-factor lifting of a leaf approximation and the value
//! `v(g(θ))` at a root `θ` of the prime factor attached to a leaf.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{OmError, Result};
use crate::exactnum::{ceil_rat, pow_p, rat, BigRat, IntPoly, ScaledPoly, ValOrInf};
use crate::ffield::FFPoly;
use crate::montes::OMLeaf;
use crate::omtypes::{construct_with_residual, OMType};

/// Default cap on lifting loops inside [`v_value`].
pub const MAX_VALUE_LOOPS: usize = 64;

/// Cap on Newton rounds for the inverse within one lifting loop.
const MAX_INVERSE_ROUNDS: usize = 64;

/// `Ψ = p^{c_0} φ_1^{c_1} ⋯ φ_r^{c_r}` with `0 <= c_i < e_i` and
/// `v_r(Ψ) = target`.
pub fn psi_multiplier(base: &OMType, target: i64) -> Result<ScaledPoly> {
    let p = base.p();
    let r = base.order();
    let mut rest = target;
    let mut poly = IntPoly::one();
    for i in (1..=r).rev() {
        let l = base.level(i);
        let c = (rest * l.ell).mod_floor(&l.e);
        let step = l.e * l.big_v + l.h;
        let num = rest - c * step;
        debug_assert_eq!(num.mod_floor(&l.e), 0);
        rest = num / l.e;
        poly = &poly * &l.phi.pow(c as u32);
    }
    let psi = ScaledPoly::new(poly.clone(), rest, p);
    let check = base.v_value_level(r, &poly).unwrap() + rest * base.e_prod(r);
    if check != target {
        return Err(OmError::Internal(format!("multiplier has value {} instead of {}", check, target)));
    }
    Ok(psi)
}

/// `δ_0(F) + λ_{r+1}/e(F)`, or `None` (infinite) for an exact leaf.
pub fn quality(leaf: &OMLeaf) -> Option<BigRat> {
    leaf.leaf.slope.map(|h| quality_for(&leaf.base, h))
}

fn quality_for(base: &OMType, h: i64) -> BigRat {
    rat(base.v_next() + h, base.e_prod(base.order()))
}

/// `w_{r+1} - (ν_1 + ⋯ + ν_r)`.
pub fn capacity(base: &OMType) -> BigRat {
    base.levels().iter().fold(base.w_next(), |acc, l| acc - l.nu.clone())
}

/// `quality - cap(F)`, a lower bound for the precision of the leaf
/// approximation.
pub fn precision_lower_bound(leaf: &OMLeaf) -> Result<BigRat> {
    let q = quality(leaf).ok_or_else(|| OmError::Precondition("exact leaf has infinite precision".into()))?;
    Ok(q - capacity(&leaf.base))
}

/// Working state of single-factor lifting for one leaf.
#[derive(Clone, Debug)]
pub struct LiftState {
    f: IntPoly,
    base: OMType,
    h_cs: i64,
    /// Current approximation `Φ`.
    pub phi: IntPoly,
    /// Current leaf slope; `None` once `Φ` divides `f`.
    pub h_phi: Option<i64>,
    /// Residual `ψ_{r+1}` of the current leaf.
    pub psi: Option<FFPoly>,
    inverse: Option<ScaledPoly>,
    psi_mult: ScaledPoly,
    /// Completed lifting loops.
    pub loops: usize,
    /// Reduce coefficients modulo a working power of `p`.
    pub truncate: bool,
}

struct Coeffs {
    a0: IntPoly,
    a1: IntPoly,
}

impl LiftState {
    pub fn new(f: &IntPoly, leaf: &OMLeaf) -> Result<Self> {
        let mut st = LiftState {
            f: deflate(f, leaf)?,
            base: leaf.base.clone(),
            h_cs: leaf.h_cs,
            phi: leaf.leaf.phi.clone(),
            h_phi: leaf.leaf.slope,
            psi: leaf.leaf.psi.clone(),
            inverse: None,
            psi_mult: ScaledPoly::constant(1, leaf.base.p()),
            loops: 0,
            truncate: true,
        };
        if st.h_phi.is_some() {
            let c = st.coeffs()?;
            let v1 = st.value(&c.a1)?;
            st.psi_mult = psi_multiplier(&st.base, -v1)?;
        }
        Ok(st)
    }

    pub fn base(&self) -> &OMType {
        &self.base
    }

    pub fn h_cs(&self) -> i64 {
        self.h_cs
    }

    /// Quality of the current approximation, `None` when exact.
    pub fn quality(&self) -> Option<BigRat> {
        self.h_phi.map(|h| quality_for(&self.base, h))
    }

    pub fn precision_lower_bound(&self) -> Option<BigRat> {
        self.quality().map(|q| q - capacity(&self.base))
    }

    /// The leaf type of order `r+1` for the current approximation.
    pub fn leaf_type(&self) -> Result<Option<OMType>> {
        match (self.h_phi, &self.psi) {
            (Some(h), Some(psi)) => Ok(Some(self.base.extend(&self.phi, h, 1, psi)?)),
            _ => Ok(None),
        }
    }

    fn coeffs(&self) -> Result<Coeffs> {
        let (q, a0) = self.f.divrem_monic(&self.phi)?;
        let a1 = q.rem_monic(&self.phi)?;
        Ok(Coeffs { a0, a1 })
    }

    fn value(&self, g: &IntPoly) -> Result<i64> {
        self.base
            .v_value_level(self.base.order(), g)
            .ok_or_else(|| OmError::Internal("zero coefficient in the leaf expansion".into()))
    }

    /// `v_r` of `poly·p^shift`.
    fn scaled_value(&self, g: &ScaledPoly) -> Result<i64> {
        let r = self.base.order();
        Ok(self.value(g.poly())? + g.shift() * self.base.e_prod(r))
    }

    fn working_bound(&self, h: i64) -> i64 {
        let e = self.base.e_prod(self.base.order());
        let v = self.base.v_next();
        let reach = ceil_rat(&rat(v + 2 * h - self.h_cs, e));
        let cap = ceil_rat(&capacity(&self.base));
        let reach: i64 = (reach + cap).try_into().expect("working bound fits i64");
        2 * (reach + self.psi_mult.shift().abs()) + 8
    }

    fn trunc(&self, g: ScaledPoly, bound: i64) -> ScaledPoly {
        if self.truncate {
            g.truncate(bound)
        } else {
            g
        }
    }

    /// Lift of the inverse of the residue class of `a1`.
    fn initial_inverse(&self, a1: &ScaledPoly) -> Result<ScaledPoly> {
        let base = &self.base;
        let tower = base.tower();
        let p = base.p();
        let r = base.order();
        let beta = base.residue_class(a1)?;
        let beta_inv = tower.inv(&beta)?;
        let x0 = if r == 0 {
            let digits = tower.elem_to_poly(&beta_inv);
            let lift = IntPoly::new(
                (0..base.f0()).map(|i| BigInt::from(digits.coeff_or_zero(i, tower).as_u64())).collect(),
            );
            ScaledPoly::from_int(lift, p)
        } else {
            let e = base.e_prod(r);
            let k = Integer::div_ceil(&base.v_next(), &e).max(0);
            let b = k * e;
            let one = FFPoly::constant(tower.one(r), tower);
            let probe = ScaledPoly::new(construct_with_residual(base, &one, b)?, -k, p);
            let rho = base.residue_class(&probe)?;
            let want = tower.mul(&beta_inv, &tower.inv(&rho)?);
            let target = tower.elem_to_poly(&want);
            ScaledPoly::new(construct_with_residual(base, &target, b)?, -k, p)
        };
        let check = base.residue_class(&x0.mul(a1).rem_monic(&self.phi)?)?;
        if check != tower.one(r + 1) {
            return Err(OmError::Internal("initial inverse has the wrong residue".into()));
        }
        Ok(x0)
    }

    /// One loop of single-factor lifting. Does nothing once exact.
    pub fn step(&mut self) -> Result<()> {
        let h = match self.h_phi {
            Some(h) => h,
            None => return Ok(()),
        };
        let p = self.base.p();
        let bound = self.working_bound(h);
        let c = self.coeffs()?;
        let big_a0 = self.psi_mult.mul_int(&c.a0).rem_monic(&self.phi)?;
        let big_a1 = self.psi_mult.mul_int(&c.a1).rem_monic(&self.phi)?;
        let two = ScaledPoly::constant(2, p);
        let one = ScaledPoly::constant(1, p);
        let mut x = match self.inverse.take() {
            Some(x) => x,
            None => self.initial_inverse(&big_a1)?,
        };
        let need = h - self.h_cs;
        let mut rounds = 0;
        loop {
            let ax = big_a1.mul(&x).rem_monic(&self.phi)?;
            let err = one.sub(&ax);
            if err.poly().is_zero() || self.scaled_value(&err)? >= need {
                break;
            }
            if rounds == MAX_INVERSE_ROUNDS {
                return Err(OmError::NonTerminating(rounds));
            }
            x = x.mul(&two.sub(&ax)).rem_monic(&self.phi)?;
            x = self.trunc(x, bound);
            rounds += 1;
        }
        let a = big_a0.mul(&x).rem_monic(&self.phi)?;
        let a = a
            .to_int_poly()
            .ok_or_else(|| OmError::Internal("lifting correction is not integral".into()))?;
        let next = &self.phi + &a;
        let next = if self.truncate {
            let m = pow_p(p, bound as u64);
            let mut reduced = next.reduce_symmetric(&m);
            if !reduced.is_monic() {
                reduced = next;
            }
            reduced
        } else {
            next
        };
        self.phi = next;
        self.inverse = Some(x);
        self.loops += 1;
        self.refresh(Some(h))
    }

    /// Recomputes the leaf slope and residual for the current `Φ`.
    fn refresh(&mut self, previous: Option<i64>) -> Result<()> {
        let c = self.coeffs()?;
        if c.a0.is_zero() {
            self.h_phi = None;
            self.psi = None;
            return Ok(());
        }
        let v = self.base.v_next();
        let h = self.value(&c.a0)? - self.value(&c.a1)? - v;
        if let Some(old) = previous {
            if h < 2 * old - self.h_cs {
                return Err(OmError::Internal(format!("lifting slope {} below {}", h, 2 * old - self.h_cs)));
            }
        }
        let i = self.base.order() + 1;
        let probe = self.base.clone().with_next_phi(self.phi.clone());
        let ev = probe.analyze(i, h, 1, &self.f, Some(2))?;
        let tower = self.base.tower();
        if ev.residual.deg() != 1 {
            return Err(OmError::Internal("leaf residual is not linear".into()));
        }
        self.psi = Some(tower.poly_monic(&ev.residual));
        self.h_phi = Some(h);
        Ok(())
    }
}

/// `f` without the exact factor that shares the leaf's key polynomial.
fn deflate(f: &IntPoly, leaf: &OMLeaf) -> Result<IntPoly> {
    if leaf.is_exact() {
        return Ok(f.clone());
    }
    let (q, rem) = f.divrem_monic(&leaf.leaf.phi)?;
    Ok(if rem.is_zero() { q } else { f.clone() })
}

/// Lifts the approximation of `leaf` until its slope reaches `target`.
pub fn sfl(f: &IntPoly, leaf: &OMLeaf, target: i64) -> Result<IntPoly> {
    Ok(sfl_state(f, leaf, target, true)?.phi)
}

/// Like [`sfl`], returning the full state; `truncate` toggles coefficient
/// reduction.
pub fn sfl_state(f: &IntPoly, leaf: &OMLeaf, target: i64, truncate: bool) -> Result<LiftState> {
    let mut st = LiftState::new(f, leaf)?;
    st.truncate = truncate;
    if st.h_phi.is_none() {
        return Ok(st);
    }
    if target <= leaf.h_cs {
        return Err(OmError::Precondition(format!("target slope {} is not above the cutting slope {}", target, leaf.h_cs)));
    }
    while let Some(h) = st.h_phi {
        if h >= target {
            break;
        }
        st.step()?;
    }
    Ok(st)
}

/// `v(g(θ))` for a root `θ` of the prime factor of `f` attached to `leaf`.
pub fn v_value(f: &IntPoly, leaf: &OMLeaf, g: &IntPoly) -> Result<ValOrInf> {
    v_value_capped(f, leaf, g, MAX_VALUE_LOOPS)
}

pub fn v_value_capped(f: &IntPoly, leaf: &OMLeaf, g: &IntPoly, max_loops: usize) -> Result<ValOrInf> {
    let base = &leaf.base;
    let p = base.p();
    let g = g.rem_monic(f)?;
    if g.is_zero() {
        return Ok(ValOrInf::Infinite);
    }
    let common = f.gcd_rational(&g);
    if common.deg() > 0 && leaf_divides(leaf, &common)? {
        return Ok(ValOrInf::Infinite);
    }
    let nu = g.v_p(p).unwrap() as i64;
    let g = g.div_p_power(p, nu as u64);
    let nu = BigRat::from_integer(nu.into());
    let tower = base.tower();
    let reduced = tower.reduce_int_poly(&g);
    if !tower.poly_rem(&reduced, base.psi0()).is_zero() || reduced.is_zero() {
        return Ok(ValOrInf::Finite(nu));
    }
    let r = base.order();
    for i in 1..=r {
        if let Some(v) = level_value(base, i, &g)? {
            return Ok(ValOrInf::Finite(nu + v));
        }
    }
    if leaf.is_exact() {
        let rem = g.rem_monic(&leaf.leaf.phi)?;
        let v = base.v_value_level(r, &rem).expect("coprime to the exact factor");
        return Ok(ValOrInf::Finite(nu + rat(v, base.e_prod(r))));
    }
    let mut st = LiftState::new(f, leaf)?;
    loop {
        match st.leaf_type()? {
            Some(full) => {
                if let Some(v) = level_value(&full, r + 1, &g)? {
                    return Ok(ValOrInf::Finite(nu + v));
                }
            }
            None => {
                let rem = g.rem_monic(&st.phi)?;
                let v = base.v_value_level(r, &rem).expect("coprime to the exact factor");
                return Ok(ValOrInf::Finite(nu + rat(v, base.e_prod(r))));
            }
        }
        if st.loops >= max_loops {
            return Err(OmError::NonTerminating(st.loops));
        }
        st.step()?;
    }
}

/// `μ_i(g)` when `ψ_i` does not divide `R_i(g)`.
fn level_value(t: &OMType, i: usize, g: &IntPoly) -> Result<Option<BigRat>> {
    let l = t.level(i);
    let ev = t.analyze(i, l.h, l.e, g, None)?;
    let rem = t.tower().poly_rem(&ev.residual, &l.psi);
    if rem.is_zero() {
        return Ok(None);
    }
    Ok(Some(rat(ev.v, t.e_prod(i))))
}

fn leaf_divides(leaf: &OMLeaf, d: &IntPoly) -> Result<bool> {
    match leaf.full_type()? {
        None => Ok(d.rem_monic(&leaf.leaf.phi)?.is_zero()),
        Some(full) => {
            let tower = full.tower();
            let reduced = tower.reduce_int_poly(&d.primitive_part());
            if !tower.poly_rem(&reduced, full.psi0()).is_zero() {
                return Ok(false);
            }
            for i in 1..=full.order() {
                if level_value(&full, i, d)?.is_some() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}
