use num_bigint::BigInt;
use num_integer::Integer;

use super::OMType;
use crate::error::{OmError, Result};
use crate::exactnum::{pow_p, IntPoly};
use crate::ffield::FFPoly;

/// Builds `g` with `deg g < m_{r+1}`, `v_r(g) = b` and
/// `y^⌊s_r(g)/e_r⌋ R_r(g) = target`, for a type of order `r >= 1`.
pub fn construct_with_residual(t: &OMType, target: &FFPoly, b: i64) -> Result<IntPoly> {
    let r = t.order();
    if r == 0 {
        return Err(OmError::Precondition("construction needs a type of order at least 1".into()));
    }
    if target.is_zero() {
        return Err(OmError::Precondition("target residual must be nonzero".into()));
    }
    if target.floor() != r || target.deg() >= t.level(r).f {
        return Err(OmError::Precondition("target must have degree below f_r over floor r".into()));
    }
    if b < t.v_next() {
        return Err(OmError::Precondition(format!("value {} is below V_(r+1) = {}", b, t.v_next())));
    }
    build(t, r, target, b)
}

fn build(t: &OMType, r: usize, target: &FFPoly, b: i64) -> Result<IntPoly> {
    let tower = t.tower();
    let lvl = t.level(r);
    let frak_s = (b * lvl.ell).mod_floor(&lvl.e);
    let k = target.ord_y();
    let step = lvl.e * lvl.big_v + lvl.h;
    let mut g = IntPoly::zero();
    for (j, zeta) in target.coeffs().iter().enumerate().skip(k) {
        if zeta.is_zero() {
            continue;
        }
        let sj = frak_s + j as i64 * lvl.e;
        let num = b - sj * step;
        if num.mod_floor(&lvl.e) != 0 {
            return Err(OmError::Internal("non-integral coefficient value in construction".into()));
        }
        let bj = num / lvl.e;
        let a = if r == 1 {
            if bj < 0 {
                return Err(OmError::Internal("negative p-adic value in construction".into()));
            }
            let digits = tower.elem_to_poly(zeta);
            let lift = IntPoly::new(
                (0..t.f0()).map(|i| BigInt::from(digits.coeff_or_zero(i, tower).as_u64())).collect(),
            );
            lift.scale(&pow_p(t.p(), bj as u64))
        } else {
            let low = t.level(r - 1);
            let frak_sj = (bj * low.ell).mod_floor(&low.e);
            let expo_num = low.ell * bj - frak_sj;
            debug_assert_eq!(expo_num.mod_floor(&low.e), 0);
            let z = tower.generator(r);
            let elem = tower.mul(zeta, &tower.pow_i64(&z, expo_num / low.e)?);
            let sub_target = tower.elem_to_poly(&elem);
            build(t, r - 1, &sub_target, bj)?
        };
        g = &g + &(&a * &lvl.phi.pow(sj as u32));
    }
    Ok(g)
}

/// A monic representative of degree `m_{r+1}` with `R_r(φ) = ψ_r`.
pub fn representative(t: &OMType) -> Result<IntPoly> {
    let r = t.order();
    let tower = t.tower();
    if r == 0 {
        let coeffs = t.psi0().coeffs().iter().map(|c| BigInt::from(c.as_u64())).collect();
        return Ok(IntPoly::new(coeffs));
    }
    let lvl = t.level(r);
    let ypow = tower.poly_shift_up(&FFPoly::constant(tower.one(r), tower), lvl.f);
    let target = tower.poly_sub(&lvl.psi, &ypow);
    let g = construct_with_residual(t, &target, t.v_next())?;
    let lead = lvl.phi.pow((lvl.e as usize * lvl.f) as u32);
    Ok(&lead + &g)
}
