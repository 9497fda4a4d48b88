use super::OMType;
use crate::error::{OmError, Result};
use crate::ffield::{FFElem, FFPoly};

/// Whether two strongly optimal types of the same order define the same
/// MacLane valuation together with the same residual ideal.
pub fn types_equivalent(t: &OMType, t_star: &OMType) -> Result<bool> {
    if !t.is_strongly_optimal() || !t_star.is_strongly_optimal() {
        return Err(OmError::Precondition("equivalence needs strongly optimal types".into()));
    }
    if t.order() != t_star.order() || t.p() != t_star.p() {
        return Ok(false);
    }
    if t.psi0() != t_star.psi0() {
        return Ok(false);
    }
    let tower = t.tower();
    // etas[k] is η_k in floor k of t's tower
    let mut etas: Vec<FFElem> = vec![tower.zero(0)];
    for i in 1..=t.order() {
        let (l, ls) = (t.level(i), t_star.level(i));
        if l.h != ls.h || l.e != ls.e || l.f != ls.f || l.m != ls.m {
            return Ok(false);
        }
        let diff = &ls.phi - &l.phi;
        let eta = if diff.is_zero() {
            tower.zero(i)
        } else {
            if diff.deg() >= l.m {
                return Ok(false);
            }
            let v = t.v_value_level(i - 1, &diff).expect("nonzero difference");
            let target = l.e * l.big_v + l.h;
            if l.e * v < target {
                return Ok(false);
            }
            if l.e * v > target || l.e > 1 {
                tower.zero(i)
            } else {
                t.residual_poly(i, l.h, l.e, &diff)?.coeff(0)
            }
        };
        etas.push(eta);
        let mapped = map_poly(t, t_star, &ls.psi, &etas);
        let shifted = tower.poly_translate(&l.psi, &tower.neg(&etas[i]));
        if mapped != shifted {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Image in floor `k` of `t` of an element of floor `k` of `t_star`, under
/// `z*_j ↦ z_j + η_j`.
fn map_elem(t: &OMType, t_star: &OMType, a: &FFElem, etas: &[FFElem]) -> FFElem {
    let k = a.floor();
    if k <= 1 {
        return a.clone();
    }
    let tower = t.tower();
    let local = t_star.tower().elem_to_poly(a);
    let coeffs = map_poly(t, t_star, &local, etas);
    let moved = tower.poly_translate(&coeffs, &etas[k - 1]);
    tower.poly_to_elem(k, &moved)
}

fn map_poly(t: &OMType, t_star: &OMType, g: &FFPoly, etas: &[FFElem]) -> FFPoly {
    let coeffs = g.coeffs().iter().map(|c| map_elem(t, t_star, c, etas)).collect();
    FFPoly::new(g.floor(), coeffs, t.tower())
}

#[cfg(test)]
mod tests {
    use super::super::tests::{p, x2_plus_2_type};
    use super::*;
    use crate::ffield::TowerField;

    fn order_one(pr: u64, phi: &[i64], h: i64, e: i64, psi: &[u64]) -> OMType {
        let t0 = OMType::root(pr, &FFPoly::y(0, &TowerField::prime(pr))).unwrap();
        let psi = FFPoly::from_u64(1, psi, t0.tower());
        t0.extend(&p(phi), h, e, &psi).unwrap()
    }

    #[test]
    fn reflexive() {
        let t = x2_plus_2_type();
        assert!(types_equivalent(&t, &t).unwrap());
    }

    #[test]
    fn small_perturbation_of_key_polynomial() {
        let t = x2_plus_2_type();
        let ts = order_one(2, &[4, 1], 1, 2, &[1, 1]);
        assert!(types_equivalent(&t, &ts).unwrap());
        let far = order_one(2, &[1, 1], 1, 2, &[1, 1]);
        assert!(!types_equivalent(&t, &far).unwrap());
    }

    #[test]
    fn translated_residual_polynomial() {
        let t = order_one(3, &[0, 1], 1, 1, &[1, 0, 1]);
        let ts = order_one(3, &[3, 1], 1, 1, &[2, 1, 1]);
        assert!(types_equivalent(&t, &ts).unwrap());
        let wrong = order_one(3, &[3, 1], 1, 1, &[1, 0, 1]);
        assert!(!types_equivalent(&t, &wrong).unwrap());
    }

    #[test]
    fn different_roots_or_slopes() {
        let pr = TowerField::prime(2);
        let a = OMType::root(2, &FFPoly::y(0, &pr)).unwrap();
        let b = OMType::root(2, &FFPoly::from_u64(0, &[1, 1], &pr)).unwrap();
        assert!(!types_equivalent(&a, &b).unwrap());
        let t = order_one(2, &[0, 1], 1, 2, &[1, 1]);
        let u = order_one(2, &[0, 1], 1, 3, &[1, 1]);
        assert!(!types_equivalent(&t, &u).unwrap());
    }

    #[test]
    fn rejects_non_strongly_optimal() {
        let t = order_one(3, &[0, 1], 1, 1, &[2, 1]);
        assert!(types_equivalent(&t, &t).is_err());
    }
}
