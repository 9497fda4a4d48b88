//! Property checks shared by the proptest suites and the acceptance run.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use omlocal::exactnum::{floor_rat, pow_p, IntPoly, ValOrInf};
use omlocal::ffield::{FFPoly, TowerField};
use omlocal::invariants::{
    build_type_with_invariants, index_of_f, okutsu_basis, okutsu_invariants, resultant_valuation, LevelSpec,
};
use omlocal::montes::{montes, OMForest};
use omlocal::omtypes::OMType;
use omlocal::sfl::{v_value, LiftState};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::is_square_free;

pub fn primes() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3u64), Just(5u64)]
}

fn int_poly(coeffs: Vec<i64>) -> IntPoly {
    IntPoly::from_i64(&coeffs)
}

fn monic(mut coeffs: Vec<i64>) -> IntPoly {
    coeffs.push(1);
    int_poly(coeffs)
}

/// A polynomial `f` and a monic `φ`.
pub fn expansion_case() -> impl Strategy<Value = (IntPoly, IntPoly)> {
    (
        prop::collection::vec(-1000i64..=1000, 0..14).prop_map(int_poly),
        prop::collection::vec(-30i64..=30, 1..5).prop_map(monic),
    )
}

pub fn expansion_reassembly((f, phi): (IntPoly, IntPoly)) -> Result<(), TestCaseError> {
    let exp = f.phi_expansion(&phi, None).unwrap();
    for a in &exp {
        prop_assert!(a.is_zero() || a.deg() < phi.deg());
    }
    prop_assert_eq!(IntPoly::from_expansion(&exp, &phi), f);
    Ok(())
}

/// A level `(e, f, h)` with `e·f >= 2` and `gcd(e, h) = 1`.
fn level_spec(max_e: i64, max_f: usize, max_h: i64) -> impl Strategy<Value = (i64, usize, i64)> {
    (1..=max_e, 1..=max_f, 1..=max_h)
        .prop_filter("e·f >= 2 and gcd(e, h) = 1", |&(e, f, h)| {
            e as usize * f >= 2 && num_integer::gcd(e, h) == 1
        })
}

/// Prime, constant term of `ψ_0 = y + c`, and levels.
pub fn prescription(
    primes: impl Strategy<Value = u64>,
    max_depth: usize,
    max_e: i64,
    max_f: usize,
    max_h: i64,
) -> impl Strategy<Value = (u64, u64, Vec<(i64, usize, i64)>)> {
    (primes, any::<u64>(), prop::collection::vec(level_spec(max_e, max_f, max_h), 1..=max_depth))
        .prop_map(|(p, c, levels)| (p, c % p, levels))
}

pub fn build(p: u64, c: u64, levels: &[(i64, usize, i64)]) -> (OMType, IntPoly) {
    let tower = TowerField::prime(p);
    let psi0 = FFPoly::from_u64(0, &[c, 1], &tower);
    let specs: Vec<LevelSpec> = levels.iter().map(|&(e, f, h)| LevelSpec::new(e, f, h)).collect();
    build_type_with_invariants(p, &psi0, &specs).unwrap()
}

pub fn representative_round_trip(
    (p, c, levels): (u64, u64, Vec<(i64, usize, i64)>),
) -> Result<(), TestCaseError> {
    let (t, phi) = build(p, c, &levels);
    prop_assert!(phi.is_monic());
    prop_assert_eq!(phi.deg(), t.m_next());
    let r = t.order();
    prop_assert_eq!(t.top_residual(&phi).unwrap(), t.level(r).psi.clone());
    prop_assert_eq!(t.efh(), levels);
    Ok(())
}

/// A type of order at most 2 together with two nonzero polynomials.
pub fn residual_case() -> impl Strategy<Value = ((u64, u64, Vec<(i64, usize, i64)>), IntPoly, IntPoly)> {
    let poly = || {
        prop::collection::vec(-40i64..=40, 1..10)
            .prop_map(int_poly)
            .prop_filter("nonzero", |g| !g.is_zero())
    };
    (prescription(primes(), 2, 3, 2, 4), poly(), poly())
}

pub fn residual_degree_and_multiplicativity(
    ((p, c, levels), g, h): ((u64, u64, Vec<(i64, usize, i64)>), IntPoly, IntPoly),
) -> Result<(), TestCaseError> {
    let (full, _) = build(p, c, &levels);
    let tower = full.tower();
    for order in 0..=full.order() {
        let t = full.truncate(order).unwrap();
        let (slope_h, slope_e) = if order == 0 { (0, 1) } else { (t.level(order).h, t.level(order).e) };
        let eg = t.analyze(order, slope_h, slope_e, &g, None).unwrap();
        let eh = t.analyze(order, slope_h, slope_e, &h, None).unwrap();
        let egh = t.analyze(order, slope_h, slope_e, &(&g * &h), None).unwrap();
        if order > 0 {
            for ev in [&eg, &eh, &egh] {
                prop_assert_eq!(ev.residual.deg() as i64, (ev.s_prime - ev.s) / slope_e);
                prop_assert!(!ev.residual.coeff(0).is_zero());
            }
        }
        prop_assert_eq!(egh.v, eg.v + eh.v);
        prop_assert_eq!(egh.residual.clone(), tower.poly_mul(&eg.residual, &eh.residual));
    }
    Ok(())
}

/// Random monic square-free polynomials with deep OM trees: products of
/// perturbed Eisenstein-like and random factors.
pub fn forest_case() -> impl Strategy<Value = (u64, IntPoly)> {
    (primes(), any::<u64>()).prop_map(|(p, seed)| (p, random_polynomial(p, seed)))
}

pub fn random_polynomial(p: u64, seed: u64) -> IntPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut f = IntPoly::one();
        let factors = rng.gen_range(1..=3);
        for _ in 0..factors {
            if f.deg() >= 7 {
                break;
            }
            let k = rng.gen_range(1..=(8 - f.deg()).min(4));
            let shift = BigInt::from(rng.gen_range(-3i64..=3));
            let mut coeffs: Vec<BigInt> = (0..k)
                .map(|i| {
                    let base = BigInt::from(rng.gen_range(-4i64..=4));
                    if rng.gen_bool(0.6) {
                        base * pow_p(p, rng.gen_range(1..=3) + u64::from(i == 0))
                    } else {
                        base
                    }
                })
                .collect();
            coeffs.push(BigInt::from(1));
            let g = IntPoly::new(coeffs);
            let lin = IntPoly::new(vec![shift.clone(), BigInt::from(1)]);
            let mut moved = IntPoly::zero();
            for a in g.coeffs().iter().rev() {
                moved = &(&moved * &lin) + &IntPoly::constant(a.clone());
            }
            f = &f * &moved;
        }
        if f.deg() >= 1 && is_square_free(&f) {
            return f;
        }
    }
}

fn forest(p: u64, f: &IntPoly) -> Result<OMForest, TestCaseError> {
    montes(f, p).map_err(|e| TestCaseError::fail(format!("montes failed on {} over {}: {}", f, p, e)))
}

pub fn degree_conservation((p, f): (u64, IntPoly)) -> Result<(), TestCaseError> {
    let forest = forest(p, &f)?;
    prop_assert_eq!(forest.leaves.iter().map(|l| l.deg_f).sum::<usize>(), f.deg());
    for leaf in &forest.leaves {
        let inv = okutsu_invariants(leaf).unwrap();
        prop_assert_eq!((inv.e * inv.f) as usize, leaf.deg_f);
        if let Some(h) = leaf.leaf.slope {
            prop_assert!(h > leaf.h_cs);
        }
    }
    Ok(())
}

pub fn index_formula_matches_lattice((p, f): (u64, IntPoly)) -> Result<(), TestCaseError> {
    let forest = forest(p, &f)?;
    prop_assert_eq!(index_of_f(&forest).unwrap(), forest.accumulated_index);
    let n = forest.leaves.len();
    for a in 0..n {
        for b in a + 1..n {
            prop_assert_eq!(resultant_valuation(&forest, a, b).unwrap(), resultant_valuation(&forest, b, a).unwrap());
        }
    }
    Ok(())
}

pub fn basis_exponent_sum((p, f): (u64, IntPoly)) -> Result<(), TestCaseError> {
    let forest = forest(p, &f)?;
    for leaf in &forest.leaves {
        let basis = okutsu_basis(leaf).unwrap();
        let ind = okutsu_invariants(leaf).unwrap().ind;
        let sum: u64 = basis.iter().map(|(_, d)| *d).sum();
        prop_assert_eq!(BigInt::from(sum), ind.to_integer());
        for (m, (g, d)) in basis.iter().enumerate() {
            prop_assert!(g.is_monic());
            prop_assert_eq!(g.deg(), m);
            match v_value(&f, leaf, g).unwrap() {
                ValOrInf::Finite(v) => prop_assert_eq!(floor_rat(&v).to_u64(), Some(*d)),
                ValOrInf::Infinite => prop_assert!(false, "basis element vanishes at the root"),
            }
        }
    }
    Ok(())
}

pub fn lifting_doubles_slope((p, f): (u64, IntPoly)) -> Result<(), TestCaseError> {
    let forest = forest(p, &f)?;
    for leaf in &forest.leaves {
        let mut state = LiftState::new(&f, leaf).unwrap();
        for _ in 0..3 {
            let Some(old) = state.h_phi else { break };
            state.step().map_err(|e| TestCaseError::fail(format!("lifting {} over {}: {}", f, p, e)))?;
            if let Some(new) = state.h_phi {
                prop_assert!(new >= 2 * old - state.h_cs(), "slope {} after {}", new, old);
                let v = v_value(&f, leaf, &state.phi).unwrap();
                prop_assert_eq!(v, ValOrInf::Finite(state.quality().unwrap()));
            } else {
                prop_assert!(f.rem_monic(&state.phi).unwrap().is_zero());
            }
        }
    }
    Ok(())
}

pub fn value_is_multiplicative(f: &IntPoly, forest: &OMForest, g: &IntPoly, h: &IntPoly) -> bool {
    let gh = g * h;
    forest.leaves.iter().all(|leaf| {
        let vg = v_value(f, leaf, g).unwrap();
        let vh = v_value(f, leaf, h).unwrap();
        let vgh = v_value(f, leaf, &gh).unwrap();
        match (vg, vh) {
            (ValOrInf::Finite(a), ValOrInf::Finite(b)) => vgh == ValOrInf::Finite(a + b),
            _ => vgh.is_infinite(),
        }
    })
}

pub fn value_multiplicativity((p, f, g, h): (u64, IntPoly, IntPoly, IntPoly)) -> Result<(), TestCaseError> {
    let forest = forest(p, &f)?;
    prop_assert!(value_is_multiplicative(&f, &forest, &g, &h));
    Ok(())
}

pub fn value_case() -> impl Strategy<Value = (u64, IntPoly, IntPoly, IntPoly)> {
    let poly = || {
        prop::collection::vec(-50i64..=50, 1..6)
            .prop_map(int_poly)
            .prop_filter("nonzero", |g| !g.is_zero())
    };
    (forest_case(), poly(), poly()).prop_map(|((p, f), g, h)| (p, f, g, h))
}
