//! Closed formulas on an OM representation: Okutsu invariants, indices
//! of coincidence, resultant valuations, the index of `f`, Okutsu bases and
//! types with prescribed numerical data.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::error::{OmError, Result};
use crate::exactnum::{floor_rat, is_integral, rat, rat_int, BigRat, IntPoly};
use crate::ffield::FFPoly;
use crate::montes::{OMForest, OMLeaf};
use crate::omtypes::{representative, OMType};
use crate::sfl::capacity;

/// Okutsu invariants of the prime factor attached to a leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OkutsuInvariants {
    pub e: i64,
    pub f: i64,
    pub delta0: BigRat,
    pub cap: BigRat,
    pub exp: i64,
    pub ind: BigRat,
    pub conductor: BigRat,
}

pub fn okutsu_invariants(leaf: &OMLeaf) -> Result<OkutsuInvariants> {
    let base = &leaf.base;
    let e = base.e_prod(base.order());
    let f = base.f_prod() as i64;
    let n = e * f;
    if n as usize != leaf.deg_f {
        return Err(OmError::Internal(format!("e·f = {} differs from the factor degree {}", n, leaf.deg_f)));
    }
    let delta0 = base.w_next();
    let cap = capacity(base);
    let exp = floor_rat(&cap).to_i64().expect("exponent fits i64");
    let ind = rat_int(n) * (cap.clone() - rat_int(1) + rat(1, e)) / rat_int(2);
    if !is_integral(&ind) {
        return Err(OmError::Internal(format!("non-integral index {}", ind)));
    }
    let conductor = rat_int(2) * ind.clone() / rat_int(f);
    Ok(OkutsuInvariants { e, f, delta0, cap, exp, ind, conductor })
}

/// Index of coincidence of two leaves of a forest.
pub fn index_of_coincidence(forest: &OMForest, a: usize, b: usize) -> Result<usize> {
    let (la, lb) = (forest.leaf(a)?, forest.leaf(b)?);
    if la.tree != lb.tree {
        return Ok(0);
    }
    if a == b {
        return Ok(1 + la.depth());
    }
    forest
        .separation_of(a, b)
        .map(|s| s.index)
        .ok_or_else(|| OmError::Internal("missing separation record".into()))
}

/// `v(Res(F, G))` for the prime factors attached to two distinct leaves.
pub fn resultant_valuation(forest: &OMForest, a: usize, b: usize) -> Result<BigRat> {
    let (la, lb) = (forest.leaf(a)?, forest.leaf(b)?);
    if a == b {
        return Err(OmError::SameLeaf);
    }
    if la.tree != lb.tree {
        return Ok(rat_int(0));
    }
    let sep = forest
        .separation_of(a, b)
        .ok_or_else(|| OmError::Internal("missing separation record".into()))?;
    let slope = match (sep.slope_first, sep.slope_second) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => return Err(OmError::Internal("two exact factors at one branching".into())),
    };
    let i = sep.index;
    let t = &la.base;
    let num = rat_int((la.deg_f * lb.deg_f) as i64) * (rat_int(t.big_v(i)) + slope);
    let val = num / rat_int(t.e_prod(i - 1) * t.m(i) as i64);
    if !is_integral(&val) {
        return Err(OmError::Internal(format!("non-integral resultant valuation {}", val)));
    }
    Ok(val)
}

/// `ind(f) = Σ ind(F) + Σ v(Res(F, G))`.
pub fn index_of_f(forest: &OMForest) -> Result<u64> {
    let mut total = rat_int(0);
    for (a, leaf) in forest.leaves.iter().enumerate() {
        total += okutsu_invariants(leaf)?.ind;
        for b in a + 1..forest.leaves.len() {
            total += resultant_valuation(forest, a, b)?;
        }
    }
    total
        .to_integer()
        .to_u64()
        .ok_or_else(|| OmError::Internal("index out of range".into()))
}

/// Pairs `(g_m, d_m)`, `0 <= m < deg F`, such that the `p^{-d_m} g_m(θ)`
/// form a basis of the integers of `Q_p(θ)`.
pub fn okutsu_basis(leaf: &OMLeaf) -> Result<Vec<(IntPoly, u64)>> {
    let base = &leaf.base;
    let r = base.order();
    let n = leaf.deg_f;
    let weights: Vec<BigRat> = base.levels().iter().map(|l| l.w.clone() + l.nu.clone()).collect();
    let mut out = Vec::with_capacity(n);
    let mut sum = BigInt::from(0);
    for m in 0..n {
        let mut rest = m;
        let mut g = IntPoly::one();
        let mut weight = rat_int(0);
        for i in (1..=r).rev() {
            let l = base.level(i);
            let j = rest / l.m;
            rest %= l.m;
            if j >= l.e as usize * l.f {
                return Err(OmError::Internal("mixed-radix digit out of range".into()));
            }
            weight += weights[i - 1].clone() * rat_int(j as i64);
            g = &g * &l.phi.pow(j as u32);
        }
        g = &g * &IntPoly::x().pow(rest as u32);
        let d = floor_rat(&weight);
        sum += &d;
        out.push((g, d.to_u64().expect("basis exponent fits u64")));
    }
    let ind = okutsu_invariants(leaf)?.ind;
    if BigRat::from_integer(sum.clone()) != ind {
        return Err(OmError::Internal(format!("basis exponents sum to {} instead of {}", sum, ind)));
    }
    Ok(out)
}

/// How `ψ_i` is chosen when building a type.
#[derive(Clone, Debug)]
pub enum PsiChoice {
    /// Least monic irreducible of the prescribed degree, skipping `y`.
    Least,
    /// A given monic irreducible over the right floor.
    Given(FFPoly),
}

/// Prescribed data `(e_i, f_i, h_i)` for one level.
#[derive(Clone, Debug)]
pub struct LevelSpec {
    pub e: i64,
    pub f: usize,
    pub h: i64,
    pub psi: PsiChoice,
}

impl LevelSpec {
    pub fn new(e: i64, f: usize, h: i64) -> Self {
        LevelSpec { e, f, h, psi: PsiChoice::Least }
    }
}

/// A strongly optimal type with the prescribed levels and one of its
/// representatives.
pub fn build_type_with_invariants(p: u64, psi0: &FFPoly, levels: &[LevelSpec]) -> Result<(OMType, IntPoly)> {
    let mut t = OMType::root(p, psi0)?;
    for (k, spec) in levels.iter().enumerate() {
        let i = k + 1;
        if spec.e < 1 || spec.f < 1 || spec.h < 1 {
            return Err(OmError::InvalidType(format!("level {} needs positive e, f, h", i)));
        }
        if spec.e.gcd(&spec.h) != 1 {
            return Err(OmError::InvalidType(format!("h = {} and e = {} are not coprime", spec.h, spec.e)));
        }
        if spec.e as usize * spec.f == 1 {
            return Err(OmError::InvalidType(format!("level {} with e·f = 1 is not strongly optimal", i)));
        }
        let phi = representative(&t)?;
        let psi = match &spec.psi {
            PsiChoice::Least => t.tower().least_irreducible(i, spec.f)?,
            PsiChoice::Given(psi) => {
                if psi.deg() != spec.f {
                    return Err(OmError::InvalidType(format!("ψ at level {} must have degree {}", i, spec.f)));
                }
                psi.clone()
            }
        };
        t = t.extend(&phi, spec.h, spec.e, &psi)?;
    }
    let phi = representative(&t)?;
    debug_assert!(BigInt::one() == *phi.leading().unwrap());
    Ok((t, phi))
}
