//! JSON documents written to stdout. Every number is a string; rationals
//! are written `num/den`.

use num_bigint::BigInt;
use omlocal::exactnum::{rat_to_fraction_string, BigRat, IntPoly};
use omlocal::ffield::{FFPoly, TowerField};
use omlocal::invariants::OkutsuInvariants;
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct ForestJson {
    pub schema_version: &'static str,
    pub p: String,
    pub f: Vec<String>,
    pub trees: Vec<TreeJson>,
    pub index: String,
    pub pairwise: Vec<PairJson>,
}

#[derive(Serialize)]
pub struct TreeJson {
    pub root_psi0: Vec<String>,
    pub leaves: Vec<LeafJson>,
}

#[derive(Serialize)]
pub struct LeafJson {
    pub depth: String,
    pub levels: Vec<LevelJson>,
    pub leaf: LeafLevelJson,
    pub invariants: InvariantsJson,
    pub quality: String,
    pub precision_bound: String,
}

#[derive(Serialize)]
pub struct LevelJson {
    pub phi: Vec<String>,
    pub h: String,
    pub e: String,
    pub psi: Vec<Vec<String>>,
    pub m: String,
    #[serde(rename = "V")]
    pub big_v: String,
}

#[derive(Serialize)]
pub struct LeafLevelJson {
    pub phi: Vec<String>,
    pub lambda: String,
    pub psi: Option<Vec<Vec<String>>>,
    pub h_cs: String,
}

#[derive(Serialize)]
pub struct InvariantsJson {
    pub e: String,
    pub f: String,
    pub delta0: String,
    pub cap: String,
    pub exp: String,
    pub ind: String,
    pub conductor: String,
}

#[derive(Serialize)]
pub struct PairJson {
    pub a: String,
    pub b: String,
    pub ioc: String,
    pub res_val: String,
}

#[derive(Serialize)]
pub struct LeafInvariantsJson {
    pub leaf: String,
    pub tree: String,
    pub invariants: InvariantsJson,
}

#[derive(Serialize)]
pub struct BasisElementJson {
    pub g: Vec<String>,
    pub d: String,
}

#[derive(Serialize)]
pub struct LeafBasisJson {
    pub leaf: String,
    pub basis: Vec<BasisElementJson>,
}

#[derive(Serialize)]
pub struct PrescribedLevelJson {
    pub e: String,
    pub f: String,
    pub h: String,
    pub psi: Vec<Vec<String>>,
}

#[derive(Serialize)]
pub struct ConstructJson {
    pub p: String,
    pub psi0: Vec<String>,
    pub levels: Vec<PrescribedLevelJson>,
    pub representative: Vec<String>,
    pub verified: bool,
}

#[derive(Serialize)]
pub struct ValueJson {
    pub value: String,
}

#[derive(Serialize)]
pub struct IndexJson {
    pub index: String,
    pub accumulated_index: String,
}

pub fn coeff_list(g: &IntPoly) -> Vec<String> {
    if g.coeffs().is_empty() {
        return vec!["0".to_string()];
    }
    g.coeffs().iter().map(BigInt::to_string).collect()
}

/// Coefficients of a residual polynomial, each as its digits over the
/// prime field.
pub fn ff_coeffs(tower: &TowerField, g: &FFPoly) -> Vec<Vec<String>> {
    (0..=g.deg())
        .map(|i| g.coeff_or_zero(i, tower).digits().iter().map(u64::to_string).collect())
        .collect()
}

pub fn prime_coeffs(g: &FFPoly) -> Vec<String> {
    g.coeffs().iter().map(|c| c.as_u64().to_string()).collect()
}

pub fn fraction(x: &BigRat) -> String {
    rat_to_fraction_string(x)
}

/// An integer for whole values, `num/den` otherwise.
pub fn rational_value(x: &BigRat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        rat_to_fraction_string(x)
    }
}

pub fn invariants(inv: &OkutsuInvariants) -> InvariantsJson {
    InvariantsJson {
        e: inv.e.to_string(),
        f: inv.f.to_string(),
        delta0: fraction(&inv.delta0),
        cap: fraction(&inv.cap),
        exp: inv.exp.to_string(),
        ind: inv.ind.numer().to_string(),
        conductor: fraction(&inv.conductor),
    }
}
