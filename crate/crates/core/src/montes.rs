//! The Montes algorithm: an OM representation of a monic square-free
//! polynomial, one leaf per prime factor over `Z_p`.

use std::collections::BTreeMap;

use crate::error::{OmError, Result};
use crate::exactnum::{is_prime, rat, BigRat, IntPoly};
use crate::ffield::{ff_factor, FFPoly, TowerField};
use crate::newton::{lattice_points_under, principal_part, Side};
use crate::omtypes::{representative, OMType};

/// Seed used by [`montes`].
pub const DEFAULT_SEED: u64 = 0x6f6d;

/// The last level `(φ_{r+1}, λ_{r+1}, ψ_{r+1})` of a leaf. An exact leaf
/// has `slope = None` (`λ = ∞`) and no `ψ`.
#[derive(Clone, Debug)]
pub struct LeafLevel {
    pub phi: IntPoly,
    pub slope: Option<i64>,
    pub psi: Option<FFPoly>,
}

/// One branching decision on the way from a root to a leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchStep {
    pub event: usize,
    pub branch: usize,
    /// Level `i` of the polygon that produced the branch.
    pub level: usize,
    /// Slope of the branch side, `None` for an exact factor.
    pub slope: Option<BigRat>,
}

/// A leaf of the forest, attached to one prime factor `F` of `f`.
#[derive(Clone, Debug)]
pub struct OMLeaf {
    pub tree: usize,
    pub base: OMType,
    pub leaf: LeafLevel,
    pub h_cs: i64,
    pub deg_f: usize,
    pub branch_path: Vec<BranchStep>,
}

impl OMLeaf {
    /// Okutsu depth `r`.
    pub fn depth(&self) -> usize {
        self.base.order()
    }

    pub fn is_exact(&self) -> bool {
        self.leaf.slope.is_none()
    }

    /// The leaf as a type of order `r+1`; `None` for exact leaves.
    pub fn full_type(&self) -> Result<Option<OMType>> {
        match (&self.leaf.slope, &self.leaf.psi) {
            (Some(h), Some(psi)) => Ok(Some(self.base.extend(&self.leaf.phi, *h, 1, psi)?)),
            _ => Ok(None),
        }
    }

    /// `(e_i, f_i, h_i)` for the levels of the base type.
    pub fn efh(&self) -> Vec<(i64, usize, i64)> {
        self.base.efh()
    }
}

/// How two leaves of the same tree were told apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    /// Index of coincidence.
    pub index: usize,
    /// Hidden slope on the side of the first leaf, `None` for `∞`.
    pub slope_first: Option<BigRat>,
    pub slope_second: Option<BigRat>,
}

/// An OM representation of `f`.
#[derive(Clone, Debug)]
pub struct OMForest {
    pub p: u64,
    pub f: IntPoly,
    /// Root `ψ_0` of each tree.
    pub roots: Vec<FFPoly>,
    pub leaves: Vec<OMLeaf>,
    /// Keyed by leaf indices `(a, b)` with `a < b` in the same tree.
    pub separation: BTreeMap<(usize, usize), Separation>,
    /// Weighted lattice-point count over all principal polygons of the run.
    pub accumulated_index: u64,
}

impl OMForest {
    pub fn tree_leaves(&self, tree: usize) -> impl Iterator<Item = (usize, &OMLeaf)> {
        self.leaves.iter().enumerate().filter(move |(_, l)| l.tree == tree)
    }

    pub fn leaf(&self, k: usize) -> Result<&OMLeaf> {
        self.leaves.get(k).ok_or(OmError::ForeignLeaf(k))
    }

    /// Separation data of two distinct leaves of the same tree.
    pub fn separation_of(&self, a: usize, b: usize) -> Option<Separation> {
        if a < b {
            self.separation.get(&(a, b)).cloned()
        } else {
            self.separation.get(&(b, a)).map(|s| Separation {
                index: s.index,
                slope_first: s.slope_second.clone(),
                slope_second: s.slope_first.clone(),
            })
        }
    }

    pub fn leaf_degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.leaves.iter().map(|l| l.deg_f).collect();
        d.sort_unstable();
        d
    }
}

struct Node {
    ty: OMType,
    path: Vec<BranchStep>,
}

/// Runs the Montes algorithm on a monic square-free `f`.
pub fn montes(f: &IntPoly, p: u64) -> Result<OMForest> {
    montes_with_seed(f, p, DEFAULT_SEED)
}

pub fn montes_with_seed(f: &IntPoly, p: u64, seed: u64) -> Result<OMForest> {
    if !is_prime(p) {
        return Err(OmError::NotPrime(p));
    }
    if f.is_zero() || !f.is_monic() {
        return Err(OmError::NotMonic);
    }
    if f.deg() == 0 {
        return Err(OmError::Precondition("constant polynomial has no prime factors".into()));
    }
    if f.gcd_rational(&f.derivative()).deg() > 0 {
        return Err(OmError::NotSquareFree);
    }
    let prime = TowerField::prime(p);
    let reduced = prime.reduce_int_poly(f);
    let mut work = f.clone();
    let mut forest = OMForest {
        p,
        f: f.clone(),
        roots: Vec::new(),
        leaves: Vec::new(),
        separation: BTreeMap::new(),
        accumulated_index: 0,
    };
    let mut event = 0usize;
    let guard = 64 * (f.deg() + 4) * (f.deg() + 4);
    for (tree, (psi0, mult)) in ff_factor(&prime, &reduced, seed)?.into_iter().enumerate() {
        forest.roots.push(psi0.clone());
        let mut root = OMType::root(p, &psi0)?;
        let lift = representative(&root)?;
        root = root.with_next_phi(lift);
        root.omega = mult;
        let mut stack = vec![Node { ty: root, path: Vec::new() }];
        while let Some(mut node) = stack.pop() {
            event += 1;
            if event > guard {
                return Err(OmError::NonTerminating(event));
            }
            let i = node.ty.order() + 1;
            let phi = node.ty.next_phi().cloned().expect("stacked nodes carry a key polynomial");
            let mut branch = 0usize;
            let weight = node.ty.floor_degree(i) as u64;
            let (q, rem) = work.divrem_monic(&phi)?;
            if rem.is_zero() {
                let undivided = node.ty.newton_i(i, &work, Some(node.ty.omega))?;
                forest.accumulated_index += lattice_points_under(&undivided, node.ty.h_cs) * weight;
                work = q;
                let mut path = node.path.clone();
                path.push(BranchStep { event, branch, level: i, slope: None });
                branch += 1;
                forest.leaves.push(OMLeaf {
                    tree,
                    base: node.ty.clone(),
                    leaf: LeafLevel { phi: phi.clone(), slope: None, psi: None },
                    h_cs: node.ty.h_cs,
                    deg_f: phi.deg(),
                    branch_path: path,
                });
                node.ty.omega -= 1;
                if node.ty.omega == 0 {
                    continue;
                }
            }
            let omega = node.ty.omega;
            let n = node.ty.newton_i(i, &work, Some(omega))?;
            let (sides, len) = principal_part(&n);
            if len as usize != omega {
                return Err(OmError::NotSquareFree);
            }
            if !rem.is_zero() {
                forest.accumulated_index += lattice_points_under(&n, node.ty.h_cs) * weight;
            }
            let mut children = Vec::new();
            let mut sides: Vec<Side> = sides;
            sides.sort_by_key(|s| {
                let (h, e) = s.lambda();
                rat(h, e)
            });
            for side in sides {
                let (h, e) = side.lambda();
                if h <= node.ty.h_cs * e {
                    return Err(OmError::Internal("side slope does not exceed the cutting slope".into()));
                }
                let ev = node.ty.analyze(i, h, e, &work, Some(omega + 1))?;
                let tower = node.ty.tower();
                for (psi, mult) in ff_factor(tower, &ev.residual, seed)? {
                    let mut path = node.path.clone();
                    path.push(BranchStep { event, branch, level: i, slope: Some(rat(h, e)) });
                    branch += 1;
                    if omega == 1 {
                        if e != 1 || psi.deg() != 1 {
                            return Err(OmError::Internal("unit-length side with nonlinear residual".into()));
                        }
                        forest.leaves.push(OMLeaf {
                            tree,
                            base: node.ty.clone(),
                            leaf: LeafLevel { phi: phi.clone(), slope: Some(h), psi: Some(psi) },
                            h_cs: node.ty.h_cs,
                            deg_f: phi.deg(),
                            branch_path: path,
                        });
                        continue;
                    }
                    let grown = node.ty.extend(&phi, h, e, &psi)?;
                    let next = representative(&grown)?;
                    if next.deg() > phi.deg() {
                        let mut ty = grown.with_next_phi(next);
                        ty.omega = mult;
                        ty.h_cs = 0;
                        children.push(Node { ty, path });
                    } else {
                        if mult > omega {
                            return Err(OmError::Internal("refinement increased ω".into()));
                        }
                        let mut ty = node.ty.clone().with_next_phi(next);
                        ty.omega = mult;
                        ty.h_cs = h;
                        children.push(Node { ty, path });
                    }
                }
            }
            stack.extend(children.into_iter().rev());
        }
    }
    let total: usize = forest.leaves.iter().map(|l| l.deg_f).sum();
    if total != f.deg() {
        return Err(OmError::Internal(format!("leaf degrees sum to {} instead of {}", total, f.deg())));
    }
    for l in &forest.leaves {
        if let Some(h) = l.leaf.slope {
            if h <= l.h_cs {
                return Err(OmError::Internal("leaf slope does not exceed its cutting slope".into()));
            }
        }
    }
    forest.separation = separations(&forest.leaves);
    Ok(forest)
}

fn separations(leaves: &[OMLeaf]) -> BTreeMap<(usize, usize), Separation> {
    let mut out = BTreeMap::new();
    for a in 0..leaves.len() {
        for b in a + 1..leaves.len() {
            if leaves[a].tree != leaves[b].tree {
                continue;
            }
            let (pa, pb) = (&leaves[a].branch_path, &leaves[b].branch_path);
            let k = pa.iter().zip(pb.iter()).take_while(|(x, y)| x == y).count();
            if k >= pa.len() || k >= pb.len() {
                continue;
            }
            debug_assert_eq!(pa[k].event, pb[k].event);
            out.insert(
                (a, b),
                Separation {
                    index: pa[k].level,
                    slope_first: pa[k].slope.clone(),
                    slope_second: pb[k].slope.clone(),
                },
            );
        }
    }
    out
}
