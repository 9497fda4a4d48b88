//! Types `t = (ψ_0; (φ_1,λ_1,ψ_1); …; (φ_r,λ_r,ψ_r))` with their numerical
//! level data, the operators `N_i`, `R_i`, `v_i`, representatives and
//! equivalence.

mod construct;
mod equiv;
mod eval;

pub use construct::{construct_with_residual, representative};
pub use equiv::types_equivalent;
pub use eval::LevelEval;

use std::sync::Arc;

use num_integer::Integer;

use crate::error::{OmError, Result};
use crate::exactnum::{bezout_pair, rat, rat_int, BigRat, IntPoly};
use crate::ffield::{FFPoly, TowerField};

/// Data attached to one level `i >= 1` of a type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub phi: IntPoly,
    pub h: i64,
    pub e: i64,
    pub psi: FFPoly,
    pub f: usize,
    pub m: usize,
    /// `V_i = v_{i-1}(φ_i)`.
    pub big_v: i64,
    pub ell: i64,
    pub ell_prime: i64,
    /// `ν_i = h_i / (e_1⋯e_i)`.
    pub nu: BigRat,
    pub w: BigRat,
}

impl Level {
    pub fn lambda(&self) -> BigRat {
        rat(self.h, self.e)
    }
}

/// A type over `Z_p`, possibly carrying a pending key polynomial for the
/// next level.
#[derive(Clone, Debug)]
pub struct OMType {
    p: u64,
    psi0: FFPoly,
    levels: Vec<Level>,
    tower: Arc<TowerField>,
    next_phi: Option<IntPoly>,
    /// Pending `ord` for the next level.
    pub omega: usize,
    /// Cutting slope.
    pub h_cs: i64,
}

impl OMType {
    /// Order-0 type rooted at a monic irreducible `psi0` over `F_p`.
    pub fn root(p: u64, psi0: &FFPoly) -> Result<Self> {
        let tower = TowerField::prime(p).extend(psi0)?;
        Ok(OMType {
            p,
            psi0: psi0.clone(),
            levels: Vec::new(),
            tower: Arc::new(tower),
            next_phi: None,
            omega: 0,
            h_cs: 0,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.levels.len()
    }

    pub fn psi0(&self) -> &FFPoly {
        &self.psi0
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Level `i`, counted from 1.
    pub fn level(&self, i: usize) -> &Level {
        &self.levels[i - 1]
    }

    pub fn tower(&self) -> &TowerField {
        &self.tower
    }

    pub fn f0(&self) -> usize {
        self.psi0.deg()
    }

    /// `φ_i` for `1 <= i <= r`, or the pending `φ_{r+1}`.
    pub fn phi(&self, i: usize) -> Option<&IntPoly> {
        if i >= 1 && i <= self.order() {
            Some(&self.levels[i - 1].phi)
        } else if i == self.order() + 1 {
            self.next_phi.as_ref()
        } else {
            None
        }
    }

    pub fn next_phi(&self) -> Option<&IntPoly> {
        self.next_phi.as_ref()
    }

    pub fn with_next_phi(mut self, phi: IntPoly) -> Self {
        self.next_phi = Some(phi);
        self
    }

    /// `m_i` for `1 <= i <= r+1`.
    pub fn m(&self, i: usize) -> usize {
        if i <= self.order() {
            self.level(i).m
        } else {
            self.m_next()
        }
    }

    /// `V_i` for `1 <= i <= r+1`.
    pub fn big_v(&self, i: usize) -> i64 {
        if i <= self.order() {
            self.level(i).big_v
        } else {
            self.v_next()
        }
    }

    /// `m_{r+1}`.
    pub fn m_next(&self) -> usize {
        match self.levels.last() {
            None => self.f0(),
            Some(l) => l.e as usize * l.f * l.m,
        }
    }

    /// `V_{r+1}`.
    pub fn v_next(&self) -> i64 {
        match self.levels.last() {
            None => 0,
            Some(l) => l.e * l.f as i64 * (l.e * l.big_v + l.h),
        }
    }

    /// `w_{r+1}`.
    pub fn w_next(&self) -> BigRat {
        match self.levels.last() {
            None => rat_int(0),
            Some(l) => (l.w.clone() + l.nu.clone()) * BigRat::from_integer((l.e * l.f as i64).into()),
        }
    }

    /// `e_1⋯e_i`.
    pub fn e_prod(&self, i: usize) -> i64 {
        self.levels[..i].iter().map(|l| l.e).product()
    }

    /// `f_0 f_1 ⋯ f_r`.
    pub fn f_prod(&self) -> usize {
        self.f0() * self.levels.iter().map(|l| l.f).product::<usize>()
    }

    /// Absolute degree `f_0⋯f_{i-1}` of floor `i`.
    pub fn floor_degree(&self, i: usize) -> usize {
        self.tower.dim(i)
    }

    /// `m_1 < m_2 < … < m_{r+1}`.
    pub fn is_strongly_optimal(&self) -> bool {
        (1..=self.order()).all(|i| self.m(i) < self.m(i + 1))
    }

    /// Appends level `r+1 = (phi, h/e, psi)`; `psi` lives over floor `r+1`.
    pub fn extend(&self, phi: &IntPoly, h: i64, e: i64, psi: &FFPoly) -> Result<OMType> {
        let r = self.order();
        let m = self.m_next();
        if !phi.is_monic() || phi.deg() != m {
            return Err(OmError::InvalidType(format!("key polynomial must be monic of degree {}", m)));
        }
        if h < 1 || e < 1 || h.gcd(&e) != 1 {
            return Err(OmError::InvalidType(format!("slope {}/{} is not a reduced positive fraction", h, e)));
        }
        if psi.floor() != r + 1 {
            return Err(OmError::InvalidType("ψ lives over the wrong floor".into()));
        }
        let tower = self.tower.extend(psi)?;
        let big_v = self.v_next();
        let w = self.w_next();
        let e_total = self.e_prod(r) * e;
        let (ell, ell_prime) = bezout_pair(h, e);
        let level = Level {
            phi: phi.clone(),
            h,
            e,
            psi: psi.clone(),
            f: psi.deg(),
            m,
            big_v,
            ell,
            ell_prime,
            nu: rat(h, e_total),
            w,
        };
        let mut levels = self.levels.clone();
        levels.push(level);
        Ok(OMType {
            p: self.p,
            psi0: self.psi0.clone(),
            levels,
            tower: Arc::new(tower),
            next_phi: None,
            omega: 0,
            h_cs: 0,
        })
    }

    /// Drops all levels above `j`.
    pub fn truncate(&self, j: usize) -> Result<OMType> {
        if j > self.order() {
            return Err(OmError::Precondition(format!("truncation level {} exceeds order {}", j, self.order())));
        }
        if j == self.order() {
            return Ok(self.clone());
        }
        Ok(OMType {
            p: self.p,
            psi0: self.psi0.clone(),
            levels: self.levels[..j].to_vec(),
            tower: Arc::new(self.tower.truncate(j + 1)),
            next_phi: Some(self.levels[j].phi.clone()),
            omega: 0,
            h_cs: 0,
        })
    }

    /// `(e_i, f_i, h_i)` for each level.
    pub fn efh(&self) -> Vec<(i64, usize, i64)> {
        self.levels.iter().map(|l| (l.e, l.f, l.h)).collect()
    }
}
