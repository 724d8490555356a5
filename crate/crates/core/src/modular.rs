//! Exact (S, T) data of modular and premodular categories.

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::CycMatrix;
use crate::scalar::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("modular data invariant fails: {0}")]
    Invariant(String),
    #[error("Verlinde coefficient N[{i}][{j}][{k}] = {value} is not a non-negative integer")]
    Verlinde {
        i: usize,
        j: usize,
        k: usize,
        value: String,
    },
    #[error("S-matrix has a vanishing vacuum row entry at {0}")]
    ZeroVacuumEntry(usize),
}

pub type Result<T> = std::result::Result<T, ModularError>;

#[derive(Clone, Debug, PartialEq)]
pub struct ModularData {
    /// Human-readable label per simple; label 0 is the vacuum.
    pub labels: Vec<String>,
    pub s: CycMatrix,
    pub t: Vec<Cyclotomic>,
    pub dims: Vec<usize>,
}

/// Fusion coefficients `N[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    pub n: Vec<Vec<Vec<u64>>>,
}

impl FusionRing {
    pub fn rank(&self) -> usize {
        self.n.len()
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> u64 {
        self.n[i][j][k]
    }

    /// Label dual to `i`: the unique `j` with `N[i][j][0] = 1`.
    pub fn dual(&self, i: usize) -> Option<usize> {
        (0..self.rank()).find(|&j| self.n[i][j][0] == 1)
    }

    pub fn is_associative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|a| {
            (0..r).all(|b| {
                (0..r).all(|c| {
                    (0..r).all(|d| {
                        let lhs: u64 = (0..r).map(|x| self.n[a][b][x] * self.n[x][c][d]).sum();
                        let rhs: u64 = (0..r).map(|x| self.n[b][c][x] * self.n[a][x][d]).sum();
                        lhs == rhs
                    })
                })
            })
        })
    }

    pub fn has_unit(&self) -> bool {
        let r = self.rank();
        (0..r).all(|j| (0..r).all(|k| self.n[0][j][k] == u64::from(j == k)))
    }

    /// Each label has exactly one dual, and duality is an involution.
    pub fn has_duality(&self) -> bool {
        (0..self.rank()).all(|i| {
            let count = (0..self.rank()).filter(|&j| self.n[i][j][0] == 1).count();
            count == 1 && self.dual(i).and_then(|j| self.dual(j)) == Some(i)
        })
    }
}

/// Result of the non-degeneracy test.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularityVerdict {
    pub modular: bool,
    /// A nonzero kernel vector of S when degenerate.
    pub witness: Option<Vec<Cyclotomic>>,
}

impl ModularData {
    pub fn rank(&self) -> usize {
        self.t.len()
    }

    pub fn t_matrix(&self) -> CycMatrix {
        CycMatrix::diagonal(&self.t)
    }

    /// Checks the full invariant suite of a modular category.
    pub fn verify(&self) -> Result<()> {
        let s = &self.s;
        let r = self.rank();
        if s.transpose() != *s {
            return Err(ModularError::Invariant("S is not symmetric".into()));
        }
        if !(s * &s.adjoint()).is_identity() {
            return Err(ModularError::Invariant("S is not unitary".into()));
        }
        let s2 = s * s;
        let is_perm = (0..r).all(|i| {
            let row = s2.row(i);
            row.iter().filter(|x| x.is_one()).count() == 1
                && row.iter().filter(|x| !x.is_zero()).count() == 1
        });
        if !is_perm {
            return Err(ModularError::Invariant(
                "S^2 is not a permutation matrix".into(),
            ));
        }
        let st = s * &self.t_matrix();
        if &(&st * &st) * &st != s2 {
            return Err(ModularError::Invariant("(ST)^3 != S^2".into()));
        }
        self.verlinde_fusion()?;
        Ok(())
    }

    /// `N_ij^k = sum_m S_im S_jm conj(S_km) / S_0m`.
    pub fn verlinde_fusion(&self) -> Result<FusionRing> {
        let r = self.rank();
        let s = &self.s;
        let inv0: Vec<Cyclotomic> = (0..r)
            .map(|m| {
                s[(0, m)]
                    .inverse()
                    .map_err(|_| ModularError::ZeroVacuumEntry(m))
            })
            .collect::<Result<_>>()?;
        let n = (0..r)
            .into_par_iter()
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let w: Vec<Cyclotomic> = (0..r)
                            .map(|m| &(&s[(i, m)] * &s[(j, m)]) * &inv0[m])
                            .collect();
                        (0..r)
                            .map(|k| {
                                let mut acc = Cyclotomic::zero();
                                for m in 0..r {
                                    acc += &w[m] * &s[(k, m)].conj();
                                }
                                acc.to_i64()
                                    .filter(|&v| v >= 0)
                                    .map(|v| v as u64)
                                    .ok_or_else(|| ModularError::Verlinde {
                                        i,
                                        j,
                                        k,
                                        value: acc.to_string(),
                                    })
                            })
                            .collect::<Result<Vec<u64>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FusionRing { n })
    }

    pub fn is_modular(&self) -> ModularityVerdict {
        is_modular(&self.s)
    }
}

/// Non-degeneracy of an S-matrix, with a kernel witness when degenerate.
pub fn is_modular(s: &CycMatrix) -> ModularityVerdict {
    let witness = s.kernel_basis().into_iter().next().map(|v| {
        // first nonzero entry scaled to 1
        let lead = v
            .iter()
            .find(|x| !x.is_zero())
            .expect("kernel vectors are nonzero");
        let inv = lead.inverse().expect("nonzero");
        v.iter().map(|x| x * &inv).collect::<Vec<_>>()
    });
    ModularityVerdict {
        modular: witness.is_none(),
        witness,
    }
}
