//! Modules over a Hopf algebra, their duals and the double-dual comparison.

use super::integral::{character_inverse, integral_data};
use super::{basis, FinHopfAlgebra, HopfError, Result, SVec};
use crate::linalg::CycMatrix;
use crate::scalar::Cyclotomic;

/// A left module given by the action matrix of every basis element.
#[derive(Clone, Debug, PartialEq)]
pub struct HModule {
    pub dim: usize,
    pub action: Vec<CycMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualSide {
    /// `(M*, rho o S^{-1})`.
    Left,
    /// `(M*, rho o S)`.
    Right,
}

impl HModule {
    pub fn new(h: &FinHopfAlgebra, action: Vec<CycMatrix>) -> Result<Self> {
        let dim = action.first().map(CycMatrix::rows).unwrap_or(0);
        let m = HModule { dim, action };
        m.check(h)?;
        Ok(m)
    }

    pub fn regular(h: &FinHopfAlgebra) -> Self {
        HModule {
            dim: h.dim(),
            action: (0..h.dim())
                .map(|i| h.left_mult_matrix(&basis(i)))
                .collect(),
        }
    }

    /// One-dimensional module of a character.
    pub fn character(chi: &[Cyclotomic]) -> Self {
        HModule {
            dim: 1,
            action: chi
                .iter()
                .map(|c| CycMatrix::from_rows(vec![vec![c.clone()]]))
                .collect(),
        }
    }

    pub fn act(&self, x: &SVec) -> CycMatrix {
        let mut m = CycMatrix::zeros(self.dim, self.dim);
        for (&k, c) in x {
            m = m.add(&self.action[k].scale(c));
        }
        m
    }

    pub fn check(&self, h: &FinHopfAlgebra) -> Result<()> {
        let n = h.dim();
        if self.action.len() != n
            || self
                .action
                .iter()
                .any(|a| a.rows() != self.dim || a.cols() != self.dim)
        {
            return Err(HopfError::Module(
                "action matrices have the wrong shape".into(),
            ));
        }
        if !self.act(h.unit()).is_identity() {
            return Err(HopfError::Module(
                "unit does not act as the identity".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                if &self.action[i] * &self.action[j] != self.act(h.product_of(i, j)) {
                    return Err(HopfError::Module(format!(
                        "rho({}) rho({}) != rho({0}{1})",
                        h.label(i),
                        h.label(j)
                    )));
                }
            }
        }
        Ok(())
    }

    /// `M (x) N` with `h` acting through `Delta(h)`.
    pub fn tensor(&self, other: &HModule, h: &FinHopfAlgebra) -> HModule {
        let n = h.dim();
        let action = (0..n)
            .map(|i| {
                let mut m = CycMatrix::zeros(self.dim * other.dim, self.dim * other.dim);
                for (&ab, c) in h.comult_of(i) {
                    m = m.add(&self.action[ab / n].kron(&other.action[ab % n]).scale(c));
                }
                m
            })
            .collect();
        HModule {
            dim: self.dim * other.dim,
            action,
        }
    }
}

pub fn dual_module(h: &FinHopfAlgebra, m: &HModule, side: DualSide) -> Result<HModule> {
    let images: Vec<SVec> = match side {
        DualSide::Right => (0..h.dim()).map(|i| h.antipode_of(i).clone()).collect(),
        DualSide::Left => h.antipode_inverse()?,
    };
    Ok(HModule {
        dim: m.dim,
        action: images.iter().map(|s| m.act(s).transpose()).collect(),
    })
}

/// Explicit isomorphism `^vv M -> D^{-1} (x) M^vv (x) D`.
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleDualWitness {
    pub map: CycMatrix,
    /// Which candidate worked: `rho(a)` or `rho(a^{-1})`.
    pub candidate: &'static str,
    pub source: HModule,
    pub target: HModule,
}

pub fn double_dual_witness(h: &FinHopfAlgebra, m: &HModule) -> Result<DoubleDualWitness> {
    m.check(h)?;
    let data = integral_data(h)?;
    let ll = dual_module(h, &dual_module(h, m, DualSide::Left)?, DualSide::Left)?;
    let rr = dual_module(h, &dual_module(h, m, DualSide::Right)?, DualSide::Right)?;
    let (a, alpha) = data.radford_pair(h);
    let d = HModule::character(&alpha);
    let d_inv = HModule::character(&character_inverse(h, &alpha));
    let target = d_inv.tensor(&rr, h).tensor(&d, h);
    let a_inv = h.antipode(&a);
    let candidates = [("rho(a)", m.act(&a)), ("rho(a^-1)", m.act(&a_inv))];
    for (name, phi) in candidates {
        let ok = (0..h.dim()).all(|i| &phi * &ll.action[i] == &target.action[i] * &phi);
        if ok {
            return Ok(DoubleDualWitness {
                map: phi,
                candidate: name,
                source: ll,
                target,
            });
        }
    }
    Err(HopfError::NoIntertwiner(
        "phi rho_{^vv M}(h) = rho_{D^-1 M^vv D}(h) phi fails for rho(a) and rho(a^-1)".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::super::{group_algebra, taft};
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn group_algebra_witness_is_identity() {
        let h = group_algebra(&FiniteGroup::symmetric(3));
        let w = double_dual_witness(&h, &HModule::regular(&h)).unwrap();
        assert!(w.map.is_identity());
    }

    #[test]
    fn sweedler_regular_module() {
        let h = taft(2, 1).unwrap();
        let m = HModule::regular(&h);
        let w = double_dual_witness(&h, &m).unwrap();
        assert_eq!(w.candidate, "rho(a)");
        assert!(!w.map.is_identity());
        assert!(w.map.inverse().is_some());
    }

    #[test]
    fn taft3_one_dimensional_modules() {
        let h = taft(3, 1).unwrap();
        let chi: Vec<Cyclotomic> = (0..9)
            .map(|i| {
                if i % 3 == 0 {
                    Cyclotomic::root_of_unity(3, (i / 3) as i64)
                } else {
                    Cyclotomic::zero()
                }
            })
            .collect();
        let m = HModule::new(&h, HModule::character(&chi).action).unwrap();
        let w = double_dual_witness(&h, &m).unwrap();
        assert_eq!(w.source.dim, 1);
        let reg = HModule::regular(&h);
        assert!(double_dual_witness(&h, &reg).is_ok());
    }

    #[test]
    fn duals_are_modules() {
        let h = taft(3, 2).unwrap();
        let m = HModule::regular(&h);
        for side in [DualSide::Left, DualSide::Right] {
            dual_module(&h, &m, side).unwrap().check(&h).unwrap();
        }
    }
}
