//! Explicit matrices for irreducible representations.
//!
//! Each irreducible character is realized as a representation induced from a
//! linear character of a subgroup (monomial representations). Groups with a
//! non-monomial irreducible, such as `SL(2,3)`, are reported as errors.

use std::collections::HashSet;

use super::{character_table, CharacterTable, FiniteGroup, GroupError, Result};
use crate::linalg::CycMatrix;
use crate::scalar::Cyclotomic;

/// A matrix representation, one matrix per group element.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    pub dim: usize,
    pub matrices: Vec<CycMatrix>,
}

impl Representation {
    pub fn trivial(group: &FiniteGroup) -> Self {
        Representation {
            dim: 1,
            matrices: vec![CycMatrix::identity(1); group.order()],
        }
    }

    pub fn matrix(&self, g: usize) -> &CycMatrix {
        &self.matrices[g]
    }

    /// Character values per element.
    pub fn character(&self) -> Vec<Cyclotomic> {
        self.matrices.iter().map(CycMatrix::trace).collect()
    }

    /// Checks `rho(gh) = rho(g) rho(h)` on all pairs.
    pub fn is_homomorphism(&self, group: &FiniteGroup) -> bool {
        (0..group.order()).all(|g| {
            (0..group.order())
                .all(|h| self.matrices[group.mul(g, h)] == &self.matrices[g] * &self.matrices[h])
        })
    }
}

/// Induced-character value `Ind_H^G(lambda)(g)`.
fn induced_value(
    group: &FiniteGroup,
    h_members: &[usize],
    lambda: &dyn Fn(usize) -> Option<Cyclotomic>,
    g: usize,
) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for x in 0..group.order() {
        let c = group.conjugate(group.inv(x), g);
        if h_members.binary_search(&c).is_ok() {
            acc += lambda(c).expect("member of the subgroup");
        }
    }
    acc.scale_ratio(1, h_members.len() as i64)
}

/// Builds a representation affording character `chi` of `table`.
pub fn irreducible_representation(table: &CharacterTable, chi: usize) -> Result<Representation> {
    let group = &table.group;
    let n = group.order();
    let deg = table.degree(chi);
    if deg == 1 {
        return Ok(Representation {
            dim: 1,
            matrices: (0..n)
                .map(|g| CycMatrix::from_rows(vec![vec![table.value(chi, g).clone()]]))
                .collect(),
        });
    }
    let target_order = n / deg;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut candidates = Vec::new();
    for a in 0..n {
        let h = group.closure(&[a]);
        if h.len() == target_order && seen.insert(h.clone()) {
            candidates.push(h);
        }
    }
    let mut tried = 0;
    loop {
        for h in candidates.drain(..) {
            if let Some(rep) = try_subgroup(table, chi, &h)? {
                return Ok(rep);
            }
        }
        tried += 1;
        if tried > 1 {
            break;
        }
        for a in 1..n {
            for b in a + 1..n {
                let h = group.closure(&[a, b]);
                if h.len() == target_order && seen.insert(h.clone()) {
                    candidates.push(h);
                }
            }
        }
    }
    Err(GroupError::Representation(format!(
        "character {chi} of degree {deg} is not induced from a linear character"
    )))
}

fn try_subgroup(
    table: &CharacterTable,
    chi: usize,
    members: &[usize],
) -> Result<Option<Representation>> {
    let group = &table.group;
    let n = group.order();
    let sub = group.subgroup(members)?;
    let sub_table = character_table(&sub.group)?;
    for (row, values) in sub_table.characters.iter().enumerate() {
        if sub_table.degree(row) != 1 {
            continue;
        }
        let lambda = |amb: usize| {
            sub.local(amb)
                .map(|l| values[sub_table.class_of(l)].clone())
        };
        let matches =
            table.representatives().iter().enumerate().all(|(c, &z)| {
                induced_value(group, members, &lambda, z) == table.characters[chi][c]
            });
        if !matches {
            continue;
        }
        // left coset representatives, minimal index in each coset
        let mut covered = vec![false; n];
        let mut reps = Vec::new();
        for t in 0..n {
            if !covered[t] {
                reps.push(t);
                for &h in members {
                    covered[group.mul(t, h)] = true;
                }
            }
        }
        let d = reps.len();
        let matrices = (0..n)
            .map(|g| {
                let mut m = CycMatrix::zeros(d, d);
                for (j, &tj) in reps.iter().enumerate() {
                    let gt = group.mul(g, tj);
                    for (i, &ti) in reps.iter().enumerate() {
                        let h = group.mul(group.inv(ti), gt);
                        if let Some(v) = lambda(h) {
                            m[(i, j)] = v;
                            break;
                        }
                    }
                }
                m
            })
            .collect();
        return Ok(Some(Representation { dim: d, matrices }));
    }
    Ok(None)
}
