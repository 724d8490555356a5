//! Modular data of the Drinfeld double `D(G)` of a finite group.
//!
//! Simples are pairs `(a, chi)` with `a` a class representative and `chi` an
//! irreducible character of the centralizer `C(a)`. With `x = g b g^{-1}`,
//!
//! ```text
//! S_{(a,chi),(b,psi)} = 1/(|C(a)| |C(b)|) * sum_{g in G, [a, x] = 1} conj(chi(x)) conj(psi(g^{-1} a g))
//! T_{(a,chi)}         = chi(a) / chi(e)
//! ```
//!
//! This normalization gives `S_00 = 1/|G|` and a unitary `S`; the conjugation
//! on both characters makes `|G| S` the complex conjugate of the double-braiding
//! trace in the crossed-module category of `G -> G`, as `(ST)^3 = S^2` requires.

use rayon::prelude::*;
use thiserror::Error;

use crate::group::{character_table, CharacterTable, ConjugacyData, FiniteGroup, GroupError};
use crate::linalg::CycMatrix;
use crate::modular::{ModularData, ModularError};
use crate::scalar::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoubleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Modular(#[from] ModularError),
}

pub type Result<T> = std::result::Result<T, DoubleError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimpleLabel {
    /// Index of the conjugacy class.
    pub class: usize,
    /// Canonical class representative.
    pub rep: usize,
    /// Row of the centralizer's character table.
    pub chi: usize,
}

/// Simples of `D(G)` with the character tables needed to evaluate them.
#[derive(Clone, Debug)]
pub struct DoubleSimples {
    pub group: FiniteGroup,
    pub conjugacy: ConjugacyData,
    /// Character table of the centralizer of each class representative.
    pub centralizer_tables: Vec<CharacterTable>,
    pub labels: Vec<SimpleLabel>,
}

impl DoubleSimples {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// `chi(x)` for the label's centralizer character, or `None` when `x` is outside the centralizer.
    pub fn char_value(&self, label: &SimpleLabel, x: usize) -> Option<&Cyclotomic> {
        let cent = &self.conjugacy.centralizers[label.class];
        let local = cent.local(x)?;
        Some(self.centralizer_tables[label.class].value(label.chi, local))
    }

    pub fn degree(&self, label: &SimpleLabel) -> usize {
        self.centralizer_tables[label.class].degree(label.chi)
    }

    pub fn dim(&self, label: &SimpleLabel) -> usize {
        self.conjugacy.classes[label.class].elements.len() * self.degree(label)
    }

    pub fn twist(&self, label: &SimpleLabel) -> Cyclotomic {
        let v = self
            .char_value(label, label.rep)
            .expect("a lies in its centralizer");
        v.scale_ratio(1, self.degree(label) as i64)
    }

    pub fn label_name(&self, label: &SimpleLabel) -> String {
        format!("[{}] chi{}", self.group.label(label.rep), label.chi)
    }

    /// Index of the label with the given class representative and character.
    pub fn find(&self, class: usize, chi: usize) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l.class == class && l.chi == chi)
    }
}

pub fn double_simples(g: &FiniteGroup) -> Result<DoubleSimples> {
    let conjugacy = g.conjugacy_data();
    let centralizer_tables = conjugacy
        .centralizers
        .par_iter()
        .map(|c| character_table(&c.group))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut labels = Vec::new();
    for (class, table) in centralizer_tables.iter().enumerate() {
        for chi in 0..table.characters.len() {
            labels.push(SimpleLabel {
                class,
                rep: conjugacy.classes[class].representative,
                chi,
            });
        }
    }
    Ok(DoubleSimples {
        group: g.clone(),
        conjugacy,
        centralizer_tables,
        labels,
    })
}

/// Unverified `S` entry; see the module documentation.
pub fn s_entry(ds: &DoubleSimples, x: &SimpleLabel, y: &SimpleLabel) -> Cyclotomic {
    let g = &ds.group;
    let (a, b) = (x.rep, y.rep);
    let mut acc = Cyclotomic::zero();
    for h in 0..g.order() {
        let conj_b = g.conjugate(h, b);
        if g.mul(a, conj_b) != g.mul(conj_b, a) {
            continue;
        }
        let conj_a = g.conjugate(g.inv(h), a);
        let u = ds.char_value(x, conj_b).expect("commutes with a");
        let v = ds.char_value(y, conj_a).expect("commutes with b");
        acc += (u * v).conj();
    }
    let ca = ds.conjugacy.centralizers[x.class].group.order() as i64;
    let cb = ds.conjugacy.centralizers[y.class].group.order() as i64;
    acc.scale_ratio(1, ca * cb)
}

/// `S`, `T` and dimensions of `D(G)`, with every invariant verified.
pub fn double_modular_data(g: &FiniteGroup) -> Result<ModularData> {
    let ds = double_simples(g)?;
    let md = modular_data_of(&ds);
    md.verify()?;
    Ok(md)
}

pub fn modular_data_of(ds: &DoubleSimples) -> ModularData {
    let r = ds.len();
    let rows: Vec<Vec<Cyclotomic>> = (0..r)
        .into_par_iter()
        .map(|i| {
            (0..r)
                .map(|j| s_entry(ds, &ds.labels[i], &ds.labels[j]))
                .collect()
        })
        .collect();
    ModularData {
        labels: ds.labels.iter().map(|l| ds.label_name(l)).collect(),
        s: CycMatrix::from_rows(rows),
        t: ds.labels.iter().map(|l| ds.twist(l)).collect(),
        dims: ds.labels.iter().map(|l| ds.dim(l)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_counts() {
        assert_eq!(double_simples(&FiniteGroup::cyclic(2)).unwrap().len(), 4);
        assert_eq!(double_simples(&FiniteGroup::symmetric(3)).unwrap().len(), 8);
        assert_eq!(double_simples(&FiniteGroup::trivial()).unwrap().len(), 1);
    }

    #[test]
    fn z2_data() {
        let md = double_modular_data(&FiniteGroup::cyclic(2)).unwrap();
        let half = |x: i64| Cyclotomic::from_ratio(x, 2);
        let expect = CycMatrix::from_rows(
            [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]
                .iter()
                .map(|r| r.iter().map(|&x| half(x)).collect())
                .collect(),
        );
        assert_eq!(md.s, expect);
        let t: Vec<Cyclotomic> = [1, 1, 1, -1]
            .iter()
            .map(|&x| Cyclotomic::from_int(x))
            .collect();
        assert_eq!(md.t, t);
        assert!(md.is_modular().modular);
        let fr = md.verlinde_fusion().unwrap();
        assert!(fr.n.iter().flatten().flatten().all(|&c| c <= 1));
    }

    #[test]
    fn trivial_group_data() {
        let md = double_modular_data(&FiniteGroup::trivial()).unwrap();
        assert_eq!(md.s, CycMatrix::identity(1));
        assert_eq!(md.t, vec![Cyclotomic::one()]);
    }

    #[test]
    fn s3_has_cube_root_twists() {
        let md = double_modular_data(&FiniteGroup::symmetric(3)).unwrap();
        let w = Cyclotomic::zeta(3);
        assert!(md.t.contains(&w));
        assert!(md.t.contains(&w.conj()));
        let fr = md.verlinde_fusion().unwrap();
        assert!(fr.is_associative() && fr.has_unit() && fr.has_duality());
        for i in 0..md.rank() {
            for j in 0..md.rank() {
                let total: u64 = (0..md.rank())
                    .map(|k| fr.coeff(i, j, k) * md.dims[k] as u64)
                    .sum();
                assert_eq!(total, (md.dims[i] * md.dims[j]) as u64);
            }
        }
    }

    #[test]
    fn s_fourth_power_is_identity() {
        let md = double_modular_data(&FiniteGroup::quaternion()).unwrap();
        assert!(md.s.pow(4).is_identity());
        let total: usize = md.dims.iter().map(|d| d * d).sum();
        assert_eq!(total, 64);
    }
}
