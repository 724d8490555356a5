//! Sectors of equivariant Dijkgraaf-Witten theory for an extension
//! `1 -> G1 -> G2 -> J -> 1`.
//!
//! Twisted bundles over the circle with monodromy `j` are modelled by their
//! holonomies: the fiber `pi^{-1}(j)` in `G2`, with `G1` acting by
//! conjugation. The weak `J`-action on `G1` comes from conjugation by a
//! set-theoretic section `s`.

use rayon::prelude::*;
use thiserror::Error;

use crate::double::{double_simples, DoubleError};
use crate::group::{
    character_table, CharacterTable, ExactSequence, FiniteGroup, GroupError, Subgroup,
};
use crate::scalar::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EqdwError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Double(#[from] DoubleError),
    #[error("weak action invariant fails: {0}")]
    WeakAction(String),
    #[error("sector {0} does not exist")]
    NoSuchSector(usize),
    #[error("sector invariant fails: {0}")]
    Sector(String),
}

pub type Result<T> = std::result::Result<T, EqdwError>;

#[derive(Clone, Debug)]
pub struct WeakAction {
    pub seq: ExactSequence,
    /// `G2`-element of each `G1`-element.
    pub embed: Vec<usize>,
    /// `G1`-element of each `G2`-element in the image, else `None`.
    pub preimage: Vec<Option<usize>>,
    /// `rho[j][g] = s(j) g s(j)^{-1}` on `G1`.
    pub rho: Vec<Vec<usize>>,
    /// `cocycle[i * |J| + j] = s(i) s(j) s(ij)^{-1}` as a `G1`-element.
    pub cocycle: Vec<usize>,
}

impl WeakAction {
    pub fn g1(&self) -> &FiniteGroup {
        self.seq.g1()
    }

    pub fn g2(&self) -> &FiniteGroup {
        self.seq.g2()
    }

    pub fn j(&self) -> &FiniteGroup {
        self.seq.quotient()
    }

    pub fn section(&self, j: usize) -> usize {
        self.seq.section[j]
    }

    pub fn c(&self, i: usize, j: usize) -> usize {
        self.cocycle[i * self.j().order() + j]
    }

    /// `rho_i o rho_j = Ad_{c_ij} o rho_{ij}` on every element.
    pub fn check_cocycle_law(&self) -> Result<()> {
        let (g1, jg) = (self.g1(), self.j());
        for i in 0..jg.order() {
            for j in 0..jg.order() {
                let c = self.c(i, j);
                let ij = jg.mul(i, j);
                for g in 0..g1.order() {
                    if self.rho[i][self.rho[j][g]] != g1.conjugate(c, self.rho[ij][g]) {
                        return Err(EqdwError::WeakAction(format!(
                            "composition law fails for ({}, {}) at {}",
                            jg.label(i),
                            jg.label(j),
                            g1.label(g)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// True when every cocycle value is the identity.
    pub fn cocycle_is_trivial(&self) -> bool {
        self.cocycle.iter().all(|&c| c == 0)
    }
}

pub fn weak_action_from_sequence(seq: &ExactSequence) -> Result<WeakAction> {
    let g2 = seq.g2();
    let g1 = seq.g1();
    let jg = seq.quotient();
    let embed = seq.incl.images.clone();
    let mut preimage = vec![None; g2.order()];
    for (m, &x) in embed.iter().enumerate() {
        preimage[x] = Some(m);
    }
    for j in 0..jg.order() {
        if seq.proj.apply(seq.section[j]) != j {
            return Err(EqdwError::WeakAction(format!(
                "section is not a section at {}",
                jg.label(j)
            )));
        }
    }
    let rho = (0..jg.order())
        .map(|j| {
            let s = seq.section[j];
            (0..g1.order())
                .map(|g| {
                    preimage[g2.conjugate(s, embed[g])]
                        .ok_or_else(|| EqdwError::WeakAction("conjugation leaves G1".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut cocycle = Vec::with_capacity(jg.order() * jg.order());
    for i in 0..jg.order() {
        for j in 0..jg.order() {
            let (si, sj, sij) = (seq.section[i], seq.section[j], seq.section[jg.mul(i, j)]);
            let c = g2.mul(g2.mul(si, sj), g2.inv(sij));
            let c = preimage[c].ok_or_else(|| {
                EqdwError::WeakAction(format!("c({}, {}) is not in G1", jg.label(i), jg.label(j)))
            })?;
            cocycle.push(c);
        }
    }
    let wa = WeakAction {
        seq: seq.clone(),
        embed,
        preimage,
        rho,
        cocycle,
    };
    wa.check_cocycle_law()?;
    Ok(wa)
}

/// Holonomy model of twisted bundles in sector `j`.
#[derive(Clone, Debug)]
pub struct SectorGroupoid {
    pub j: usize,
    /// The fiber `pi^{-1}(j)`, increasing.
    pub objects: Vec<usize>,
    /// Orbits of `G1`-conjugation, each increasing; ordered by minimal element.
    pub orbits: Vec<Vec<usize>>,
    /// `Stab_{G1}(h)` of each orbit's minimal element.
    pub stabilizers: Vec<Subgroup>,
}

impl SectorGroupoid {
    /// Morphisms `h -> h'`: the `G1`-elements `g` with `g h g^{-1} = h'`.
    pub fn morphisms(&self, wa: &WeakAction, h: usize, h2: usize) -> Vec<usize> {
        let g2 = wa.g2();
        (0..wa.g1().order())
            .filter(|&g| g2.conjugate(wa.embed[g], h) == h2)
            .collect()
    }
}

pub fn sector_groupoid(wa: &WeakAction, j: usize) -> Result<SectorGroupoid> {
    if j >= wa.j().order() {
        return Err(EqdwError::NoSuchSector(j));
    }
    let g2 = wa.g2();
    let g1 = wa.g1();
    let objects: Vec<usize> = (0..g2.order())
        .filter(|&x| wa.seq.proj.apply(x) == j)
        .collect();
    let mut seen = vec![false; g2.order()];
    let mut orbits = Vec::new();
    for &h in &objects {
        if seen[h] {
            continue;
        }
        let mut o: Vec<usize> = wa.embed.iter().map(|&g| g2.conjugate(g, h)).collect();
        o.sort_unstable();
        o.dedup();
        for &x in &o {
            seen[x] = true;
        }
        orbits.push(o);
    }
    let total: usize = orbits.iter().map(Vec::len).sum();
    if total != g1.order() {
        return Err(EqdwError::Sector(format!(
            "orbit sizes sum to {total}, not |G1|"
        )));
    }
    let stabilizers = orbits
        .iter()
        .map(|o| {
            let h = o[0];
            let elems: Vec<usize> = (0..g1.order())
                .filter(|&g| g2.conjugate(wa.embed[g], h) == h)
                .collect();
            g1.subgroup(&elems)
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok(SectorGroupoid {
        j,
        objects,
        orbits,
        stabilizers,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SectorLabel {
    pub orbit: usize,
    /// Orbit representative in `G2`.
    pub rep: usize,
    pub chi: usize,
}

#[derive(Clone, Debug)]
pub struct SectorCategory {
    pub groupoid: SectorGroupoid,
    pub tables: Vec<CharacterTable>,
    pub labels: Vec<SectorLabel>,
    pub dims: Vec<usize>,
    /// `chi(h)/chi(e)`, defined only when the holonomy lies in its own stabilizer,
    /// which happens exactly in the neutral sector.
    pub twists: Vec<Option<Cyclotomic>>,
}

impl SectorCategory {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim_square_sum(&self) -> usize {
        self.dims.iter().map(|d| d * d).sum()
    }

    pub fn label_name(&self, wa: &WeakAction, l: &SectorLabel) -> String {
        format!("[{}] chi{}", wa.g2().label(l.rep), l.chi)
    }

    pub fn find(&self, orbit: usize, chi: usize) -> Option<usize> {
        self.labels
            .iter()
            .position(|l| l.orbit == orbit && l.chi == chi)
    }
}

pub fn sector_category(wa: &WeakAction, j: usize) -> Result<SectorCategory> {
    let groupoid = sector_groupoid(wa, j)?;
    let tables = groupoid
        .stabilizers
        .par_iter()
        .map(|s| character_table(&s.group))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let mut labels = Vec::new();
    let mut dims = Vec::new();
    let mut twists = Vec::new();
    for (orbit, table) in tables.iter().enumerate() {
        let rep = groupoid.orbits[orbit][0];
        for chi in 0..table.characters.len() {
            let deg = table.degree(chi);
            labels.push(SectorLabel { orbit, rep, chi });
            dims.push(groupoid.orbits[orbit].len() * deg);
            let twist = wa.preimage[rep]
                .and_then(|m| groupoid.stabilizers[orbit].local(m))
                .map(|local| table.value(chi, local).scale_ratio(1, deg as i64));
            twists.push(twist);
        }
    }
    let cat = SectorCategory {
        groupoid,
        tables,
        labels,
        dims,
        twists,
    };
    let g1 = wa.g1().order();
    if cat.dim_square_sum() != g1 * g1 {
        return Err(EqdwError::Sector(format!(
            "sum of squared dimensions is {}, expected {}",
            cat.dim_square_sum(),
            g1 * g1
        )));
    }
    Ok(cat)
}

/// Label map `C_k -> C_{j k j^{-1}}` induced by conjugation with `s(j)`.
pub fn sector_permutation(
    wa: &WeakAction,
    j: usize,
    source: &SectorCategory,
    target: &SectorCategory,
) -> Result<Vec<usize>> {
    let g2 = wa.g2();
    let jg = wa.j();
    let s = wa.section(j);
    if target.groupoid.j != jg.conjugate(j, source.groupoid.j) {
        return Err(EqdwError::Sector(
            "target sector does not match j k j^-1".into(),
        ));
    }
    source
        .labels
        .iter()
        .map(|l| {
            let moved = g2.conjugate(s, l.rep);
            let orbit = target
                .groupoid
                .orbits
                .iter()
                .position(|o| o.binary_search(&moved).is_ok())
                .ok_or_else(|| EqdwError::Sector("conjugated holonomy leaves the fiber".into()))?;
            let new_rep = target.groupoid.orbits[orbit][0];
            // g in G1 with g moved g^-1 = new_rep; total conjugation phi = Ad(g s)
            let g = (0..wa.g1().order())
                .map(|g| wa.embed[g])
                .find(|&g| g2.conjugate(g, moved) == new_rep)
                .expect("same orbit");
            let phi = g2.mul(g, s);
            let src_stab = &source.groupoid.stabilizers[l.orbit];
            let dst_stab = &target.groupoid.stabilizers[orbit];
            let src_table = &source.tables[l.orbit];
            let dst_table = &target.tables[orbit];
            // transported character: psi(x) = chi(phi^-1 x phi)
            let transported: Vec<Cyclotomic> = dst_table
                .representatives()
                .iter()
                .map(|&local| {
                    let x = wa.embed[dst_stab.embedding[local]];
                    let back = g2.conjugate(g2.inv(phi), x);
                    let m = wa.preimage[back].expect("G1 is normal");
                    let src_local = src_stab.local(m).expect("conjugate stabilizers");
                    src_table.value(l.chi, src_local).clone()
                })
                .collect();
            let chi = dst_table
                .characters
                .iter()
                .position(|row| *row == transported)
                .ok_or_else(|| {
                    EqdwError::Sector("transported character is not irreducible".into())
                })?;
            target
                .find(orbit, chi)
                .ok_or_else(|| EqdwError::Sector("missing target label".into()))
        })
        .collect()
}

/// Checks that sector maps compose up to the inner relabeling by `c`.
///
/// On holonomies, `s(i) s(j) h (s(i) s(j))^{-1} = c_ij s(ij) h s(ij)^{-1} c_ij^{-1}`;
/// since conjugation by `G1` fixes every label, the label maps compose exactly.
pub fn check_permutation_composition(wa: &WeakAction, sectors: &[SectorCategory]) -> Result<()> {
    let jg = wa.j();
    let g2 = wa.g2();
    let n = jg.order();
    for i in 0..n {
        for j in 0..n {
            let c = wa.embed[wa.c(i, j)];
            let ij = jg.mul(i, j);
            let (si, sj, sij) = (wa.section(i), wa.section(j), wa.section(ij));
            for h in 0..g2.order() {
                let lhs = g2.conjugate(g2.mul(si, sj), h);
                let rhs = g2.conjugate(c, g2.conjugate(sij, h));
                if lhs != rhs {
                    return Err(EqdwError::WeakAction(format!(
                        "holonomy relabeling fails for ({}, {})",
                        jg.label(i),
                        jg.label(j)
                    )));
                }
            }
            for k in 0..n {
                let k1 = jg.conjugate(j, k);
                let k2 = jg.conjugate(i, k1);
                let first = sector_permutation(wa, j, &sectors[k], &sectors[k1])?;
                let second = sector_permutation(wa, i, &sectors[k1], &sectors[k2])?;
                let direct = sector_permutation(wa, ij, &sectors[k], &sectors[k2])?;
                let composed: Vec<usize> = first.iter().map(|&x| second[x]).collect();
                if composed != direct {
                    return Err(EqdwError::WeakAction(format!(
                        "sector maps do not compose for ({}, {}) on sector {}",
                        jg.label(i),
                        jg.label(j),
                        jg.label(k)
                    )));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumerologyCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldReport {
    pub sector_square_sums: Vec<usize>,
    pub checks: Vec<NumerologyCheck>,
}

impl OrbifoldReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn sorted_strings(values: impl Iterator<Item = Cyclotomic>) -> Vec<String> {
    let mut v: Vec<String> = values.map(|c| c.to_scalar_text()).collect();
    v.sort();
    v
}

pub fn orbifold_numerology(wa: &WeakAction) -> Result<OrbifoldReport> {
    let jn = wa.j().order();
    let n1 = wa.g1().order();
    let n2 = wa.g2().order();
    let sectors = (0..jn)
        .into_par_iter()
        .map(|j| sector_category(wa, j))
        .collect::<Result<Vec<_>>>()?;
    let sums: Vec<usize> = sectors.iter().map(SectorCategory::dim_square_sum).collect();
    let total: usize = sums.iter().sum();
    let d2 = double_simples(wa.g2())?;
    let d2_total: usize = d2.labels.iter().map(|l| d2.dim(l).pow(2)).sum();
    let d1 = double_simples(wa.g1())?;
    let neutral = &sectors[0];

    let mut checks = vec![
        NumerologyCheck {
            name: "sector total".into(),
            passed: total == jn * n1 * n1,
            detail: format!("{} = {} * {}^2", total, jn, n1),
        },
        NumerologyCheck {
            name: "orbifold total".into(),
            passed: jn * total == n2 * n2 && d2_total == n2 * n2,
            detail: format!(
                "{} * {} = {} = |G2|^2 = {}",
                jn,
                total,
                jn * total,
                d2_total
            ),
        },
        NumerologyCheck {
            name: "neutral simples".into(),
            passed: neutral.len() == d1.len(),
            detail: format!("{} vs {}", neutral.len(), d1.len()),
        },
    ];
    let neutral_t = sorted_strings(neutral.twists.iter().map(|t| t.clone().unwrap_or_default()));
    let double_t = sorted_strings(d1.labels.iter().map(|l| d1.twist(l)));
    checks.push(NumerologyCheck {
        name: "neutral twists".into(),
        passed: neutral.twists.iter().all(Option::is_some) && neutral_t == double_t,
        detail: format!("{} twist values compared", neutral_t.len()),
    });
    Ok(OrbifoldReport {
        sector_square_sums: sums,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{exact_sequence_check, GroupHom, SectionChoice};

    fn s3_sequence(choice: SectionChoice) -> WeakAction {
        let s3 = FiniteGroup::symmetric(3);
        let rot = s3.closure(&[s3.find_element("(1,2,3)").unwrap()]);
        let sub = s3.subgroup(&rot).unwrap();
        let incl = GroupHom::inclusion(&sub, &s3);
        let sign: Vec<usize> = (0..6).map(|x| usize::from(!sub.contains(x))).collect();
        let proj = GroupHom::new(s3, FiniteGroup::cyclic(2), sign).unwrap();
        weak_action_from_sequence(&exact_sequence_check(&incl, &proj, choice).unwrap()).unwrap()
    }

    fn z4_sequence() -> WeakAction {
        let incl =
            GroupHom::new(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4), vec![0, 2]).unwrap();
        let proj = GroupHom::new(
            FiniteGroup::cyclic(4),
            FiniteGroup::cyclic(2),
            vec![0, 1, 0, 1],
        )
        .unwrap();
        weak_action_from_sequence(
            &exact_sequence_check(&incl, &proj, SectionChoice::Minimal).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn cocycles() {
        assert!(s3_sequence(SectionChoice::Minimal).cocycle_is_trivial());
        let z4 = z4_sequence();
        assert_eq!(z4.section(1), 1);
        // c(1,1) is the nontrivial element of G1, i.e. 2 in Z4
        assert_eq!(z4.embed[z4.c(1, 1)], 2);
        let g = FiniteGroup::cyclic(3);
        let triv = exact_sequence_check(
            &GroupHom::identity(&g),
            &GroupHom::new(g.clone(), FiniteGroup::trivial(), vec![0; 3]).unwrap(),
            SectionChoice::Minimal,
        )
        .unwrap();
        assert_eq!(weak_action_from_sequence(&triv).unwrap().cocycle, vec![0]);
    }

    #[test]
    fn groupoids() {
        let wa = s3_sequence(SectionChoice::Minimal);
        let e = sector_groupoid(&wa, 0).unwrap();
        assert_eq!(e.objects.len(), 3);
        let odd = sector_groupoid(&wa, 1).unwrap();
        assert_eq!(odd.objects.len(), 3);
        assert_eq!(odd.orbits.len(), 1);
        assert_eq!(odd.stabilizers[0].group.order(), 1);
        let z4 = sector_groupoid(&z4_sequence(), 1).unwrap();
        assert_eq!(z4.objects, vec![1, 3]);
        assert_eq!(z4.orbits.len(), 2);
        assert!(z4.stabilizers.iter().all(|s| s.group.order() == 2));
        assert_eq!(z4.morphisms(&z4_sequence(), 1, 1).len(), 2);
    }

    #[test]
    fn sectors() {
        let wa = s3_sequence(SectionChoice::Minimal);
        let neutral = sector_category(&wa, 0).unwrap();
        assert_eq!(neutral.len(), 9);
        let odd = sector_category(&wa, 1).unwrap();
        assert_eq!(odd.dims, vec![3]);
        assert_eq!(odd.twists, vec![None]);
        let z4 = sector_category(&z4_sequence(), 1).unwrap();
        assert_eq!(z4.dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn s3_sector_permutation_swaps_gradings() {
        let wa = s3_sequence(SectionChoice::Minimal);
        let neutral = sector_category(&wa, 0).unwrap();
        let map = sector_permutation(&wa, 1, &neutral, &neutral).unwrap();
        let mut sorted = map.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..9).collect::<Vec<_>>());
        for (i, &t) in map.iter().enumerate() {
            assert_eq!(neutral.dims[i], neutral.dims[t]);
            let (a, b) = (neutral.labels[i], neutral.labels[t]);
            if a.rep != 0 {
                assert_ne!(a.rep, b.rep);
            }
            // characters travel with their holonomy, so twists are preserved
            assert_eq!(neutral.twists[t], neutral.twists[i]);
        }
        let id = sector_permutation(&wa, 0, &neutral, &neutral).unwrap();
        assert_eq!(id, (0..9).collect::<Vec<_>>());
        let sectors = vec![neutral, sector_category(&wa, 1).unwrap()];
        check_permutation_composition(&wa, &sectors).unwrap();
    }

    #[test]
    fn orbifold_reports() {
        let r = orbifold_numerology(&s3_sequence(SectionChoice::Minimal)).unwrap();
        assert_eq!(r.sector_square_sums, vec![9, 9]);
        assert!(r.all_passed());
        let k4 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let incl = GroupHom::new(FiniteGroup::cyclic(2), k4.clone(), vec![0, 2]).unwrap();
        let proj = GroupHom::new(k4, FiniteGroup::cyclic(2), vec![0, 1, 0, 1]).unwrap();
        let wa = weak_action_from_sequence(
            &exact_sequence_check(&incl, &proj, SectionChoice::Minimal).unwrap(),
        )
        .unwrap();
        let r = orbifold_numerology(&wa).unwrap();
        assert_eq!(r.sector_square_sums, vec![4, 4]);
        assert!(r.all_passed());
    }

    #[test]
    fn maximal_section_changes_cocycle_not_numerology() {
        let wa = s3_sequence(SectionChoice::Maximal);
        wa.check_cocycle_law().unwrap();
        let z4 = z4_sequence();
        let sectors: Vec<_> = (0..2).map(|j| sector_category(&z4, j).unwrap()).collect();
        check_permutation_composition(&z4, &sectors).unwrap();
        assert!(orbifold_numerology(&wa).unwrap().all_passed());
    }
}
