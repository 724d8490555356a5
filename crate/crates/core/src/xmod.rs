//! Premodular categories of crossed modules.
//!
//! Objects are `G1`-graded vector spaces with a compatible `G2`-action; the
//! braiding sends `v_m (x) w_n` to `rho(d(m)) w_n (x) v_m`. The Peiffer
//! identity is taken in the form `d(n).m = n m n^{-1}`, which is the one
//! compatible with equivariance for `d = id` and the conjugation action.

use rayon::prelude::*;
use thiserror::Error;

use crate::double::{double_simples, DoubleSimples};
use crate::group::{
    character_table, irreducible_representation, CharacterTable, FiniteGroup, GroupError, GroupHom,
    Subgroup,
};
use crate::linalg::{CycMatrix, SparseMatrix};
use crate::modular::{is_modular, ModularData, ModularityVerdict};
use crate::scalar::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum XModError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Double(#[from] crate::double::DoubleError),
    #[error("invalid crossed module: {0}")]
    Invalid(String),
    #[error("invalid object: {0}")]
    Object(String),
    #[error(
        "modularization by restriction needs an injective boundary map; {0} lies in its kernel"
    )]
    NotInjective(String),
    #[error("modularization check failed: {0}")]
    Modularization(String),
}

pub type Result<T> = std::result::Result<T, XModError>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedModule {
    pub g1: FiniteGroup,
    pub g2: FiniteGroup,
    /// `action[g * |G1| + m] = g.m`.
    pub action: Vec<usize>,
    pub boundary: GroupHom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Offending elements, as labels.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XModReport {
    pub checks: Vec<XModCheck>,
}

impl XModReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl CrossedModule {
    pub fn new(
        g1: FiniteGroup,
        g2: FiniteGroup,
        action: Vec<usize>,
        boundary: GroupHom,
    ) -> Result<Self> {
        if action.len() != g1.order() * g2.order() {
            return Err(XModError::Invalid(format!(
                "action table needs {} entries, found {}",
                g1.order() * g2.order(),
                action.len()
            )));
        }
        if action.iter().any(|&m| m >= g1.order()) {
            return Err(XModError::Invalid("action table entry out of range".into()));
        }
        if boundary.source != g1 || boundary.target != g2 {
            return Err(XModError::Invalid(
                "boundary map has the wrong source or target".into(),
            ));
        }
        Ok(CrossedModule {
            g1,
            g2,
            action,
            boundary,
        })
    }

    /// `G2` acting on a normal subgroup `G1` by conjugation, `d` the inclusion.
    pub fn conjugation(incl: GroupHom) -> Result<Self> {
        let (g1, g2) = (&incl.source, &incl.target);
        if !incl.is_injective() {
            return Err(XModError::Invalid(
                "conjugation action needs an injective map".into(),
            ));
        }
        let mut preimage = vec![usize::MAX; g2.order()];
        for m in 0..g1.order() {
            preimage[incl.apply(m)] = m;
        }
        let mut action = Vec::with_capacity(g1.order() * g2.order());
        for g in 0..g2.order() {
            for m in 0..g1.order() {
                let c = preimage[g2.conjugate(g, incl.apply(m))];
                if c == usize::MAX {
                    return Err(XModError::Invalid(format!(
                        "image is not normal: {} conjugated by {}",
                        g1.label(m),
                        g2.label(g)
                    )));
                }
                action.push(c);
            }
        }
        CrossedModule::new(g1.clone(), g2.clone(), action, incl.clone())
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        CrossedModule::conjugation(GroupHom::identity(g)).expect("identity is a crossed module")
    }

    pub fn trivial_action(boundary: GroupHom) -> Result<Self> {
        let n1 = boundary.source.order();
        let action = (0..boundary.target.order() * n1).map(|i| i % n1).collect();
        CrossedModule::new(
            boundary.source.clone(),
            boundary.target.clone(),
            action,
            boundary,
        )
    }

    pub fn act(&self, g: usize, m: usize) -> usize {
        self.action[g * self.g1.order() + m]
    }

    pub fn boundary(&self, m: usize) -> usize {
        self.boundary.apply(m)
    }

    pub fn validate(&self) -> XModReport {
        let (g1, g2) = (&self.g1, &self.g2);
        let n1 = g1.order();
        let n2 = g2.order();
        let mut checks = Vec::new();
        let pairs2 = |f: &dyn Fn(usize, usize) -> bool| -> Option<(usize, usize)> {
            (0..n2)
                .flat_map(|g| (0..n1).map(move |m| (g, m)))
                .find(|&(g, m)| !f(g, m))
        };

        let w = (0..n1)
            .find(|&m| self.act(0, m) != m)
            .map(|m| g1.label(m).to_string());
        checks.push(XModCheck {
            name: "identity acts trivially",
            passed: w.is_none(),
            witness: w,
        });

        let w = (0..n2)
            .flat_map(|g| (0..n2).map(move |h| (g, h)))
            .find_map(|(g, h)| {
                (0..n1)
                    .find(|&m| self.act(g2.mul(g, h), m) != self.act(g, self.act(h, m)))
                    .map(|m| format!("g={}, h={}, m={}", g2.label(g), g2.label(h), g1.label(m)))
            });
        checks.push(XModCheck {
            name: "action is a left action",
            passed: w.is_none(),
            witness: w,
        });

        let w = (0..n2).find_map(|g| {
            (0..n1)
                .flat_map(|m| (0..n1).map(move |n| (m, n)))
                .find(|&(m, n)| self.act(g, g1.mul(m, n)) != g1.mul(self.act(g, m), self.act(g, n)))
                .map(|(m, n)| format!("g={}, m={}, n={}", g2.label(g), g1.label(m), g1.label(n)))
        });
        checks.push(XModCheck {
            name: "action by automorphisms",
            passed: w.is_none(),
            witness: w,
        });

        let w = pairs2(&|g, m| self.boundary(self.act(g, m)) == g2.conjugate(g, self.boundary(m)))
            .map(|(g, m)| format!("g={}, m={}", g2.label(g), g1.label(m)));
        checks.push(XModCheck {
            name: "equivariance",
            passed: w.is_none(),
            witness: w,
        });

        let w = (0..n1)
            .flat_map(|n| (0..n1).map(move |m| (n, m)))
            .find(|&(n, m)| self.act(self.boundary(n), m) != g1.conjugate(n, m))
            .map(|(n, m)| format!("n={}, m={}", g1.label(n), g1.label(m)));
        checks.push(XModCheck {
            name: "peiffer identity",
            passed: w.is_none(),
            witness: w,
        });

        XModReport { checks }
    }

    fn require_valid(&self) -> Result<()> {
        let report = self.validate();
        match report.checks.iter().find(|c| !c.passed) {
            None => Ok(()),
            Some(c) => Err(XModError::Invalid(format!(
                "{} fails ({})",
                c.name,
                c.witness.clone().unwrap_or_default()
            ))),
        }
    }

    /// Sorted orbit of `m` under `G2`.
    pub fn orbit(&self, m: usize) -> Vec<usize> {
        let mut o: Vec<usize> = (0..self.g2.order()).map(|g| self.act(g, m)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    pub fn stabilizer(&self, m: usize) -> Subgroup {
        let elems: Vec<usize> = (0..self.g2.order())
            .filter(|&g| self.act(g, m) == m)
            .collect();
        self.g2.subgroup(&elems).expect("stabilizers are subgroups")
    }
}

/// A graded `G2`-module: one degree per basis vector, one matrix per element of `G2`.
#[derive(Clone, Debug, PartialEq)]
pub struct XModObject {
    pub degrees: Vec<usize>,
    pub action: Vec<SparseMatrix>,
}

impl XModObject {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// The tensor unit: a line in degree `e` with trivial action.
    pub fn unit(xm: &CrossedModule) -> Self {
        XModObject {
            degrees: vec![0],
            action: vec![SparseMatrix::identity(1); xm.g2.order()],
        }
    }

    /// `X (x) Y`, basis index `x * dim Y + y`, degree `deg x * deg y`.
    pub fn tensor(&self, other: &XModObject, xm: &CrossedModule) -> XModObject {
        let mut degrees = Vec::with_capacity(self.dim() * other.dim());
        for &a in &self.degrees {
            for &b in &other.degrees {
                degrees.push(xm.g1.mul(a, b));
            }
        }
        XModObject {
            degrees,
            action: self
                .action
                .iter()
                .zip(&other.action)
                .map(|(a, b)| a.kron(b))
                .collect(),
        }
    }

    /// Checks `g(V_m) in V_{g.m}` and that the action is a representation.
    pub fn check(&self, xm: &CrossedModule) -> Result<()> {
        let g2 = &xm.g2;
        if self.action.len() != g2.order() {
            return Err(XModError::Object(
                "one matrix per element of G2 is required".into(),
            ));
        }
        for (g, mat) in self.action.iter().enumerate() {
            for (c, col) in mat.columns.iter().enumerate() {
                let want = xm.act(g, self.degrees[c]);
                if let Some((r, _)) = col.iter().find(|(r, _)| self.degrees[*r] != want) {
                    return Err(XModError::Object(format!(
                        "{} maps basis vector {c} into degree {} instead of {}",
                        g2.label(g),
                        xm.g1.label(self.degrees[*r]),
                        xm.g1.label(want)
                    )));
                }
            }
        }
        for &g in g2.generators() {
            for h in 0..g2.order() {
                if self.action[g2.mul(g, h)] != self.action[g].compose(&self.action[h]) {
                    return Err(XModError::Object(format!(
                        "action is not multiplicative at {}",
                        g2.label(g)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `c_{X,Y}: X (x) Y -> Y (x) X`.
pub fn braiding_matrix(xm: &CrossedModule, x: &XModObject, y: &XModObject) -> SparseMatrix {
    let (dx, dy) = (x.dim(), y.dim());
    let mut columns = Vec::with_capacity(dx * dy);
    for i in 0..dx {
        let rho = &y.action[xm.boundary(x.degrees[i])];
        for j in 0..dy {
            let col = rho.columns[j]
                .iter()
                .map(|(k, v)| (k * dx + i, v.clone()))
                .collect::<Vec<_>>();
            let mut col = col;
            col.sort_by_key(|(r, _)| *r);
            columns.push(col);
        }
    }
    SparseMatrix {
        rows: dx * dy,
        cols: dx * dy,
        columns,
    }
}

/// `c_{Y,X} o c_{X,Y}` on `X (x) Y`.
pub fn double_braiding(xm: &CrossedModule, x: &XModObject, y: &XModObject) -> SparseMatrix {
    braiding_matrix(xm, y, x).compose(&braiding_matrix(xm, x, y))
}

/// Trace of the double braiding without building it.
pub fn double_braiding_trace(xm: &CrossedModule, x: &XModObject, y: &XModObject) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for (i, &m) in x.degrees.iter().enumerate() {
        let ry = &y.action[xm.boundary(m)];
        for (j, &n) in y.degrees.iter().enumerate() {
            let a = ry.get(j, j);
            if a.is_zero() {
                continue;
            }
            let b = x.action[xm.boundary(n)].get(i, i);
            if !b.is_zero() {
                acc += &a * &b;
            }
        }
    }
    acc
}

#[derive(Clone, Debug)]
pub struct XModSimple {
    /// Minimal-index representative of the `G2`-orbit in `G1`.
    pub orbit_rep: usize,
    /// Index into [`XModSimples::orbits`].
    pub orbit: usize,
    /// Row of the stabilizer's character table.
    pub chi: usize,
    pub object: XModObject,
}

#[derive(Clone, Debug)]
pub struct XModSimples {
    pub orbits: Vec<Vec<usize>>,
    pub stabilizers: Vec<Subgroup>,
    pub stabilizer_tables: Vec<CharacterTable>,
    pub simples: Vec<XModSimple>,
}

impl XModSimples {
    pub fn len(&self) -> usize {
        self.simples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simples.is_empty()
    }

    pub fn degree(&self, s: &XModSimple) -> usize {
        self.stabilizer_tables[s.orbit].degree(s.chi)
    }

    pub fn label_name(&self, xm: &CrossedModule, s: &XModSimple) -> String {
        format!("[{}] chi{}", xm.g1.label(s.orbit_rep), s.chi)
    }

    /// `chi(d(m)) / chi(e)`.
    pub fn twist(&self, xm: &CrossedModule, s: &XModSimple) -> Cyclotomic {
        let stab = &self.stabilizers[s.orbit];
        let local = stab
            .local(xm.boundary(s.orbit_rep))
            .expect("d(m) stabilizes m by the Peiffer identity");
        let table = &self.stabilizer_tables[s.orbit];
        table
            .value(s.chi, local)
            .scale_ratio(1, table.degree(s.chi) as i64)
    }
}

/// Induces an irreducible stabilizer representation to a graded `G2`-module.
fn induced_object(
    xm: &CrossedModule,
    m: usize,
    stab: &Subgroup,
    rep: &crate::group::Representation,
) -> XModObject {
    let g2 = &xm.g2;
    let n2 = g2.order();
    let d = rep.dim;
    let mut covered = vec![false; n2];
    let mut reps = Vec::new();
    for t in 0..n2 {
        if !covered[t] {
            reps.push(t);
            for &h in &stab.embedding {
                covered[g2.mul(t, h)] = true;
            }
        }
    }
    let mut coset_of = vec![0; n2];
    for (i, &t) in reps.iter().enumerate() {
        for &h in &stab.embedding {
            coset_of[g2.mul(t, h)] = i;
        }
    }
    let degrees: Vec<usize> = reps
        .iter()
        .flat_map(|&r| std::iter::repeat_n(xm.act(r, m), d))
        .collect();
    let action = (0..n2)
        .map(|g| {
            let mut columns = Vec::with_capacity(reps.len() * d);
            for &r in &reps {
                let gr = g2.mul(g, r);
                let i2 = coset_of[gr];
                let h = g2.mul(g2.inv(reps[i2]), gr);
                let mat = rep.matrix(stab.local(h).expect("coset decomposition"));
                for k in 0..d {
                    let col: Vec<(usize, Cyclotomic)> = (0..d)
                        .filter(|&l| !mat[(l, k)].is_zero())
                        .map(|l| (i2 * d + l, mat[(l, k)].clone()))
                        .collect();
                    columns.push(col);
                }
            }
            SparseMatrix {
                rows: reps.len() * d,
                cols: reps.len() * d,
                columns,
            }
        })
        .collect();
    XModObject { degrees, action }
}

pub fn xmod_simples(xm: &CrossedModule) -> Result<XModSimples> {
    xm.require_valid()?;
    let n1 = xm.g1.order();
    let mut seen = vec![false; n1];
    let mut orbits = Vec::new();
    for m in 0..n1 {
        if !seen[m] {
            let o = xm.orbit(m);
            for &x in &o {
                seen[x] = true;
            }
            orbits.push(o);
        }
    }
    let stabilizers: Vec<Subgroup> = orbits.iter().map(|o| xm.stabilizer(o[0])).collect();
    let per_orbit = orbits
        .par_iter()
        .zip(&stabilizers)
        .enumerate()
        .map(
            |(idx, (o, stab))| -> Result<(CharacterTable, Vec<XModSimple>)> {
                let table = character_table(&stab.group)?;
                let mut simples = Vec::new();
                for chi in 0..table.characters.len() {
                    let rep = irreducible_representation(&table, chi)?;
                    simples.push(XModSimple {
                        orbit_rep: o[0],
                        orbit: idx,
                        chi,
                        object: induced_object(xm, o[0], stab, &rep),
                    });
                }
                Ok((table, simples))
            },
        )
        .collect::<Result<Vec<_>>>()?;
    let mut stabilizer_tables = Vec::new();
    let mut simples = Vec::new();
    for (t, s) in per_orbit {
        stabilizer_tables.push(t);
        simples.extend(s);
    }
    Ok(XModSimples {
        orbits,
        stabilizers,
        stabilizer_tables,
        simples,
    })
}

/// `S~` as traces of double braidings, `T~`, and dimensions; not checked for non-degeneracy.
pub fn premodular_data(xm: &CrossedModule, simples: &XModSimples) -> ModularData {
    let r = simples.len();
    let rows: Vec<Vec<Cyclotomic>> = (0..r)
        .into_par_iter()
        .map(|i| {
            (0..r)
                .map(|j| {
                    double_braiding_trace(
                        xm,
                        &simples.simples[i].object,
                        &simples.simples[j].object,
                    )
                })
                .collect()
        })
        .collect();
    ModularData {
        labels: simples
            .simples
            .iter()
            .map(|s| simples.label_name(xm, s))
            .collect(),
        s: CycMatrix::from_rows(rows),
        t: simples
            .simples
            .iter()
            .map(|s| simples.twist(xm, s))
            .collect(),
        dims: simples.simples.iter().map(|s| s.object.dim()).collect(),
    }
}

pub fn xmod_is_modular(data: &ModularData) -> ModularityVerdict {
    is_modular(&data.s)
}

/// Indices of transparent simples, checked both through `S~` and through the double braiding.
pub fn mueger_center(
    xm: &CrossedModule,
    simples: &XModSimples,
    data: &ModularData,
) -> Result<Vec<usize>> {
    let r = simples.len();
    let mut center = Vec::new();
    for i in 0..r {
        let by_s = (0..r)
            .all(|j| data.s[(i, j)] == Cyclotomic::from_int((data.dims[i] * data.dims[j]) as i64));
        let by_braiding = (0..r).all(|j| {
            double_braiding(xm, &simples.simples[i].object, &simples.simples[j].object)
                .is_identity()
        });
        if by_s != by_braiding {
            return Err(XModError::Modularization(format!(
                "transparency tests disagree on simple {}",
                data.labels[i]
            )));
        }
        if by_s {
            center.push(i);
        }
    }
    Ok(center)
}

/// A copy of a `D(G1)`-simple inside the restriction of a simple of the category.
#[derive(Clone, Debug)]
pub struct RestrictionSummand {
    /// Index into the `D(G1)` simples.
    pub target: usize,
    pub multiplicity: usize,
    /// Basis of intertwiners from the `D(G1)`-simple into the restricted object.
    pub embeddings: Vec<CycMatrix>,
}

#[derive(Clone, Debug)]
pub struct ModularizationData {
    pub double: DoubleSimples,
    /// Realized `D(G1)`-simples as objects of `C(G1, G1, id)`.
    pub double_objects: Vec<XModObject>,
    /// Decomposition of each simple of the category.
    pub decompositions: Vec<Vec<RestrictionSummand>>,
    pub braided: bool,
    pub dominant: bool,
}

/// Restricts the `G2`-action on an object to `G1` through `d`.
fn restrict(xm: &CrossedModule, x: &XModObject) -> XModObject {
    XModObject {
        degrees: x.degrees.clone(),
        action: (0..xm.g1.order())
            .map(|k| x.action[xm.boundary(k)].clone())
            .collect(),
    }
}

/// Grading-preserving intertwiners `Z -> X` for `G1`-modules over `C(G1, G1, id)`.
fn intertwiners(g1: &FiniteGroup, z: &XModObject, x: &XModObject) -> Vec<CycMatrix> {
    let (dz, dx) = (z.dim(), x.dim());
    // unknown E[r][c] at index r * dz + c, only where degrees agree
    let vars: Vec<(usize, usize)> = (0..dx)
        .flat_map(|r| (0..dz).map(move |c| (r, c)))
        .filter(|&(r, c)| x.degrees[r] == z.degrees[c])
        .collect();
    if vars.is_empty() {
        return Vec::new();
    }
    let var_of = |r: usize, c: usize| vars.iter().position(|&v| v == (r, c));
    let mut eqs: Vec<Vec<Cyclotomic>> = Vec::new();
    for &k in g1.generators() {
        let rz = z.action[k].to_dense();
        let rx = x.action[k].to_dense();
        // (E rz - rx E)[r][c] = 0
        for r in 0..dx {
            for c in 0..dz {
                let mut row = vec![Cyclotomic::zero(); vars.len()];
                for l in 0..dz {
                    if let Some(v) = var_of(r, l) {
                        row[v] += &rz[(l, c)];
                    }
                }
                for l in 0..dx {
                    if let Some(v) = var_of(l, c) {
                        row[v] -= &rx[(r, l)];
                    }
                }
                if row.iter().any(|e| !e.is_zero()) {
                    eqs.push(row);
                }
            }
        }
    }
    let kernel = if eqs.is_empty() {
        (0..vars.len())
            .map(|i| {
                let mut v = vec![Cyclotomic::zero(); vars.len()];
                v[i] = Cyclotomic::one();
                v
            })
            .collect()
    } else {
        CycMatrix::from_rows(eqs).kernel_basis()
    };
    kernel
        .into_iter()
        .map(|sol| {
            let mut e = CycMatrix::zeros(dx, dz);
            for (v, &(r, c)) in vars.iter().enumerate() {
                e[(r, c)] = sol[v].clone();
            }
            e
        })
        .collect()
}

/// Restriction to `G1` for injective `d`, decomposed into `D(G1)`-simples and checked to be braided and dominant.
pub fn modularization_restriction(
    xm: &CrossedModule,
    simples: &XModSimples,
) -> Result<ModularizationData> {
    if let Some(&k) = xm.boundary.kernel().get(1) {
        return Err(XModError::NotInjective(xm.g1.label(k).to_string()));
    }
    let g1 = &xm.g1;
    let inner = CrossedModule::identity(g1);
    let inner_simples = xmod_simples(&inner)?;
    let double = double_simples(g1)?;
    let double_objects: Vec<XModObject> = inner_simples
        .simples
        .iter()
        .map(|s| s.object.clone())
        .collect();

    let restricted: Vec<XModObject> = simples
        .simples
        .iter()
        .map(|s| restrict(xm, &s.object))
        .collect();
    let decompositions: Vec<Vec<RestrictionSummand>> = restricted
        .par_iter()
        .map(|x| {
            double_objects
                .iter()
                .enumerate()
                .filter_map(|(t, z)| {
                    let emb = intertwiners(g1, z, x);
                    (!emb.is_empty()).then_some(RestrictionSummand {
                        target: t,
                        multiplicity: emb.len(),
                        embeddings: emb,
                    })
                })
                .collect()
        })
        .collect();

    for (x, parts) in restricted.iter().zip(&decompositions) {
        let total: usize = parts
            .iter()
            .map(|p| p.multiplicity * double_objects[p.target].dim())
            .sum();
        if total != x.dim() {
            return Err(XModError::Modularization(format!(
                "restriction of dimension {} decomposes into dimension {total}",
                x.dim()
            )));
        }
    }

    let mut dominant = vec![false; double_objects.len()];
    for parts in &decompositions {
        for p in parts {
            dominant[p.target] = true;
        }
    }

    // c_{X,Y} (E_Z (x) E_W) = (E_W (x) E_Z) c_{Z,W}
    let r = restricted.len();
    let braided = (0..r).into_par_iter().all(|i| {
        (0..r).all(|j| {
            let cxy = braiding_matrix(xm, &simples.simples[i].object, &simples.simples[j].object)
                .to_dense();
            decompositions[i].iter().all(|pz| {
                decompositions[j].iter().all(|pw| {
                    let z = &double_objects[pz.target];
                    let w = &double_objects[pw.target];
                    let czw = braiding_matrix(&inner, z, w).to_dense();
                    let (ez, ew) = (&pz.embeddings[0], &pw.embeddings[0]);
                    let lhs = &cxy * &ez.kron(ew);
                    let rhs = &ew.kron(ez) * &czw;
                    lhs == rhs
                })
            })
        })
    });

    Ok(ModularizationData {
        double,
        double_objects,
        decompositions,
        braided,
        dominant: dominant.iter().all(|&d| d),
    })
}
