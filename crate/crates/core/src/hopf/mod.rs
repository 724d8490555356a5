//! Finite-dimensional Hopf algebras as exact structure tensors.
//!
//! Elements are sparse coordinate vectors. A tensor `e_i (x) e_j` in `H (x) H`
//! has index `i * dim + j`, and triple tensors `(i * dim + j) * dim + k`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::CycMatrix;
use crate::scalar::Cyclotomic;

mod integral;
mod module;
mod standard;

pub use integral::{
    character_inverse, hit_left, hit_right, integral_data, left_integral, modular_character,
    radford_check, radford_with, IntegralData, RadfordReport,
};
pub use module::{double_dual_witness, dual_module, DoubleDualWitness, DualSide, HModule};
pub use standard::{drinfeld_double, function_algebra, group_algebra, taft};

/// Sparse vector: coordinate index to nonzero coefficient.
pub type SVec = BTreeMap<usize, Cyclotomic>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{k} is not coprime to {d}; zeta_{d}^{k} is not a primitive root")]
    NotPrimitive { d: u32, k: i64 },
    #[error("antipode is not invertible")]
    SingularAntipode,
    #[error("Hopf axioms fail: {0}")]
    Invalid(String),
    #[error("space of left integrals has dimension {0}, expected 1")]
    IntegralDimension(usize),
    #[error("{0} is not group-like")]
    NotGroupLike(String),
    #[error("module axioms fail: {0}")]
    Module(String),
    #[error("no intertwiner among the candidates: {0}")]
    NoIntertwiner(String),
}

pub type Result<T> = std::result::Result<T, HopfError>;

pub(crate) fn add_to(v: &mut SVec, k: usize, c: &Cyclotomic) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(k).or_default();
    *e += c;
    if e.is_zero() {
        v.remove(&k);
    }
}

pub(crate) fn basis(k: usize) -> SVec {
    SVec::from([(k, Cyclotomic::one())])
}

pub(crate) fn scaled(v: &SVec, c: &Cyclotomic) -> SVec {
    if c.is_zero() {
        return SVec::new();
    }
    v.iter().map(|(&k, x)| (k, x * c)).collect()
}

pub(crate) fn axpy(acc: &mut SVec, c: &Cyclotomic, v: &SVec) {
    for (&k, x) in v {
        add_to(acc, k, &(x * c));
    }
}

pub fn to_dense_vec(v: &SVec, n: usize) -> Vec<Cyclotomic> {
    let mut out = vec![Cyclotomic::zero(); n];
    for (&k, x) in v {
        out[k] = x.clone();
    }
    out
}

pub fn from_dense_vec(v: &[Cyclotomic]) -> SVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| (k, x.clone()))
        .collect()
}

/// Applies `f (x) g` to a two-fold tensor; `q` is the output dimension of `g`.
pub(crate) fn map2(
    t: &SVec,
    n: usize,
    q: usize,
    f: impl Fn(usize) -> SVec,
    g: impl Fn(usize) -> SVec,
) -> SVec {
    let mut out = SVec::new();
    for (&ij, c) in t {
        let (fi, gj) = (f(ij / n), g(ij % n));
        for (&a, x) in &fi {
            let xc = x * c;
            for (&b, y) in &gj {
                add_to(&mut out, a * q + b, &(&xc * y));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct FinHopfAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// `mult[i * dim + j] = e_i e_j`.
    mult: Vec<SVec>,
    unit: SVec,
    /// `comult[i] = Delta(e_i)` over `dim^2`.
    comult: Vec<SVec>,
    counit: Vec<Cyclotomic>,
    antipode: Vec<SVec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Basis indices at which the identity fails.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfReport {
    pub checks: Vec<HopfCheck>,
}

impl HopfReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&HopfCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for HopfReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{}: {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                let w: Vec<String> = w.iter().map(ToString::to_string).collect();
                write!(f, " (witness {})", w.join(","))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn check(name: &'static str, witness: Option<Vec<usize>>) -> HopfCheck {
    HopfCheck {
        name,
        passed: witness.is_none(),
        witness,
    }
}

impl FinHopfAlgebra {
    /// Assembles the tensors after shape checks only; see [`FinHopfAlgebra::validate`].
    pub fn new(
        labels: Vec<String>,
        mult: Vec<SVec>,
        unit: SVec,
        comult: Vec<SVec>,
        counit: Vec<Cyclotomic>,
        antipode: Vec<SVec>,
    ) -> Result<Self> {
        let dim = labels.len();
        let shape_ok = mult.len() == dim * dim
            && comult.len() == dim
            && counit.len() == dim
            && antipode.len() == dim
            && mult
                .iter()
                .chain(std::iter::once(&unit))
                .chain(&antipode)
                .all(|v| v.keys().all(|&k| k < dim))
            && comult.iter().all(|v| v.keys().all(|&k| k < dim * dim));
        if !shape_ok {
            return Err(HopfError::Shape(format!(
                "tensors inconsistent with dimension {dim}"
            )));
        }
        let prune = |v: Vec<SVec>| {
            v.into_iter()
                .map(|x| x.into_iter().filter(|(_, c)| !c.is_zero()).collect())
                .collect()
        };
        Ok(FinHopfAlgebra {
            dim,
            labels,
            mult: prune(mult),
            unit: unit.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            comult: prune(comult),
            counit,
            antipode: prune(antipode),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    pub fn unit(&self) -> &SVec {
        &self.unit
    }

    pub fn counit_vec(&self) -> &[Cyclotomic] {
        &self.counit
    }

    pub fn product_of(&self, i: usize, j: usize) -> &SVec {
        &self.mult[i * self.dim + j]
    }

    pub fn comult_of(&self, i: usize) -> &SVec {
        &self.comult[i]
    }

    pub fn antipode_of(&self, i: usize) -> &SVec {
        &self.antipode[i]
    }

    /// Replaces `Delta(e_i)`; used to build deliberately broken examples.
    pub fn set_comult(&mut self, i: usize, v: SVec) {
        self.comult[i] = v;
    }

    pub fn mul(&self, x: &SVec, y: &SVec) -> SVec {
        let mut out = SVec::new();
        for (&i, a) in x {
            for (&j, b) in y {
                axpy(&mut out, &(a * b), &self.mult[i * self.dim + j]);
            }
        }
        out
    }

    pub fn comul(&self, x: &SVec) -> SVec {
        let mut out = SVec::new();
        for (&i, a) in x {
            axpy(&mut out, a, &self.comult[i]);
        }
        out
    }

    pub fn counit(&self, x: &SVec) -> Cyclotomic {
        x.iter().map(|(&i, a)| a * &self.counit[i]).sum()
    }

    pub fn antipode(&self, x: &SVec) -> SVec {
        let mut out = SVec::new();
        for (&i, a) in x {
            axpy(&mut out, a, &self.antipode[i]);
        }
        out
    }

    /// Product in `H (x) H` with the componentwise multiplication.
    pub fn tensor_mul(&self, x: &SVec, y: &SVec) -> SVec {
        let n = self.dim;
        let mut out = SVec::new();
        for (&p, a) in x {
            for (&q, b) in y {
                let l = &self.mult[(p / n) * n + q / n];
                let r = &self.mult[(p % n) * n + q % n];
                let c = a * b;
                for (&u, s) in l {
                    let cs = &c * s;
                    for (&v, t) in r {
                        add_to(&mut out, u * n + v, &(&cs * t));
                    }
                }
            }
        }
        out
    }

    /// `(Delta (x) id) Delta (x)` as a triple tensor.
    pub fn comul2(&self, x: &SVec) -> SVec {
        let n = self.dim;
        map2(&self.comul(x), n, n, |i| self.comult[i].clone(), basis)
    }

    pub fn power(&self, x: &SVec, e: usize) -> SVec {
        let mut acc = self.unit.clone();
        for _ in 0..e {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn is_group_like(&self, x: &SVec) -> bool {
        let n = self.dim;
        let xx = map2(&basis(0), 1, n, |_| x.clone(), |_| x.clone());
        self.comul(x) == xx && self.counit(x).is_one()
    }

    /// Matrix of `h -> e_i h`.
    pub fn left_mult_matrix(&self, x: &SVec) -> CycMatrix {
        let n = self.dim;
        let mut m = CycMatrix::zeros(n, n);
        for c in 0..n {
            for (k, v) in self.mul(x, &basis(c)) {
                m[(k, c)] = v;
            }
        }
        m
    }

    pub fn right_mult_matrix(&self, x: &SVec) -> CycMatrix {
        let n = self.dim;
        let mut m = CycMatrix::zeros(n, n);
        for c in 0..n {
            for (k, v) in self.mul(&basis(c), x) {
                m[(k, c)] = v;
            }
        }
        m
    }

    pub fn antipode_matrix(&self) -> CycMatrix {
        let mut m = CycMatrix::zeros(self.dim, self.dim);
        for (c, col) in self.antipode.iter().enumerate() {
            for (&r, v) in col {
                m[(r, c)] = v.clone();
            }
        }
        m
    }

    /// Columns of `S^{-1}`.
    pub fn antipode_inverse(&self) -> Result<Vec<SVec>> {
        let inv = self
            .antipode_matrix()
            .inverse()
            .ok_or(HopfError::SingularAntipode)?;
        Ok((0..self.dim).map(|c| from_dense_vec(&inv.col(c))).collect())
    }

    /// Checks every axiom as an exact tensor identity.
    pub fn validate(&self) -> HopfReport {
        let n = self.dim;
        let e = |i: usize| basis(i);
        let first_pair = |f: &(dyn Fn(usize, usize) -> bool + Sync)| {
            (0..n * n)
                .into_par_iter()
                .find_first(|&p| !f(p / n, p % n))
                .map(|p| vec![p / n, p % n])
        };
        let first = |f: &(dyn Fn(usize) -> bool + Sync)| (0..n).find(|&i| !f(i)).map(|i| vec![i]);

        let assoc = (0..n * n * n)
            .into_par_iter()
            .find_first(|&t| {
                let (i, j, k) = (t / (n * n), (t / n) % n, t % n);
                let l = self.mul(&self.mult[i * n + j], &e(k));
                let r = self.mul(&e(i), &self.mult[j * n + k]);
                l != r
            })
            .map(|t| vec![t / (n * n), (t / n) % n, t % n]);
        let unit =
            first(&|i| self.mul(&self.unit, &e(i)) == e(i) && self.mul(&e(i), &self.unit) == e(i));
        let coassoc = first(&|i| {
            let d = &self.comult[i];
            let l = map2(d, n, n, |a| self.comult[a].clone(), e);
            let r = map2(d, n, n * n, e, |b| self.comult[b].clone());
            l == r
        });
        let counit = first(&|i| {
            let d = &self.comult[i];
            let l = map2(d, n, n, |a| scaled(&basis(0), &self.counit[a]), e);
            let r = map2(d, n, 1, e, |b| scaled(&basis(0), &self.counit[b]));
            l == e(i) && r == e(i)
        });
        let delta_mult = first_pair(&|i, j| {
            self.comul(&self.mult[i * n + j]) == self.tensor_mul(&self.comult[i], &self.comult[j])
        });
        let unit_tensor = map2(
            &basis(0),
            1,
            n,
            |_| self.unit.clone(),
            |_| self.unit.clone(),
        );
        let delta_unit = (self.comul(&self.unit) != unit_tensor).then(Vec::new);
        let eps_mult = first_pair(&|i, j| {
            self.counit(&self.mult[i * n + j]) == &self.counit[i] * &self.counit[j]
        });
        let eps_unit = (!self.counit(&self.unit).is_one()).then(Vec::new);
        let antipode = first(&|i| {
            let d = &self.comult[i];
            let target = scaled(&self.unit, &self.counit[i]);
            let mut l = SVec::new();
            let mut r = SVec::new();
            for (&ab, c) in d {
                let (a, b) = (ab / n, ab % n);
                axpy(&mut l, c, &self.mul(&self.antipode[a], &e(b)));
                axpy(&mut r, c, &self.mul(&e(a), &self.antipode[b]));
            }
            l == target && r == target
        });
        let invertible = self.antipode_matrix().inverse().is_none().then(Vec::new);
        HopfReport {
            checks: vec![
                check("associativity", assoc),
                check("unit", unit),
                check("coassociativity", coassoc),
                check("counit", counit),
                check("comultiplication is multiplicative", delta_mult),
                check("comultiplication is unital", delta_unit),
                check("counit is multiplicative", eps_mult),
                check("counit is unital", eps_unit),
                check("antipode", antipode),
                check("antipode invertible", invertible),
            ],
        }
    }

    pub fn validated(self) -> Result<Self> {
        let report = self.validate();
        match report.first_failure() {
            None => Ok(self),
            Some(c) => Err(HopfError::Invalid(format!(
                "{} at {:?}",
                c.name,
                c.witness.clone().unwrap_or_default()
            ))),
        }
    }

    /// The dual Hopf algebra `H*` in the dual basis `f_i(e_j) = delta_ij`.
    pub fn dual(&self) -> FinHopfAlgebra {
        let n = self.dim;
        let mut mult = vec![SVec::new(); n * n];
        for (c, d) in self.comult.iter().enumerate() {
            for (&ab, v) in d {
                add_to(&mut mult[ab], c, v);
            }
        }
        let mut comult = vec![SVec::new(); n];
        for (ab, prod) in self.mult.iter().enumerate() {
            for (&c, v) in prod {
                add_to(&mut comult[c], ab, v);
            }
        }
        let mut antipode = vec![SVec::new(); n];
        for (b, s) in self.antipode.iter().enumerate() {
            for (&a, v) in s {
                add_to(&mut antipode[a], b, v);
            }
        }
        let counit = (0..n)
            .map(|i| self.unit.get(&i).cloned().unwrap_or_default())
            .collect();
        let unit = from_dense_vec(&self.counit);
        let labels = self.labels.iter().map(|l| format!("f[{l}]")).collect();
        FinHopfAlgebra {
            dim: n,
            labels,
            mult,
            unit,
            comult,
            counit,
            antipode,
        }
    }

    /// Human-readable element, e.g. `1 + -1*gx`.
    pub fn format_element(&self, v: &SVec) -> String {
        if v.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = v
            .iter()
            .map(|(&k, c)| {
                if c.is_one() {
                    self.labels[k].clone()
                } else {
                    format!("({})*{}", c.to_poly_string(), self.labels[k])
                }
            })
            .collect();
        terms.join(" + ")
    }
}
