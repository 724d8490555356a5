//! Commutative Frobenius algebras and the closed 2d TFT they define.
//!
//! An algebra is given by its multiplication, unit and counit; the coproduct
//! is derived from the dual basis of the pairing `eps(xy)`. Tensor powers use
//! the lexicographic basis with the first factor most significant.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::group::FiniteGroup;
use crate::linalg::CycMatrix;
use crate::scalar::Cyclotomic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobeniusError {
    #[error("pairing eps(xy) is degenerate")]
    DegeneratePairing,
    #[error("layer {layer}: expected {expected} input wires, found {found}")]
    WireMismatch {
        layer: usize,
        expected: usize,
        found: usize,
    },
    #[error("unknown cobordism generator '{0}'")]
    UnknownGenerator(String),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("supplied coproduct disagrees with the one derived from the pairing")]
    InconsistentCoproduct,
}

pub type Result<T> = std::result::Result<T, FrobeniusError>;

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusAlgebra {
    dim: usize,
    /// `dim x dim^2`; column `i*dim + j` is `e_i e_j`.
    mult: CycMatrix,
    unit: Vec<Cyclotomic>,
    counit: Vec<Cyclotomic>,
    comult: Option<CycMatrix>,
}

/// Outcome of one axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Basis indices exhibiting the failure.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusReport {
    pub checks: Vec<AxiomCheck>,
}

impl FrobeniusReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for FrobeniusReport {
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

impl FrobeniusAlgebra {
    pub fn new(mult: CycMatrix, unit: Vec<Cyclotomic>, counit: Vec<Cyclotomic>) -> Result<Self> {
        let dim = unit.len();
        if counit.len() != dim || mult.rows() != dim || mult.cols() != dim * dim {
            return Err(FrobeniusError::Shape(format!(
                "unit {}, counit {}, mult {}x{}",
                dim,
                counit.len(),
                mult.rows(),
                mult.cols()
            )));
        }
        Ok(FrobeniusAlgebra {
            dim,
            mult,
            unit,
            counit,
            comult: None,
        })
    }

    /// Attaches a supplied coproduct, which must agree with the derived one.
    pub fn with_comult(mut self, comult: CycMatrix) -> Result<Self> {
        if comult.rows() != self.dim * self.dim || comult.cols() != self.dim {
            return Err(FrobeniusError::Shape(
                "coproduct must be dim^2 x dim".into(),
            ));
        }
        if self.derive_coproduct()? != comult {
            return Err(FrobeniusError::InconsistentCoproduct);
        }
        self.comult = Some(comult);
        Ok(self)
    }

    /// The ground field with `eps(1) = 1`.
    pub fn ground_field() -> Self {
        FrobeniusAlgebra::new(
            CycMatrix::identity(1),
            vec![Cyclotomic::one()],
            vec![Cyclotomic::one()],
        )
        .unwrap()
    }

    /// Group algebra of an abelian group with `eps(g) = scale * delta_{g,e}`.
    pub fn group_algebra(g: &FiniteGroup, scale: Cyclotomic) -> Self {
        let n = g.order();
        let mult = CycMatrix::from_fn(n, n * n, |r, c| {
            if g.mul(c / n, c % n) == r {
                Cyclotomic::one()
            } else {
                Cyclotomic::zero()
            }
        });
        let mut unit = vec![Cyclotomic::zero(); n];
        unit[0] = Cyclotomic::one();
        let mut counit = vec![Cyclotomic::zero(); n];
        counit[0] = scale;
        FrobeniusAlgebra::new(mult, unit, counit).unwrap()
    }

    /// Center of the group algebra in the class-sum basis, `eps = delta_e / |G|`.
    ///
    /// For abelian groups this is the group algebra itself.
    pub fn group_algebra_center(g: &FiniteGroup) -> Self {
        let cd = g.conjugacy_data();
        let k = cd.classes.len();
        let mut mult = CycMatrix::zeros(k, k * k);
        for i in 0..k {
            for j in 0..k {
                let mut counts = vec![0i64; k];
                for &x in &cd.classes[i].elements {
                    for &y in &cd.classes[j].elements {
                        counts[cd.class_of[g.mul(x, y)]] += 1;
                    }
                }
                for (l, &c) in counts.iter().enumerate() {
                    // C_i C_j = sum_l (count / |C_l|) C_l
                    let size = cd.classes[l].elements.len() as i64;
                    mult[(l, i * k + j)] = Cyclotomic::from_ratio(c, size);
                }
            }
        }
        let mut unit = vec![Cyclotomic::zero(); k];
        unit[0] = Cyclotomic::one();
        let mut counit = vec![Cyclotomic::zero(); k];
        counit[0] = Cyclotomic::from_ratio(1, g.order() as i64);
        FrobeniusAlgebra::new(mult, unit, counit).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult(&self) -> &CycMatrix {
        &self.mult
    }

    pub fn unit(&self) -> &[Cyclotomic] {
        &self.unit
    }

    pub fn counit(&self) -> &[Cyclotomic] {
        &self.counit
    }

    fn product(&self, i: usize, j: usize) -> Vec<Cyclotomic> {
        self.mult.col(i * self.dim + j)
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, x: &[Cyclotomic], y: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let n = self.dim;
        let mut out = vec![Cyclotomic::zero(); n];
        for i in (0..n).filter(|&i| !x[i].is_zero()) {
            for j in (0..n).filter(|&j| !y[j].is_zero()) {
                let c = &x[i] * &y[j];
                for (r, v) in out.iter_mut().enumerate() {
                    let m = &self.mult[(r, i * n + j)];
                    if !m.is_zero() {
                        *v += &c * m;
                    }
                }
            }
        }
        out
    }

    pub fn gram_matrix(&self) -> CycMatrix {
        let n = self.dim;
        CycMatrix::from_fn(n, n, |i, j| {
            let p = self.product(i, j);
            let mut acc = Cyclotomic::zero();
            for (a, b) in p.iter().zip(&self.counit) {
                acc += a * b;
            }
            acc
        })
    }

    /// `Delta(x) = sum_i x e_i (x) e^i` with `e^i` dual to `e_i` under the pairing.
    pub fn derive_coproduct(&self) -> Result<CycMatrix> {
        let n = self.dim;
        let ginv = self
            .gram_matrix()
            .inverse()
            .ok_or(FrobeniusError::DegeneratePairing)?;
        // e^i = sum_k ginv[k][i] e_k
        let mut delta = CycMatrix::zeros(n * n, n);
        for x in 0..n {
            for i in 0..n {
                let xe = self.product(x, i);
                for (a, ca) in xe.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for k in 0..n {
                        let d = &ginv[(k, i)];
                        if !d.is_zero() {
                            delta[(a * n + k, x)] += ca * d;
                        }
                    }
                }
            }
        }
        Ok(delta)
    }

    pub fn comult(&self) -> Result<CycMatrix> {
        match &self.comult {
            Some(c) => Ok(c.clone()),
            None => self.derive_coproduct(),
        }
    }

    pub fn validate(&self) -> FrobeniusReport {
        let n = self.dim;
        let mut checks = Vec::new();
        let triple = |i: usize, j: usize, k: usize| {
            let left = self.multiply(&self.product(i, j), &basis(n, k));
            let right = self.multiply(&basis(n, i), &self.product(j, k));
            left == right
        };
        let mut witness = None;
        'outer: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !triple(i, j, k) {
                        witness = Some(vec![i, j, k]);
                        break 'outer;
                    }
                }
            }
        }
        checks.push(AxiomCheck {
            name: "associativity",
            passed: witness.is_none(),
            witness,
        });

        let witness = (0..n)
            .find(|&i| {
                self.multiply(&self.unit, &basis(n, i)) != basis(n, i)
                    || self.multiply(&basis(n, i), &self.unit) != basis(n, i)
            })
            .map(|i| vec![i]);
        checks.push(AxiomCheck {
            name: "unitality",
            passed: witness.is_none(),
            witness,
        });

        let witness = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.product(i, j) != self.product(j, i))
            .map(|(i, j)| vec![i, j]);
        checks.push(AxiomCheck {
            name: "commutativity",
            passed: witness.is_none(),
            witness,
        });

        let delta = self.derive_coproduct();
        checks.push(AxiomCheck {
            name: "non-degenerate pairing",
            passed: delta.is_ok(),
            witness: None,
        });
        if let Ok(delta) = delta {
            let id = CycMatrix::identity(n);
            let coassoc =
                delta.kron(&id).try_mul(&delta).ok() == id.kron(&delta).try_mul(&delta).ok();
            checks.push(AxiomCheck {
                name: "coassociativity",
                passed: coassoc,
                witness: None,
            });
            let counit_row = CycMatrix::from_rows(vec![self.counit.clone()]);
            let left = counit_row.kron(&id).try_mul(&delta).ok();
            let right = id.kron(&counit_row).try_mul(&delta).ok();
            let counital = left.as_ref() == Some(&id) && right.as_ref() == Some(&id);
            checks.push(AxiomCheck {
                name: "counitality",
                passed: counital,
                witness: None,
            });
            // (m (x) id)(id (x) Delta) = Delta m = (id (x) m)(Delta (x) id)
            let dm = delta.try_mul(&self.mult).ok();
            let a = self.mult.kron(&id).try_mul(&id.kron(&delta)).ok();
            let b = id.kron(&self.mult).try_mul(&delta.kron(&id)).ok();
            checks.push(AxiomCheck {
                name: "frobenius relation",
                passed: dm.is_some() && dm == a && dm == b,
                witness: None,
            });
        }
        FrobeniusReport { checks }
    }

    /// Linear map of one generator.
    pub fn generator_matrix(&self, g: Generator) -> Result<CycMatrix> {
        let n = self.dim;
        Ok(match g {
            Generator::Cap => CycMatrix::column(self.unit.clone()),
            Generator::Cup => CycMatrix::from_rows(vec![self.counit.clone()]),
            Generator::Pants => self.mult.clone(),
            Generator::Copants => self.comult()?,
            Generator::Cylinder => CycMatrix::identity(n),
            Generator::Swap => CycMatrix::from_fn(n * n, n * n, |r, c| {
                if r == (c % n) * n + c / n {
                    Cyclotomic::one()
                } else {
                    Cyclotomic::zero()
                }
            }),
        })
    }

    /// Matrix of a word, `dim^out x dim^in`.
    pub fn evaluate(&self, word: &CobordismWord) -> Result<CycMatrix> {
        let mut wires = word.input_wires();
        let mut acc = CycMatrix::identity(self.dim.pow(wires as u32));
        for (idx, layer) in word.layers.iter().enumerate() {
            let ins: usize = layer.iter().map(|g| g.inputs()).sum();
            if ins != wires {
                return Err(FrobeniusError::WireMismatch {
                    layer: idx + 1,
                    expected: wires,
                    found: ins,
                });
            }
            let mut m = CycMatrix::identity(1);
            for g in layer {
                m = m.kron(&self.generator_matrix(*g)?);
            }
            acc = m.try_mul(&acc).expect("orders bounded by inputs");
            wires = layer.iter().map(|g| g.outputs()).sum();
        }
        Ok(acc)
    }

    /// Handle operator `m o Delta`.
    pub fn handle_operator(&self) -> Result<CycMatrix> {
        Ok(self
            .mult
            .try_mul(&self.comult()?)
            .expect("orders bounded by inputs"))
    }

    /// `eps(H^g(1))`.
    pub fn closed_surface_invariant(&self, genus: usize) -> Result<Cyclotomic> {
        let h = self.handle_operator()?;
        let mut v = self.unit.clone();
        for _ in 0..genus {
            v = h.mul_vec(&v);
        }
        let mut acc = Cyclotomic::zero();
        for (a, b) in v.iter().zip(&self.counit) {
            acc += a * b;
        }
        Ok(acc)
    }
}

fn basis(n: usize, i: usize) -> Vec<Cyclotomic> {
    let mut v = vec![Cyclotomic::zero(); n];
    v[i] = Cyclotomic::one();
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Unit `eta`, a disc with outgoing boundary.
    Cap,
    /// Counit `eps`.
    Cup,
    Pants,
    Copants,
    Cylinder,
    Swap,
}

impl Generator {
    pub fn inputs(self) -> usize {
        match self {
            Generator::Cap => 0,
            Generator::Cup | Generator::Copants | Generator::Cylinder => 1,
            Generator::Pants | Generator::Swap => 2,
        }
    }

    pub fn outputs(self) -> usize {
        match self {
            Generator::Cup => 0,
            Generator::Cap | Generator::Pants | Generator::Cylinder => 1,
            Generator::Copants | Generator::Swap => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::Cap => "cap",
            Generator::Cup => "cup",
            Generator::Pants => "pants",
            Generator::Copants => "copants",
            Generator::Cylinder => "cyl",
            Generator::Swap => "swap",
        }
    }
}

impl FromStr for Generator {
    type Err = FrobeniusError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "cap" | "eta" => Generator::Cap,
            "cup" | "eps" => Generator::Cup,
            "pants" | "m" => Generator::Pants,
            "copants" | "delta" => Generator::Copants,
            "cyl" | "id" => Generator::Cylinder,
            "swap" => Generator::Swap,
            other => return Err(FrobeniusError::UnknownGenerator(other.to_string())),
        })
    }
}

/// Layers of generators, applied top to bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismWord {
    pub layers: Vec<Vec<Generator>>,
}

impl CobordismWord {
    pub fn input_wires(&self) -> usize {
        self.layers
            .first()
            .map_or(0, |l| l.iter().map(|g| g.inputs()).sum())
    }

    pub fn output_wires(&self) -> usize {
        self.layers
            .last()
            .map_or(0, |l| l.iter().map(|g| g.outputs()).sum())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &CobordismWord) -> CobordismWord {
        let mut layers = self.layers.clone();
        layers.extend(next.layers.iter().cloned());
        CobordismWord { layers }
    }

    /// Closed genus-`g` surface as a chain of handles.
    pub fn closed_surface(genus: usize) -> Self {
        let mut layers = vec![vec![Generator::Cap]];
        for _ in 0..genus {
            layers.push(vec![Generator::Copants]);
            layers.push(vec![Generator::Pants]);
        }
        layers.push(vec![Generator::Cup]);
        CobordismWord { layers }
    }

    /// Closed genus-`g` surface that first splits into `g+1` circles and then merges them.
    pub fn closed_surface_spread(genus: usize) -> Self {
        let mut layers = vec![vec![Generator::Cap]];
        for k in 0..genus {
            let mut l = vec![Generator::Copants];
            l.extend(std::iter::repeat_n(Generator::Cylinder, k));
            layers.push(l);
        }
        for k in (0..genus).rev() {
            let mut l = vec![Generator::Cylinder; k];
            l.push(Generator::Pants);
            layers.push(l);
        }
        layers.push(vec![Generator::Cup]);
        CobordismWord { layers }
    }
}

impl FromStr for CobordismWord {
    type Err = FrobeniusError;

    /// One layer per line, generators separated by commas; `#` starts a comment.
    fn from_str(text: &str) -> Result<Self> {
        let mut layers = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let layer = line
                .split(',')
                .map(str::parse)
                .collect::<Result<Vec<Generator>>>()?;
            layers.push(layer);
        }
        Ok(CobordismWord { layers })
    }
}

impl fmt::Display for CobordismWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for layer in &self.layers {
            let names: Vec<&str> = layer.iter().map(|g| g.name()).collect();
            writeln!(f, "{}", names.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kz(n: usize) -> FrobeniusAlgebra {
        FrobeniusAlgebra::group_algebra(
            &FiniteGroup::cyclic(n),
            Cyclotomic::from_ratio(1, n as i64),
        )
    }

    #[test]
    fn validation_examples() {
        assert!(kz(2).validate().is_valid());
        assert!(FrobeniusAlgebra::ground_field().validate().is_valid());
        let degenerate =
            FrobeniusAlgebra::group_algebra(&FiniteGroup::cyclic(2), Cyclotomic::zero());
        let report = degenerate.validate();
        assert!(!report.is_valid());
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "non-degenerate pairing" && !c.passed));
    }

    #[test]
    fn noncommutative_group_algebra_fails_commutativity() {
        let g = FiniteGroup::symmetric(3);
        let report = FrobeniusAlgebra::group_algebra(&g, Cyclotomic::from_ratio(1, 6)).validate();
        let comm = report
            .checks
            .iter()
            .find(|c| c.name == "commutativity")
            .unwrap();
        assert!(!comm.passed && comm.witness.is_some());
        assert!(FrobeniusAlgebra::group_algebra_center(&g)
            .validate()
            .is_valid());
    }

    #[test]
    fn coproduct_examples() {
        let k = FrobeniusAlgebra::ground_field();
        assert_eq!(k.derive_coproduct().unwrap(), CycMatrix::identity(1));
        let delta = kz(2).derive_coproduct().unwrap();
        let two = Cyclotomic::from_int(2);
        let expect: Vec<Cyclotomic> =
            vec![two.clone(), Cyclotomic::zero(), Cyclotomic::zero(), two];
        assert_eq!(delta.col(0), expect);
    }

    #[test]
    fn words_evaluate_functorially() {
        let a = kz(3);
        let cyl: CobordismWord = "cyl".parse().unwrap();
        assert_eq!(a.evaluate(&cyl).unwrap(), CycMatrix::identity(3));
        let torus: CobordismWord = "cap\ncopants\npants\ncup".parse().unwrap();
        assert_eq!(a.evaluate(&torus).unwrap()[(0, 0)], Cyclotomic::from_int(3));
        let w1: CobordismWord = "copants\nswap".parse().unwrap();
        let w2: CobordismWord = "cyl, copants\npants, cyl".parse().unwrap();
        let joint = a.evaluate(&w1.then(&w2)).unwrap();
        let split = a
            .evaluate(&w2)
            .unwrap()
            .try_mul(&a.evaluate(&w1).unwrap())
            .unwrap();
        assert_eq!(joint, split);
    }

    #[test]
    fn wire_mismatch_names_layer() {
        let w: CobordismWord = "copants\npants, cyl".parse().unwrap();
        assert_eq!(
            kz(2).evaluate(&w),
            Err(FrobeniusError::WireMismatch {
                layer: 2,
                expected: 2,
                found: 3
            })
        );
        assert!("cap, bogus".parse::<CobordismWord>().is_err());
    }

    #[test]
    fn closed_surfaces() {
        assert_eq!(
            kz(2).closed_surface_invariant(0).unwrap(),
            Cyclotomic::from_ratio(1, 2)
        );
        assert_eq!(
            kz(2).closed_surface_invariant(1).unwrap(),
            Cyclotomic::from_int(2)
        );
        assert_eq!(
            kz(2).closed_surface_invariant(2).unwrap(),
            Cyclotomic::from_int(8)
        );
        assert_eq!(
            kz(3).closed_surface_invariant(3).unwrap(),
            Cyclotomic::from_int(243)
        );
        for a in [
            kz(2),
            kz(3),
            FrobeniusAlgebra::group_algebra_center(&FiniteGroup::symmetric(3)),
        ] {
            for g in 0..=3 {
                let direct = a.closed_surface_invariant(g).unwrap();
                let w1 = a.evaluate(&CobordismWord::closed_surface(g)).unwrap();
                let w2 = a
                    .evaluate(&CobordismWord::closed_surface_spread(g))
                    .unwrap();
                assert_eq!(w1[(0, 0)], direct);
                assert_eq!(w2[(0, 0)], direct);
            }
        }
    }

    #[test]
    fn handle_operator_is_central() {
        let a = FrobeniusAlgebra::group_algebra_center(&FiniteGroup::symmetric(3));
        let h = a.handle_operator().unwrap();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let hx = h.mul_vec(&basis(3, i));
                let lhs = a.multiply(&hx, &basis(3, j));
                let rhs = h.mul_vec(&a.multiply(&basis(3, i), &basis(3, j)));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
