//! Exact dense matrices over cyclotomic fields.
//!
//! Elimination always pivots on the first nonzero entry of the current column
//! (scanning rows top-down), so every result is reproducible bit for bit.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::scalar::{Cyclotomic, Result as ScalarResult};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

/// Outcome of [`CycMatrix::solve`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Cyclotomic>),
    /// Consistent but underdetermined; free variables are set to zero.
    Particular(Vec<Cyclotomic>),
    NoSolution,
}

impl Solution {
    pub fn into_option(self) -> Option<Vec<Cyclotomic>> {
        match self {
            Solution::Unique(v) | Solution::Particular(v) => Some(v),
            Solution::NoSolution => None,
        }
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: CycMatrix,
    pub pivots: Vec<usize>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CycMatrix {
            rows,
            cols,
            data: vec![Cyclotomic::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cyclotomic::one();
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Cyclotomic,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        CycMatrix { rows, cols, data }.unify()
    }

    pub fn from_rows(rows: Vec<Vec<Cyclotomic>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CycMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
        .unify()
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Cyclotomic::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn column(v: Vec<Cyclotomic>) -> Self {
        let n = v.len();
        CycMatrix {
            rows: n,
            cols: 1,
            data: v,
        }
        .unify()
    }

    pub fn diagonal(v: &[Cyclotomic]) -> Self {
        let mut m = Self::zeros(v.len(), v.len());
        for (i, x) in v.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m.unify()
    }

    // Embeds all entries into the common order.
    fn unify(mut self) -> Self {
        let mut order = 1u64;
        for x in &self.data {
            if !x.is_rational() {
                order = num_integer::lcm(order, x.order() as u64);
            }
        }
        let order = order as u32;
        for x in self.data.iter_mut() {
            if x.order() != order {
                *x = x.embed(order).unwrap_or_else(|_| {
                    // rational entries always embed; mixed irrational orders
                    // divide the lcm by construction
                    unreachable!("entry order does not divide lcm")
                });
            }
        }
        self
    }

    /// Common order of all entries.
    pub fn order(&self) -> u32 {
        self.data.first().map_or(1, Cyclotomic::order)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Cyclotomic] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Cyclotomic> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Cyclotomic::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = &self[(r, c)];
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        CycMatrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj(&self) -> Self {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Cyclotomic::conj).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn map(&self, f: impl Fn(&Cyclotomic) -> Cyclotomic) -> Self {
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
        .unify()
    }

    pub fn scale(&self, s: &Cyclotomic) -> Self {
        self.map(|x| x * s)
    }

    pub fn try_mul(&self, other: &CycMatrix) -> ScalarResult<CycMatrix> {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = Vec::with_capacity(self.rows * other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Cyclotomic::zero();
                for k in 0..self.cols {
                    let a = &self[(r, k)];
                    if a.is_zero() {
                        continue;
                    }
                    let b = &other[(k, c)];
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.try_add(&a.try_mul(b)?)?;
                }
                out.push(acc);
            }
        }
        Ok(CycMatrix {
            rows: self.rows,
            cols: other.cols,
            data: out,
        }
        .unify())
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(
            self.cols,
            v.len(),
            "dimension mismatch in matrix-vector product"
        );
        (0..self.rows)
            .map(|r| {
                let mut acc = Cyclotomic::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
        .unify()
    }

    pub fn sub(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CycMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
        .unify()
    }

    /// Kronecker product; row index of `A (x) B` is `i * B.rows + k`.
    pub fn kron(&self, other: &CycMatrix) -> CycMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        CycMatrix::from_fn(rows, cols, |r, c| {
            let a = &self[(r / other.rows, c / other.cols)];
            if a.is_zero() {
                return Cyclotomic::zero();
            }
            a * &other[(r % other.rows, c % other.cols)]
        })
    }

    pub fn pow(&self, e: u32) -> CycMatrix {
        assert!(self.is_square());
        let mut acc = CycMatrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn trace(&self) -> Cyclotomic {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .sum()
    }

    /// Gauss-Jordan reduction to reduced row echelon form.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(p) = (pr..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(pr, p);
            let inv = m[(pr, c)].inverse().expect("pivot is nonzero");
            for k in c..m.cols {
                let v = &m[(pr, k)] * &inv;
                m[(pr, k)] = v;
            }
            for r in 0..m.rows {
                if r == pr || m[(r, c)].is_zero() {
                    continue;
                }
                let f = m[(r, c)].clone();
                for k in c..m.cols {
                    if m[(pr, k)].is_zero() {
                        continue;
                    }
                    let t = &f * &m[(pr, k)];
                    m[(r, k)] -= &t;
                }
            }
            pivots.push(c);
            pr += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space, one column per free variable.
    pub fn kernel_basis(&self) -> Vec<Vec<Cyclotomic>> {
        let Echelon { matrix: r, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Cyclotomic::zero(); self.cols];
                v[f] = Cyclotomic::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, f)];
                }
                v
            })
            .collect()
    }

    /// Solves `self * x = rhs`.
    pub fn solve(&self, rhs: &[Cyclotomic]) -> Solution {
        assert_eq!(rhs.len(), self.rows, "right-hand side has wrong length");
        let mut aug = CycMatrix::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, self.cols)] = rhs[r].clone();
        }
        let aug = aug.unify();
        let Echelon {
            matrix: red,
            pivots,
        } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Solution::NoSolution;
        }
        let mut x = vec![Cyclotomic::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = red[(row, self.cols)].clone();
        }
        if pivots.len() == self.cols {
            Solution::Unique(x)
        } else {
            Solution::Particular(x)
        }
    }

    pub fn inverse(&self) -> Option<CycMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = CycMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = Cyclotomic::one();
        }
        let aug = aug.unify();
        let Echelon {
            matrix: red,
            pivots,
        } = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(CycMatrix::from_fn(n, n, |r, c| red[(r, n + c)].clone()))
    }

    pub fn determinant(&self) -> Cyclotomic {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Cyclotomic::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[(r, c)].is_zero()) else {
                return Cyclotomic::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.inverse().expect("pivot is nonzero");
            for r in c + 1..n {
                if m[(r, c)].is_zero() {
                    continue;
                }
                let f = &m[(r, c)] * &inv;
                for k in c..n {
                    if m[(c, k)].is_zero() {
                        continue;
                    }
                    let t = &f * &m[(c, k)];
                    m[(r, k)] -= &t;
                }
            }
        }
        det
    }

    /// Entries rendered as polynomial strings, one `Vec` per row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(Cyclotomic::to_poly_string).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for CycMatrix {
    type Output = Cyclotomic;
    fn index(&self, (r, c): (usize, usize)) -> &Cyclotomic {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for CycMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Cyclotomic {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl std::ops::Mul<&CycMatrix> for &CycMatrix {
    type Output = CycMatrix;
    fn mul(self, rhs: &CycMatrix) -> CycMatrix {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for CycMatrix {
    /// Aligned columns of exact entries.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let widths: Vec<usize> = (0..self.cols)
            .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0))
            .collect();
        for row in &cells {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// Sparse matrix stored column by column, used for large structured maps
/// such as braidings on tensor products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    /// `columns[c]` lists `(row, value)` with strictly increasing rows and no zeros.
    pub columns: Vec<Vec<(usize, Cyclotomic)>>,
}

impl SparseMatrix {
    pub fn identity(n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            columns: (0..n).map(|i| vec![(i, Cyclotomic::one())]).collect(),
        }
    }

    pub fn from_dense(m: &CycMatrix) -> Self {
        let columns = (0..m.cols())
            .map(|c| {
                (0..m.rows())
                    .filter(|&r| !m[(r, c)].is_zero())
                    .map(|r| (r, m[(r, c)].clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: m.rows(),
            cols: m.cols(),
            columns,
        }
    }

    pub fn to_dense(&self) -> CycMatrix {
        let mut m = CycMatrix::zeros(self.rows, self.cols);
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                m[(*r, c)] = v.clone();
            }
        }
        m.unify()
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply(&self, v: &[(usize, Cyclotomic)]) -> Vec<(usize, Cyclotomic)> {
        let mut acc: std::collections::BTreeMap<usize, Cyclotomic> = Default::default();
        for (c, x) in v {
            for (r, a) in &self.columns[*c] {
                let t = a * x;
                let e = acc.entry(*r).or_default();
                *e += &t;
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// `self * other`.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in sparse product"
        );
        SparseMatrix {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|col| self.apply(col)).collect(),
        }
    }

    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for (ra, va) in a {
                    for (rb, vb) in b {
                        col.push((ra * other.rows + rb, va * vb));
                    }
                }
                col.sort_by_key(|(r, _)| *r);
                columns.push(col);
            }
        }
        SparseMatrix {
            rows: self.rows * other.rows,
            cols: self.cols * other.cols,
            columns,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Cyclotomic {
        self.columns[c]
            .binary_search_by_key(&r, |(row, _)| *row)
            .map(|i| self.columns[c][i].1.clone())
            .unwrap_or_else(|_| Cyclotomic::zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .columns
                .iter()
                .enumerate()
                .all(|(c, col)| col.len() == 1 && col[0].0 == c && col[0].1.is_one())
    }

    pub fn trace(&self) -> Cyclotomic {
        self.columns
            .iter()
            .enumerate()
            .filter_map(|(c, col)| col.iter().find(|(r, _)| *r == c).map(|(_, v)| v.clone()))
            .sum()
    }
}
