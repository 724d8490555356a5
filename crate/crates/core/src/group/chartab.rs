//! Exact character tables by Dixon's modular variant of the Burnside algorithm.
//!
//! Class-multiplication matrices are diagonalized simultaneously over a prime
//! field `F_p` with `p = 1 mod exp(G)`; each joint eigenvector determines one
//! character modulo `p`, which is lifted to exact cyclotomic values through
//! the eigenvalue multiplicities of every element.

use super::{ConjugacyData, FiniteGroup, GroupError, Result};
use num_rational::BigRational;

use crate::scalar::Cyclotomic;

#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group: FiniteGroup,
    pub conjugacy: ConjugacyData,
    /// One row per irreducible character, one column per conjugacy class.
    /// Row 0 is the trivial character; rows are sorted by degree.
    pub characters: Vec<Vec<Cyclotomic>>,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.conjugacy.classes.len()
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.conjugacy
            .classes
            .iter()
            .map(|c| c.representative)
            .collect()
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.conjugacy
            .classes
            .iter()
            .map(|c| c.elements.len())
            .collect()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.conjugacy.class_of[g]
    }

    pub fn degree(&self, chi: usize) -> usize {
        self.characters[chi][0]
            .to_i64()
            .expect("degrees are positive integers") as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.characters.len()).map(|i| self.degree(i)).collect()
    }

    /// Value of character `chi` on the element `g`.
    pub fn value(&self, chi: usize, g: usize) -> &Cyclotomic {
        &self.characters[chi][self.conjugacy.class_of[g]]
    }

    /// `(1/|G|) sum_g f(g) conj(h(g))` for class functions given per class.
    pub fn inner_product(&self, f: &[Cyclotomic], h: &[Cyclotomic]) -> Cyclotomic {
        let mut acc = Cyclotomic::zero();
        for (c, class) in self.conjugacy.classes.iter().enumerate() {
            acc += (&f[c] * &h[c].conj()).scale_int(class.elements.len() as i64);
        }
        acc.scale_ratio(1, self.group.order() as i64)
    }

    /// Multiplicities of the irreducibles in a character given per class.
    pub fn decompose(&self, f: &[Cyclotomic]) -> Result<Vec<usize>> {
        self.characters
            .iter()
            .map(|chi| {
                let m = self.inner_product(f, chi);
                m.to_i64()
                    .filter(|&v| v >= 0)
                    .map(|v| v as usize)
                    .ok_or_else(|| {
                        GroupError::CharacterTable(format!("not a character: multiplicity {m}"))
                    })
            })
            .collect()
    }

    /// Exact row and column orthogonality.
    pub fn verify(&self) -> Result<()> {
        let k = self.num_classes();
        let n = self.group.order() as i64;
        for i in 0..k {
            for j in i..k {
                let ip = self.inner_product(&self.characters[i], &self.characters[j]);
                let expect = if i == j { 1 } else { 0 };
                if ip != Cyclotomic::from_int(expect) {
                    return Err(GroupError::CharacterTable(format!(
                        "row orthogonality fails for characters {i} and {j}"
                    )));
                }
            }
        }
        let sizes = self.class_sizes();
        for a in 0..k {
            for b in 0..k {
                let mut acc = Cyclotomic::zero();
                for chi in &self.characters {
                    acc += &chi[a] * &chi[b].conj();
                }
                let expect = if a == b { n / sizes[a] as i64 } else { 0 };
                if acc != Cyclotomic::from_int(expect) {
                    return Err(GroupError::CharacterTable(format!(
                        "column orthogonality fails for classes {a} and {b}"
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable> {
    let conjugacy = group.conjugacy_data();
    let n = group.order() as u64;
    let e = group.exponent() as u64;
    let mut p = first_prime_above(e, 2 * n + 1);
    for _ in 0..32 {
        if let Some(rows) = dixon_mod_p(group, &conjugacy, p) {
            let mut characters = lift(group, &conjugacy, &rows, p, e);
            sort_rows(&mut characters);
            let table = CharacterTable {
                group: group.clone(),
                conjugacy,
                characters,
            };
            table.verify()?;
            return Ok(table);
        }
        p = first_prime_above(e, p + 1);
    }
    Err(GroupError::CharacterTable(
        "no splitting prime found".into(),
    ))
}

fn sort_rows(rows: &mut [Vec<Cyclotomic>]) {
    rows.sort_by_cached_key(|row| {
        let deg = row[0].to_i64().unwrap_or(i64::MAX);
        let trivial = row.iter().all(Cyclotomic::is_one);
        let text: Vec<String> = row.iter().map(Cyclotomic::to_poly_string).collect();
        (deg, !trivial, text)
    });
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `p >= lower` with `p = 1 mod m`.
fn first_prime_above(m: u64, lower: u64) -> u64 {
    let mut p = if lower <= 1 {
        m + 1
    } else {
        (lower - 1).div_ceil(m) * m + 1
    };
    while !is_prime(p) {
        p += m;
    }
    p
}

fn pow_mod(mut b: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        k >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn primitive_root(p: u64) -> u64 {
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime fields have primitive roots")
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref_mod(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(s) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, s);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + (p - f) * rows[r][j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

fn kernel_mod(mat: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let cols = mat.first().map_or(0, Vec::len);
    let mut rows = mat.to_vec();
    let pivots = rref_mod(&mut rows, p);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - rows[r][free]) % p;
        }
        basis.push(v);
    }
    basis
}

/// Characteristic polynomial coefficients, lowest degree first, via Faddeev-LeVerrier.
fn char_poly_mod(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let d = a.len();
    let mut coeffs = vec![0; d + 1];
    coeffs[d] = 1;
    let mut m = vec![vec![0u64; d]; d];
    for k in 1..=d {
        // m <- a*m + c_{d-k+1} I
        let mut next = vec![vec![0u64; d]; d];
        for i in 0..d {
            for l in 0..d {
                if a[i][l] == 0 {
                    continue;
                }
                for j in 0..d {
                    next[i][j] = (next[i][j] + a[i][l] * m[l][j]) % p;
                }
            }
            next[i][i] = (next[i][i] + coeffs[d - k + 1]) % p;
        }
        m = next;
        let mut tr = 0;
        for i in 0..d {
            for l in 0..d {
                tr = (tr + a[i][l] * m[l][i]) % p;
            }
        }
        coeffs[d - k] = (p - tr) % p * inv_mod(k as u64, p) % p;
    }
    coeffs
}

fn eval_poly(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

/// Joint eigenvectors of the class matrices, normalized at the identity class.
fn dixon_mod_p(group: &FiniteGroup, cd: &ConjugacyData, p: u64) -> Option<Vec<Vec<u64>>> {
    let k = cd.classes.len();
    let reps: Vec<usize> = cd.classes.iter().map(|c| c.representative).collect();
    // (M_i)[j][l] = #{x in C_i : x^{-1} z_l in C_j}
    let class_matrix = |i: usize| -> Vec<Vec<u64>> {
        let mut m = vec![vec![0u64; k]; k];
        for (l, &z) in reps.iter().enumerate() {
            for &x in &cd.classes[i].elements {
                let j = cd.class_of[group.mul(group.inv(x), z)];
                m[j][l] += 1;
            }
        }
        m
    };

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        })
        .collect()];
    for i in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mi = class_matrix(i);
        let mut next = Vec::new();
        for mut basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let pivots = rref_mod(&mut basis, p);
            let d = basis.len();
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| {
                    (0..k)
                        .map(|j| (0..k).fold(0, |acc, l| (acc + mi[j][l] * b[l]) % p))
                        .collect()
                })
                .collect();
            // restricted[r][c]: coordinate r of M_i b_c
            let restricted: Vec<Vec<u64>> = (0..d)
                .map(|r| (0..d).map(|c| images[c][pivots[r]]).collect())
                .collect();
            let poly = char_poly_mod(&restricted, p);
            let mut found = 0;
            for lambda in 0..p {
                if eval_poly(&poly, lambda, p) != 0 {
                    continue;
                }
                let shifted: Vec<Vec<u64>> = (0..d)
                    .map(|r| {
                        (0..d)
                            .map(|c| {
                                let v = restricted[r][c];
                                if r == c {
                                    (v + p - lambda) % p
                                } else {
                                    v
                                }
                            })
                            .collect()
                    })
                    .collect();
                let ker = kernel_mod(&shifted, p);
                found += ker.len();
                let sub: Vec<Vec<u64>> = ker
                    .iter()
                    .map(|u| {
                        (0..k)
                            .map(|j| (0..d).fold(0, |acc, c| (acc + u[c] * basis[c][j]) % p))
                            .collect()
                    })
                    .collect();
                next.push(sub);
            }
            if found != d {
                return None;
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return None;
    }

    let n = group.order() as u64;
    let sizes: Vec<u64> = cd.classes.iter().map(|c| c.elements.len() as u64).collect();
    let inverse_class: Vec<usize> = reps.iter().map(|&z| cd.class_of[group.inv(z)]).collect();
    let mut rows = Vec::new();
    for s in spaces {
        let v = &s[0];
        if v[0] == 0 {
            return None;
        }
        let inv0 = inv_mod(v[0], p);
        let w: Vec<u64> = v.iter().map(|x| x * inv0 % p).collect();
        let mut s = 0;
        for l in 0..k {
            s = (s + w[l] * w[inverse_class[l]] % p * inv_mod(sizes[l], p)) % p;
        }
        if s == 0 {
            return None;
        }
        let d2 = n % p * inv_mod(s, p) % p;
        let deg = (1..=n)
            .take_while(|d| d * d <= n)
            .find(|d| d * d % p == d2)?;
        rows.push(
            (0..k)
                .map(|l| deg * w[l] % p * inv_mod(sizes[l], p) % p)
                .collect(),
        );
    }
    Some(rows)
}

/// Recovers exact values from residues via eigenvalue multiplicities.
fn lift(
    group: &FiniteGroup,
    cd: &ConjugacyData,
    rows: &[Vec<u64>],
    p: u64,
    e: u64,
) -> Vec<Vec<Cyclotomic>> {
    let zeta_p = pow_mod(primitive_root(p), (p - 1) / e, p);
    rows.iter()
        .map(|row| {
            cd.classes
                .iter()
                .map(|class| {
                    let z = class.representative;
                    let o = group.element_order(z) as u64;
                    let zeta_o = pow_mod(zeta_p, e / o, p);
                    let powers: Vec<u64> = (0..o)
                        .map(|t| row[cd.class_of[group.pow(z, t as i64)]])
                        .collect();
                    let inv_o = inv_mod(o, p);
                    let mut terms = Vec::new();
                    for kk in 0..o {
                        let mut m = 0;
                        for t in 0..o {
                            let root = pow_mod(zeta_o, (o - (t * kk) % o) % o, p);
                            m = (m + powers[t as usize] * root) % p;
                        }
                        m = m * inv_o % p;
                        if m > 0 {
                            terms.push((kk, BigRational::from_integer((m as i64).into())));
                        }
                    }
                    Cyclotomic::from_exponents(o as u32, terms)
                        .embed(e as u32)
                        .expect("element orders divide the exponent")
                })
                .collect()
        })
        .collect()
}
