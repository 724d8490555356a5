//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! An element of `Q(zeta_n)` is stored as a polynomial in `z = zeta_n` of degree
//! below `phi(n)`, reduced modulo the `n`-th cyclotomic polynomial. The reduced
//! form is canonical, so two elements of the same order are equal exactly when
//! their coefficient vectors agree. Elements of different orders are combined by
//! embedding both into `Q(zeta_lcm)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Default ceiling on the order `n` of any field `Q(zeta_n)` produced by merging.
pub const DEFAULT_MAX_ORDER: u32 = 2520;

/// Environment variable overriding [`DEFAULT_MAX_ORDER`].
pub const MAX_ORDER_ENV: &str = "TFTALG_MAX_ORDER";

static MAX_ORDER: AtomicU32 = AtomicU32::new(0);

/// Current ceiling on cyclotomic orders.
pub fn max_order() -> u32 {
    let cur = MAX_ORDER.load(Ordering::Relaxed);
    if cur != 0 {
        return cur;
    }
    let from_env = std::env::var(MAX_ORDER_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u32>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_MAX_ORDER);
    MAX_ORDER.store(from_env, Ordering::Relaxed);
    from_env
}

/// Overrides the cyclotomic order ceiling for the whole process.
pub fn set_max_order(n: u32) {
    assert!(n > 0, "order ceiling must be positive");
    MAX_ORDER.store(n, Ordering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order {requested} exceeds the configured ceiling {ceiling}")]
    OrderOverflow { requested: u64, ceiling: u32 },
    #[error("invalid cyclotomic order {0}")]
    InvalidOrder(u64),
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to})")]
    BadEmbedding { from: u32, to: u32 },
    #[error("malformed scalar {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

pub type Result<T> = std::result::Result<T, ScalarError>;

struct CycloPoly {
    /// Coefficients of `Phi_n`, low degree first; monic.
    coeffs: Vec<BigInt>,
}

fn poly_cache() -> &'static Mutex<HashMap<u32, Arc<CycloPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    cyclo(n).coeffs.clone()
}

fn cyclo(n: u32) -> Arc<CycloPoly> {
    assert!(n > 0);
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // Phi_n = (z^n - 1) / prod_{d | n, d < n} Phi_d
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclo(d);
            num = exact_int_div(&num, &div.coeffs);
        }
    }
    let poly = Arc::new(CycloPoly { coeffs: num });
    poly_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&poly));
    poly
}

// Exact division of integer polynomials by a monic divisor.
fn exact_int_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn checked_lcm(a: u32, b: u32) -> Result<u32> {
    let l = (a as u64).lcm(&(b as u64));
    let ceiling = max_order();
    if l > ceiling as u64 {
        return Err(ScalarError::OrderOverflow {
            requested: l,
            ceiling,
        });
    }
    Ok(l as u32)
}

/// Reduces an arbitrary-length polynomial in `z` modulo `Phi_n`.
fn reduce(mut poly: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let phi = cyclo(n);
    let deg = phi.coeffs.len() - 1;
    if poly.len() > deg {
        for i in (deg..poly.len()).rev() {
            if poly[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut poly[i], BigRational::zero());
            let base = i - deg;
            for (j, pj) in phi.coeffs[..deg].iter().enumerate() {
                if !pj.is_zero() {
                    poly[base + j] -= &c * BigRational::from_integer(pj.clone());
                }
            }
        }
        poly.truncate(deg);
    } else {
        poly.resize(deg, BigRational::zero());
    }
    poly
}

/// An exact element of the cyclotomic field `Q(zeta_n)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

/// The three field operations exposed by [`cyc_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Div,
}

/// Combines two scalars, merging their orders through the least common multiple.
pub fn cyc_arith(a: &Cyclotomic, b: &Cyclotomic, op: ArithOp) -> Result<Cyclotomic> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::Div => a.try_div(b),
    }
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![q],
        }
    }

    /// `zeta_n^k` as an element of `Q(zeta_n)`.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n > 0, "root of unity of order 0");
        let e = k.rem_euclid(n as i64) as u64;
        Self::from_exponents(n, [(e, BigRational::one())])
    }

    pub fn zeta(n: u32) -> Self {
        Self::root_of_unity(n, 1)
    }

    /// Builds `sum c * z^e` in `Q(zeta_n)`; exponents are taken modulo `n`.
    pub fn from_exponents<I>(n: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, BigRational)>,
    {
        let mut folded = vec![BigRational::zero(); n as usize];
        for (e, c) in terms {
            folded[(e % n as u64) as usize] += c;
        }
        Cyclotomic {
            order: n,
            coeffs: reduce(folded, n),
        }
    }

    /// Builds an element from polynomial coefficients (low degree first) of any length.
    pub fn from_poly(order: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if order == 0 {
            return Err(ScalarError::InvalidOrder(0));
        }
        if order > max_order() {
            return Err(ScalarError::OrderOverflow {
                requested: order as u64,
                ceiling: max_order(),
            });
        }
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u64, c));
        Ok(Self::from_exponents(order, terms))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Reduced coefficients, of length `phi(order)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// Embeds into `Q(zeta_m)`; requires `order | m`.
    pub fn embed(&self, m: u32) -> Result<Cyclotomic> {
        if m == self.order {
            return Ok(self.clone());
        }
        if m > 0 && self.is_rational() {
            return Ok(Cyclotomic::from_exponents(m, [(0, self.coeffs[0].clone())]));
        }
        if m == 0 || !m.is_multiple_of(self.order) {
            return Err(ScalarError::BadEmbedding {
                from: self.order,
                to: m,
            });
        }
        let step = (m / self.order) as u64;
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u64 * step, c.clone()));
        Ok(Cyclotomic::from_exponents(m, terms))
    }

    /// Smallest order `d | n` such that the element lies in `Q(zeta_d)`.
    pub fn minimal_order(&self) -> u32 {
        if self.is_rational() {
            return 1;
        }
        let n = self.order;
        (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .find(|&d| self.restrict(d).is_some())
            .unwrap_or(n)
    }

    /// Re-expresses the element in `Q(zeta_d)` if it lies there.
    pub fn restrict(&self, d: u32) -> Option<Cyclotomic> {
        if d == self.order {
            return Some(self.clone());
        }
        if d == 0 || !self.order.is_multiple_of(d) {
            return None;
        }
        // The element lies in Q(zeta_d) iff it is fixed by every Galois map
        // z -> z^k with k = 1 mod d. Find it by solving in the power basis of
        // zeta_d embedded into Q(zeta_n).
        let n = self.order;
        let step = (n / d) as u64;
        let phi_d = euler_phi(d) as usize;
        let basis: Vec<Cyclotomic> = (0..phi_d)
            .map(|i| Cyclotomic::from_exponents(n, [(i as u64 * step, BigRational::one())]))
            .collect();
        // Triangular structure is not guaranteed, so run a small exact solve.
        let cols = phi_d;
        let rows = self.coeffs.len();
        let mut aug: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = basis.iter().map(|b| b.coeffs[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for c in 0..cols {
            let Some(p) = (pivot_row..rows).find(|&r| !aug[r][c].is_zero()) else {
                continue;
            };
            aug.swap(pivot_row, p);
            let inv = aug[pivot_row][c].recip();
            for v in aug[pivot_row].iter_mut() {
                *v *= &inv;
            }
            for r in 0..rows {
                if r != pivot_row && !aug[r][c].is_zero() {
                    let f = aug[r][c].clone();
                    for k in 0..=cols {
                        let t = &f * &aug[pivot_row][k];
                        aug[r][k] -= t;
                    }
                }
            }
            pivots.push(c);
            pivot_row += 1;
        }
        if aug[pivot_row..].iter().any(|row| !row[cols].is_zero()) {
            return None;
        }
        let mut coeffs = vec![BigRational::zero(); phi_d];
        for (r, &c) in pivots.iter().enumerate() {
            coeffs[c] = aug[r][cols].clone();
        }
        Some(Cyclotomic { order: d, coeffs })
    }

    /// Brings both operands to a common order.
    fn align(&self, other: &Cyclotomic) -> Result<(Cyclotomic, Cyclotomic)> {
        let m = checked_lcm(self.order, other.order)?;
        Ok((self.embed(m)?, other.embed(m)?))
    }

    pub fn try_add(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        if self.order == other.order {
            return Ok(self.add_same(other));
        }
        if other.is_rational() {
            let mut out = self.clone();
            out.coeffs[0] += &other.coeffs[0];
            return Ok(out);
        }
        if self.is_rational() {
            let mut out = other.clone();
            out.coeffs[0] += &self.coeffs[0];
            return Ok(out);
        }
        let (a, b) = self.align(other)?;
        Ok(a.add_same(&b))
    }

    pub fn try_sub(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        if let Some(q) = other.to_rational() {
            return Ok(self.scale(&q));
        }
        if let Some(q) = self.to_rational() {
            return Ok(other.scale(&q));
        }
        if self.order == other.order {
            return Ok(self.mul_same(other));
        }
        let (a, b) = self.align(other)?;
        Ok(a.mul_same(&b))
    }

    pub fn try_div(&self, other: &Cyclotomic) -> Result<Cyclotomic> {
        let inv = other.inverse()?;
        self.try_mul(&inv)
    }

    fn add_same(&self, other: &Cyclotomic) -> Cyclotomic {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            order: self.order,
            coeffs,
        }
    }

    fn mul_same(&self, other: &Cyclotomic) -> Cyclotomic {
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut prod = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Cyclotomic {
            order: self.order,
            coeffs: reduce(prod, self.order),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Cyclotomic {
        if q.is_zero() {
            return Cyclotomic {
                order: self.order,
                coeffs: vec![BigRational::zero(); self.coeffs.len()],
            };
        }
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Cyclotomic {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// Multiplies by the rational `num/den`; `den` must be nonzero.
    pub fn scale_ratio(&self, num: i64, den: i64) -> Cyclotomic {
        self.scale(&BigRational::new(num.into(), den.into()))
    }

    fn neg_ref(&self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplicative inverse, by the extended Euclidean algorithm against `Phi_n`.
    pub fn inverse(&self) -> Result<Cyclotomic> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Cyclotomic::from_exponents(self.order, [(0, q.recip())]));
        }
        let modulus: Vec<BigRational> = cyclo(self.order)
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (g, s) = poly_ext_gcd(trim(self.coeffs.clone()), modulus);
        // g is a nonzero constant because Phi_n is irreducible.
        debug_assert_eq!(g.len(), 1);
        let g0 = g[0].recip();
        let inv: Vec<BigRational> = s.into_iter().map(|c| c * &g0).collect();
        Ok(Cyclotomic {
            order: self.order,
            coeffs: reduce(inv, self.order),
        })
    }

    /// Applies the Galois automorphism `zeta_n -> zeta_n^k`; `k` must be coprime to `n`.
    pub fn galois(&self, k: i64) -> Cyclotomic {
        let n = self.order as i64;
        assert_eq!(
            k.rem_euclid(n).gcd(&n),
            1,
            "Galois exponent must be coprime to the order"
        );
        if self.is_rational() {
            return self.clone();
        }
        let kk = k.rem_euclid(n) as u64;
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u64 * kk, c.clone()));
        Cyclotomic::from_exponents(self.order, terms)
    }

    /// Complex conjugation `zeta_n -> zeta_n^{-1}`.
    pub fn conj(&self) -> Cyclotomic {
        self.galois(-1)
    }

    pub fn pow(&self, e: i64) -> Result<Cyclotomic> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Cyclotomic::one().embed(self.order)?;
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_same(&sq);
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.mul_same(&sq);
            }
        }
        Ok(acc)
    }

    /// Polynomial text in `z` without the order declaration, e.g. `1/2 + 2*z`.
    pub fn to_poly_string(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let body = match i {
                0 => fmt_rational(&mag),
                _ => {
                    let zpart = if i == 1 {
                        "z".to_string()
                    } else {
                        format!("z^{i}")
                    };
                    if mag.is_one() {
                        zpart
                    } else {
                        format!("{}*{}", fmt_rational(&mag), zpart)
                    }
                }
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Full self-describing text, e.g. `zeta_order = 3; 1/2 + 2*z`.
    pub fn to_scalar_text(&self) -> String {
        format!("zeta_order = {}; {}", self.order, self.to_poly_string())
    }

    /// Approximate complex value, for display only.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * i as f64 / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    r.truncate(db.max(1));
    (trim(q), trim(r))
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    let len = (q.len() + b.len() - 1).max(a.len());
    out.resize(len, BigRational::zero());
    for (i, qi) in q.iter().enumerate() {
        if qi.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] -= qi * bj;
        }
    }
    trim(out)
}

fn is_zero_poly(p: &[BigRational]) -> bool {
    p.iter().all(Zero::is_zero)
}

// Returns (g, s) with s*a = g (mod m).
fn poly_ext_gcd(a: Vec<BigRational>, m: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (a, m);
    let (mut s0, mut s1) = (vec![BigRational::one()], vec![BigRational::zero()]);
    while !is_zero_poly(&r1) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        if self.is_rational() && other.is_rational() {
            return self.coeffs[0] == other.coeffs[0];
        }
        let m = (self.order as u64).lcm(&(other.order as u64)) as u32;
        match (self.embed(m), other.embed(m)) {
            (Ok(a), Ok(b)) => a.coeffs == b.coeffs,
            _ => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl Default for Cyclotomic {
    fn default() -> Self {
        Cyclotomic::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Cyclotomic::from_int(n)
    }
}

impl From<BigRational> for Cyclotomic {
    fn from(q: BigRational) -> Self {
        Cyclotomic::from_rational(q)
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&self.to_poly_string())
    }
}

// Operator impls panic when the merged order exceeds the ceiling; use the
// `try_*` methods where that must be handled.
macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$method(rhs)
            }
        }
        impl $tr<Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.order == rhs.order {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if self.order == rhs.order {
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a -= b;
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

macro_rules! assign_by_value {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            fn $m(&mut self, rhs: Cyclotomic) {
                self.$m(&rhs);
            }
        }
    };
}

assign_by_value!(AddAssign, add_assign);
assign_by_value!(SubAssign, sub_assign);
assign_by_value!(MulAssign, mul_assign);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        self.neg_ref()
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        let mut acc = Cyclotomic::zero();
        for x in iter {
            acc += &x;
        }
        acc
    }
}

/// Parses a rational `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let err = |reason: &str| ScalarError::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
    let d = BigInt::from_str(den).map_err(|_| err("bad denominator"))?;
    if d.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(BigRational::new(n, d))
}

/// Parses a polynomial in `z` such as `1/2 + 2*z - z^3` as an element of `Q(zeta_order)`.
pub fn parse_poly(text: &str, order: u32) -> Result<Cyclotomic> {
    let err = |reason: String| ScalarError::Parse {
        text: text.to_string(),
        reason,
    };
    if order == 0 {
        return Err(ScalarError::InvalidOrder(0));
    }
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(err("empty expression".into()));
    }
    // Split into signed terms at top-level + and -, keeping the sign.
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && !cur.ends_with('^') {
            if i > 0 {
                if cur.is_empty() {
                    return Err(err("dangling sign".into()));
                }
                terms.push((neg, std::mem::take(&mut cur)));
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(err("dangling sign".into()));
    }
    terms.push((neg, cur));

    let mut parsed = Vec::new();
    for (neg, term) in terms {
        let (coef_txt, z_txt) = match term.find('z') {
            Some(pos) => {
                let (c, z) = term.split_at(pos);
                let c = c.strip_suffix('*').unwrap_or(c);
                (c.to_string(), Some(z.to_string()))
            }
            None => (term.clone(), None),
        };
        let mut coef = if coef_txt.is_empty() {
            if z_txt.is_none() {
                return Err(err(format!("empty term in {term:?}")));
            }
            BigRational::one()
        } else {
            parse_rational(&coef_txt)?
        };
        if neg {
            coef = -coef;
        }
        let exp: u64 = match z_txt {
            None => 0,
            Some(z) => {
                let rest = &z[1..];
                if rest.is_empty() {
                    1
                } else if let Some(e) = rest.strip_prefix('^') {
                    e.parse::<u64>()
                        .map_err(|_| err(format!("bad exponent in {term:?}")))?
                } else {
                    return Err(err(format!("unexpected text after z in {term:?}")));
                }
            }
        };
        parsed.push((exp, coef));
    }
    if order > max_order() {
        return Err(ScalarError::OrderOverflow {
            requested: order as u64,
            ceiling: max_order(),
        });
    }
    Ok(Cyclotomic::from_exponents(order, parsed))
}

/// Parses the self-describing form `zeta_order = n; <poly>`; a bare rational is
/// accepted as an element of `Q`.
pub fn parse_scalar(text: &str) -> Result<Cyclotomic> {
    let t = text.trim();
    match t.split_once(';') {
        Some((head, body)) => {
            let order = parse_order_decl(head).ok_or_else(|| ScalarError::Parse {
                text: text.to_string(),
                reason: "expected `zeta_order = n`".into(),
            })?;
            parse_poly(body, order)
        }
        None => parse_poly(t, 1),
    }
}

/// Parses a `zeta_order = n` declaration.
pub fn parse_order_decl(line: &str) -> Option<u32> {
    let (k, v) = line.split_once('=')?;
    if k.trim() != "zeta_order" {
        return None;
    }
    v.trim().parse::<u32>().ok().filter(|&n| n > 0)
}

impl FromStr for Cyclotomic {
    type Err = ScalarError;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}
