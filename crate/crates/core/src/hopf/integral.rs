//! Integrals, distinguished group-likes and Radford's formula for `S^4`.

use std::fmt;

use super::{basis, from_dense_vec, FinHopfAlgebra, HopfError, Result, SVec};
use crate::linalg::CycMatrix;
use crate::scalar::Cyclotomic;

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralData {
    /// Left integral, first nonzero coordinate equal to 1.
    pub t: SVec,
    /// Distinguished group-like of `H*`: `t h = alpha(h) t`.
    pub alpha: Vec<Cyclotomic>,
    /// Distinguished group-like of `H`, the modular element of `H*` read back in `H`.
    pub a: SVec,
}

/// Left integrals of `H`, normalized.
pub fn left_integral(h: &FinHopfAlgebra) -> Result<SVec> {
    let n = h.dim();
    let mut sys = CycMatrix::zeros(n * n, n);
    for i in 0..n {
        let l = h.left_mult_matrix(&basis(i));
        for r in 0..n {
            for c in 0..n {
                let mut v = l[(r, c)].clone();
                if r == c {
                    v -= &h.counit_vec()[i];
                }
                sys[(i * n + r, c)] = v;
            }
        }
    }
    let ker = sys.kernel_basis();
    if ker.len() != 1 {
        return Err(HopfError::IntegralDimension(ker.len()));
    }
    let v = &ker[0];
    let lead = v
        .iter()
        .find(|x| !x.is_zero())
        .expect("kernel vectors are nonzero");
    let inv = lead.inverse().expect("nonzero");
    Ok(from_dense_vec(
        &v.iter().map(|x| x * &inv).collect::<Vec<_>>(),
    ))
}

/// The character `alpha` with `t h = alpha(h) t` for a nonzero left integral `t`.
pub fn modular_character(h: &FinHopfAlgebra, t: &SVec) -> Result<Vec<Cyclotomic>> {
    let (&p, tp) = t.iter().next().expect("integral is nonzero");
    let tp_inv = tp.inverse().expect("nonzero");
    (0..h.dim())
        .map(|i| {
            let th = h.mul(t, &basis(i));
            let c = th.get(&p).map(|x| x * &tp_inv).unwrap_or_default();
            let expect: SVec = t
                .iter()
                .filter(|_| !c.is_zero())
                .map(|(&k, x)| (k, x * &c))
                .collect();
            if th == expect {
                Ok(c)
            } else {
                Err(HopfError::Invalid(format!(
                    "t {} is not a multiple of t",
                    h.label(i)
                )))
            }
        })
        .collect()
}

fn is_algebra_map(h: &FinHopfAlgebra, chi: &[Cyclotomic]) -> bool {
    let n = h.dim();
    let ev = |v: &SVec| -> Cyclotomic { v.iter().map(|(&k, c)| c * &chi[k]).sum() };
    ev(h.unit()).is_one()
        && (0..n * n).all(|p| ev(h.product_of(p / n, p % n)) == &chi[p / n] * &chi[p % n])
}

impl IntegralData {
    /// The group-likes entering the displayed form of Radford's formula.
    ///
    /// With `alpha` read off from `t h = alpha(h) t` and `a` from the same
    /// construction on `H*`, the formula holds for the convolution inverses
    /// `(a^{-1}, alpha^{-1})`, i.e. the modular elements of right integrals.
    pub fn radford_pair(&self, h: &FinHopfAlgebra) -> (SVec, Vec<Cyclotomic>) {
        (h.antipode(&self.a), character_inverse(h, &self.alpha))
    }
}

pub fn integral_data(h: &FinHopfAlgebra) -> Result<IntegralData> {
    let t = left_integral(h)?;
    let alpha = modular_character(h, &t)?;
    if !is_algebra_map(h, &alpha) {
        return Err(HopfError::NotGroupLike("alpha".into()));
    }
    let hd = h.dual();
    let td = left_integral(&hd)?;
    // a in H = H** is the modular character of H*
    let a = from_dense_vec(&modular_character(&hd, &td)?);
    if !h.is_group_like(&a) {
        return Err(HopfError::NotGroupLike("a".into()));
    }
    Ok(IntegralData { t, alpha, a })
}

/// `chi -> x = x_1 chi(x_2)`.
pub fn hit_left(h: &FinHopfAlgebra, chi: &[Cyclotomic], x: &SVec) -> SVec {
    let n = h.dim();
    let mut out = SVec::new();
    for (&ab, c) in &h.comul(x) {
        super::add_to(&mut out, ab / n, &(c * &chi[ab % n]));
    }
    out
}

/// `x <- chi = chi(x_1) x_2`.
pub fn hit_right(h: &FinHopfAlgebra, x: &SVec, chi: &[Cyclotomic]) -> SVec {
    let n = h.dim();
    let mut out = SVec::new();
    for (&ab, c) in &h.comul(x) {
        super::add_to(&mut out, ab % n, &(c * &chi[ab / n]));
    }
    out
}

/// Convolution inverse `chi o S` of a character.
pub fn character_inverse(h: &FinHopfAlgebra, chi: &[Cyclotomic]) -> Vec<Cyclotomic> {
    (0..h.dim())
        .map(|i| h.antipode_of(i).iter().map(|(&k, c)| c * &chi[k]).sum())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadfordReport {
    /// First basis element where `S^4(h) = a (alpha^{-1} -> h <- alpha) a^{-1}` fails.
    pub first_form_failure: Option<usize>,
    /// Same for `alpha^{-1} -> (a h a^{-1}) <- alpha`.
    pub second_form_failure: Option<usize>,
    pub s4_is_identity: bool,
}

impl RadfordReport {
    pub fn passed(&self) -> bool {
        self.first_form_failure.is_none() && self.second_form_failure.is_none()
    }
}

impl fmt::Display for RadfordReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = if self.s4_is_identity { "yes" } else { "no" };
        if self.passed() {
            write!(f, "RADFORD: PASS (S^4 = id: {yn})")
        } else {
            let w = self
                .first_form_failure
                .or(self.second_form_failure)
                .unwrap_or_default();
            write!(f, "RADFORD: FAIL at basis element {w} (S^4 = id: {yn})")
        }
    }
}

/// Both displayed forms of Radford's formula on every basis element, for given `a` and `alpha`.
pub fn radford_with(h: &FinHopfAlgebra, a: &SVec, alpha: &[Cyclotomic]) -> RadfordReport {
    let a_inv = h.antipode(a);
    let alpha_inv = character_inverse(h, alpha);
    let s4 = |x: &SVec| (0..4).fold(x.clone(), |acc, _| h.antipode(&acc));
    let mut first = None;
    let mut second = None;
    let mut s4_id = true;
    for i in 0..h.dim() {
        let x = basis(i);
        let lhs = s4(&x);
        s4_id &= lhs == x;
        let inner = hit_right(h, &hit_left(h, &alpha_inv, &x), alpha);
        let r1 = h.mul(&h.mul(a, &inner), &a_inv);
        let conj = h.mul(&h.mul(a, &x), &a_inv);
        let r2 = hit_right(h, &hit_left(h, &alpha_inv, &conj), alpha);
        if first.is_none() && lhs != r1 {
            first = Some(i);
        }
        if second.is_none() && lhs != r2 {
            second = Some(i);
        }
    }
    RadfordReport {
        first_form_failure: first,
        second_form_failure: second,
        s4_is_identity: s4_id,
    }
}

pub fn radford_check(h: &FinHopfAlgebra) -> Result<RadfordReport> {
    let d = integral_data(h)?;
    let (a, alpha) = d.radford_pair(h);
    Ok(radford_with(h, &a, &alpha))
}

#[cfg(test)]
mod tests {
    use super::super::{group_algebra, taft};
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn group_algebra_integrals() {
        let g = FiniteGroup::dihedral(4);
        let h = group_algebra(&g);
        let d = integral_data(&h).unwrap();
        assert_eq!(
            d.t,
            (0..8).map(|i| (i, Cyclotomic::one())).collect::<SVec>()
        );
        assert!(d.alpha.iter().all(|x| x.is_one()));
        assert_eq!(d.a, basis(0));
    }

    #[test]
    fn sweedler_integrals() {
        let h = taft(2, 1).unwrap();
        let d = integral_data(&h).unwrap();
        // x = index 1, gx = index 3, g = index 2
        let expect: SVec = [(1, Cyclotomic::one()), (3, Cyclotomic::one())]
            .into_iter()
            .collect();
        assert_eq!(d.t, expect);
        assert_eq!(d.alpha[2], Cyclotomic::from_int(-1));
        assert!(d.alpha[1].is_zero());
        assert_eq!(d.a, basis(2));
        let r = radford_with(&h, &d.a, &d.alpha);
        assert!(r.passed() && r.s4_is_identity);
    }

    #[test]
    fn taft3_s4_nontrivial() {
        let h = taft(3, 1).unwrap();
        let r = radford_check(&h).unwrap();
        assert!(r.passed(), "{r}");
        assert!(!r.s4_is_identity);
    }

    #[test]
    fn wrong_group_like_is_detected() {
        let h = taft(3, 1).unwrap();
        let d = integral_data(&h).unwrap();
        let (a, alpha) = d.radford_pair(&h);
        assert!(!radford_with(&h, &basis(0), &alpha).passed());
        assert!(!radford_with(&h, &d.a, &d.alpha).passed());
        assert!(radford_with(&h, &a, &alpha).passed());
    }
}
