//! Standard constructions: group algebras, function algebras, Taft algebras
//! and Drinfeld doubles.

use num_integer::Integer;

use super::{add_to, axpy, basis, map2, FinHopfAlgebra, HopfError, Result, SVec};
use crate::group::FiniteGroup;
use crate::scalar::Cyclotomic;

/// `K[G]` with `Delta(g) = g (x) g` and `S(g) = g^{-1}`.
pub fn group_algebra(g: &FiniteGroup) -> FinHopfAlgebra {
    let n = g.order();
    let mult = (0..n * n).map(|p| basis(g.mul(p / n, p % n))).collect();
    let comult = (0..n).map(|a| basis(a * n + a)).collect();
    let antipode = (0..n).map(|a| basis(g.inv(a))).collect();
    FinHopfAlgebra::new(
        g.labels().to_vec(),
        mult,
        basis(0),
        comult,
        vec![Cyclotomic::one(); n],
        antipode,
    )
    .expect("group algebra tensors are well formed")
}

/// Functions on `G` in the basis of point masses `d[g]`.
pub fn function_algebra(g: &FiniteGroup) -> FinHopfAlgebra {
    let n = g.order();
    let mult = (0..n * n)
        .map(|p| {
            if p / n == p % n {
                basis(p / n)
            } else {
                SVec::new()
            }
        })
        .collect();
    let unit = (0..n).map(|a| (a, Cyclotomic::one())).collect();
    let mut comult = vec![SVec::new(); n];
    for a in 0..n {
        for b in 0..n {
            comult[g.mul(a, b)].insert(a * n + b, Cyclotomic::one());
        }
    }
    let mut counit = vec![Cyclotomic::zero(); n];
    counit[0] = Cyclotomic::one();
    let antipode = (0..n).map(|a| basis(g.inv(a))).collect();
    let labels = g.labels().iter().map(|l| format!("d[{l}]")).collect();
    FinHopfAlgebra::new(labels, mult, unit, comult, counit, antipode)
        .expect("function algebra tensors are well formed")
}

fn taft_label(i: usize, j: usize) -> String {
    let p = |s: &str, e: usize| match e {
        0 => String::new(),
        1 => s.to_string(),
        _ => format!("{s}^{e}"),
    };
    match (i, j) {
        (0, 0) => "1".into(),
        _ => format!("{}{}", p("g", i), p("x", j)),
    }
}

/// Taft algebra with `zeta = zeta_d^k`: `g^d = 1`, `x^d = 0`, `x g = zeta g x`,
/// `Delta(x) = g (x) x + x (x) 1`. Basis `g^i x^j` at index `i * d + j`.
pub fn taft(d: u32, k: i64) -> Result<FinHopfAlgebra> {
    if d < 2 || k.gcd(&(d as i64)) != 1 {
        return Err(HopfError::NotPrimitive { d, k });
    }
    let du = d as usize;
    let n = du * du;
    let zeta_pow = |e: usize| Cyclotomic::root_of_unity(d, k * e as i64);
    let mut mult = vec![SVec::new(); n * n];
    for a in 0..n {
        for b in 0..n {
            let (i, j) = (a / du, a % du);
            let (k2, l) = (b / du, b % du);
            // g^i x^j g^k x^l = zeta^{jk} g^{i+k} x^{j+l}
            if j + l < du {
                mult[a * n + b].insert(((i + k2) % du) * du + j + l, zeta_pow(j * k2));
            }
        }
    }
    let labels: Vec<String> = (0..n).map(|a| taft_label(a / du, a % du)).collect();
    let g = basis(du);
    let x = basis(1);
    let mut counit = vec![Cyclotomic::zero(); n];
    for i in 0..du {
        counit[i * du] = Cyclotomic::one();
    }
    // Delta and S are assembled multiplicatively from the generators.
    let mut h = FinHopfAlgebra::new(
        labels,
        mult,
        basis(0),
        vec![SVec::new(); n],
        counit,
        vec![SVec::new(); n],
    )?;
    let dg = basis(du * n + du);
    let mut dx = basis(du * n + 1);
    dx.insert(n, Cyclotomic::one());
    let g_inv = basis((du - 1) * du);
    let s_x: SVec = h
        .mul(&g_inv, &x)
        .into_iter()
        .map(|(i, c)| (i, -c))
        .collect();
    for a in 0..n {
        let (i, j) = (a / du, a % du);
        let mut delta = basis(0);
        for _ in 0..i {
            delta = h.tensor_mul(&delta, &dg);
        }
        for _ in 0..j {
            delta = h.tensor_mul(&delta, &dx);
        }
        h.comult[a] = delta;
        // S(g^i x^j) = S(x)^j S(g)^i
        let s = h.mul(&h.power(&s_x, j), &h.power(&g_inv, i));
        h.antipode[a] = s;
    }
    debug_assert_eq!(h.power(&g, du), basis(0));
    Ok(h)
}

/// Drinfeld double `D(H) = H^{*cop} (x) H`, basis `f_a (x) e_i` at `a * dim + i`.
///
/// `(f (x) h)(f' (x) h') = f (h_1 -> f' <- S^{-1}(h_3)) (x) h_2 h'` with
/// `(h -> f <- k)(y) = f(k y h)`; the coproduct is `(f_2 (x) h_1) (x) (f_1 (x) h_2)`.
pub fn drinfeld_double(h: &FinHopfAlgebra) -> Result<FinHopfAlgebra> {
    let h = h.clone().validated()?;
    let n = h.dim();
    let nn = n * n;
    let s_inv = h.antipode_inverse()?;
    let hd = h.dual();
    let idx = |a: usize, i: usize| a * n + i;

    let mut mult = vec![SVec::new(); nn * nn];
    for i in 0..n {
        let d2 = h.comul2(&basis(i));
        for b in 0..n {
            // sum over h_1 (x) h_2 (x) h_3 of f'-twist (x) h_2
            let mut twisted: Vec<(SVec, usize, Cyclotomic)> = Vec::new();
            for (&pqr, c) in &d2 {
                let (p, q, r) = (pqr / nn, (pqr / n) % n, pqr % n);
                // psi(y) = f_b(S^{-1}(e_r) e_y e_p)
                let mut psi = SVec::new();
                for y in 0..n {
                    let v = h.mul(&h.mul(&s_inv[r], &basis(y)), &basis(p));
                    if let Some(coef) = v.get(&b) {
                        add_to(&mut psi, y, coef);
                    }
                }
                twisted.push((psi, q, c.clone()));
            }
            for a in 0..n {
                for j in 0..n {
                    let mut out = SVec::new();
                    for (psi, q, c) in &twisted {
                        let left = hd.mul(&basis(a), psi);
                        let right = h.product_of(*q, j);
                        for (&u, x) in &left {
                            let xc = x * c;
                            for (&v, y) in right {
                                add_to(&mut out, idx(u, v), &(&xc * y));
                            }
                        }
                    }
                    mult[idx(a, i) * nn + idx(b, j)] = out;
                }
            }
        }
    }

    let mut comult = vec![SVec::new(); nn];
    for a in 0..n {
        let df = hd.comult_of(a);
        for i in 0..n {
            let dh = h.comult_of(i);
            let mut out = SVec::new();
            for (&uv, c) in df {
                let (f1, f2) = (uv / n, uv % n);
                for (&pq, e) in dh {
                    let (h1, h2) = (pq / n, pq % n);
                    add_to(&mut out, idx(f2, h1) * nn + idx(f1, h2), &(c * e));
                }
            }
            comult[idx(a, i)] = out;
        }
    }

    let mut unit = SVec::new();
    for (&a, c) in hd.unit() {
        for (&i, e) in h.unit() {
            add_to(&mut unit, idx(a, i), &(c * e));
        }
    }
    let mut counit = vec![Cyclotomic::zero(); nn];
    for a in 0..n {
        for i in 0..n {
            let fa_one = hd.counit_vec()[a].clone();
            counit[idx(a, i)] = &fa_one * &h.counit_vec()[i];
        }
    }
    let labels: Vec<String> = (0..nn)
        .map(|p| format!("{}#{}", hd.label(p / n), h.label(p % n)))
        .collect();
    let mut dd = FinHopfAlgebra::new(labels, mult, unit, comult, counit, vec![SVec::new(); nn])?;

    // S(f (x) h) = (eps (x) S(h)) (f o S^{-1} (x) 1)
    let eps_star = hd.unit().clone();
    let one = h.unit().clone();
    let lift = |f: &SVec, x: &SVec| map2(&basis(0), 1, n, |_| f.clone(), |_| x.clone());
    let s_inv_dual = |a: usize| {
        let mut v = SVec::new();
        for (y, col) in s_inv.iter().enumerate() {
            if let Some(c) = col.get(&a) {
                add_to(&mut v, y, c);
            }
        }
        v
    };
    for a in 0..n {
        let fs = s_inv_dual(a);
        for i in 0..n {
            let l = lift(&eps_star, h.antipode_of(i));
            let r = lift(&fs, &one);
            let mut s = SVec::new();
            axpy(&mut s, &Cyclotomic::one(), &dd.mul(&l, &r));
            dd.antipode[idx(a, i)] = s;
        }
    }
    dd.validated()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_algebra_z2() {
        let h = group_algebra(&FiniteGroup::cyclic(2));
        assert_eq!(h.dim(), 2);
        assert!(h.antipode_matrix().is_identity());
        assert!(h.validate().is_valid());
    }

    #[test]
    fn s3_group_and_function_algebras() {
        let g = FiniteGroup::symmetric(3);
        assert!(group_algebra(&g).validate().is_valid());
        assert!(function_algebra(&g).validate().is_valid());
    }

    #[test]
    fn sweedler_relations() {
        let h = taft(2, 1).unwrap();
        assert!(h.validate().is_valid());
        let (g, x) = (basis(2), basis(1));
        assert!(h.mul(&x, &x).is_empty());
        assert_eq!(h.mul(&g, &g), basis(0));
        let xg = h.mul(&x, &g);
        let gx = h.mul(&g, &x);
        assert_eq!(xg, gx.iter().map(|(&k, c)| (k, -c)).collect::<SVec>());
    }

    #[test]
    fn taft_family_validates() {
        for d in 2..=5 {
            for k in 1..d as i64 {
                if k.gcd(&(d as i64)) == 1 {
                    let h = taft(d, k).unwrap();
                    assert_eq!(h.dim(), (d * d) as usize);
                    assert!(h.validate().is_valid(), "taft({d},{k})");
                }
            }
        }
        assert!(matches!(taft(4, 2), Err(HopfError::NotPrimitive { .. })));
    }

    #[test]
    fn doubles_validate() {
        let d = drinfeld_double(&group_algebra(&FiniteGroup::cyclic(2))).unwrap();
        assert_eq!(d.dim(), 4);
        let d = drinfeld_double(&taft(2, 1).unwrap()).unwrap();
        assert_eq!(d.dim(), 16);
        let d = drinfeld_double(&group_algebra(&FiniteGroup::symmetric(3))).unwrap();
        assert_eq!(d.dim(), 36);
    }
}
