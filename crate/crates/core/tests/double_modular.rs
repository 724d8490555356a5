use std::collections::BTreeSet;
use std::time::Instant;

use tftalg::double::double_modular_data;
use tftalg::modular::ModularData;
use tftalg::{CycMatrix, Cyclotomic, FiniteGroup};

fn suite() -> Vec<(&'static str, FiniteGroup)> {
    let c = FiniteGroup::cyclic;
    vec![
        ("Z2", c(2)),
        ("Z3", c(3)),
        ("Z4", c(4)),
        ("Z2xZ2", FiniteGroup::direct_product(&c(2), &c(2))),
        ("S3", FiniteGroup::symmetric(3)),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion()),
    ]
}

/// `sum over classes of the number of classes of the centralizer`, by direct conjugation.
fn expected_rank(g: &FiniteGroup) -> usize {
    let n = g.order();
    let mut seen = BTreeSet::new();
    let mut total = 0;
    for x in 0..n {
        let class: BTreeSet<usize> = (0..n).map(|h| g.conjugate(h, x)).collect();
        if !seen.insert(*class.iter().next().unwrap()) {
            continue;
        }
        let cent: Vec<usize> = (0..n).filter(|&h| g.mul(h, x) == g.mul(x, h)).collect();
        let mut reps = BTreeSet::new();
        for &y in &cent {
            let c: BTreeSet<usize> = cent.iter().map(|&h| g.conjugate(h, y)).collect();
            reps.insert(*c.iter().next().unwrap());
        }
        total += reps.len();
    }
    total
}

fn check(name: &str, g: &FiniteGroup, data: &ModularData) {
    let s = &data.s;
    let r = data.rank();
    assert_eq!(r, expected_rank(g), "{name}: rank");
    assert_eq!(s.transpose(), *s, "{name}: S symmetric");
    assert!((s * &s.adjoint()).is_identity(), "{name}: S unitary");
    let t = CycMatrix::diagonal(&data.t);
    let st = s * &t;
    let s2 = s * s;
    assert_eq!(&(&st * &st) * &st, s2, "{name}: (ST)^3 = S^2");
    assert!((&s2 * &s2).is_identity(), "{name}: S^4 = id");
    let sum: usize = data.dims.iter().map(|d| d * d).sum();
    assert_eq!(sum, g.order() * g.order(), "{name}: sum of dims^2");
    // Verlinde coefficients, computed here from S alone
    let inv0: Vec<Cyclotomic> = (0..r).map(|m| s[(0, m)].inverse().unwrap()).collect();
    for i in 0..r {
        for j in i..r {
            let w: Vec<Cyclotomic> = (0..r)
                .map(|m| &(&s[(i, m)] * &s[(j, m)]) * &inv0[m])
                .collect();
            for k in 0..r {
                let mut acc = Cyclotomic::zero();
                for m in 0..r {
                    acc += &w[m] * &s[(k, m)].conj();
                }
                let v = acc.to_i64();
                assert!(
                    matches!(v, Some(x) if x >= 0),
                    "{name}: N_({i},{j})^{k} = {acc}"
                );
            }
        }
    }
}

#[test]
fn double_modular_data_suite() {
    for (name, g) in suite() {
        let start = Instant::now();
        let data = double_modular_data(&g).unwrap();
        check(name, &g, &data);
        assert!(start.elapsed().as_secs() < 120, "{name} too slow");
    }
}

#[test]
fn s3_has_eight_simples() {
    let data = double_modular_data(&FiniteGroup::symmetric(3)).unwrap();
    assert_eq!(data.rank(), 8);
}

#[test]
fn z2_s_matrix_is_half_hadamard() {
    let data = double_modular_data(&FiniteGroup::cyclic(2)).unwrap();
    let h = |x: i64| Cyclotomic::from_ratio(x, 2);
    let expect = CycMatrix::from_rows(vec![
        vec![h(1), h(1), h(1), h(1)],
        vec![h(1), h(1), h(-1), h(-1)],
        vec![h(1), h(-1), h(1), h(-1)],
        vec![h(1), h(-1), h(-1), h(1)],
    ]);
    assert_eq!(data.s, expect);
    let t: Vec<i64> = data.t.iter().map(|x| x.to_i64().unwrap()).collect();
    assert_eq!(t, [1, 1, 1, -1]);
}
