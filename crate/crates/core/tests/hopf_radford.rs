use tftalg::hopf::{
    double_dual_witness, drinfeld_double, group_algebra, integral_data, radford_check, taft,
    FinHopfAlgebra, HModule, SVec,
};
use tftalg::{CycMatrix, Cyclotomic, FiniteGroup};

fn groups_up_to_order_8() -> Vec<(&'static str, FiniteGroup)> {
    let c = FiniteGroup::cyclic;
    vec![
        ("1", FiniteGroup::trivial()),
        ("Z2", c(2)),
        ("Z3", c(3)),
        ("Z4", c(4)),
        ("Z2xZ2", FiniteGroup::direct_product(&c(2), &c(2))),
        ("Z5", c(5)),
        ("Z6", c(6)),
        ("S3", FiniteGroup::symmetric(3)),
        ("Z7", c(7)),
        ("Z8", c(8)),
        ("Z4xZ2", FiniteGroup::direct_product(&c(4), &c(2))),
        (
            "Z2^3",
            FiniteGroup::direct_product(&FiniteGroup::direct_product(&c(2), &c(2)), &c(2)),
        ),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion()),
    ]
}

fn unit_vec(i: usize) -> SVec {
    SVec::from([(i, Cyclotomic::one())])
}

/// Left integrals as the kernel of `h t - eps(h) t` over all basis `h`, solved directly.
fn integral_space(h: &FinHopfAlgebra) -> Vec<Vec<Cyclotomic>> {
    let n = h.dim();
    let mut sys = CycMatrix::zeros(n * n, n);
    for i in 0..n {
        for c in 0..n {
            let prod = h.mul(&unit_vec(i), &unit_vec(c));
            for r in 0..n {
                let mut v = prod.get(&r).cloned().unwrap_or_default();
                if r == c {
                    v -= &h.counit_vec()[i];
                }
                sys[(i * n + r, c)] = v;
            }
        }
    }
    sys.kernel_basis()
}

fn s4(h: &FinHopfAlgebra, x: &SVec) -> SVec {
    (0..4).fold(x.clone(), |acc, _| h.antipode(&acc))
}

#[test]
fn radford_for_small_group_algebras() {
    for (name, g) in groups_up_to_order_8() {
        let h = group_algebra(&g);
        let r = radford_check(&h).unwrap();
        assert!(r.passed(), "{name}: {r}");
        assert!(r.s4_is_identity, "{name}");
        assert_eq!(integral_space(&h).len(), 1, "{name}");
    }
}

#[test]
fn radford_for_taft_algebras() {
    for d in 2..=5 {
        let h = taft(d, 1).unwrap();
        let r = radford_check(&h).unwrap();
        assert!(r.passed(), "taft({d}): {r}");
        assert_eq!(r.s4_is_identity, d <= 2, "taft({d})");
        assert_eq!(integral_space(&h).len(), 1);
    }
}

#[test]
fn s4_is_not_identity_on_taft3() {
    let h = taft(3, 1).unwrap();
    let x = unit_vec(1);
    assert_ne!(s4(&h, &x), x);
}

#[test]
fn radford_for_double_of_z2() {
    let d = drinfeld_double(&group_algebra(&FiniteGroup::cyclic(2))).unwrap();
    let r = radford_check(&d).unwrap();
    assert!(r.passed() && r.s4_is_identity, "{r}");
    assert_eq!(integral_space(&d).len(), 1);
}

#[test]
fn sweedler_integral_and_group_likes() {
    let h = taft(2, 1).unwrap();
    // basis 1, x, g, gx
    let space = integral_space(&h);
    assert_eq!(space.len(), 1);
    let v = &space[0];
    let scale = v[1].inverse().unwrap();
    let normalized: Vec<Cyclotomic> = v.iter().map(|c| c * &scale).collect();
    let expect: Vec<Cyclotomic> = [0, 1, 0, 1]
        .iter()
        .map(|&k| Cyclotomic::from_int(k))
        .collect();
    assert_eq!(normalized, expect);

    let data = integral_data(&h).unwrap();
    assert_eq!(
        data.t,
        [(1, Cyclotomic::one()), (3, Cyclotomic::one())]
            .into_iter()
            .collect::<SVec>()
    );
    assert_eq!(data.alpha[2], Cyclotomic::from_int(-1));
    assert_eq!(data.a, unit_vec(2));
    // t h = alpha(h) t on the generators
    for (i, chi) in data.alpha.iter().enumerate() {
        let th = h.mul(&data.t, &unit_vec(i));
        let scaled: SVec = data
            .t
            .iter()
            .filter(|_| !chi.is_zero())
            .map(|(&k, c)| (k, c * chi))
            .collect();
        assert_eq!(th, scaled);
    }
}

#[test]
fn double_dual_witnesses_exist() {
    for h in [
        taft(2, 1).unwrap(),
        taft(3, 1).unwrap(),
        group_algebra(&FiniteGroup::symmetric(3)),
    ] {
        let w = double_dual_witness(&h, &HModule::regular(&h)).unwrap();
        assert!(w.map.inverse().is_some());
    }
}
