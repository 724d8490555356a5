use tftalg::format::parse_frobenius;
use tftalg::frobenius::{CobordismWord, FrobeniusAlgebra};
use tftalg::{Cyclotomic, FiniteGroup};

/// `|Hom(pi_1 Sigma_g, G)| / |G|` by enumerating all `2g`-tuples.
fn hom_count_over_order(g: &FiniteGroup, genus: usize) -> Cyclotomic {
    let n = g.order();
    let comm = |a: usize, b: usize| g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
    let mut count = 0i64;
    let total = n.pow(2 * genus as u32);
    for code in 0..total {
        let mut c = code;
        let mut prod = 0;
        for _ in 0..genus {
            let a = c % n;
            c /= n;
            let b = c % n;
            c /= n;
            prod = g.mul(prod, comm(a, b));
        }
        if prod == 0 {
            count += 1;
        }
    }
    Cyclotomic::from_ratio(count, n as i64)
}

#[test]
fn closed_surfaces_count_homomorphisms() {
    for g in [
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::symmetric(3),
    ] {
        let a = FrobeniusAlgebra::group_algebra_center(&g);
        assert!(a.validate().is_valid());
        for genus in 0..=3 {
            assert_eq!(
                a.closed_surface_invariant(genus).unwrap(),
                hom_count_over_order(&g, genus),
                "|G| = {}, genus {genus}",
                g.order()
            );
        }
    }
}

#[test]
fn shipped_kz2_genus_two_is_eight() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/kz2.frob"))
        .unwrap();
    let a = parse_frobenius(&text).unwrap();
    assert_eq!(
        a.closed_surface_invariant(2).unwrap(),
        Cyclotomic::from_int(8)
    );
}

#[test]
fn decompositions_of_a_surface_agree() {
    let a = FrobeniusAlgebra::group_algebra_center(&FiniteGroup::symmetric(3));
    for genus in 0..=3 {
        let chain = a.evaluate(&CobordismWord::closed_surface(genus)).unwrap();
        let spread = a
            .evaluate(&CobordismWord::closed_surface_spread(genus))
            .unwrap();
        assert_eq!(chain, spread);
        assert_eq!(chain[(0, 0)], a.closed_surface_invariant(genus).unwrap());
    }
}

#[test]
fn torus_counts_states() {
    // Z(T^2) = dim A, here the number of conjugacy classes
    let g = FiniteGroup::dihedral(4);
    let a = FrobeniusAlgebra::group_algebra_center(&g);
    assert_eq!(
        a.closed_surface_invariant(1).unwrap(),
        Cyclotomic::from_int(5)
    );
}
