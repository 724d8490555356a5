use tftalg::eqdw::{
    check_permutation_composition, orbifold_numerology, sector_category, weak_action_from_sequence,
    WeakAction,
};
use tftalg::format::parse_sequence;
use tftalg::group::{exact_sequence_check, SectionChoice};

fn load(name: &str, choice: SectionChoice) -> WeakAction {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    let doc = parse_sequence(&std::fs::read_to_string(path).unwrap()).unwrap();
    let seq = exact_sequence_check(&doc.incl, &doc.proj, choice).unwrap();
    weak_action_from_sequence(&seq).unwrap()
}

fn all_cases() -> Vec<(String, WeakAction)> {
    let mut out = Vec::new();
    for name in ["s3.seq", "z4.seq"] {
        for choice in [SectionChoice::Minimal, SectionChoice::Maximal] {
            out.push((format!("{name} {choice:?}"), load(name, choice)));
        }
    }
    out
}

#[test]
fn cocycle_recomputed_from_the_section() {
    for (name, wa) in all_cases() {
        let (g2, jg) = (wa.g2(), wa.j());
        for i in 0..jg.order() {
            for j in 0..jg.order() {
                let direct = g2.mul(
                    g2.mul(wa.section(i), wa.section(j)),
                    g2.inv(wa.section(jg.mul(i, j))),
                );
                assert_eq!(wa.embed[wa.c(i, j)], direct, "{name}");
            }
        }
        wa.check_cocycle_law().unwrap();
    }
}

#[test]
fn every_sector_has_global_dimension_of_the_neutral_one() {
    for (name, wa) in all_cases() {
        let n1 = wa.g1().order();
        let n2 = wa.g2().order();
        let jn = wa.j().order();
        let sectors: Vec<_> = (0..jn).map(|j| sector_category(&wa, j).unwrap()).collect();
        for s in &sectors {
            assert_eq!(s.groupoid.objects.len(), n1, "{name}: fiber size");
            assert_eq!(
                s.dim_square_sum(),
                n1 * n1,
                "{name}: sector {}",
                s.groupoid.j
            );
        }
        let total: usize = sectors.iter().map(|s| s.dim_square_sum()).sum();
        assert_eq!(jn * total, n2 * n2, "{name}");
        check_permutation_composition(&wa, &sectors).unwrap();
        let report = orbifold_numerology(&wa).unwrap();
        assert!(report.all_passed(), "{name}: {report:?}");
    }
}

#[test]
fn z4_extension_has_nontrivial_cocycle() {
    for choice in [SectionChoice::Minimal, SectionChoice::Maximal] {
        let wa = load("z4.seq", choice);
        assert!(!wa.cocycle_is_trivial());
        // s(1)^2 is the element of order two in Z4
        assert_eq!(wa.embed[wa.c(1, 1)], 2);
    }
}

#[test]
fn s3_split_sequence_with_minimal_section_is_untwisted() {
    let wa = load("s3.seq", SectionChoice::Minimal);
    assert!(wa.cocycle_is_trivial());
}
