use tftalg::format::*;
use tftalg::FiniteGroup;

fn read(name: &str) -> String {
    std::fs::read_to_string(format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

/// Parsing the serialized form and serializing again is a fixed point.
fn stable<T>(src: &str, parse: impl Fn(&str) -> Result<T>, ser: impl Fn(&T) -> String) -> T {
    let first = parse(src).unwrap();
    let text = ser(&first);
    let again = parse(&text).unwrap();
    assert_eq!(ser(&again), text);
    again
}

#[test]
fn shipped_groups_round_trip() {
    for (name, order) in [
        ("z2.grp", 2),
        ("z3.grp", 3),
        ("z4.grp", 4),
        ("s3.grp", 6),
        ("q8.grp", 8),
    ] {
        let g = stable(&read(name), parse_group, serialize_group);
        assert_eq!(g.order(), order, "{name}");
        assert_eq!(g.closure(g.generators()).len(), order, "{name}");
    }
    let q8 = parse_group(&read("q8.grp")).unwrap();
    let reference = FiniteGroup::quaternion();
    let inv_count = |g: &FiniteGroup| (0..g.order()).filter(|&x| g.mul(x, x) == 0).count();
    assert_eq!(inv_count(&q8), inv_count(&reference));
}

#[test]
fn shipped_sequences_and_crossed_modules_round_trip() {
    for name in ["s3.seq", "z4.seq"] {
        stable(&read(name), parse_sequence, serialize_sequence);
    }
    for name in ["z3s3.xmod", "s3id.xmod"] {
        let x = stable(&read(name), parse_xmod, serialize_xmod);
        assert!(x.validate().is_valid(), "{name}");
    }
}

#[test]
fn shipped_algebras_round_trip() {
    for name in ["kz2.frob", "kz3.frob"] {
        let a = stable(&read(name), parse_frobenius, serialize_frobenius);
        assert!(a.validate().is_valid(), "{name}");
    }
    for stem in ["sweedler", "taft3"] {
        let h = stable(&read(&format!("{stem}.hopf")), parse_hopf, serialize_hopf);
        assert!(h.validate().is_valid(), "{stem}");
        stable(
            &read(&format!("{stem}.proj")),
            |s| parse_projection(s, &h),
            serialize_projection,
        );
        stable(
            &read(&format!("{stem}.pair")),
            parse_pairing,
            serialize_pairing,
        );
    }
}

#[test]
fn errors_name_the_line() {
    let bad = "group cayley_table\norder 2\n0 1\n1 x\n";
    match parse_group(bad) {
        Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 4),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        parse_group(""),
        Err(FormatError::Syntax { line: 1, .. })
    ));
    assert!(matches!(
        parse_hopf("group cayley_table\n"),
        Err(FormatError::Syntax { .. })
    ));
}
