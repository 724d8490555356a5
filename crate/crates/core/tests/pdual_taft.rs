use std::time::Instant;

use tftalg::format::{parse_hopf, parse_pairing, parse_projection};
use tftalg::hopf::{radford_check, taft, FinHopfAlgebra, SVec};
use tftalg::pdual::{
    find_taft_iso, involutivity_check, partial_dualize, HopfPairing, HopfProjectionDatum,
};
use tftalg::{CycMatrix, Cyclotomic};

fn apply(f: &CycMatrix, v: &SVec) -> SVec {
    let mut out = SVec::new();
    for (&c, x) in v {
        for r in 0..f.rows() {
            let y = &f[(r, c)] * x;
            if !y.is_zero() {
                *out.entry(r).or_default() += &y;
            }
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// `f: a -> b` on basis elements: multiplicative, unital, comultiplicative, counital.
fn assert_hopf_map(a: &FinHopfAlgebra, b: &FinHopfAlgebra, f: &CycMatrix) {
    let (n, m) = (a.dim(), b.dim());
    let e = |i: usize| SVec::from([(i, Cyclotomic::one())]);
    assert_eq!(apply(f, a.unit()), *b.unit());
    for i in 0..n {
        let fi = apply(f, &e(i));
        for j in 0..n {
            assert_eq!(
                apply(f, &a.mul(&e(i), &e(j))),
                b.mul(&fi, &apply(f, &e(j))),
                "mul at ({i}, {j})"
            );
        }
        let mut pushed = SVec::new();
        for (&p, c) in &a.comul(&e(i)) {
            let (l, r) = (apply(f, &e(p / n)), apply(f, &e(p % n)));
            for (&x, u) in &l {
                for (&y, v) in &r {
                    *pushed.entry(x * m + y).or_default() += &(&(u * v) * c);
                }
            }
        }
        pushed.retain(|_, x| !x.is_zero());
        assert_eq!(pushed, b.comul(&fi), "comul at {i}");
        let counit: Cyclotomic = fi.iter().map(|(&k, c)| c * &b.counit_vec()[k]).sum();
        assert_eq!(counit, a.counit_vec()[i]);
    }
}

#[test]
fn partial_dual_of_taft_is_taft() {
    for d in 2..=5u32 {
        let start = Instant::now();
        let datum = HopfProjectionDatum::taft_onto_group(d, 1).unwrap();
        let w = HopfPairing::cyclic(d as usize, 1).unwrap();
        let pd = partial_dualize(&datum, &w).unwrap();
        assert_eq!(pd.result.dim(), datum.h.dim());
        assert!(pd.result.validate().is_valid(), "d = {d}");
        assert!(radford_check(&pd.result).unwrap().passed());
        let f = find_taft_iso(&pd.result, d, 1)
            .unwrap()
            .unwrap_or_else(|| panic!("no iso for d = {d}"));
        assert_hopf_map(&taft(d, 1).unwrap(), &pd.result, &f);
        assert!(f.inverse().is_some());
        assert!(start.elapsed().as_secs() < 60, "d = {d} too slow");
    }
}

#[test]
fn partial_dualization_is_an_involution() {
    for d in 2..=4u32 {
        let datum = HopfProjectionDatum::taft_onto_group(d, 1).unwrap();
        let w = HopfPairing::cyclic(d as usize, 1).unwrap();
        let rep = involutivity_check(&datum, &w).unwrap();
        assert!(rep.check.passed, "d = {d}");
        let second = partial_dualize(&datum, &w).unwrap();
        assert_eq!(second.result.dim(), datum.h.dim());
    }
}

#[test]
fn shipped_sweedler_and_taft3_inputs() {
    for stem in ["sweedler", "taft3"] {
        let read = |ext: &str| {
            std::fs::read_to_string(format!(
                "{}/../../data/{stem}.{ext}",
                env!("CARGO_MANIFEST_DIR")
            ))
            .unwrap()
        };
        let h = parse_hopf(&read("hopf")).unwrap();
        let datum = parse_projection(&read("proj"), &h).unwrap();
        let w = parse_pairing(&read("pair")).unwrap();
        let pd = partial_dualize(&datum, &w).unwrap();
        let d = if stem == "sweedler" { 2 } else { 3 };
        assert!(find_taft_iso(&pd.result, d, 1).unwrap().is_some(), "{stem}");
    }
}
