//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use tftalg::double::double_modular_data;
use tftalg::eqdw::{sector_category, weak_action_from_sequence};
use tftalg::format::parse_sequence;
use tftalg::frobenius::FrobeniusAlgebra;
use tftalg::group::{character_table, exact_sequence_check, SectionChoice};
use tftalg::hopf::{
    drinfeld_double, group_algebra, integral_data, radford_check, taft, FinHopfAlgebra, SVec,
};
use tftalg::pdual::{
    find_taft_iso, involutivity_check, partial_dualize, HopfPairing, HopfProjectionDatum,
};
use tftalg::xmod::{
    modularization_restriction, mueger_center, premodular_data, xmod_is_modular, xmod_simples,
    CrossedModule,
};
use tftalg::{CycMatrix, Cyclotomic, FiniteGroup, GroupHom};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    ensure(start.elapsed() < limit, || {
        format!("took {:?}, limit {limit:?}", start.elapsed())
    })
}

fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
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

fn hom_count_over_order(g: &FiniteGroup, genus: usize) -> Cyclotomic {
    let n = g.order();
    let comm = |a: usize, b: usize| g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)));
    let count = (0..n.pow(2 * genus as u32))
        .filter(|&code| {
            let mut c = code;
            let mut prod = 0;
            for _ in 0..genus {
                let (a, b) = (c % n, (c / n) % n);
                c /= n * n;
                prod = g.mul(prod, comm(a, b));
            }
            prod == 0
        })
        .count();
    Cyclotomic::from_ratio(count as i64, n as i64)
}

fn criterion_1() -> Check {
    let start = Instant::now();
    for g in [
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::symmetric(3),
    ] {
        let a = FrobeniusAlgebra::group_algebra_center(&g);
        for genus in 0..=3 {
            let got = a
                .closed_surface_invariant(genus)
                .map_err(|e| e.to_string())?;
            let want = hom_count_over_order(&g, genus);
            ensure(got == want, || {
                format!("|G| = {}, genus {genus}: {got} vs {want}", g.order())
            })?;
        }
    }
    let z2 = FrobeniusAlgebra::group_algebra_center(&FiniteGroup::cyclic(2));
    ensure(
        z2.closed_surface_invariant(2).unwrap() == Cyclotomic::from_int(8),
        || "Z2 genus 2 is not 8".into(),
    )?;
    within(start, Duration::from_secs(10))
}

fn criterion_2() -> Check {
    let start = Instant::now();
    for (name, g) in small_groups() {
        let r = radford_check(&group_algebra(&g)).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.s4_is_identity, || format!("{name}: {r}"))?;
    }
    for d in 2..=5 {
        let r = radford_check(&taft(d, 1).unwrap()).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("taft({d}): {r}"))?;
        ensure(r.s4_is_identity == (d == 2), || {
            format!("taft({d}): S^4 = id is {}", r.s4_is_identity)
        })?;
    }
    let dz2 =
        drinfeld_double(&group_algebra(&FiniteGroup::cyclic(2))).map_err(|e| e.to_string())?;
    let r = radford_check(&dz2).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("D(Z2): {r}"))?;
    within(start, Duration::from_secs(30))
}

fn unit_vec(i: usize) -> SVec {
    SVec::from([(i, Cyclotomic::one())])
}

fn integral_space_dim(h: &FinHopfAlgebra) -> usize {
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
    sys.kernel_basis().len()
}

fn criterion_3() -> Check {
    let mut algebras: Vec<(String, FinHopfAlgebra)> = small_groups()
        .into_iter()
        .map(|(n, g)| (n.to_string(), group_algebra(&g)))
        .collect();
    for d in 2..=5 {
        algebras.push((format!("taft({d})"), taft(d, 1).unwrap()));
    }
    algebras.push((
        "D(Z2)".into(),
        drinfeld_double(&group_algebra(&FiniteGroup::cyclic(2))).unwrap(),
    ));
    for (name, h) in &algebras {
        let k = integral_space_dim(h);
        ensure(k == 1, || {
            format!("{name}: integral space has dimension {k}")
        })?;
    }
    let h = taft(2, 1).unwrap();
    let data = integral_data(&h).map_err(|e| e.to_string())?;
    // basis 1, x, g, gx
    let t: SVec = [(1, Cyclotomic::one()), (3, Cyclotomic::one())]
        .into_iter()
        .collect();
    ensure(data.t == t, || format!("Sweedler t = {:?}", data.t))?;
    ensure(data.alpha[2] == Cyclotomic::from_int(-1), || {
        "alpha(g) != -1".into()
    })?;
    ensure(data.a == unit_vec(2), || "a != g".into())
}

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
        let reps: BTreeSet<usize> = cent
            .iter()
            .map(|&y| cent.iter().map(|&h| g.conjugate(h, y)).min().unwrap())
            .collect();
        total += reps.len();
    }
    total
}

fn criterion_4() -> Check {
    let start = Instant::now();
    let c = FiniteGroup::cyclic;
    let suite = [
        ("Z2", c(2)),
        ("Z3", c(3)),
        ("Z4", c(4)),
        ("Z2xZ2", FiniteGroup::direct_product(&c(2), &c(2))),
        ("S3", FiniteGroup::symmetric(3)),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::quaternion()),
    ];
    for (name, g) in suite {
        let data = double_modular_data(&g).map_err(|e| format!("{name}: {e}"))?;
        let s = &data.s;
        let r = data.rank();
        ensure(r == expected_rank(&g), || format!("{name}: rank {r}"))?;
        ensure(s.transpose() == *s, || format!("{name}: S not symmetric"))?;
        ensure((s * &s.adjoint()).is_identity(), || {
            format!("{name}: S not unitary")
        })?;
        let st = s * &CycMatrix::diagonal(&data.t);
        let s2 = s * s;
        ensure(&(&st * &st) * &st == s2, || {
            format!("{name}: (ST)^3 != S^2")
        })?;
        ensure((&s2 * &s2).is_identity(), || format!("{name}: S^4 != id"))?;
        let sum: usize = data.dims.iter().map(|d| d * d).sum();
        ensure(sum == g.order().pow(2), || {
            format!("{name}: sum of dims^2 = {sum}")
        })?;
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
                    ensure(matches!(acc.to_i64(), Some(v) if v >= 0), || {
                        format!("{name}: N_({i},{j})^{k} = {acc}")
                    })?;
                }
            }
        }
    }
    ensure(expected_rank(&FiniteGroup::symmetric(3)) == 8, || {
        "S3 rank".into()
    })?;
    within(start, Duration::from_secs(120))
}

fn z3_in_s3() -> GroupHom {
    let s3 = FiniteGroup::symmetric(3);
    let r = s3.find_element("(1,2,3)").unwrap();
    GroupHom::from_generator_images(FiniteGroup::cyclic(3), s3, &[r]).unwrap()
}

fn criterion_5() -> Check {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let one = FiniteGroup::trivial();
    let suite = vec![
        ("id Z2", CrossedModule::identity(&z2)),
        ("id S3", CrossedModule::identity(&FiniteGroup::symmetric(3))),
        ("id D4", CrossedModule::identity(&FiniteGroup::dihedral(4))),
        (
            "Z3 -> Z3 inversion",
            CrossedModule::trivial_action(GroupHom::new(z3.clone(), z3, vec![0, 2, 1]).unwrap())
                .unwrap(),
        ),
        ("Z3 in S3", CrossedModule::conjugation(z3_in_s3()).unwrap()),
        (
            "1 -> Z2",
            CrossedModule::trivial_action(GroupHom::new(one.clone(), z2.clone(), vec![0]).unwrap())
                .unwrap(),
        ),
        (
            "Z2 -> 1",
            CrossedModule::trivial_action(GroupHom::new(z2.clone(), one, vec![0, 0]).unwrap())
                .unwrap(),
        ),
        (
            "Z2 in Z4",
            CrossedModule::conjugation(
                GroupHom::new(z2, FiniteGroup::cyclic(4), vec![0, 2]).unwrap(),
            )
            .unwrap(),
        ),
    ];
    let mut seen = (false, false);
    for (name, xm) in &suite {
        let simples = xmod_simples(xm).map_err(|e| format!("{name}: {e}"))?;
        let modular = xmod_is_modular(&premodular_data(xm, &simples)).modular;
        ensure(modular == xm.boundary.is_bijective(), || {
            format!("{name}: modular = {modular}")
        })?;
        if modular {
            seen.0 = true;
        } else {
            seen.1 = true;
        }
    }
    ensure(seen.0 && seen.1, || {
        "suite does not cover both outcomes".into()
    })?;
    let xm = CrossedModule::conjugation(z3_in_s3()).unwrap();
    let simples = xmod_simples(&xm).unwrap();
    let data = premodular_data(&xm, &simples);
    let center = mueger_center(&xm, &simples, &data).map_err(|e| e.to_string())?;
    ensure(center.len() == 2, || {
        format!("Mueger center has {} simples", center.len())
    })?;
    ensure(center.iter().all(|&i| data.t[i].is_one()), || {
        "transparent twist != 1".into()
    })?;
    ensure(data.s.rank() < 6, || "S~ has full rank".into())
}

fn sorted_text(v: impl Iterator<Item = Cyclotomic>) -> Vec<String> {
    let mut s: Vec<String> = v.map(|c| c.to_scalar_text()).collect();
    s.sort();
    s
}

fn criterion_6() -> Check {
    let xm = CrossedModule::conjugation(z3_in_s3()).unwrap();
    let simples = xmod_simples(&xm).unwrap();
    let m = modularization_restriction(&xm, &simples).map_err(|e| e.to_string())?;
    ensure(m.braided, || "restriction is not braided".into())?;
    let hit: BTreeSet<usize> = m
        .decompositions
        .iter()
        .flatten()
        .map(|p| p.target)
        .collect();
    ensure(m.dominant && m.double.len() == 9 && hit.len() == 9, || {
        format!("{} of 9 targets hit", hit.len())
    })?;

    let incl = z3_in_s3();
    let rot = incl.image();
    let sign: Vec<usize> = (0..6).map(|x| usize::from(!rot.contains(&x))).collect();
    let proj = GroupHom::new(incl.target.clone(), FiniteGroup::cyclic(2), sign).unwrap();
    let seq =
        exact_sequence_check(&incl, &proj, SectionChoice::Minimal).map_err(|e| e.to_string())?;
    let wa = weak_action_from_sequence(&seq).map_err(|e| e.to_string())?;
    let neutral = sector_category(&wa, 0).map_err(|e| e.to_string())?;
    ensure(neutral.len() == m.double.len(), || {
        "simple counts differ".into()
    })?;
    let mut da = neutral.dims.clone();
    let mut db: Vec<usize> = m.double.labels.iter().map(|l| m.double.dim(l)).collect();
    da.sort_unstable();
    db.sort_unstable();
    ensure(da == db, || "dims differ".into())?;
    let ta = sorted_text(neutral.twists.iter().map(|t| t.clone().unwrap_or_default()));
    let tb = sorted_text(m.double.labels.iter().map(|l| m.double.twist(l)));
    ensure(ta == tb, || "twist multisets differ".into())
}

fn criterion_7() -> Check {
    for (file, n1, n2) in [("s3.seq", 3, 6), ("z4.seq", 2, 4)] {
        let src = std::fs::read_to_string(common::workspace_root().join("data").join(file))
            .map_err(|e| e.to_string())?;
        let doc = parse_sequence(&src).map_err(|e| e.to_string())?;
        for choice in [SectionChoice::Minimal, SectionChoice::Maximal] {
            let seq =
                exact_sequence_check(&doc.incl, &doc.proj, choice).map_err(|e| e.to_string())?;
            let wa = weak_action_from_sequence(&seq).map_err(|e| e.to_string())?;
            let (g1, jg) = (wa.g1(), wa.j());
            for a in 0..jg.order() {
                for b in 0..jg.order() {
                    let c = wa.c(a, b);
                    for g in 0..g1.order() {
                        let lhs = wa.rho[a][wa.rho[b][g]];
                        let rhs = g1.conjugate(c, wa.rho[jg.mul(a, b)][g]);
                        ensure(lhs == rhs, || {
                            format!("{file}: cocycle law at ({a}, {b}), {g}")
                        })?;
                    }
                }
            }
            let mut total = 0;
            for j in 0..jg.order() {
                let s = sector_category(&wa, j)
                    .map_err(|e| e.to_string())?
                    .dim_square_sum();
                ensure(s == n1 * n1, || format!("{file}: sector {j} has sum {s}"))?;
                total += s;
            }
            ensure(jg.order() * total == n2 * n2, || {
                format!("{file}: total {total}")
            })?;
            if file == "z4.seq" {
                ensure(wa.embed[wa.c(1, 1)] == 2, || {
                    format!("{file}: c(1,1) = {}", wa.embed[wa.c(1, 1)])
                })?;
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Check {
    let start = Instant::now();
    for d in 2..=5u32 {
        let datum = HopfProjectionDatum::taft_onto_group(d, 1).map_err(|e| e.to_string())?;
        let w = HopfPairing::cyclic(d as usize, 1).map_err(|e| e.to_string())?;
        let pd = partial_dualize(&datum, &w).map_err(|e| format!("d = {d}: {e}"))?;
        ensure(pd.result.dim() == datum.h.dim(), || {
            format!("d = {d}: dimension changed")
        })?;
        let iso = find_taft_iso(&pd.result, d, 1).map_err(|e| e.to_string())?;
        ensure(iso.is_some(), || {
            format!("d = {d}: result is not isomorphic to taft")
        })?;
        let rep = involutivity_check(&datum, &w).map_err(|e| format!("d = {d}: {e}"))?;
        ensure(rep.check.passed, || format!("d = {d}: {}", rep.check))?;
    }
    within(start, Duration::from_secs(60))
}

fn arb_cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (
        prop::sample::select(vec![1u32, 3, 4, 5, 8, 12]),
        prop::collection::vec((0u64..24, -6i64..7, 1i64..4), 0..5),
    )
        .prop_map(|(n, terms)| {
            Cyclotomic::from_exponents(
                n,
                terms
                    .into_iter()
                    .map(|(e, p, q)| (e, num_rational::BigRational::new(p.into(), q.into()))),
            )
        })
}

fn field_axioms() -> Check {
    let mut runner = TestRunner::new(Config {
        cases: 64,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(
            &(arb_cyclotomic(), arb_cyclotomic(), arb_cyclotomic()),
            |(a, b, c)| {
                prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a + &(-&a), Cyclotomic::zero());
                if !a.is_zero() {
                    prop_assert!((&a * &a.inverse().unwrap()).is_one());
                }
                prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
                Ok(())
            },
        )
        .map_err(|e| format!("field axioms: {e}"))
}

fn arb_group() -> impl Strategy<Value = FiniteGroup> {
    let base = prop_oneof![
        (1usize..10).prop_map(FiniteGroup::cyclic),
        (3usize..6).prop_map(FiniteGroup::dihedral),
        (2usize..5).prop_map(FiniteGroup::symmetric),
        Just(FiniteGroup::quaternion()),
    ];
    (base, 1usize..4).prop_map(|(g, k)| FiniteGroup::direct_product(&g, &FiniteGroup::cyclic(k)))
}

fn character_orthogonality() -> Check {
    let mut runner = TestRunner::new(Config {
        cases: 24,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&arb_group(), |g| {
            let table = character_table(&g).unwrap();
            let n = g.order();
            let k = table.num_classes();
            prop_assert_eq!(table.degrees().iter().map(|d| d * d).sum::<usize>(), n);
            for i in 0..k {
                for j in 0..k {
                    let mut acc = Cyclotomic::zero();
                    for x in 0..n {
                        acc += &(table.value(i, x) * &table.value(j, x).conj());
                    }
                    let want = if i == j { n as i64 } else { 0 };
                    prop_assert_eq!(acc, Cyclotomic::from_int(want));
                }
            }
            Ok(())
        })
        .map_err(|e| format!("orthogonality: {e}"))
}

fn criterion_9() -> Check {
    field_axioms()?;
    character_orthogonality()?;
    for case in common::CASES {
        common::check_golden(case)?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("closed surfaces count homomorphisms", criterion_1),
        ("Radford's S^4 formula", criterion_2),
        ("integrals and distinguished group-likes", criterion_3),
        ("Drinfeld double modular data", criterion_4),
        ("crossed-module modularity", criterion_5),
        ("modularization by restriction", criterion_6),
        ("equivariant Dijkgraaf-Witten sectors", criterion_7),
        ("partial dualization of Taft algebras", criterion_8),
        ("properties and golden determinism", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.2} s)", i + 1),
            Err(e) => {
                println!("criterion {}: FAIL  {name} ({secs:.2} s): {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
