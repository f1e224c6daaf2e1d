//! Worked examples over Z/3, Z/4 and the heap of K_{4,5,6,7}.

use std::collections::BTreeSet;

use dynbrace::enumeration::{enumerate_full, enumerate_unital, initial_counts, invariants, EnumerationResult};
use dynbrace::group::{automorphism_group, build_group, FiniteGroup};
use dynbrace::holomorph::{Holomorph, RegularSubset};
use dynbrace::named::{named_subsets, subset};
use dynbrace::parallelise::{
    braiding_from_heap, group_from_pointed_heap, ms_labelling, schurian_transversal, ternary_of_braiding,
    verify_heap, PartialHeap, TernaryHeap,
};
use dynbrace::quiver::{Completeness, DotOptions};
use dynbrace::structures::{
    braiding_of_qtsb, semiloopoid_of_dsb, verify_braiding, verify_bracoid, verify_dsb, Report, SkewBracoid,
};

const CAP: u128 = 1_000_000;

fn hol(spec: &str) -> Holomorph {
    Holomorph::new(build_group(spec).unwrap())
}

fn s(assignment: &[usize]) -> RegularSubset {
    RegularSubset::new(assignment.to_vec())
}

fn named(spec: &str, full: bool) -> EnumerationResult {
    let h = hol(spec);
    let res = if full { enumerate_full(&h, CAP) } else { enumerate_unital(&h, CAP) };
    res.unwrap().with_example_names()
}

fn v(res: &EnumerationResult, name: &str) -> usize {
    (0..res.num_vertices()).find(|&i| res.quiver.vertex_name(i) == name).unwrap()
}

fn k4567() -> (SkewBracoid, TernaryHeap) {
    let res = named("cyclic:4", false);
    let c = res.components.component_of(v(&res, "s4"));
    let b = semiloopoid_of_dsb(&res.component_dsb(c).unwrap());
    let sigma = braiding_of_qtsb(&b).unwrap();
    let t = ternary_of_braiding(&b, &sigma).unwrap();
    (b, t)
}

#[test]
fn automorphism_counts() {
    for (spec, count) in [("cyclic:3", 2), ("cyclic:4", 2), ("klein4", 6)] {
        assert_eq!(automorphism_group(&build_group(spec).unwrap()).len(), count, "{spec}");
    }
}

#[test]
fn z3_translates() {
    let h = hol("cyclic:3");
    let (s0, s1, s3) = (s(&[0, 0, 0]), s(&[0, 1, 0]), s(&[0, 1, 1]));
    assert_eq!(h.translate(&s1, 1), s3);
    for a in 0..3 {
        assert_eq!(h.translate(&s0, a), s0);
    }
    let r0 = s(&[1, 1, 1]);
    let orbit: BTreeSet<_> = h.orbit_closure(&r0, CAP).unwrap().into_iter().collect();
    assert_eq!(orbit, [r0, s0].into_iter().collect());
    let orbit: BTreeSet<_> = h.orbit_closure(&s1, CAP).unwrap().into_iter().collect();
    assert_eq!(orbit, [s(&[0, 0, 1]), s1, s3].into_iter().collect());
}

#[test]
fn z3_quiver_shape() {
    let res = named("cyclic:3", false);
    assert_eq!(res.num_vertices(), 4);
    assert_eq!(res.quiver.arrow_count(), 12);
    let mut sizes = res.components.sizes().to_vec();
    sizes.sort();
    assert_eq!(sizes, [1, 3]);
    let s0 = res.components.component_of(v(&res, "s0"));
    let k1 = res.components.component_of(v(&res, "s1"));
    assert_eq!(res.quiver.completeness_degree(&res.components, s0), Completeness::Complete(3));
    assert_eq!(res.quiver.completeness_degree(&res.components, k1), Completeness::Complete(1));
    assert_eq!(res.quiver.is_homogeneous(), Ok(3));
    let dot = res.quiver.export_dot(&DotOptions { collapse_labels: false });
    assert_eq!(dot.matches(" -> ").count(), 12);
    assert_eq!(dot.lines().filter(|l| l.ends_with("\";")).count(), 4);
}

#[test]
fn z3_unital_arrows() {
    let res = named("cyclic:3", false);
    let drawn = [("s2", 1, "s1"), ("s2", 2, "s3"), ("s1", 2, "s2"), ("s1", 1, "s3"), ("s3", 1, "s1"), ("s3", 2, "s2")];
    for (from, a, to) in drawn {
        assert_eq!(res.quiver.target(v(&res, from), a), v(&res, to), "[{from}||{a}]");
    }
    for x in 0..3 {
        let s0 = v(&res, "s0");
        assert_eq!(res.quiver.target(s0, x), s0);
    }
}

#[test]
fn z3_full_family() {
    let res = named("cyclic:3", true);
    assert_eq!(res.num_vertices(), 8);
    assert!(res.quiver.is_homogeneous().is_err());
    let r0 = v(&res, "r0");
    for a in 0..3 {
        assert_eq!(res.quiver.target(r0, a), v(&res, "s0"));
    }
    let counts = initial_counts(&res).unwrap();
    assert_eq!(counts.in_s.get(&1), Some(&1));
    assert_eq!(counts.in_s.get(&3), Some(&3));
}

#[test]
fn z4_family_and_components() {
    let res = named("cyclic:4", false);
    assert_eq!(res.num_vertices(), 8);
    assert_eq!(res.quiver.arrow_count(), 32);
    let g = res.holomorph.group();
    let names = named_subsets(g).unwrap();
    assert_eq!(subset(&names, "s7").unwrap(), &s(&[0, 1, 1, 1]));
    assert_eq!(subset(&names, "s4").unwrap(), &s(&[0, 1, 0, 0]));
    let comp = |x: &str| res.components.component_of(v(&res, x));
    assert_eq!(comp("s2"), comp("s3"));
    assert_ne!(comp("s0"), comp("s1"));
    for x in ["s5", "s6", "s7"] {
        assert_eq!(comp(x), comp("s4"));
    }
    let mut sizes = res.components.sizes().to_vec();
    sizes.sort();
    assert_eq!(sizes, [1, 1, 2, 4]);
    assert_eq!(res.components.degree(comp("s2")), Some(2));
}

#[test]
fn z4_k4567_arrows() {
    let res = named("cyclic:4", false);
    let drawn = [
        ("s4", [("s4", 0), ("s7", 1), ("s6", 2), ("s5", 3)]),
        ("s5", [("s5", 0), ("s4", 1), ("s7", 2), ("s6", 3)]),
        ("s6", [("s6", 0), ("s5", 1), ("s4", 2), ("s7", 3)]),
        ("s7", [("s7", 0), ("s4", 1), ("s5", 2), ("s6", 3)]),
    ];
    for (from, arrows) in drawn {
        for (to, a) in arrows {
            assert_eq!(res.quiver.target(v(&res, from), a), v(&res, to), "[{from}||{a}]");
        }
    }
}

#[test]
fn quasigroup_cells() {
    let res = named("cyclic:3", false);
    let d = res.dsb().unwrap();
    let s1 = v(&res, "s1");
    assert_eq!(d.bullet(s1, 1, 1), 0);
    assert_eq!(d.bullet(s1, 2, 1), 0);
    let s0 = v(&res, "s0");
    for a in 0..3 {
        for b in 0..3 {
            assert_eq!(d.bullet(s0, a, b), (a + b) % 3);
        }
    }
    let res = named("cyclic:4", false);
    let d = res.dsb().unwrap();
    assert_eq!(d.bullet(v(&res, "s7"), 3, 3), 0);
}

#[test]
fn z4_s4_row_two_follows_its_assignment() {
    // S4 assigns id to 2, so 2 •_{S4} b = 2 + b.
    let res = named("cyclic:4", false);
    let d = res.dsb().unwrap();
    assert_eq!(d.table(v(&res, "s4"))[2], [2, 3, 0, 1]);
}

#[test]
fn z4_inverse_of_s4_arrow_one() {
    let res = named("cyclic:4", false);
    let b = semiloopoid_of_dsb(&res.dsb().unwrap());
    let s4 = v(&res, "s4");
    assert_eq!(b.inverse(s4, 1), Some((v(&res, "s7"), 1)));
    // Oracle: search c with 1 •_{S4} c = 0 and c •_{S7} 1 = 0.
    let s7 = v(&res, "s7");
    let c: Vec<usize> = (0..4).filter(|&c| b.bullet(s4, 1, c) == 0 && b.bullet(s7, c, 1) == 0).collect();
    assert_eq!(c, [1]);
}

#[test]
fn z4_braiding_examples() {
    let res = named("cyclic:4", false);
    let b = semiloopoid_of_dsb(&res.dsb().unwrap());
    let sigma = braiding_of_qtsb(&b).unwrap();
    assert_eq!(sigma.apply(v(&res, "s1"), 1, 1), (3, 3));
    assert_eq!(sigma.apply(v(&res, "s4"), 3, 1), (1, 1));
    assert_eq!(sigma.apply(v(&res, "s2"), 3, 3), (1, 3));
    for x in 0..b.num_vertices() {
        for a in 0..4 {
            assert_eq!(sigma.apply(x, a, 0), (0, a));
        }
    }
    let r = verify_braiding(&b, &sigma);
    assert!(r.passed(), "{:?}", r.failures());
    assert!(r.is_involutive());
}

#[test]
fn enumerated_small_structures_verify() {
    for spec in ["cyclic:3", "cyclic:4", "klein4"] {
        for full in [false, true] {
            let d = named(spec, full).dsb().unwrap();
            let r = verify_dsb(&d);
            assert!(r.passed(), "{spec} {full}: {:?}", r.failures());
            assert_eq!(r.zero_symmetric(), !full, "{spec}");
            let b = semiloopoid_of_dsb(&d);
            let rb = verify_bracoid(&b);
            assert!(rb.passed(), "{spec} {full}: {:?}", rb.failures());
        }
    }
}

#[test]
fn known_counts() {
    for (spec, expected) in [
        ("cyclic:4", vec![(1, 2), (2, 1), (4, 1)]),
        ("klein4", vec![(1, 4), (2, 6), (4, 50)]),
        ("cyclic:5", vec![(1, 1), (5, 51)]),
    ] {
        let t = invariants(&hol(spec), CAP, false).unwrap();
        assert_eq!(t.n_s, expected.into_iter().collect(), "{spec}");
        assert!(t.all_hold());
    }
    assert_eq!(named("klein4", false).num_vertices(), 216);
    let t = invariants(&hol("cyclic:4"), CAP, true).unwrap();
    assert_eq!(t.in_s, Some([(1, 1), (2, 2), (4, 4)].into_iter().collect()));
    let t = invariants(&hol("trivial"), CAP, true).unwrap();
    assert_eq!(t.in_s, Some([(1, 0)].into_iter().collect()));
}

#[test]
fn partitions() {
    let h = hol("cyclic:4");
    assert_eq!(h.partition_profile(&s(&[0, 1, 1, 1])), [3, 1]);
    assert_eq!(h.partition_profile(&s(&[0, 1, 0, 1])), [2, 2]);
    assert_eq!(h.partition_profile(&s(&[0, 0, 1, 1])), [2, 2]);
    assert_eq!(h.partition_profile(&s(&[0, 0, 0, 0])), [4]);
}

#[test]
fn schurian_subgroupoid_of_k23() {
    let res = named("cyclic:4", false);
    let c = res.components.component_of(v(&res, "s2"));
    let b = semiloopoid_of_dsb(&res.component_dsb(c).unwrap());
    let t = schurian_transversal(&b, 0).unwrap();
    assert_eq!(t.arrows.len(), 4);
    for from in 0..2 {
        for to in 0..2 {
            assert_eq!(b.target(from, t.arrow(from, to)), to);
        }
    }
}

#[test]
fn parallelise_k1_of_z3() {
    let res = named("cyclic:3", false);
    let c = res.components.component_of(v(&res, "s1"));
    let b = semiloopoid_of_dsb(&res.component_dsb(c).unwrap());
    let erased = b.relabel(&[vec![2, 0, 1], vec![1, 2, 0], vec![0, 2, 1]]).unwrap();
    let zeta = erased.vertex_index("s1").unwrap();
    let (_, d) = ms_labelling(&erased, zeta, Some(&[2, 1, 0])).unwrap();
    assert!(verify_dsb(&d).passed());
    let q = d.quiver();
    let comps = q.connected_components();
    assert_eq!((comps.count(), comps.size(0), comps.degree(0)), (1, 3, Some(1)));
}

#[test]
fn parallelise_isolated_s0() {
    let res = named("cyclic:3", false);
    let c = res.components.component_of(v(&res, "s0"));
    let b = semiloopoid_of_dsb(&res.component_dsb(c).unwrap());
    let (_, d) = ms_labelling(&b, 0, None).unwrap();
    let z3 = build_group("cyclic:3").unwrap();
    assert!(d.group().find_isomorphism(&z3).is_some());
    let g = d.group();
    for x in 0..3 {
        for y in 0..3 {
            assert_eq!(d.bullet(0, x, y), g.mul(x, y));
        }
    }
}

fn letter(t: &TernaryHeap, x: char) -> usize {
    t.index(["s4", "s5", "s6", "s7"][(x as u8 - b'a') as usize]).unwrap()
}

#[test]
fn heap_values() {
    let (_, t) = k4567();
    let l = |x| letter(&t, x);
    assert_eq!(t.get(l('a'), l('b'), l('a')), l('d'));
    assert_eq!(t.get(l('a'), l('c'), l('a')), l('c'));
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(t.get(i, i, j), j);
            assert_eq!(t.get(i, j, j), i);
        }
    }
    let r = verify_heap(&t);
    assert!(r.passed() && r.abelian);
}

#[test]
fn heap_labellings_at_a_and_d() {
    let (b, t) = k4567();
    let l = |x| letter(&t, x);
    let z4 = build_group("cyclic:4").unwrap();
    for (base, want) in [('a', [('a', 0), ('b', 3), ('c', 2), ('d', 1)]), ('d', [('d', 0), ('a', 1), ('b', 2), ('c', 3)])] {
        let lab = dynbrace::parallelise::compatible_labelling(&b, l(base)).unwrap();
        for (x, k) in want {
            assert_eq!(lab[l(x)], k, "base {base}, vertex {x}");
        }
        let (g, _) = group_from_pointed_heap(&t, l(base)).unwrap();
        assert!(g.find_isomorphism(&z4).is_some());
    }
}

#[test]
fn heap_completion_from_listed_values() {
    // The 24 listed values plus Mal'tsev rows determine the rest by A1.
    let (_, full) = k4567();
    let names = full.names().to_vec();
    let mut p = PartialHeap::new(names);
    p.fill_maltsev().unwrap();
    let l = |x| letter(&full, x);
    let listed = [
        "abad", "adab", "adbc", "acbd", "acdb", "abdc", "babc", "bcba", "bcad", "bdac", "bdca", "bacd", "cdcb",
        "cbcd", "cdba", "cabd", "cbda", "cadb", "dcda", "dadc", "dbac", "dcab", "dbca", "dacb",
    ];
    for w in listed {
        let c: Vec<char> = w.chars().collect();
        p.set(l(c[0]), l(c[1]), l(c[2]), l(c[3])).unwrap();
    }
    let t = p.complete().unwrap();
    // Oracle: x - y + z under a->0, b->3, c->2, d->1.
    let val = |x: usize| [0, 3, 2, 1][["s4", "s5", "s6", "s7"].iter().position(|n| *n == full.names()[x]).unwrap()];
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                let got = t.get(x, y, z);
                assert_eq!(val(got), (val(x) + 4 - val(y) + val(z)) % 4);
                assert_eq!(got, full.get(x, y, z));
            }
        }
    }
}

#[test]
fn heaps_and_braidings() {
    let z3 = TernaryHeap::of_group(&build_group("cyclic:3").unwrap());
    let (b, s) = braiding_from_heap(&z3).unwrap();
    assert!(verify_braiding(&b, &s).is_involutive());
    let s3 = TernaryHeap::of_group(&build_group("sym:3").unwrap());
    let (b, s) = braiding_from_heap(&s3).unwrap();
    let r = verify_braiding(&b, &s);
    assert!(r.passed());
    assert!(!r.is_involutive());
    let z2 = TernaryHeap::of_group(&build_group("cyclic:2").unwrap());
    let (b, s) = braiding_from_heap(&z2).unwrap();
    assert_eq!(b.num_vertices(), 2);
    assert_eq!(b.num_labels(), 2);
    assert!(verify_braiding(&b, &s).is_involutive());
}

/// `f^λ_a(b) = a⁻¹(a •_λ b)` read off the assignment.
fn f(h: &Holomorph, x: &RegularSubset, a: usize, b: usize) -> usize {
    h.eval(x.assignment[a], b)
}

#[test]
fn inverse_identity_holds_on_unital_subsets() {
    for spec in ["cyclic:3", "cyclic:4", "klein4", "sym:3"] {
        let h = hol(spec);
        let g: &FiniteGroup = h.group();
        let n = g.order();
        for x in enumerate_unital(&h, CAP).unwrap().vertices() {
            for a in 0..n {
                let fa = x.assignment[a];
                let finv = h.aut_inv(fa);
                let y = h.translate(&x, a);
                let key = g.inv(h.eval(finv, a));
                assert_eq!(y.assignment[key], finv, "{spec} {x:?} a={a}");
            }
        }
    }
}

#[test]
fn inverse_identity_on_initial_subsets() {
    // In general the translate assigns f_a⁻¹ ∘ f_1 to (f_a⁻¹(a))⁻¹, which is
    // f_a⁻¹ only when f_1 = id.
    for spec in ["cyclic:3", "cyclic:4", "klein4"] {
        let h = hol(spec);
        let g = h.group();
        for x in enumerate_full(&h, CAP).unwrap().vertices() {
            for a in 0..g.order() {
                let finv = h.aut_inv(x.assignment[a]);
                let y = h.translate(&x, a);
                let key = g.inv(h.eval(finv, a));
                assert_eq!(y.assignment[key], h.compose(finv, x.assignment[0]));
            }
        }
    }
    let h = hol("cyclic:3");
    let r3 = s(&[1, 0, 0]);
    let y = h.translate(&r3, 0);
    assert_eq!(y, s(&[0, 1, 1]));
    assert_eq!(f(&h, &y, 0, 1), 1);
    assert_ne!(f(&h, &y, 0, 1), h.eval(h.aut_inv(r3.assignment[0]), 1));
}
