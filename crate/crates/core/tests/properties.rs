//! Property tests over seeds and small group-algebra extensions. Dimension
//! expectations come from orbit counts on permutation bases.

use std::collections::HashSet;

use proptest::prelude::*;
use ringext::bimodule::{hom_bimodule, is_bimodule_map, summand_witness, tensor_over, Side};
use ringext::canonical::{build_canonical, hom_correspondence_holds, verify_ring_axioms, CanonicalRings};
use ringext::certify::{classify, find_d2_quasibases, PivotOrder};
use ringext::equivalences::{gamma_d2, gamma_separable, random_left_module, triangle_check, ModuleInstance};
use ringext::linalg::{combine, span_decide};
use ringext::normality::{centralizer_normality_suite, ideal_closure, prebraided_check};
use ringext::sample::{random_vector, rng};
use ringext::{corpus, io, report, Bimodule, Extension, FDAlgebra, Field, GroupData, Subspace};

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

fn groups() -> Vec<GroupData> {
    vec![GroupData::cyclic(4), GroupData::symmetric(3), GroupData::quaternion()]
}

fn field(k: usize) -> Field {
    [Field::Rational, Field::prime(2).unwrap(), Field::prime(3).unwrap(), Field::prime(5).unwrap()][k]
}

/// Orbits of a group of maps on `0..n` generated by `step`.
fn orbit_count(n: usize, step: impl Fn(usize) -> Vec<usize>) -> usize {
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(x) = stack.pop() {
            for y in step(x) {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    count
}

struct OrbitDims {
    square: usize,
    r: usize,
    s: usize,
    t: usize,
}

fn orbit_dims(g: &GroupData, h: &[usize]) -> OrbitDims {
    let n = g.order();
    let m = |a, b| g.mul(a, b);
    let inv = |a| g.inverse(a);
    let r = orbit_count(n, |x| h.iter().map(|&k| m(m(k, x), inv(k))).collect());
    let pairs = |x: usize| (x / n, x % n);
    let s = orbit_count(n * n, |p| {
        let (x, y) = pairs(p);
        h.iter()
            .flat_map(|&a| h.iter().map(move |&b| (a, b)))
            .map(|(a, b)| m(m(a, x), b) * n + m(m(a, y), b))
            .collect()
    });
    let t = orbit_count(n * n, |p| {
        let (x, y) = pairs(p);
        h.iter()
            .flat_map(|&a| h.iter().map(move |&b| (a, b)))
            .map(|(a, b)| m(m(a, x), b) * n + m(m(inv(b), y), inv(a)))
            .collect()
    });
    OrbitDims { square: n * n / h.len(), r, s, t }
}

fn d2_canonical(idx: usize) -> CanonicalRings {
    let names = ["q-s3-over-q-a3", "q-c2-over-q", "q-q8-over-q-c4", "q-m2-over-q"];
    build_canonical(&corpus::extension(names[idx % names.len()]).unwrap().unwrap()).unwrap()
}

proptest! {
    #![proptest_config(cases(24))]

    #[test]
    fn span_decide_is_sound(seed in any::<u64>(), n in 1usize..5, k in 0usize..5, fi in 0usize..4) {
        let f = field(fi);
        let mut r = rng(seed);
        let gens: Vec<_> = (0..k).map(|_| random_vector(f, n, &mut r)).collect();
        let target = random_vector(f, n, &mut r);
        let span = Subspace::span(f, n, gens.iter().cloned());
        match span_decide(f, &gens, &target).unwrap() {
            Some(c) => prop_assert_eq!(combine(f, n, &c, &gens), target),
            None => prop_assert!(!span.contains(&target)),
        }
        let coeffs = random_vector(f, k, &mut r);
        let inside = combine(f, n, &coeffs, &gens);
        prop_assert!(span_decide(f, &gens, &inside).unwrap().is_some());
    }

    #[test]
    fn ideal_closure_is_a_two_sided_ideal(seed in any::<u64>(), gi in 0usize..3) {
        let a = FDAlgebra::group_algebra(&groups()[gi], Field::Rational);
        let mut r = rng(seed);
        let x = random_vector(a.field(), a.dim(), &mut r);
        let j = ideal_closure(&a, std::slice::from_ref(&x));
        prop_assert!(j.closure.contains(&x));
        for v in j.closure.basis() {
            for i in 0..a.dim() {
                let e = a.basis_vector(i);
                prop_assert!(j.closure.contains(&a.mul(&e, v)));
                prop_assert!(j.closure.contains(&a.mul(v, &e)));
            }
        }
    }
}

proptest! {
    #![proptest_config(cases(8))]

    #[test]
    fn group_algebras_validate_and_center_closes(gi in 0usize..3, fi in 0usize..4, seed in any::<u64>()) {
        let g = &groups()[gi];
        let a = FDAlgebra::group_algebra(g, field(fi));
        prop_assert!(a.check_axioms().is_ok());
        let a = std::sync::Arc::new(a);
        let full: Vec<_> = (0..a.dim()).map(|i| a.basis_vector(i)).collect();
        let ext = Extension::subalgebra(a.clone(), &full).unwrap();
        prop_assert!(ext.iota().inverse().is_some());
        let z = a.center();
        let mut r = rng(seed);
        let x = z.element(&random_vector(a.field(), z.dim(), &mut r));
        let y = z.element(&random_vector(a.field(), z.dim(), &mut r));
        prop_assert!(z.contains(&a.mul(&x, &y)));
        prop_assert_eq!(a.mul(&x, &y), a.mul(&y, &x));
    }

    #[test]
    fn canonical_dims_match_orbit_counts(gi in 0usize..3, si in 0usize..6, fi in 0usize..4) {
        let g = &groups()[gi];
        // Q8 over the trivial subgroup (square of dim 64) takes ~25s in debug builds.
        let subs: Vec<_> = g.all_subgroups().into_iter().filter(|h| g.order() * g.order() / h.len() <= 36).collect();
        let h = &subs[si % subs.len()];
        let ext = Extension::from_subgroup(g, field(fi), h).unwrap();
        let c = build_canonical(&ext).unwrap();
        let o = orbit_dims(g, h);
        prop_assert_eq!(c.square.dim(), o.square);
        prop_assert_eq!(c.r.dim(), o.r);
        prop_assert_eq!(c.s.dim(), o.s);
        prop_assert_eq!(c.t.dim(), o.t);
        prop_assert!(verify_ring_axioms(&c).unwrap().all_passed());
    }

    #[test]
    fn tensor_dim_matches_free_rank(gi in 0usize..3, si in 0usize..6) {
        let g = &groups()[gi];
        let subs = g.all_subgroups();
        let h = &subs[si % subs.len()];
        let ext = Extension::from_subgroup(g, Field::Rational, h).unwrap();
        let aa = Bimodule::regular(ext.a());
        let (m, t) = tensor_over(&aa.restrict_right(&ext).unwrap(), &aa.restrict_left(&ext).unwrap()).unwrap();
        prop_assert_eq!(t.dim(), g.order() * g.order() / h.len());
        prop_assert_eq!(m.dim(), t.dim());
        prop_assert!(m.validate().is_ok());
    }

    #[test]
    fn hom_bases_commute_and_summand_witnesses_verify(idx in 0usize..4, seed in 0u64..1000) {
        let c = d2_canonical(idx);
        let m = random_left_module(c.a(), seed).unwrap();
        let n = m.direct_sum(&Bimodule::left_regular(c.a())).unwrap();
        let hom = hom_bimodule(&m, &n).unwrap();
        for f in hom.basis() {
            prop_assert!(is_bimodule_map(&m, &n, &f));
        }
        let w = summand_witness(&m, &n).unwrap();
        prop_assert!(w.is_some());
        prop_assert!(w.unwrap().verify(&m, &n));
    }

    #[test]
    fn hom_correspondence_on_sum_bimodules(idx in 0usize..4) {
        let c = d2_canonical(idx);
        prop_assert!(hom_correspondence_holds(&c, &c.a_a).unwrap());
        prop_assert!(hom_correspondence_holds(&c, &c.square_module).unwrap());
        let sum = c.a_a.direct_sum(&c.square_module).unwrap();
        prop_assert!(hom_correspondence_holds(&c, &sum).unwrap());
    }

    #[test]
    fn quasibases_pass_random_identities(idx in 0usize..4, seed in any::<u64>()) {
        let c = d2_canonical(idx);
        for side in [Side::Left, Side::Right] {
            let q = find_d2_quasibases(&c, side, PivotOrder::Natural).unwrap().unwrap();
            prop_assert!(q.verify_random(&c, &mut rng(seed), 4));
        }
    }

    #[test]
    fn gamma_is_natural_on_random_modules(idx in 0usize..4, seed in 0u64..1000) {
        let c = d2_canonical(idx);
        let cl = classify(&c).unwrap();
        let m = ModuleInstance::new("random", random_left_module(c.a(), seed).unwrap());
        prop_assert!(gamma_d2(&c, &m, cl.left_d2.as_ref().unwrap(), seed).unwrap().is_verified());
        if let Some(e) = cl.separable.as_ref() {
            prop_assert!(gamma_separable(&c, &m, e, seed).unwrap().is_verified());
        }
        prop_assert!(triangle_check(&c, &m.module).unwrap());
    }

    #[test]
    fn prebraiding_ignores_pivot_order(idx in 0usize..4) {
        let c = d2_canonical(idx);
        for order in [PivotOrder::Natural, PivotOrder::Reversed] {
            let q = find_d2_quasibases(&c, Side::Right, order).unwrap().unwrap();
            prop_assert!(q.verify(&c));
            prop_assert!(prebraided_check(&c, &q).unwrap());
        }
    }

    #[test]
    fn d2_centralizers_are_normal_on_random_ideals(idx in 0usize..4, seed in any::<u64>()) {
        let c = d2_canonical(idx);
        let a = c.a();
        let mut r = rng(seed);
        let gens: Vec<_> = (0..2).map(|_| random_vector(a.field(), a.dim(), &mut r)).collect();
        let mut j = ideal_closure(a, &gens);
        j.label = "random".into();
        let rep = centralizer_normality_suite(&c, &[j], &[], true, true).unwrap();
        prop_assert!(rep.normal_on_sample());
    }
}

proptest! {
    #![proptest_config(cases(4))]

    #[test]
    fn reports_are_deterministic(idx in 0usize..10, seed in 0u64..100) {
        let name = corpus::NAMES[idx];
        let input = io::input_from_value(corpus::document(name, seed).unwrap().unwrap()).unwrap();
        let a = report::analyze(&input, seed).unwrap();
        let b = report::analyze(&input, seed).unwrap();
        prop_assert_eq!(a.to_string(), b.to_string());
        let checked = report::verify(&a).unwrap();
        prop_assert_eq!(&checked["all_verified"], &serde_json::Value::Bool(true));
        let keys: HashSet<_> = a.as_object().unwrap().keys().cloned().collect();
        prop_assert!(keys.contains("classification"));
    }
}
