use ringext::canonical::build_canonical;
use ringext::certify::classify;
use ringext::equivalences::{gamma_d2, random_left_module, ModuleInstance};
use ringext::normality::{centralizer_normality_suite, default_ideal_sample, double_centralizer, square_instance, SAMPLED_VERDICT};
use ringext::{corpus, Extension, Field, GroupData};

#[test]
fn q8_over_its_cyclic_subgroup_is_d2_with_normal_centralizer() {
    let (g, h) = corpus::group("q-q8-over-q-c4").unwrap();
    let ext = Extension::from_subgroup(&g, Field::Rational, &h).unwrap();
    let c = build_canonical(&ext).unwrap();
    let cl = classify(&c).unwrap();
    assert!(cl.is_left_d2() && cl.is_right_d2() && cl.is_separable());

    let dc = double_centralizer(&ext);
    assert_eq!(dc.cc.dim(), 6);
    assert!(dc.strict);
    assert!(dc.cc.contains_subspace(&ext.image()));

    let ideals = default_ideal_sample(&c, Some(&g)).unwrap();
    let rep = centralizer_normality_suite(&c, &ideals, &[square_instance(&c)], true, true).unwrap();
    assert!(rep.normal_on_sample());
    assert_eq!(rep.verdict(), SAMPLED_VERDICT);

    let q = cl.left_d2.as_ref().unwrap();
    let m = ModuleInstance::new("ideal", random_left_module(c.a(), 3).unwrap());
    assert!(gamma_d2(&c, &m, q, 3).unwrap().is_verified());
}

#[test]
fn s3_over_a_transposition_is_separable_but_not_d2() {
    let g = GroupData::symmetric(3);
    let ext = Extension::from_subgroup(&g, Field::Rational, &corpus::S3_TRANSPOSITION).unwrap();
    let c = build_canonical(&ext).unwrap();
    let cl = classify(&c).unwrap();
    assert!(cl.is_separable() && cl.is_split());
    assert!(!cl.is_left_d2() && !cl.is_right_d2());
    assert!(!cl.is_h_separable());
}

#[test]
fn s3_over_a3_in_characteristic_two_loses_separability() {
    let g = GroupData::symmetric(3);
    let ext = Extension::from_subgroup(&g, Field::prime(2).unwrap(), &corpus::S3_A3).unwrap();
    let c = build_canonical(&ext).unwrap();
    let cl = classify(&c).unwrap();
    assert!(cl.is_left_d2() && cl.is_right_d2());
    assert!(cl.is_split());
    assert!(!cl.is_separable());
}
