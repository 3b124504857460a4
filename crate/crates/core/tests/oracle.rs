mod common;

use ringext::canonical::build_canonical;
use ringext::corpus;

fn solver_dims(name: &str) -> (usize, usize, usize, usize) {
    let c = build_canonical(&corpus::extension(name).unwrap().unwrap()).unwrap();
    (c.square.dim(), c.r.dim(), c.s.dim(), c.t.dim())
}

#[test]
fn s3_over_a3_matches_dense_oracle() {
    let (a, b) = common::s3_over_a3();
    let o = common::dims(&a, &b);
    assert_eq!((o.square, o.r, o.s, o.t), (12, 4, 8, 8));
    assert_eq!(solver_dims("q-s3-over-q-a3"), (o.square, o.r, o.s, o.t));
}

#[test]
fn m2_over_q_matches_dense_oracle() {
    let (a, b) = common::m2_over_q();
    let o = common::dims(&a, &b);
    assert_eq!((o.square, o.r, o.s, o.t), (16, 4, 16, 16));
    assert_eq!(solver_dims("q-m2-over-q"), (o.square, o.r, o.s, o.t));
}

#[test]
fn oracle_rank_sanity() {
    use num_rational::BigRational;
    let q = |v: i64| BigRational::from_integer(v.into());
    let rows = vec![vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(1)]];
    assert_eq!(common::rank(rows), 2);
}

#[test]
fn conditional_expectation_existence_matches_brute_force() {
    use num_rational::BigRational;
    use ringext::certify::find_conditional_expectation;
    let q = |v: i64| BigRational::from_integer(v.into());

    let (a, b) = common::m2_over_upper_triangular();
    assert!(!common::expectation_exists(&a, &b, &[q(1), q(0), q(0), q(1)]));
    let c = build_canonical(&corpus::extension("q-m2-over-q-t2").unwrap().unwrap()).unwrap();
    assert!(find_conditional_expectation(&c).unwrap().is_none());

    let (a, b) = common::s3_over_a3();
    let one = a.unit_vec(0);
    assert!(common::expectation_exists(&a, &b, &one));
    let c = build_canonical(&corpus::extension("q-s3-over-q-a3").unwrap().unwrap()).unwrap();
    assert!(find_conditional_expectation(&c).unwrap().is_some());
}
