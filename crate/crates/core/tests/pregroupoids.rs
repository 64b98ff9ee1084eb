use algebroid_core::examples::{affine1, finite_pregroupoid, smooth_pair_pregroupoid};
use algebroid_core::groupoid::FiniteGroupoid;
use algebroid_core::pregroupoid::{FinitePregroupoid, SmoothPregroupoid};
use algebroid_core::tangent::max_abs_diff;
use algebroid_core::SamplePlan;
use proptest::prelude::*;

#[test]
fn cyclic_group_splits_as_a_product() {
    // over a point every vector is alpha constant: |TX| = n^2 and
    // |X x T^alpha_B X| = n * n
    for n in 1..=4usize {
        let p = FinitePregroupoid::from_groupoid(&FiniteGroupoid::cyclic(n)).unwrap();
        assert_eq!(p.split_cardinalities().unwrap(), (n * n, n * n));
        assert!(p.check_splitting().unwrap().iter().all(|r| r.passed));
    }
}

#[test]
fn pair_pregroupoid_counts() {
    // |X| = n^2, composable triples n^2 * n * n, T^alpha X = sum over x
    // of the alpha fibre size n
    for n in 1..=3usize {
        let p = FinitePregroupoid::pair(n);
        assert_eq!(p.composable().len(), n.pow(4));
        assert_eq!(p.split_cardinalities().unwrap(), (n.pow(3), n.pow(3)));
    }
}

#[test]
fn registry_pregroupoids_satisfy_their_laws() {
    for key in [
        "pair-pregroupoid:2",
        "pair-pregroupoid-padded:2",
        "pair-groupoid:2",
        "abelian:3",
    ] {
        let p = finite_pregroupoid(key).unwrap();
        for r in p.check_pregroupoid().unwrap() {
            assert!(r.passed, "{key}: {r}");
        }
        assert!(p.check_xi_involution().unwrap().passed, "{key}");
        for r in p.check_squares(3).unwrap() {
            assert!(r.passed, "{key}: {r}");
        }
    }
}

#[test]
fn smooth_pair_pregroupoid_split_moves_the_vector_to_the_unit() {
    // x = (a, b), vector (0, w): the split is b together with w
    let p = smooth_pair_pregroupoid(2);
    let (x, nu) = p.split(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
    assert_eq!(x, vec![1.0, 2.0, 3.0, 4.0]);
    assert_eq!(nu, vec![3.0, 4.0, 5.0, 6.0]);
}

proptest! {
    #[test]
    fn affine_split_round_trips(u in -2.0..2.0f64, b in -2.0..2.0f64, du in -3.0..3.0f64, db in -3.0..3.0f64) {
        let p = SmoothPregroupoid::from_groupoid(&affine1()).unwrap();
        let a = (u / 2.0).exp();
        let w = [a, b, du, db];
        let (x, nu) = p.split(&w).unwrap();
        prop_assert!(max_abs_diff(&nu, &[du / a, db / a]) <= 1e-12);
        prop_assert!(max_abs_diff(&p.unsplit(&x, &nu).unwrap(), &w) <= 1e-12);
    }
}

#[test]
fn smooth_squares_commute_on_more_samples() {
    let p = smooth_pair_pregroupoid(3).with_tolerance(1e-12);
    let plan = SamplePlan::new(100, 11);
    for r in p
        .check_squares(&plan)
        .unwrap()
        .iter()
        .chain(&p.check_splitting(&plan).unwrap())
    {
        assert!(r.passed, "{r}");
        assert_eq!(r.checked, 100);
    }
}
