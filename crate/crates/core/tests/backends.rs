use algebroid_core::finite::{delta_tangent, enumerate_sections, pullback, Atom, FinMap, FinSet};
use algebroid_core::jet::{
    ell, flat_to_tower, flip_c, tower_to_flat, vertical_difference, vertical_factor, Jet2, JetTangent, SmoothMap,
    Space, TVec,
};
use algebroid_core::tangent::{
    check_additive, check_lift_and_flip, check_naturality, check_retraction, TangentStructure,
};
use algebroid_core::SamplePlan;
use proptest::prelude::*;

/// `f(x, y) = x^2 y + sin x`.
fn f() -> SmoothMap {
    SmoothMap::total("x^2 y + sin x", 2, 1, |v| vec![v[0] * v[0] * v[1] + v[0].sin()])
}

#[test]
fn second_order_jets_match_closed_form() {
    // f on (x + u e1 + w e2, y + v e1 + z e2): the e1e2 part is the mixed
    // second derivative D^2f[(u, v), (w, z)] and nothing else
    let (x, y, u, v, w, z) = (0.7, -1.3, 0.4, 2.0, -0.5, 1.5);
    let out = f()
        .eval_jets(&[Jet2::new(x, u, w, 0.0), Jet2::new(y, v, z, 0.0)])
        .unwrap()[0];
    let fx = 2.0 * x * y + x.cos();
    let fy = x * x;
    let fxx = 2.0 * y - x.sin();
    let fxy = 2.0 * x;
    assert!((out.a - (x * x * y + x.sin())).abs() < 1e-15);
    assert!((out.b - (fx * u + fy * v)).abs() < 1e-14);
    assert!((out.c - (fx * w + fy * z)).abs() < 1e-14);
    assert!((out.d - (fxx * u * w + fxy * (u * z + v * w))).abs() < 1e-14);
}

#[test]
fn jet_tangent_witness_laws() {
    let w = JetTangent::default();
    let plan = SamplePlan::default();
    let spaces = [Space(1), Space(2), Space(3)];
    assert!(check_retraction(&w, &spaces, &plan).passed);
    assert!(check_naturality(&w, &f(), &plan).passed);
    assert!(check_additive(&w, &spaces, &plan).unwrap().passed);
    for r in check_lift_and_flip(&w, &spaces, &plan).unwrap() {
        assert!(r.passed, "{r}");
    }
}

#[test]
fn flip_is_natural_so_the_difference_is_vertical_zero() {
    // c;T^2 f;c = T^2 f because second derivatives are symmetric
    let tower = [Jet2::new(0.3, 1.0, 2.0, 0.0), Jet2::new(-0.2, 0.5, -1.0, 0.0)];
    let lhs = f().eval_jets(&tower).unwrap();
    let rhs = f().eval_jets(&flip_c(&tower)).unwrap();
    let rhs = flip_c(&rhs);
    let diff = vertical_difference(&lhs, &rhs).unwrap();
    let factor = vertical_factor(&diff, 1e-12).unwrap();
    assert!(factor.dir[0].abs() < 1e-14);
}

#[test]
fn vertical_lift_round_trip() {
    let v = TVec::new(vec![1.0, 2.0], vec![-3.0, 4.0]);
    let lifted = ell(&v);
    assert_eq!(vertical_factor(&lifted, 0.0).unwrap(), v);
    assert_eq!(flat_to_tower(&tower_to_flat(&lifted)).unwrap(), lifted);
}

proptest! {
    #[test]
    fn tangent_is_functorial(x in -2.0..2.0f64, y in -2.0..2.0f64, u in -2.0..2.0f64, v in -2.0..2.0f64) {
        // T(g . f) = Tg . Tf with g(t) = exp(t)
        let g = SmoothMap::total("exp", 1, 1, |t| vec![t[0].exp()]);
        let composite = f().then(&g).unwrap().tangent().eval(&[x, y, u, v]).unwrap();
        let stepwise = f().tangent().then(&g.tangent()).unwrap().eval(&[x, y, u, v]).unwrap();
        for (a, b) in composite.iter().zip(&stepwise) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()));
        }
    }
}

#[test]
fn delta_pullbacks_have_brute_force_cardinality() {
    let w = delta_tangent();
    let a = FinSet::range(3);
    let c = FinSet::range(2);
    let f = FinMap::new(a.clone(), c.clone(), |x| {
        Atom::Int(if *x == Atom::Int(2) { 1 } else { 0 })
    })
    .unwrap();
    let g = FinMap::new(a.clone(), c.clone(), |x| x.clone().min(Atom::Int(1))).unwrap();
    let pb = pullback(&f, &g).unwrap();
    let brute = a
        .iter()
        .flat_map(|x| a.iter().map(move |y| (x, y)))
        .filter(|(x, y)| f.apply(x).unwrap() == g.apply(y).unwrap())
        .count();
    assert_eq!(pb.apex.len(), brute);
    let comparison = w.compare_pullback(&pb).unwrap();
    assert!(comparison.is_iso());
    assert_eq!(comparison.target.apex.len(), brute * brute);
    // T of the projection is the projection of T
    assert_eq!(w.t_map(&pb.left).domain().len(), brute * brute);
}

#[test]
fn delta_sections_of_the_projection() {
    // sections of p : X x X -> X are the maps X -> X
    let w = delta_tangent();
    for n in 1..=3usize {
        let p = w.projection(&FinSet::range(n));
        assert_eq!(enumerate_sections(&p).len(), n.pow(n as u32));
    }
}
