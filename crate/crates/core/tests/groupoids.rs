use algebroid_core::algebroid::Algebroid;
use algebroid_core::examples::{abelian, affine1, pair_groupoid, scaling};
use algebroid_core::groupoid::FiniteGroupoid;
use algebroid_core::jet::SmoothMap;
use algebroid_core::tangent::max_abs_diff;
use algebroid_core::SamplePlan;

#[test]
fn cyclic_groups_have_one_field_per_vector_at_the_identity() {
    // over one object every vector at the identity is source constant
    for n in 1..=4usize {
        let count = FiniteGroupoid::cyclic(n).count_bijection().unwrap();
        assert_eq!((count.sections, count.invariant_fields), (n, n));
        assert!(count.is_bijection());
    }
}

#[test]
fn pair_groupoid_mu_s_translates_the_source() {
    // (a, b) acts on a vector (0, w) at (b, c) giving (0, w) at (a, c)
    let g = pair_groupoid(1);
    let out = g.mu_s(&[0.5, 2.0], &[2.0, -1.0, 3.0]).unwrap();
    assert_eq!(out, vec![0.5, -1.0, 3.0]);
    assert!(g.mu_s(&[0.5, 2.0], &[1.0, -1.0, 3.0]).is_err());
}

#[test]
fn extension_on_the_pair_groupoid_reads_the_section_at_the_target() {
    let g = pair_groupoid(1);
    let plan = SamplePlan::default();
    let fibre = SmoothMap::total("cos", 1, 1, |m| vec![m[0].cos()]);
    let field = g.extend(&g.section_from_fibre(&fibre).unwrap(), &plan).unwrap();
    for arrow in g.sample_arrows(&plan).unwrap() {
        let value = field.0.eval(&arrow).unwrap();
        assert!(max_abs_diff(&value, &[arrow[0], arrow[1], arrow[1].cos()]) <= 1e-15);
    }
}

#[test]
fn abelian_groups_have_abelian_algebras() {
    for g in [abelian(1), abelian(3), scaling()] {
        let a = Algebroid::new(g, SamplePlan::default());
        let c = a.structure_constants(&a.standard_basis().unwrap()).unwrap();
        assert!(c.max_abs() <= 1e-12, "{c}");
    }
}

#[test]
fn pair_groupoid_bracket_is_the_vector_field_bracket() {
    // on M = R^2 sections are vector fields; compare with the hand bracket
    // [v, w] = Dw v - Dv w for v = (y, 1) and w = (x y, x)
    let g = pair_groupoid(2);
    let a = Algebroid::new(g.clone(), SamplePlan::new(16, 3));
    let v = g
        .section_from_fibre(&SmoothMap::total("(y, 1)", 2, 2, |m| vec![m[1], m[1] * 0.0 + 1.0]))
        .unwrap();
    let w = g
        .section_from_fibre(&SmoothMap::total("(xy, x)", 2, 2, |m| vec![m[0] * m[1], m[0]]))
        .unwrap();
    let vw = a.bracket_sections(&v, &w).unwrap();
    for m in g.sample_base(a.plan()) {
        let (x, y) = (m[0], m[1]);
        // Dw = [[y, x], [1, 0]], Dv = [[0, 1], [0, 0]]
        let dw_v = [y * y + x, y];
        let dv_w = [x, 0.0];
        let expected = [dw_v[0] - dv_w[0], dw_v[1] - dv_w[1]];
        assert!(max_abs_diff(&vw.0.eval(&m).unwrap()[2..], &expected) <= 1e-9, "{m:?}");
    }
}

#[test]
fn affine_anchor_vanishes_over_a_point() {
    let a = Algebroid::new(affine1(), SamplePlan::default());
    for v in a.standard_basis().unwrap() {
        assert_eq!(a.anchor(&v).unwrap().cod(), 0);
    }
}
