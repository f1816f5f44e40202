use aschbacher::extraspecial::{
    normalizer_by_lifting, normalizer_structure_check, rep_matrices, verify_rep, RGroupSpec, Variant,
};
use aschbacher::gf::make_field;
use aschbacher::group::Group;

#[test]
fn representations_have_the_textbook_invariants() {
    let cases = [
        (RGroupSpec::new(2, 1, Variant::TwoPlus), 3, 1),
        (RGroupSpec::new(2, 1, Variant::TwoMinus), 3, 1),
        (RGroupSpec::new(2, 2, Variant::TwoPlus), 3, 1),
        (RGroupSpec::new(3, 1, Variant::OddPlus), 2, 2),
        (RGroupSpec::new(2, 1, Variant::FourCentral), 5, 1),
    ];
    for (spec, p, e) in cases {
        let f = make_field(p, e).unwrap();
        let rep = verify_rep(&spec, &f).unwrap();
        assert!(rep.passed, "{rep:?}");
    }
}

#[test]
fn both_primitive_cube_roots_give_representations() {
    let f = make_field(7, 1).unwrap();
    for idx in 1..=2 {
        let spec = RGroupSpec { lambda_index: idx, ..RGroupSpec::new(3, 1, Variant::OddPlus) };
        assert!(verify_rep(&spec, &f).unwrap().passed);
    }
    let bad = RGroupSpec { lambda_index: 3, ..RGroupSpec::new(3, 1, Variant::OddPlus) };
    assert!(rep_matrices(&bad, &f).is_err());
}

#[test]
fn normalizer_orders_match_scans() {
    // Q8 in GL2(3): the normalizer is all of GL2(3), order 48
    let f3 = make_field(3, 1).unwrap();
    let q8 = normalizer_structure_check(&RGroupSpec::new(2, 1, Variant::TwoMinus), &f3).unwrap();
    assert_eq!(q8.normalizer_order, 48);
    // D8 in GL2(3): order 2 * 4 * 2 = 16 and inside the orthogonal similitudes
    let d8 = normalizer_structure_check(&RGroupSpec::new(2, 1, Variant::TwoPlus), &f3).unwrap();
    assert_eq!(d8.normalizer_order, 16);
    assert_eq!(d8.inside_form_similarities, Some(true));
}

#[test]
fn lifting_agrees_with_scan_for_q8() {
    let f = make_field(3, 1).unwrap();
    let gens = rep_matrices(&RGroupSpec::new(2, 1, Variant::TwoMinus), &f).unwrap();
    let lifted = normalizer_by_lifting(&gens).unwrap();
    let mut all = gens.gens().to_vec();
    all.extend(lifted);
    all.push(aschbacher::gf::Mat::scalar(&f, 2, f.primitive()));
    let n = Group::close_mats(&f, 2, &all, 10_000).unwrap();
    assert_eq!(n.order(), 48);
}

#[test]
fn heisenberg_normalizer_in_gl3_4() {
    // 3 * 9 * |Sp2(3)| = 648
    let f = make_field(2, 2).unwrap();
    let rep = normalizer_structure_check(&RGroupSpec::new(3, 1, Variant::OddPlus), &f).unwrap();
    assert_eq!(rep.normalizer_order, 648);
    assert!(rep.passed, "{rep:?}");
}
