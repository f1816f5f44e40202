use aschbacher::classes::{construct, verify_member, ClassParams, ClassSpec, ClassWitness};
use aschbacher::extraspecial::{RGroupSpec, Variant};
use aschbacher::forms::{FormKind, OrthType};
use aschbacher::gf::{make_field, Mat, Subspace};
use aschbacher::group::{GenSet, Group};
use aschbacher::module::{end_ring, intertwiners};

fn check(spec: ClassSpec, expected: u128) -> Group {
    let member = construct(&spec).unwrap();
    assert_eq!(member.expected_order, expected, "{}", spec.label());
    let g = Group::close(&member.gens, 2_000_000).unwrap();
    assert_eq!(g.order() as u128, expected, "{}", spec.label());
    let v = verify_member(&member.gens, &member.witness);
    assert!(v.passed, "{}: {}", spec.label(), v.detail);
    g
}

#[test]
fn golden_construction_matrix() {
    check(ClassSpec::new(2, 3, 1, ClassParams::C1 { k: 1 }), 12);
    check(ClassSpec::new(2, 3, 1, ClassParams::C2 { m: 1, k: 2 }), 8);
    check(ClassSpec::new(2, 3, 1, ClassParams::C3 { r: 2 }), 16);
    check(ClassSpec::new(6, 2, 1, ClassParams::C4 { n1: 2, n2: 3 }), 1008);
    check(ClassSpec::new(2, 2, 2, ClassParams::C5 { r: 2 }), 18);
    let q8 = RGroupSpec::new(2, 1, Variant::TwoMinus);
    check(ClassSpec::new(2, 3, 1, ClassParams::C6 { rgroup: q8 }), 48);
    check(ClassSpec::new(9, 2, 1, ClassParams::C7 { m: 3, k: 2 }), 56448);
    check(
        ClassSpec::new(4, 2, 1, ClassParams::C8 { kind: FormKind::Symplectic, subtype: None }),
        720,
    );
}

#[test]
fn further_members() {
    check(ClassSpec::new(3, 2, 1, ClassParams::C1 { k: 2 }), 24);
    check(ClassSpec::new(4, 2, 1, ClassParams::C2 { m: 2, k: 2 }), 72);
    check(ClassSpec::new(3, 2, 1, ClassParams::C2 { m: 1, k: 3 }), 6);
    check(ClassSpec::new(3, 2, 1, ClassParams::C3 { r: 3 }), 21);
    check(ClassSpec::new(4, 2, 1, ClassParams::C3 { r: 2 }), 360);
    check(ClassSpec::new(2, 5, 1, ClassParams::C3 { r: 2 }), 48);
    check(ClassSpec::new(3, 3, 1, ClassParams::C8 { kind: FormKind::Quadratic, subtype: Some(OrthType::Circ) }), 48);
    check(ClassSpec::new(3, 2, 2, ClassParams::C8 { kind: FormKind::Unitary, subtype: None }), 648);
    let four = RGroupSpec::new(2, 1, Variant::FourCentral);
    check(ClassSpec::new(2, 5, 1, ClassParams::C6 { rgroup: four }), 4 * 4 * 6);
}

#[test]
fn invalid_specs_are_rejected() {
    let bad = [
        ClassSpec::new(2, 3, 1, ClassParams::C1 { k: 2 }),
        ClassSpec::new(4, 3, 1, ClassParams::C4 { n1: 2, n2: 2 }),
        ClassSpec::new(2, 3, 1, ClassParams::C5 { r: 2 }),
        ClassSpec::new(4, 3, 1, ClassParams::C7 { m: 2, k: 2 }),
        ClassSpec::new(2, 3, 1, ClassParams::C8 { kind: FormKind::Symplectic, subtype: None }),
        ClassSpec::new(2, 2, 2, ClassParams::C8 { kind: FormKind::Unitary, subtype: None }),
        ClassSpec::new(4, 2, 1, ClassParams::C8 { kind: FormKind::Quadratic, subtype: Some(OrthType::Plus) }),
        ClassSpec::new(2, 3, 1, ClassParams::C6 { rgroup: RGroupSpec::new(2, 1, Variant::TwoPlus) }),
        ClassSpec::new(3, 2, 2, ClassParams::C6 { rgroup: RGroupSpec::new(3, 1, Variant::OddPlus) }),
    ];
    for spec in bad {
        assert!(construct(&spec).is_err(), "{}", spec.label());
    }
}

#[test]
fn monomial_witness_and_negative_controls() {
    let member = construct(&ClassSpec::new(2, 3, 1, ClassParams::C2 { m: 1, k: 2 })).unwrap();
    let f = member.gens.field().clone();
    let lines = ClassWitness::C2 {
        summands: vec![Subspace::coordinate(&f, 2, &[0]), Subspace::coordinate(&f, 2, &[1])],
    };
    assert!(verify_member(&member.gens, &lines).passed);
    let borel = construct(&ClassSpec::new(2, 3, 1, ClassParams::C1 { k: 1 })).unwrap();
    assert!(!verify_member(&borel.gens, &lines).passed);
}

#[test]
fn singer_cycle_in_c3_member() {
    let member = construct(&ClassSpec::new(3, 2, 1, ClassParams::C3 { r: 3 })).unwrap();
    let g = Group::close(&member.gens, 1000).unwrap();
    let singer = (0..g.order()).find(|&i| g.element_order(i) == 7).unwrap();
    let s = g.element(singer).clone();
    let f = member.gens.field().clone();
    let cyc = GenSet::new("s", &f, 3, vec![s]).unwrap();
    assert!(aschbacher::module::is_irreducible(cyc.gens(), Default::default(), 1).unwrap());
}

#[test]
fn tensor_members_centralize_the_other_factor() {
    let f = make_field(2, 1).unwrap();
    // C_GL(V)(1 (x) GL3) = GL2 (x) 1
    let member = construct(&ClassSpec::new(6, 2, 1, ClassParams::C4 { n1: 2, n2: 3 })).unwrap();
    let right: Vec<Mat> = member.gens.gens()[3..].to_vec();
    let cent = end_ring(&right).unwrap();
    assert_eq!(cent.len(), 4);
    for c in &cent {
        assert!(aschbacher::module::kron_factor(c, 2).is_some_and(|(_, b)| b.scalar_value().is_some()));
    }
    let c = intertwiners(&right, &right, 6, 6);
    assert_eq!(c.len(), 4);
    let _ = f;
}
