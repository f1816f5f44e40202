//! Literal values from the reference examples that the mathematics contradicts.
//! Both tests fail when run with `--ignored`.

use aschbacher::classical::{generators, ClassicalSpec, Family};
use aschbacher::classifier::{classify, Caps, Tag};
use aschbacher::corpus;
use aschbacher::group::Group;

#[test]
#[ignore = "216 is the order of SU(3,2); GU(3,2) has order 648"]
fn gu3_2_literal_order() {
    let g = Group::close(&generators(&ClassicalSpec::new(Family::GU, 3, 2, 2), None).unwrap(), 10_000).unwrap();
    assert_eq!(g.order(), 216);
}

#[test]
#[ignore = "Q8 with scalars in GL(2,3) is placed in C3 before the solvable step is reached"]
fn q8_literal_verdict() {
    let h = corpus::q8_scalars_gl2_3().unwrap();
    assert_eq!(classify(&h, Caps::default(), 7).tag, Tag::C6);
}
