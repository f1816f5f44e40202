//! Named example groups used by the self-test and the test suites.

use crate::classes::{construct, ClassParams, ClassSpec};
use crate::classical::{generators, ClassicalSpec, Family};
use crate::error::{Error, Result};
use crate::extraspecial::{rep_matrices, RGroupSpec, Variant};
use crate::gf::{make_field, Mat};
use crate::group::{GenSet, Group};

/// Borel subgroup of `GL(2, 3)`.
pub fn borel_gl2_3() -> Result<GenSet> {
    Ok(construct(&ClassSpec::new(2, 3, 1, ClassParams::C1 { k: 1 }))?.gens.relabel("Borel(GL(2,3))"))
}

pub fn gl2_3() -> Result<GenSet> {
    generators(&ClassicalSpec::new(Family::GL, 2, 3, 1), None)
}

/// Normalizer of a Singer cycle, `GL(1, 9).2 <= GL(2, 3)`.
pub fn singer_normalizer_gl2_3() -> Result<GenSet> {
    Ok(construct(&ClassSpec::new(2, 3, 1, ClassParams::C3 { r: 2 }))?.gens.relabel("GL(1,9).2"))
}

/// Monomial subgroup `GL(1, 3) wr S2` of `GL(2, 3)`.
pub fn monomial_gl2_3() -> Result<GenSet> {
    Ok(construct(&ClassSpec::new(2, 3, 1, ClassParams::C2 { m: 1, k: 2 }))?.gens.relabel("GL(1,3)wrS2"))
}

/// `Q8` with the scalars of `GF(3)`.
pub fn q8_scalars_gl2_3() -> Result<GenSet> {
    let f = make_field(3, 1)?;
    let q8 = rep_matrices(&RGroupSpec::new(2, 1, Variant::TwoMinus), &f)?;
    q8.with(&[Mat::scalar(&f, 2, f.primitive())]).map(|g| g.relabel("Q8.F*"))
}

/// `SL(2, 5)` inside `SL(2, 9)`: the first `b` of order 6 (in element order) with
/// `a b` of order 10 and `<a, b>` of order 120, for `a = [[0, -1], [1, 0]]`.
pub fn sl2_5_in_gl2_9() -> Result<GenSet> {
    let f = make_field(3, 2)?;
    let a = Mat::new(&f, 2, 2, vec![f.zero(), f.neg(f.one()), f.one(), f.zero()])?;
    let sl = Group::close(&generators(&ClassicalSpec::new(Family::SL, 2, 3, 2), None)?, 1000)?;
    for b in sl.elements() {
        if b.order(20) != Some(6) || a.mul(b).order(20) != Some(10) {
            continue;
        }
        let g = Group::close_mats(&f, 2, &[a.clone(), b.clone()], 1000)?;
        if g.order() == 120 {
            return GenSet::new("SL(2,5)", &f, 2, vec![a, b.clone()]);
        }
    }
    Err(Error::InvalidSpec("SL(2,5) not found in SL(2,9)".into()))
}

/// `SL(2, 5)` with all scalars of `GF(9)`.
pub fn sl2_5_scalars_gl2_9() -> Result<GenSet> {
    let l = sl2_5_in_gl2_9()?;
    let f = l.field().clone();
    l.with(&[Mat::scalar(&f, 2, f.primitive())]).map(|g| g.relabel("SL(2,5).F*"))
}

/// A classification example with its verdict and further classes it is known to lie in.
pub struct Golden {
    pub name: &'static str,
    pub gens: GenSet,
    pub expected: &'static str,
    pub also: &'static [&'static str],
}

/// The classification examples. `Q8` with scalars lies in a `C6` member, but the
/// cyclic normal subgroup of order 4 places it in `C3` at an earlier step.
pub fn golden() -> Result<Vec<Golden>> {
    Ok(vec![
        Golden { name: "Borel of GL(2,3)", gens: borel_gl2_3()?, expected: "C1", also: &[] },
        Golden { name: "GL(2,3)", gens: gl2_3()?, expected: "ContainsSL", also: &[] },
        Golden { name: "Singer normalizer in GL(2,3)", gens: singer_normalizer_gl2_3()?, expected: "C3", also: &[] },
        Golden { name: "monomial GL(1,3) wr S2", gens: monomial_gl2_3()?, expected: "C2", also: &[] },
        Golden { name: "SL(2,5) with scalars in GL(2,9)", gens: sl2_5_scalars_gl2_9()?, expected: "S", also: &[] },
        Golden { name: "Q8 with scalars in GL(2,3)", gens: q8_scalars_gl2_3()?, expected: "C3", also: &["C6"] },
    ])
}

/// The class specs of the construction matrix.
pub fn construction_matrix() -> Vec<(ClassSpec, u128)> {
    use crate::forms::FormKind;
    vec![
        (ClassSpec::new(2, 3, 1, ClassParams::C1 { k: 1 }), 12),
        (ClassSpec::new(2, 3, 1, ClassParams::C2 { m: 1, k: 2 }), 8),
        (ClassSpec::new(2, 3, 1, ClassParams::C3 { r: 2 }), 16),
        (ClassSpec::new(6, 2, 1, ClassParams::C4 { n1: 2, n2: 3 }), 1008),
        (ClassSpec::new(2, 2, 2, ClassParams::C5 { r: 2 }), 18),
        (
            ClassSpec::new(2, 3, 1, ClassParams::C6 { rgroup: RGroupSpec::new(2, 1, Variant::TwoMinus) }),
            48,
        ),
        (ClassSpec::new(9, 2, 1, ClassParams::C7 { m: 3, k: 2 }), 56448),
        (ClassSpec::new(4, 2, 1, ClassParams::C8 { kind: FormKind::Symplectic, subtype: None }), 720),
    ]
}
