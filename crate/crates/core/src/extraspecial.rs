//! Extraspecial and symplectic-type r-groups with their faithful absolutely
//! irreducible representations of degree `r^m`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::classical::{expected_order, ClassicalSpec, Family};
use crate::error::{Error, Result};
use crate::forms::{invariant_form_space, OrthType};
use crate::gf::{is_prime, FieldDesc, Mat};
use crate::group::{GenSet, Group};
use crate::module::{end_ring, intertwiners, is_irreducible, SubspaceCaps, MODULE_SEED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// `2_+^{1+2m}`, central product of `m` copies of D8.
    TwoPlus,
    /// `2_-^{1+2m}`, `m - 1` copies of D8 and one Q8.
    TwoMinus,
    /// `r^{1+2m}` of exponent `r`, `r` odd.
    OddPlus,
    /// `4 o 2^{1+2m}`.
    FourCentral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RGroupSpec {
    pub r: u32,
    pub m: u32,
    pub variant: Variant,
    /// Which primitive `|Z(R)|`-th root of unity the center acts by, counted from 1
    /// in increasing discrete-log order.
    #[serde(default = "one")]
    pub lambda_index: u32,
}

fn one() -> u32 {
    1
}

impl RGroupSpec {
    pub fn new(r: u32, m: u32, variant: Variant) -> RGroupSpec {
        RGroupSpec {
            r,
            m,
            variant,
            lambda_index: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.r) {
            return Err(Error::InvalidSpec(format!("{} is not prime", self.r)));
        }
        if self.m == 0 {
            return Err(Error::InvalidSpec("m must be at least 1".into()));
        }
        match (self.variant, self.r) {
            (Variant::OddPlus, 2) => Err(Error::InvalidSpec("OddPlus needs an odd prime".into())),
            (Variant::TwoPlus | Variant::TwoMinus | Variant::FourCentral, r) if r != 2 => {
                Err(Error::InvalidSpec(format!("{:?} needs r = 2", self.variant)))
            }
            _ => Ok(()),
        }
    }

    /// Order of the center.
    pub fn center_order(&self) -> u32 {
        match self.variant {
            Variant::FourCentral => 4,
            _ => self.r,
        }
    }

    pub fn group_order(&self) -> u64 {
        let base = (self.r as u64).pow(1 + 2 * self.m);
        match self.variant {
            Variant::FourCentral => 2 * base,
            _ => base,
        }
    }

    pub fn degree(&self) -> usize {
        (self.r as usize).pow(self.m)
    }

    /// Number of conjugacy classes: `r^{2m} + r - 1`, or `2^{2m+1} + 2` for `4 o 2^{1+2m}`.
    pub fn class_count(&self) -> u64 {
        let r = self.r as u64;
        match self.variant {
            Variant::FourCentral => 2u64.pow(2 * self.m + 1) + 2,
            _ => r.pow(2 * self.m) + r - 1,
        }
    }

    pub fn exponent(&self) -> u64 {
        match self.variant {
            Variant::OddPlus => self.r as u64,
            _ => 4,
        }
    }

    pub fn label(&self) -> String {
        match self.variant {
            Variant::TwoPlus => format!("2+^(1+{})", 2 * self.m),
            Variant::TwoMinus => format!("2-^(1+{})", 2 * self.m),
            Variant::OddPlus => format!("{}^(1+{})", self.r, 2 * self.m),
            Variant::FourCentral => format!("4o2^(1+{})", 2 * self.m),
        }
    }

    /// Order of `Aut(R)` acting trivially on `Z(R)`, modulo inner automorphisms.
    pub fn outer_quotient_order(&self) -> Result<u128> {
        let m = self.m as usize;
        let spec = match self.variant {
            Variant::OddPlus => ClassicalSpec::new(Family::Sp, 2 * m, self.r, 1),
            Variant::FourCentral => ClassicalSpec::new(Family::Sp, 2 * m, 2, 1),
            Variant::TwoPlus => ClassicalSpec::new(Family::GO, 2 * m, 2, 1).with_sign(OrthType::Plus),
            Variant::TwoMinus => ClassicalSpec::new(Family::GO, 2 * m, 2, 1).with_sign(OrthType::Minus),
        };
        expected_order(&spec)
    }
}

fn check_field(spec: &RGroupSpec, f: &FieldDesc) -> Result<()> {
    spec.validate()?;
    if f.p() == spec.r {
        return Err(Error::BadCharacteristic { p: f.p(), r: spec.r });
    }
    let z = spec.center_order();
    if !(f.q() - 1).is_multiple_of(z) {
        return Err(Error::MissingRoots(format!("GF({}) has no primitive {z}-th root of unity", f.q())));
    }
    Ok(())
}

/// The chosen primitive `|Z(R)|`-th root of unity.
fn center_root(spec: &RGroupSpec, f: &FieldDesc) -> Result<crate::gf::Felt> {
    let z = spec.center_order() as u64;
    let zeta = f.exp((f.q() as u64 - 1) / z);
    let choices: Vec<u64> = (1..z).filter(|&k| crate::gf::gcd(k, z) == 1).collect();
    let idx = spec.lambda_index as usize;
    if idx == 0 || idx > choices.len() {
        return Err(Error::InvalidSpec(format!(
            "lambda_index must lie in 1..={}",
            choices.len()
        )));
    }
    Ok(f.pow(zeta, choices[idx - 1]))
}

fn d8_pair(f: &FieldDesc) -> (Mat, Mat) {
    let m1 = f.neg(f.one());
    (
        Mat::new(f, 2, 2, vec![f.zero(), m1, f.one(), f.zero()]).unwrap(),
        Mat::diag(f, &[f.one(), m1]),
    )
}

/// An anticommuting pair of elements of order 4 generating Q8.
fn q8_pair(f: &FieldDesc) -> (Mat, Mat) {
    let m1 = f.neg(f.one());
    let j = Mat::new(f, 2, 2, vec![f.zero(), m1, f.one(), f.zero()]).unwrap();
    if let Some(i) = f.sqrt(m1) {
        return (Mat::diag(f, &[i, f.neg(i)]), j);
    }
    let minus_half = f.neg(f.inv(f.from_int(2)).unwrap());
    if let Some(delta) = f.sqrt(minus_half) {
        let b = Mat::new(f, 2, 2, vec![f.one(), f.one(), f.one(), m1]).unwrap().scale(delta);
        return (j, b);
    }
    let minus_i = Mat::scalar(f, 2, m1);
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                for d in f.elements() {
                    let x = Mat::new(f, 2, 2, vec![a, b, c, d]).unwrap();
                    if x.mul(&x) == minus_i && j.mul(&x) == x.mul(&j).neg() {
                        return (j, x);
                    }
                }
            }
        }
    }
    unreachable!("Q8 embeds in SL2(q) for odd q")
}

fn odd_pair(f: &FieldDesc, r: usize, lambda: crate::gf::Felt) -> (Mat, Mat) {
    let d: Vec<_> = (0..r).map(|i| f.pow(lambda, i as u64)).collect();
    let mut y = Mat::zeros(f, r, r);
    for i in 0..r {
        y.set((i + 1) % r, i, f.one());
    }
    (Mat::diag(f, &d), y)
}

fn embed_factor(f: &FieldDesc, x: &Mat, pos: usize, copies: usize, s: usize) -> Mat {
    let left = Mat::identity(f, s.pow(pos as u32));
    let right = Mat::identity(f, s.pow((copies - pos - 1) as u32));
    left.kronecker(x).kronecker(&right)
}

/// Generators of the representation: one pair per tensor factor, plus the central
/// scalar for `4 o 2^{1+2m}`.
pub fn rep_matrices(spec: &RGroupSpec, f: &FieldDesc) -> Result<GenSet> {
    check_field(spec, f)?;
    let m = spec.m as usize;
    let r = spec.r as usize;
    let lambda = center_root(spec, f)?;
    let mut gens = Vec::new();
    for pos in 0..m {
        let (x, y) = match spec.variant {
            Variant::TwoPlus | Variant::FourCentral => d8_pair(f),
            Variant::TwoMinus if pos + 1 < m => d8_pair(f),
            Variant::TwoMinus => q8_pair(f),
            Variant::OddPlus => odd_pair(f, r, lambda),
        };
        gens.push(embed_factor(f, &x, pos, m, r));
        gens.push(embed_factor(f, &y, pos, m, r));
    }
    if spec.variant == Variant::FourCentral {
        gens.push(Mat::scalar(f, spec.degree(), lambda));
    }
    GenSet::new(spec.label(), f, spec.degree(), gens)
}

/// Scalar by which the commutator of the first generator pair acts.
pub fn center_scalar(gens: &GenSet) -> Option<crate::gf::Felt> {
    let x = &gens.gens()[0];
    let y = &gens.gens()[1];
    let c = x.mul(y).mul(&x.inverse().ok()?).mul(&y.inverse().ok()?);
    c.scalar_value()
}

#[derive(Debug, Clone, Serialize)]
pub struct RepReport {
    pub label: String,
    pub order: usize,
    pub expected_order: u64,
    pub center_order: usize,
    pub center_is_scalar: bool,
    pub exponent: u64,
    pub classes: usize,
    pub expected_classes: u64,
    pub irreducible: bool,
    pub end_ring_dim: usize,
    pub bilinear_forms: usize,
    pub unitary_forms: Option<usize>,
    pub passed: bool,
}

pub fn verify_rep(spec: &RGroupSpec, f: &FieldDesc) -> Result<RepReport> {
    let gens = rep_matrices(spec, f)?;
    let g = Group::close(&gens, 100_000)?;
    let z = g.center();
    let center_is_scalar = z.elements().iter().all(|x| x.scalar_value().is_some());
    let irreducible = is_irreducible(gens.gens(), SubspaceCaps::default(), MODULE_SEED)?;
    let end_ring_dim = end_ring(gens.gens())?.len();
    let bilinear_forms = invariant_form_space(gens.gens(), 0)?.len();
    let unitary_forms = if f.e().is_multiple_of(2) {
        Some(invariant_form_space(gens.gens(), f.e() / 2)?.len())
    } else {
        None
    };
    let classes = g.conjugacy_classes().len();
    let exponent = g.exponent();
    let two_group = matches!(spec.variant, Variant::TwoPlus | Variant::TwoMinus);
    let passed = g.order() as u64 == spec.group_order()
        && z.order() as u32 == spec.center_order()
        && center_is_scalar
        && exponent == spec.exponent()
        && classes as u64 == spec.class_count()
        && irreducible
        && end_ring_dim == 1
        && (bilinear_forms > 0) == two_group
        && unitary_forms.is_none_or(|u| u > 0);
    Ok(RepReport {
        label: format!("{} over GF({})", spec.label(), f.q()),
        order: g.order(),
        expected_order: spec.group_order(),
        center_order: z.order(),
        center_is_scalar,
        exponent,
        classes,
        expected_classes: spec.class_count(),
        irreducible,
        end_ring_dim,
        bilinear_forms,
        unitary_forms,
        passed,
    })
}

/// Shape of a recognized symplectic-type r-group of minimal exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RGroupShape {
    pub r: u32,
    pub m: u32,
    pub variant: Variant,
}

impl RGroupShape {
    pub fn spec(&self) -> RGroupSpec {
        RGroupSpec::new(self.r, self.m, self.variant)
    }
}

/// Recognizes `g` as `r^(1+2m)`, `2_+-^(1+2m)` or `4 o 2^(1+2m)` with scalar centre.
pub fn identify(g: &Group) -> Option<RGroupShape> {
    let r = g.prime_power_base()? as u32;
    let z = g.center();
    if !z.is_scalar() || z.order() == g.order() {
        return None;
    }
    let mut quotient = (g.order() / z.order()) as u64;
    let mut k = 0;
    while quotient.is_multiple_of(r as u64) {
        quotient /= r as u64;
        k += 1;
    }
    if quotient != 1 || k % 2 == 1 {
        return None;
    }
    let m = k / 2;
    if !g.derived_subgroup().is_subgroup_of(&z) {
        return None;
    }
    if !g.elements().iter().all(|x| z.contains(&x.pow(r as u64))) {
        return None;
    }
    let variant = match (r, z.order()) {
        (2, 2) => {
            let involutions = g.elements().iter().filter(|x| !x.is_identity() && x.mul(x).is_identity()).count();
            let plus = 1 + 2 * ((1usize << (2 * m - 1)) + (1usize << (m - 1)) - 1);
            if involutions == plus {
                Variant::TwoPlus
            } else {
                Variant::TwoMinus
            }
        }
        (2, 4) => Variant::FourCentral,
        (_, zo) if zo == r as usize && r != 2 && g.exponent() == r as u64 => Variant::OddPlus,
        _ => return None,
    };
    Some(RGroupShape { r, m, variant })
}

/// Conditions for the normalizer of `shape` in `GL(r^m, p^e)` to be a C6 member:
/// the group is not `D8` or `2_+-^(1+2m)` with `m > 1`, and `e` is odd and the
/// least exponent with `p^e = 1 mod |Z(R)|`.
pub fn c6_conditions(shape: &RGroupShape, p: u32, e: u32) -> std::result::Result<(), String> {
    let spec = shape.spec();
    match shape.variant {
        Variant::TwoPlus => return Err("2+^(1+2m) groups are excluded".into()),
        Variant::TwoMinus if shape.m > 1 => return Err("2-^(1+2m) with m > 1 is excluded".into()),
        _ => {}
    }
    if p == shape.r {
        return Err("characteristic equals r".into());
    }
    let z = spec.center_order() as u64;
    let least = (1..=z).find(|&d| (p as u64).pow(d as u32) % z == 1).unwrap_or(0) as u32;
    if least != e {
        return Err(format!("least e with {p}^e = 1 mod {z} is {least}, not {e}"));
    }
    if e.is_multiple_of(2) {
        return Err(format!("e = {e} is even"));
    }
    Ok(())
}

/// Largest `q^(n^2)` scanned when searching the ambient general linear group.
pub const SCAN_LIMIT: u64 = 5_000_000;

/// Every element of `GL(n, q)` normalizing `r`, by exhaustive scan.
pub fn normalizer_by_scan(r: &Group) -> Result<Vec<Mat>> {
    let f = r.field().clone();
    let n = r.dim();
    let q = f.q() as u64;
    let total = q.checked_pow((n * n) as u32).filter(|&t| t <= SCAN_LIMIT);
    let Some(total) = total else {
        return Err(Error::TooLarge(format!("scan of GL({n}, {q})")));
    };
    let mut out = Vec::new();
    let mut data = vec![crate::gf::Felt(0); n * n];
    for t in 0..total {
        let mut x = t;
        for d in data.iter_mut() {
            *d = crate::gf::Felt((x % q) as u16);
            x /= q;
        }
        let g = Mat::new(&f, n, n, data.clone())?;
        let Ok(gi) = g.inverse() else { continue };
        if r.gens().iter().all(|x| r.contains(&g.mul(x).mul(&gi))) {
            out.push(g);
        }
    }
    Ok(out)
}

/// Normalizer generators built by lifting automorphisms: images of the generators
/// are chosen inside `R` respecting orders and commutators, and the conjugating
/// matrix is solved for linearly.
pub fn normalizer_by_lifting(gens: &GenSet) -> Result<Vec<Mat>> {
    let f = gens.field().clone();
    let n = gens.dim();
    let r = Group::close(gens, 100_000)?;
    let xs = gens.gens().to_vec();
    let orders: Vec<u64> = xs.iter().map(|x| x.order(r.order() as u64).unwrap()).collect();
    let comm = |a: &Mat, b: &Mat| a.mul(b).mul(&a.inverse().unwrap()).mul(&b.inverse().unwrap());
    let elems: Vec<(Mat, u64)> = r
        .elements()
        .iter()
        .map(|e| (e.clone(), e.order(r.order() as u64).unwrap()))
        .collect();
    let mut found: Vec<Mat> = Vec::new();
    let mut seen: HashSet<Mat> = HashSet::new();
    let mut chosen: Vec<Mat> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        xs: &[Mat],
        orders: &[u64],
        elems: &[(Mat, u64)],
        chosen: &mut Vec<Mat>,
        comm: &dyn Fn(&Mat, &Mat) -> Mat,
        out: &mut Vec<Mat>,
        seen: &mut HashSet<Mat>,
        f: &FieldDesc,
        n: usize,
    ) {
        if k == xs.len() {
            let sols = intertwiners(chosen, xs, n, n);
            if sols.len() == 1 {
                let g = &sols[0];
                if g.inverse().is_ok() {
                    // scale so that the first nonzero entry is 1
                    let first = *g.data().iter().find(|x| !x.is_zero()).unwrap();
                    let g = g.scale(f.inv(first).unwrap());
                    if seen.insert(g.clone()) {
                        out.push(g);
                    }
                }
            }
            return;
        }
        let x = &xs[k];
        if x.scalar_value().is_some() {
            chosen.push(x.clone());
            rec(k + 1, xs, orders, elems, chosen, comm, out, seen, f, n);
            chosen.pop();
            return;
        }
        for (y, oy) in elems {
            if *oy != orders[k] || y.scalar_value().is_some() {
                continue;
            }
            if x.mul(x) != y.mul(y) && x.mul(x).scalar_value().is_some() {
                continue;
            }
            let ok = (0..k).all(|j| comm(&chosen[j], y) == comm(&xs[j], x));
            if !ok {
                continue;
            }
            chosen.push(y.clone());
            rec(k + 1, xs, orders, elems, chosen, comm, out, seen, f, n);
            chosen.pop();
        }
    }
    rec(0, &xs, &orders, &elems, &mut chosen, &comm, &mut found, &mut seen, &f, n);
    Ok(found)
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalizerReport {
    pub label: String,
    pub normalizer_order: usize,
    pub expected_order: u128,
    pub quotient_order: u128,
    pub expected_quotient: u128,
    /// For `D8`-type groups: whether the normalizer preserves the invariant form up to scalars.
    pub inside_form_similarities: Option<bool>,
    pub proper_in_gl: bool,
    pub passed: bool,
}

/// Normalizer of `R` in the ambient general linear group, found by scan, against
/// `(q - 1) r^{2m} |quotient|`.
pub fn normalizer_structure_check(spec: &RGroupSpec, f: &FieldDesc) -> Result<NormalizerReport> {
    let gens = rep_matrices(spec, f)?;
    let r = Group::close(&gens, 100_000)?;
    let norm = normalizer_by_scan(&r)?;
    let n = spec.degree();
    let q = f.q() as u128;
    let r2m = (spec.r as u128).pow(2 * spec.m);
    let expected_quotient = spec.outer_quotient_order()?;
    let expected = (q - 1) * r2m * expected_quotient;
    let quotient_order = norm.len() as u128 / ((q - 1) * r2m);
    let gl = expected_order(&ClassicalSpec::new(Family::GL, n, f.p(), f.e()))?;
    let inside = if spec.variant == Variant::TwoPlus && spec.m == 1 {
        let forms = invariant_form_space(gens.gens(), 0)?;
        let form = crate::forms::FormSpec::from_gram(forms[0].clone(), 0)?;
        Some(norm.iter().all(|g| form.is_similarity(g).unwrap_or(false)))
    } else {
        None
    };
    let proper = (norm.len() as u128) < gl;
    let passed = norm.len() as u128 == expected && inside.unwrap_or(true);
    Ok(NormalizerReport {
        label: format!("N({}) in GL({n}, {})", spec.label(), f.q()),
        normalizer_order: norm.len(),
        expected_order: expected,
        quotient_order,
        expected_quotient,
        inside_form_similarities: inside,
        proper_in_gl: proper,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn field_conditions() {
        let f3 = make_field(3, 1).unwrap();
        assert!(matches!(
            rep_matrices(&RGroupSpec::new(3, 1, Variant::OddPlus), &f3),
            Err(Error::BadCharacteristic { .. })
        ));
        let f5 = make_field(5, 1).unwrap();
        assert!(matches!(
            rep_matrices(&RGroupSpec::new(3, 1, Variant::OddPlus), &f5),
            Err(Error::MissingRoots(_))
        ));
        assert!(matches!(
            rep_matrices(&RGroupSpec::new(2, 1, Variant::FourCentral), &f3),
            Err(Error::MissingRoots(_))
        ));
    }

    #[test]
    fn q8_over_gf7_uses_the_search_branch() {
        let f = make_field(7, 1).unwrap();
        let g = rep_matrices(&RGroupSpec::new(2, 1, Variant::TwoMinus), &f).unwrap();
        assert_eq!(Group::close(&g, 1000).unwrap().order(), 8);
    }
}
