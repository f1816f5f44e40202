//! Classification of a generator-given subgroup of `GL(n, q)` into an Aschbacher
//! class by a sequence of reductions through its normal subgroups.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::classes::{c8_conditions, verify_member, ClassWitness, WitnessJson};
use crate::classical::{generators, isometries, ClassicalSpec, Family};
use crate::error::{Error, Result};
use crate::extraspecial::{c6_conditions, identify};
use crate::forms::{invariant_form_space, projective_points, FormKind, FormSpec, OrthType};
use crate::gf::{prime_divisors, FieldDesc, Mat, Subspace};
use crate::group::{components, is_quasisimple, GenSet, GenSetJson, Group, NormalLattice, CLOSURE_CAP, NORMAL_CAP};
use crate::module::{
    algebra_center, descent_certificate, end_ring, find_invariant_subspace, homogeneous_components, intertwiners,
    is_absolutely_irreducible, kron_factor, permutes_transitively, tensor_split, trace_field_degree,
    HomogeneousComponent, Irreducibility, SubspaceCaps,
};

/// Enumeration limits for one classification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest group enumerated by closure.
    pub closure: usize,
    /// Largest group whose normal-subgroup lattice is computed.
    pub normal: usize,
    /// Exhaustive invariant-subspace search runs only for `n <= subspace_dim`.
    pub subspace_dim: usize,
    /// and `q <= subspace_q`.
    pub subspace_q: u32,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            closure: CLOSURE_CAP,
            normal: NORMAL_CAP,
            subspace_dim: SubspaceCaps::default().max_dim,
            subspace_q: SubspaceCaps::default().max_q,
        }
    }
}

impl Caps {
    fn subspace(&self) -> SubspaceCaps {
        SubspaceCaps {
            max_dim: self.subspace_dim,
            max_q: self.subspace_q,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Tag {
    ContainsSL,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    S,
    Inconclusive,
}

impl Tag {
    pub fn class(c: u8) -> Tag {
        match c {
            1 => Tag::C1,
            2 => Tag::C2,
            3 => Tag::C3,
            4 => Tag::C4,
            5 => Tag::C5,
            6 => Tag::C6,
            7 => Tag::C7,
            8 => Tag::C8,
            _ => Tag::Inconclusive,
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The five conditions certifying class S.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SChecks {
    pub quasisimple: bool,
    pub abs_irred: bool,
    pub minimal_field_is_f: bool,
    pub no_classical_form: bool,
    pub uniqueness: bool,
}

impl SChecks {
    pub fn all(&self) -> bool {
        self.quasisimple && self.abs_irred && self.minimal_field_is_f && self.no_classical_form && self.uniqueness
    }
}

#[derive(Debug, Clone)]
pub struct SCertificate {
    pub l: GenSet,
    pub checks: SChecks,
}

#[derive(Debug, Clone)]
pub enum VerdictWitness {
    /// Generators of `SL(n, q)`, all lying in `H`.
    ContainsSL { sl: GenSet },
    Class(ClassWitness),
    S(SCertificate),
    None,
}

/// One pipeline step outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub step: u8,
    pub name: String,
    pub outcome: String,
    /// Truncated SHA-256 of the outcome and any witness data.
    pub evidence: String,
}

/// A class membership detected at some step, verified against `H`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Membership {
    pub step: u8,
    pub tag: Tag,
    /// Order of the normal subgroup `L` that produced it (`0` when none was used).
    pub l_order: usize,
    pub verified: bool,
}

/// Whether `H` permutes the homogeneous components of a normal subgroup, and transitively.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliffordCheck {
    pub l_order: usize,
    pub components: usize,
    pub permuted: bool,
    pub transitive: bool,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub tag: Tag,
    pub witness: VerdictWitness,
    pub trace: Vec<TraceStep>,
    pub memberships: Vec<Membership>,
    pub clifford: Vec<CliffordCheck>,
    pub seed: u64,
    pub caps: Caps,
}

fn evidence(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p.as_bytes());
        h.update([0u8]);
    }
    h.finalize().iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn witness_text(w: &ClassWitness) -> String {
    serde_json::to_string(&w.to_json()).unwrap_or_default()
}

struct Run<'a> {
    h: &'a GenSet,
    caps: Caps,
    seed: u64,
    trace: Vec<TraceStep>,
    memberships: Vec<Membership>,
    clifford: Vec<CliffordCheck>,
    /// First verified class witness, in step order.
    first: Option<(u8, ClassWitness)>,
}

impl<'a> Run<'a> {
    fn note(&mut self, step: u8, name: &str, outcome: impl Into<String>, extra: &str) {
        let outcome = outcome.into();
        let ev = evidence(&[name, &outcome, extra]);
        self.trace.push(TraceStep {
            step,
            name: name.into(),
            outcome,
            evidence: ev,
        });
    }

    /// Records a candidate membership after checking the witness against `H`.
    fn found(&mut self, step: u8, name: &str, l_order: usize, w: ClassWitness) {
        let check = verify_member(self.h, &w);
        let tag = Tag::class(w.class_id());
        let text = witness_text(&w);
        self.memberships.push(Membership {
            step,
            tag,
            l_order,
            verified: check.passed,
        });
        if check.passed {
            self.note(step, name, format!("member of {tag} (L of order {l_order})"), &text);
            if self.first.is_none() {
                self.first = Some((step, w));
            }
        } else {
            self.note(step, name, format!("{tag} witness rejected: {}", check.detail), &text);
        }
    }

    fn finish(self, tag: Tag, witness: VerdictWitness) -> Verdict {
        Verdict {
            tag,
            witness,
            trace: self.trace,
            memberships: self.memberships,
            clifford: self.clifford,
            seed: self.seed,
            caps: self.caps,
        }
    }

    fn inconclusive(mut self, step: u8, name: &str, why: impl Into<String>) -> Verdict {
        self.note(step, name, format!("inconclusive: {}", why.into()), "");
        self.finish(Tag::Inconclusive, VerdictWitness::None)
    }
}

/// Module data of a normal subgroup `L`.
struct NormalInfo {
    group: Group,
    comps: std::result::Result<Vec<HomogeneousComponent>, String>,
    end_dim: Option<usize>,
}

impl NormalInfo {
    fn homogeneous(&self) -> Option<&HomogeneousComponent> {
        match &self.comps {
            Ok(c) if c.len() == 1 => Some(&c[0]),
            _ => None,
        }
    }

    fn abs_irreducible(&self) -> bool {
        self.homogeneous().is_some_and(|c| c.multiplicity == 1) && self.end_dim == Some(1)
    }
}

/// Runs the classification pipeline.
pub fn classify(h: &GenSet, caps: Caps, seed: u64) -> Verdict {
    let mut run = Run {
        h,
        caps,
        seed,
        trace: Vec::new(),
        memberships: Vec::new(),
        clifford: Vec::new(),
        first: None,
    };
    let f = h.field().clone();
    let n = h.dim();
    if n < 2 {
        return run.inconclusive(0, "input", "dimension must be at least 2");
    }

    // step 0
    let group = match Group::close(h, caps.closure) {
        Ok(g) => g,
        Err(e) => return run.inconclusive(0, "contains-SL", e.to_string()),
    };
    let sl = match generators(&ClassicalSpec::new(Family::SL, n, f.p(), f.e()), None) {
        Ok(g) => g,
        Err(e) => return run.inconclusive(0, "contains-SL", e.to_string()),
    };
    if sl.gens().iter().all(|g| group.contains(g)) {
        run.note(0, "contains-SL", format!("|H| = {}; every SL generator lies in H", group.order()), "");
        return run.finish(Tag::ContainsSL, VerdictWitness::ContainsSL { sl });
    }
    run.note(0, "contains-SL", format!("|H| = {}; SL not contained", group.order()), "");

    // step 1
    match find_invariant_subspace(h.gens(), caps.subspace(), seed) {
        Ok(Irreducibility::Reducible(w)) => {
            run.found(1, "irreducible", 0, ClassWitness::C1 { subspace: w });
            if let Some((_, w)) = run.first.take() {
                return run.finish(Tag::C1, VerdictWitness::Class(w));
            }
            return run.inconclusive(1, "irreducible", "invariant subspace failed verification");
        }
        Ok(Irreducibility::Irreducible(_)) => run.note(1, "irreducible", "V is irreducible", ""),
        Ok(Irreducibility::Inconclusive(why)) => return run.inconclusive(1, "irreducible", why),
        Err(e) => return run.inconclusive(1, "irreducible", e.to_string()),
    }

    // normalization: adjoin the scalars
    let mut star_gens = h.gens().to_vec();
    let xi = Mat::scalar(&f, n, f.primitive());
    if !group.contains(&xi) {
        star_gens.push(xi);
    }
    let star = match Group::close_mats(&f, n, &star_gens, caps.closure) {
        Ok(g) => g,
        Err(e) => return run.inconclusive(2, "scalars", e.to_string()),
    };
    let lattice = match NormalLattice::compute(&star, caps.normal) {
        Ok(l) => l,
        Err(e) => return run.inconclusive(2, "normal-lattice", e.to_string()),
    };
    let normals: Vec<Group> = lattice
        .members()
        .iter()
        .map(|m| lattice.to_group(&star, m))
        .filter(|l| !l.elements().iter().all(|x| x.scalar_value().is_some()))
        .collect();
    let orders: Vec<String> = normals.iter().map(|l| l.order().to_string()).collect();
    run.note(2, "normal-lattice", format!("|HF*| = {}; non-scalar normal subgroup orders [{}]", star.order(), orders.join(", ")), "");

    let infos: Vec<NormalInfo> = normals
        .into_iter()
        .map(|l| {
            let comps = homogeneous_components(l.gens(), caps.subspace(), seed).map_err(|e| e.to_string());
            let end_dim = match &comps {
                Ok(c) if c.len() == 1 => end_ring(&c[0].constituent).ok().map(|b| b.len()),
                _ => None,
            };
            NormalInfo { group: l, comps, end_dim }
        })
        .collect();

    step_homogeneous(&mut run, &infos);
    step_extension_field(&mut run, &infos);
    step_tensor(&mut run, &infos);
    step_subfield(&mut run, &infos);
    step_solvable(&mut run, &infos);
    let quasi = step_components(&mut run, &infos);
    step_forms(&mut run, &infos, quasi);

    if let Some((_, w)) = run.first.take() {
        let tag = Tag::class(w.class_id());
        return run.finish(tag, VerdictWitness::Class(w));
    }
    if let Some(why) = infos.iter().find_map(|i| i.comps.as_ref().err()) {
        let why = why.clone();
        return run.inconclusive(2, "homogeneous", why);
    }
    let Some(li) = quasi else {
        return run.inconclusive(7, "components", "no non-solvable absolutely irreducible normal subgroup found");
    };
    let l = infos[li].group.clone();
    let checks = match s_checks(h, &l, caps, seed) {
        Ok(c) => c,
        Err(e) => return run.inconclusive(8, "certificate", e.to_string()),
    };
    let summary = format!("{checks:?}");
    run.note(8, "certificate", summary, "");
    if !checks.all() {
        return run.inconclusive(8, "certificate", "a certificate check failed");
    }
    let l_set = l.genset("L");
    run.finish(Tag::S, VerdictWitness::S(SCertificate { l: l_set, checks }))
}

fn step_homogeneous(run: &mut Run, infos: &[NormalInfo]) {
    for info in infos {
        let order = info.group.order();
        match &info.comps {
            Err(why) => run.note(2, "homogeneous", format!("L of order {order}: {why}"), ""),
            Ok(comps) => {
                let spaces: Vec<Subspace> = comps.iter().map(|c| c.space.clone()).collect();
                let (permuted, transitive) = permutes_transitively(run.h.gens(), &spaces);
                run.clifford.push(CliffordCheck {
                    l_order: order,
                    components: spaces.len(),
                    permuted,
                    transitive,
                });
                if spaces.len() > 1 {
                    run.found(2, "homogeneous", order, ClassWitness::C2 { summands: spaces });
                }
            }
        }
    }
    if run.first.is_none() {
        run.note(2, "homogeneous", "every L is homogeneous", "");
    }
}

/// A map generating the subfield of prime degree of the centre of `End_L(V)`.
fn field_generator(l: &Group, s: usize, seed: u64) -> Result<(Mat, u32)> {
    let f = l.field().clone();
    let n = l.dim();
    let cent = intertwiners(l.gens(), l.gens(), n, n);
    let centre = algebra_center(&cent);
    if centre.len() != s {
        return Err(Error::SplitFailed(format!("centre has dimension {} for End of degree {s}", centre.len())));
    }
    let r = prime_divisors(s as u64)[0] as u32;
    let q = f.q() as u64;
    let big = q.pow(s as u32) - 1;
    let small = q.pow(r) - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..256 {
        let y = centre.iter().fold(Mat::zeros(&f, n, n), |acc, b| {
            acc.add(&b.scale(crate::gf::Felt(rng.gen_range(0..f.q()) as u16)))
        });
        if y.order(big) == Some(big) {
            return Ok((y.pow(big / small), r));
        }
    }
    Err(Error::CertificateNotFound("no primitive element of the centre found".into()))
}

fn step_extension_field(run: &mut Run, infos: &[NormalInfo]) {
    let mut any = false;
    for info in infos {
        let Some(s) = info.end_dim.filter(|&s| s > 1) else { continue };
        any = true;
        let order = info.group.order();
        match field_generator(&info.group, s, run.seed) {
            Ok((generator, degree)) => run.found(3, "extension-field", order, ClassWitness::C3 { generator, degree }),
            Err(e) => run.note(3, "extension-field", format!("L of order {order}: {e}"), ""),
        }
    }
    if !any {
        run.note(3, "extension-field", "every homogeneous L has absolutely irreducible constituents", "");
    }
}

/// `B (J (x) ... (x) J) B^T` for `k` copies of the 2x2 alternating matrix.
fn tensor_form(f: &FieldDesc, basis: &Mat, k: usize) -> Result<FormSpec> {
    let j = Mat::new(f, 2, 2, vec![f.zero(), f.one(), f.neg(f.one()), f.zero()])?;
    let jk = (1..k).fold(j.clone(), |acc, _| acc.kronecker(&j));
    FormSpec::from_gram(basis.mul(&jk).mul(&basis.transpose()), 0)
}

fn step_tensor(run: &mut Run, infos: &[NormalInfo]) {
    let mut any = false;
    for info in infos {
        let Some(c) = info.homogeneous() else { continue };
        if info.end_dim != Some(1) || c.multiplicity < 2 {
            continue;
        }
        any = true;
        let order = info.group.order();
        let split = match tensor_split(info.group.gens(), run.caps.subspace(), run.seed) {
            Ok(s) => s,
            Err(e) => {
                run.note(4, "tensor", format!("L of order {order}: {e}"), "");
                continue;
            }
        };
        let (a, d) = split.dims;
        let f = info.group.field().clone();
        let w = if a != d {
            Some(ClassWitness::C4 { basis: split.basis, dims: (a, d) })
        } else if a > 2 {
            Some(ClassWitness::C7 { basis: split.basis, factor_dim: a, factors: 2 })
        } else {
            match tensor_form(&f, &split.basis, 2) {
                Ok(form) => Some(ClassWitness::C8 { form }),
                Err(e) => {
                    run.note(4, "tensor", format!("L of order {order}: {e}"), "");
                    None
                }
            }
        };
        if let Some(w) = w {
            run.found(4, "tensor", order, w);
        }
    }
    if !any {
        run.note(4, "tensor", "no homogeneous L with multiplicity above 1", "");
    }
}

fn step_subfield(run: &mut Run, infos: &[NormalInfo]) {
    let mut any = false;
    for info in infos.iter().filter(|i| i.abs_irreducible()) {
        let e = info.group.field().e();
        let t = trace_field_degree(&info.group);
        if t == e {
            continue;
        }
        any = true;
        let order = info.group.order();
        // largest proper subfield containing the trace field
        let r = prime_divisors((e / t) as u64)[0] as u32;
        let d = e / r;
        match descent_certificate(info.group.gens(), d, run.seed) {
            Ok(basis) => run.found(5, "subfield", order, ClassWitness::C5 { basis, subfield_degree: d }),
            Err(e) => run.note(5, "subfield", format!("L of order {order}, trace field degree {t}: {e}"), ""),
        }
    }
    if !any {
        run.note(5, "subfield", "no absolutely irreducible L has a smaller trace field", "");
    }
}

/// Nonzero invariant forms of `gens` (bilinear, and hermitian when `e` is even).
fn invariant_forms(gens: &[Mat]) -> Result<Vec<FormSpec>> {
    let f = gens[0].field().clone();
    let mut out = Vec::new();
    let mut thetas = vec![0];
    if f.e().is_multiple_of(2) {
        thetas.push(f.e() / 2);
    }
    for j in thetas {
        for b in invariant_form_space(gens, j)? {
            if let Ok(form) = FormSpec::from_gram(b, j) {
                if form.is_nondegenerate() {
                    out.push(form);
                }
            }
        }
    }
    Ok(out)
}

/// Class containing the similarity group of a form preserved by a normal subgroup:
/// C8 when the form defines a member, otherwise the two-dimensional reroutes.
fn route_form(form: &FormSpec, seed: u64) -> std::result::Result<ClassWitness, String> {
    let f = form.field().clone();
    let n = form.dim();
    if c8_conditions(form.kind(), form.subtype(), n, &f).is_ok() {
        return Ok(ClassWitness::C8 { form: form.clone() });
    }
    let orthogonal = matches!(form.kind(), FormKind::SymmetricBilinear | FormKind::Quadratic);
    if n == 2 && orthogonal && f.p() != 2 {
        let sign = form.orth_type().map_err(|e| e.to_string())?;
        return match sign {
            OrthType::Plus => {
                let full = Subspace::full(&f, 2);
                let lines: Vec<Subspace> = projective_points(&full)
                    .into_iter()
                    .filter(|v| form.norm(v).is_zero())
                    .map(|v| Subspace::from_vectors(&f, 2, &[v]))
                    .collect();
                if lines.len() == 2 {
                    Ok(ClassWitness::C2 { summands: lines })
                } else {
                    Err(format!("expected two singular lines, found {}", lines.len()))
                }
            }
            _ => {
                let iso = isometries(form).map_err(|e| e.to_string())?;
                let x = iso
                    .into_iter()
                    .find(|g| g.det().ok() == Some(f.one()) && g.scalar_value().is_none())
                    .ok_or("SO(Q) is scalar")?;
                Ok(ClassWitness::C3 { generator: x, degree: 2 })
            }
        };
    }
    if n == 2 && form.kind() == FormKind::Unitary {
        let iso = isometries(form).map_err(|e| e.to_string())?;
        let su: Vec<Mat> = iso.into_iter().filter(|g| g.det().ok() == Some(f.one())).collect();
        let gens = crate::classical::greedy_generators(&f, 2, &su, seed).map_err(|e| e.to_string())?;
        let basis = descent_certificate(&gens, f.e() / 2, seed).map_err(|e| e.to_string())?;
        return Ok(ClassWitness::C5 { basis, subfield_degree: f.e() / 2 });
    }
    Err(format!("{:?} form in dimension {n} defines no class member", form.kind()))
}

fn route_forms(run: &mut Run, step: u8, name: &str, order: usize, gens: &[Mat]) -> bool {
    let forms = match invariant_forms(gens) {
        Ok(f) => f,
        Err(e) => {
            run.note(step, name, format!("L of order {order}: {e}"), "");
            return false;
        }
    };
    let mut routed = false;
    for form in &forms {
        match route_form(form, run.seed) {
            Ok(w) => {
                run.found(step, name, order, w);
                routed = true;
            }
            Err(why) => run.note(step, name, format!("L of order {order}: {why}"), ""),
        }
    }
    if forms.is_empty() {
        run.note(step, name, format!("L of order {order} fixes no classical form"), "");
    }
    routed
}

fn step_solvable(run: &mut Run, infos: &[NormalInfo]) {
    let Some(info) = infos.iter().find(|i| i.abs_irreducible() && i.group.is_solvable()) else {
        run.note(6, "solvable", "no absolutely irreducible solvable L", "");
        return;
    };
    let l = &info.group;
    let order = l.order();
    let Some(shape) = identify(l) else {
        run.note(6, "solvable", format!("L of order {order} is not a symplectic-type r-group"), "");
        return;
    };
    let f = l.field();
    match c6_conditions(&shape, f.p(), f.e()) {
        Ok(()) => run.found(6, "solvable", order, ClassWitness::C6 { rgroup: l.genset("R") }),
        Err(why) => {
            run.note(6, "solvable", format!("{} fails the C6 conditions: {why}", shape.spec().label()), "");
            route_forms(run, 6, "solvable", order, l.gens());
        }
    }
}

/// Iterated tensor splitting along commuting components. Returns the basis in
/// which the components act on successive tensor factors, and the factor sizes.
fn component_basis(comps: &[Group], caps: Caps, seed: u64) -> Result<(Mat, Vec<usize>)> {
    let q1 = &comps[0];
    let f = q1.field().clone();
    let n = q1.dim();
    if comps.len() == 1 {
        return Ok((Mat::identity(&f, n), vec![n]));
    }
    let split = tensor_split(q1.gens(), caps.subspace(), seed)?;
    let (a, d) = split.dims;
    let bi = split.basis.inverse()?;
    let mut rest: Vec<Group> = Vec::new();
    for c in &comps[1..] {
        let mut gens = Vec::new();
        for g in c.gens() {
            let (left, right) = kron_factor(&bi.mul(g).mul(&split.basis), a)
                .ok_or_else(|| Error::SplitFailed("component does not act on the second factor".into()))?;
            let s = left
                .scalar_value()
                .ok_or_else(|| Error::SplitFailed("component does not centralize the first factor".into()))?;
            gens.push(right.scale(s));
        }
        rest.push(Group::close_mats(&f, d, &gens, caps.closure)?);
    }
    let (inner, mut dims) = component_basis(&rest, caps, seed)?;
    dims.insert(0, a);
    Ok((split.basis.mul(&Mat::identity(&f, a).kronecker(&inner)), dims))
}

/// Returns the index of the quasisimple candidate `L` for the final steps.
fn step_components(run: &mut Run, infos: &[NormalInfo]) -> Option<usize> {
    let idx = infos.iter().position(|i| i.abs_irreducible() && !i.group.is_solvable())?;
    let l = &infos[idx].group;
    let order = l.order();
    let comps = match components(l, run.caps.normal) {
        Ok(c) => c,
        Err(e) => {
            run.note(7, "components", format!("L of order {order}: {e}"), "");
            return Some(idx);
        }
    };
    let k = comps.len();
    run.note(7, "components", format!("L of order {order} has {k} component(s)"), "");
    if k < 2 {
        return Some(idx);
    }
    let (basis, dims) = match component_basis(&comps, run.caps, run.seed) {
        Ok(b) => b,
        Err(e) => {
            run.note(7, "components", format!("tensor decomposition failed: {e}"), "");
            return Some(idx);
        }
    };
    let s = dims[0];
    let f = l.field().clone();
    let w = if dims.iter().any(|&d| d != s) {
        if k == 2 {
            Some(ClassWitness::C4 { basis, dims: (dims[0], dims[1]) })
        } else {
            None
        }
    } else if s > 2 {
        Some(ClassWitness::C7 { basis, factor_dim: s, factors: k })
    } else {
        tensor_form(&f, &basis, k).ok().map(|form| ClassWitness::C8 { form })
    };
    match w {
        Some(w) => run.found(7, "components", order, w),
        None => run.note(7, "components", format!("unequal factor sizes {dims:?}"), ""),
    }
    Some(idx)
}

fn step_forms(run: &mut Run, infos: &[NormalInfo], quasi: Option<usize>) {
    let Some(idx) = quasi else {
        run.note(8, "forms", "no candidate L", "");
        return;
    };
    let l = &infos[idx].group;
    route_forms(run, 8, "forms", l.order(), l.gens());
}

/// Whether `L` fixes a form that places its normalizer in some class.
fn has_classical_form(l: &Group, seed: u64) -> Result<bool> {
    Ok(invariant_forms(l.gens())?.iter().any(|f| route_form(f, seed).is_ok()))
}

fn s_checks(h: &GenSet, l: &Group, caps: Caps, seed: u64) -> Result<SChecks> {
    let f = h.field().clone();
    let n = h.dim();
    let quasisimple = is_quasisimple(l, caps.normal)?;
    let abs_irred = is_absolutely_irreducible(l.gens(), caps.subspace(), seed)?;
    let minimal_field_is_f = trace_field_degree(l) == f.e();
    let no_classical_form = !has_classical_form(l, seed)?;
    let normal = l.is_normalized_by(h.gens());
    let mut star_gens = h.gens().to_vec();
    star_gens.push(Mat::scalar(&f, n, f.primitive()));
    let star = Group::close_mats(&f, n, &star_gens, caps.closure)?;
    let lattice = NormalLattice::compute(&star, caps.normal)?;
    let mut quasi = Vec::new();
    for m in lattice.members() {
        let g = lattice.to_group(&star, m);
        if g.order() > 1 && g.is_perfect() && is_quasisimple(&g, caps.normal)? {
            quasi.push(g);
        }
    }
    let uniqueness = normal && quasi.len() == 1 && quasi[0].same_elements(l);
    Ok(SChecks {
        quasisimple,
        abs_irred,
        minimal_field_is_f,
        no_classical_form,
        uniqueness,
    })
}

/// Re-checks a verdict's witness against `H`.
pub fn verify_verdict(h: &GenSet, v: &Verdict) -> bool {
    match (&v.tag, &v.witness) {
        (Tag::ContainsSL, VerdictWitness::ContainsSL { sl }) => {
            let Ok(g) = Group::close(h, v.caps.closure) else { return false };
            sl.dim() == h.dim() && sl.field() == h.field() && sl.gens().iter().all(|x| g.contains(x))
                && generators(&ClassicalSpec::new(Family::SL, h.dim(), h.field().p(), h.field().e()), None)
                    .is_ok_and(|std| std.gens().iter().all(|x| g.contains(x)))
        }
        (tag, VerdictWitness::Class(w)) => *tag == Tag::class(w.class_id()) && verify_member(h, w).passed,
        (Tag::S, VerdictWitness::S(cert)) => {
            let Ok(l) = Group::close(&cert.l, v.caps.closure) else { return false };
            s_checks(h, &l, v.caps, v.seed).is_ok_and(|c| c.all())
        }
        _ => false,
    }
}

/// JSON form of a verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictJson {
    pub tag: Tag,
    pub witness: WitnessOut,
    pub trace: Vec<TraceStep>,
    pub memberships: Vec<Membership>,
    pub clifford: Vec<CliffordCheck>,
    pub seed: u64,
    pub caps: Caps,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessOut {
    ContainsSl { sl: GenSetJson },
    Class { witness: WitnessJson },
    S { l: GenSetJson, checks: SChecks },
    None,
}

impl Verdict {
    pub fn to_json(&self) -> VerdictJson {
        let witness = match &self.witness {
            VerdictWitness::ContainsSL { sl } => WitnessOut::ContainsSl { sl: sl.to_json() },
            VerdictWitness::Class(w) => WitnessOut::Class { witness: w.to_json() },
            VerdictWitness::S(c) => WitnessOut::S {
                l: c.l.to_json(),
                checks: c.checks,
            },
            VerdictWitness::None => WitnessOut::None,
        };
        VerdictJson {
            tag: self.tag,
            witness,
            trace: self.trace.clone(),
            memberships: self.memberships.clone(),
            clifford: self.clifford.clone(),
            seed: self.seed,
            caps: self.caps,
        }
    }

    pub fn from_json(j: &VerdictJson) -> Result<Verdict> {
        let witness = match &j.witness {
            WitnessOut::ContainsSl { sl } => VerdictWitness::ContainsSL { sl: GenSet::from_json(sl)? },
            WitnessOut::Class { witness } => VerdictWitness::Class(ClassWitness::from_json(witness)?),
            WitnessOut::S { l, checks } => VerdictWitness::S(SCertificate {
                l: GenSet::from_json(l)?,
                checks: *checks,
            }),
            WitnessOut::None => VerdictWitness::None,
        };
        Ok(Verdict {
            tag: j.tag,
            witness,
            trace: j.trace.clone(),
            memberships: j.memberships.clone(),
            clifford: j.clifford.clone(),
            seed: j.seed,
            caps: j.caps,
        })
    }

    /// Tags of every verified membership, in step order.
    pub fn detected(&self) -> Vec<Tag> {
        self.memberships.iter().filter(|m| m.verified).map(|m| m.tag).collect()
    }
}
