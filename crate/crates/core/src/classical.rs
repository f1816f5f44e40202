//! Classical groups: generating sets, standard forms and closed-form orders.
//!
//! GL and SL use explicit generators. Groups defined by a form are found by a
//! row-by-row search for all matrices with the prescribed Gram matrix, followed by
//! a greedy choice of generators in a fixed pseudo-random order.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::{FormKind, FormSpec, OrthType};
use crate::gf::{make_field, Felt, FieldDesc, Mat};
use crate::group::{GenSet, Group};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    GL,
    SL,
    Sp,
    GU,
    SU,
    GO,
    SO,
    Omega,
    Delta,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalSpec {
    pub family: Family,
    pub n: usize,
    pub p: u32,
    pub e: u32,
    /// Witt type for orthogonal families.
    #[serde(default)]
    pub sign: Option<OrthType>,
    /// For `Delta`: which isometry family (`Sp`, `GU` or `GO`) it extends.
    #[serde(default)]
    pub delta_of: Option<Family>,
}

/// Seed for the greedy generator choice.
const GENERATOR_SEED: u64 = 0x5eed_0001;
/// Largest `q^n` the isometry search will scan.
const SEARCH_VECTORS: usize = 20_000;

impl ClassicalSpec {
    pub fn new(family: Family, n: usize, p: u32, e: u32) -> ClassicalSpec {
        ClassicalSpec {
            family,
            n,
            p,
            e,
            sign: None,
            delta_of: None,
        }
    }

    pub fn with_sign(mut self, s: OrthType) -> ClassicalSpec {
        self.sign = Some(s);
        self
    }

    pub fn delta(of: Family, n: usize, p: u32, e: u32) -> ClassicalSpec {
        ClassicalSpec {
            delta_of: Some(of),
            ..ClassicalSpec::new(Family::Delta, n, p, e)
        }
    }

    pub fn field(&self) -> Result<FieldDesc> {
        make_field(self.p, self.e)
    }

    /// Family whose form this spec preserves (itself, or the `delta_of` family).
    fn form_family(&self) -> Result<Family> {
        match self.family {
            Family::Delta => match self.delta_of {
                Some(f @ (Family::Sp | Family::GU | Family::GO)) => Ok(f),
                _ => Err(Error::InvalidSpec("Delta needs delta_of in {Sp, GU, GO}".into())),
            },
            f => Ok(f),
        }
    }

    fn orth_sign(&self) -> Result<OrthType> {
        if self.n % 2 == 1 {
            return match self.sign {
                None | Some(OrthType::Circ) => Ok(OrthType::Circ),
                _ => Err(Error::InvalidSpec("odd dimension has no +/- type".into())),
            };
        }
        match self.sign {
            Some(s @ (OrthType::Plus | OrthType::Minus)) => Ok(s),
            _ => Err(Error::InvalidSpec("even-dimensional orthogonal group needs sign + or -".into())),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.field()?;
        if self.n == 0 {
            return Err(Error::InvalidSpec("dimension must be positive".into()));
        }
        match self.form_family()? {
            Family::Sp if self.n % 2 == 1 => {
                Err(Error::InvalidSpec("symplectic dimension must be even".into()))
            }
            Family::GU | Family::SU if f.e() % 2 == 1 => {
                Err(Error::InvalidSpec("unitary groups need a field of square order".into()))
            }
            Family::GO | Family::SO | Family::Omega => self.orth_sign().map(|_| ()),
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        let q = (self.p as u64).pow(self.e);
        let sign = match (self.form_family(), self.orth_sign()) {
            (Ok(Family::GO | Family::SO | Family::Omega), Ok(s)) => s.sign(),
            _ => "",
        };
        match self.family {
            Family::Delta => format!("Delta({:?}{}{}({}))", self.delta_of.unwrap_or(Family::GL), sign, self.n, q),
            f => format!("{f:?}{sign}{}({q})", self.n),
        }
    }
}

/// Monic irreducible `t^2 + b t + c` with smallest `(b, c)`.
fn anisotropic_pair(f: &FieldDesc) -> (Felt, Felt) {
    for b in f.elements() {
        for c in f.elements() {
            let has_root = f
                .elements()
                .any(|t| f.add(f.add(f.mul(t, t), f.mul(b, t)), c).is_zero());
            if !has_root {
                return (b, c);
            }
        }
    }
    unreachable!("an irreducible quadratic exists over every finite field")
}

/// Standard form for a family: `[[0, I], [-I, 0]]` for Sp, the identity (hermitian)
/// for unitary groups, and `sum x_i y_i` plus an anisotropic or one-dimensional
/// tail for orthogonal groups.
pub fn standard_form(spec: &ClassicalSpec) -> Result<Option<FormSpec>> {
    spec.validate()?;
    let f = spec.field()?;
    let n = spec.n;
    let form = match spec.form_family()? {
        Family::GL | Family::SL => return Ok(None),
        Family::Sp => {
            let m = n / 2;
            let mut g = Mat::zeros(&f, n, n);
            for i in 0..m {
                g.set(i, m + i, f.one());
                g.set(m + i, i, f.neg(f.one()));
            }
            FormSpec::new(FormKind::Symplectic, g, 0, None)?
        }
        Family::GU | Family::SU => FormSpec::new(FormKind::Unitary, Mat::identity(&f, n), f.e() / 2, None)?,
        Family::GO | Family::SO | Family::Omega => {
            let sign = spec.orth_sign()?;
            let mut u = Mat::zeros(&f, n, n);
            let hyper = match sign {
                OrthType::Plus => n / 2,
                OrthType::Minus => n / 2 - 1,
                OrthType::Circ => n / 2,
            };
            for i in 0..hyper {
                u.set(i, hyper + i, f.one());
            }
            match sign {
                OrthType::Minus => {
                    let (b, c) = anisotropic_pair(&f);
                    u.set(n - 2, n - 2, f.one());
                    u.set(n - 2, n - 1, b);
                    u.set(n - 1, n - 1, c);
                }
                OrthType::Circ => u.set(n - 1, n - 1, f.one()),
                OrthType::Plus => {}
            }
            FormSpec::new(FormKind::Quadratic, u, 0, Some(sign))?
        }
        Family::Delta => unreachable!(),
    };
    Ok(Some(form))
}

fn elementary(f: &FieldDesc, n: usize, i: usize, j: usize, t: Felt) -> Mat {
    let mut m = Mat::identity(f, n);
    m.set(i, j, t);
    m
}

/// Permutation matrix of the n-cycle `e_i -> e_{i+1}` with one sign flipped so the
/// determinant is 1.
fn signed_cycle(f: &FieldDesc, n: usize) -> Mat {
    let mut m = Mat::zeros(f, n, n);
    for i in 0..n {
        m.set((i + 1) % n, i, f.one());
    }
    if n.is_multiple_of(2) {
        m.set(0, n - 1, f.neg(f.one()));
    }
    m
}

fn gl_generators(f: &FieldDesc, n: usize) -> Vec<Mat> {
    let xi = f.primitive();
    if n == 1 {
        return vec![Mat::scalar(f, 1, xi)];
    }
    let mut d = vec![f.one(); n];
    d[0] = xi;
    vec![Mat::diag(f, &d), elementary(f, n, 0, 1, f.one()), signed_cycle(f, n)]
}

fn sl_generators(f: &FieldDesc, n: usize) -> Vec<Mat> {
    if n == 1 {
        return vec![Mat::identity(f, 1)];
    }
    let mut gens: Vec<Mat> = (0..f.e() as u64).map(|k| elementary(f, n, 0, 1, f.exp(k))).collect();
    gens.push(signed_cycle(f, n));
    gens
}

/// Every row vector of `F^n`, in packed order.
fn all_vectors(f: &FieldDesc, n: usize) -> Result<Vec<Vec<Felt>>> {
    let q = f.q() as usize;
    let total = q.checked_pow(n as u32).filter(|&t| t <= SEARCH_VECTORS);
    let Some(total) = total else {
        return Err(Error::TooLarge(format!("isometry search over GF({})^{n}", f.q())));
    };
    Ok((0..total)
        .map(|mut t| {
            (0..n)
                .map(|_| {
                    let c = Felt((t % q) as u16);
                    t /= q;
                    c
                })
                .collect()
        })
        .collect())
}

/// Search for matrices `g` with `g B (g^theta)^T = lambda B` (quadratic forms:
/// `Q(r_i) = lambda U_ii` and polar values `lambda P_ij` on the rows).
/// Stops after `limit` solutions.
pub fn similarity_search(form: &FormSpec, lambda: Felt, limit: usize) -> Result<Vec<Mat>> {
    let f = form.field().clone();
    let n = form.dim();
    let vecs = all_vectors(&f, n)?;
    let b = form.bilinear_gram();
    let target_b = b.scale(lambda);
    let diag_target: Vec<Felt> = (0..n)
        .map(|i| match form.kind() {
            FormKind::Quadratic => f.mul(lambda, form.gram().get(i, i)),
            _ => target_b.get(i, i),
        })
        .collect();
    let norms: Vec<Felt> = vecs.iter().map(|v| form.norm(v)).collect();
    let mut out = Vec::new();
    let mut rows: Vec<usize> = Vec::new();
    search_rows(form, &f, &vecs, &norms, &target_b, &diag_target, &mut rows, &mut out, limit);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search_rows(
    form: &FormSpec,
    f: &FieldDesc,
    vecs: &[Vec<Felt>],
    norms: &[Felt],
    target: &Mat,
    diag: &[Felt],
    rows: &mut Vec<usize>,
    out: &mut Vec<Mat>,
    limit: usize,
) {
    let n = form.dim();
    let i = rows.len();
    if i == n {
        let m = Mat::from_rows(f, n, &rows.iter().map(|&r| vecs[r].clone()).collect::<Vec<_>>());
        if !m.det().unwrap().is_zero() {
            out.push(m);
        }
        return;
    }
    let sesqui = form.kind() != FormKind::Quadratic;
    for (idx, v) in vecs.iter().enumerate() {
        if norms[idx] != diag[i] {
            continue;
        }
        let ok = rows.iter().enumerate().all(|(k, &r)| {
            let w = &vecs[r];
            if form.eval(w, v) != target.get(k, i) {
                return false;
            }
            !sesqui || form.eval(v, w) == target.get(i, k)
        });
        if !ok {
            continue;
        }
        rows.push(idx);
        search_rows(form, f, vecs, norms, target, diag, rows, out, limit);
        rows.pop();
        if out.len() >= limit {
            return;
        }
    }
}

/// Picks generators from `elements` (in seeded random order) until they generate all of them.
pub fn greedy_generators(f: &FieldDesc, n: usize, elements: &[Mat], seed: u64) -> Result<Vec<Mat>> {
    let mut order: Vec<&Mat> = elements.iter().collect();
    order.sort();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    let target = elements.len();
    let mut gens: Vec<Mat> = Vec::new();
    let mut current = Group::close_mats(f, n, &gens, usize::MAX)?;
    for x in order {
        if current.order() == target {
            break;
        }
        if x.is_identity() || current.contains(x) {
            continue;
        }
        gens.push(x.clone());
        current = Group::close_mats(f, n, &gens, target.max(1))?;
    }
    if gens.is_empty() {
        gens.push(Mat::identity(f, n));
    }
    Ok(gens)
}

/// All isometries of `form`.
pub fn isometries(form: &FormSpec) -> Result<Vec<Mat>> {
    similarity_search(form, form.field().one(), usize::MAX)
}

fn multiplier_group_generator(form: &FormSpec) -> Result<Option<Mat>> {
    let f = form.field();
    let order = (f.q() - 1) as u64;
    for k in 1..=order {
        let lambda = f.exp(k);
        if let Some(g) = similarity_search(form, lambda, 1)?.into_iter().next() {
            return Ok(if lambda == f.one() { None } else { Some(g) });
        }
    }
    Ok(None)
}

/// Generating set for a classical group. `form` overrides the standard form.
pub fn generators(spec: &ClassicalSpec, form: Option<&FormSpec>) -> Result<GenSet> {
    spec.validate()?;
    let f = spec.field()?;
    let n = spec.n;
    let label = spec.label();
    let gens = match spec.family {
        Family::GL => gl_generators(&f, n),
        Family::SL => sl_generators(&f, n),
        fam => {
            let std = standard_form(spec)?.expect("form family");
            let form = form.cloned().unwrap_or(std);
            if form.dim() != n || form.field() != &f {
                return Err(Error::ShapeMismatch("form does not match the group".into()));
            }
            if !form.is_nondegenerate() {
                return Err(Error::DegenerateForm);
            }
            let iso = isometries(&form)?;
            let iso_gens = |els: &[Mat]| greedy_generators(&f, n, els, GENERATOR_SEED);
            match fam {
                Family::Sp | Family::GU | Family::GO => iso_gens(&iso)?,
                Family::SU | Family::SO => {
                    let det1: Vec<Mat> = iso.into_iter().filter(|g| g.det().unwrap() == f.one()).collect();
                    iso_gens(&det1)?
                }
                Family::Omega => {
                    let o = Group::close_mats(&f, n, &iso_gens(&iso)?, usize::MAX)?;
                    let d = o.derived_subgroup();
                    let els: Vec<Mat> = d.elements().iter().cloned().collect();
                    iso_gens(&els)?
                }
                Family::Delta => {
                    let mut gens = iso_gens(&iso)?;
                    gens.push(Mat::scalar(&f, n, f.primitive()));
                    if let Some(s) = multiplier_group_generator(&form)? {
                        gens.push(s);
                    }
                    gens
                }
                Family::GL | Family::SL => unreachable!(),
            }
        }
    };
    GenSet::new(label, &f, n, gens)
}

fn gl_order(n: u32, q: u128) -> u128 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

fn sp_order(m: u32, q: u128) -> u128 {
    q.pow(m * m) * (1..=m).map(|i| q.pow(2 * i) - 1).product::<u128>()
}

fn gu_order(n: u32, q0: u128) -> u128 {
    let mut r = q0.pow(n * (n - 1) / 2);
    for i in 1..=n {
        let t = q0.pow(i) as i128 - if i % 2 == 0 { 1 } else { -1 };
        r *= t as u128;
    }
    r
}

fn go_order(n: u32, q: u128, sign: OrthType) -> u128 {
    let m = n / 2;
    match sign {
        OrthType::Circ => {
            let base = q.pow(m * m) * (1..=m).map(|i| q.pow(2 * i) - 1).product::<u128>();
            if q % 2 == 1 {
                2 * base
            } else {
                base
            }
        }
        OrthType::Plus | OrthType::Minus => {
            let tail: u128 = (1..m).map(|i| q.pow(2 * i) - 1).product();
            let mid = if sign == OrthType::Plus { q.pow(m) - 1 } else { q.pow(m) + 1 };
            2 * q.pow(m * (m - 1)) * mid * tail
        }
    }
}

/// Closed-form group order. For `Omega` this is the conventional index-2 subgroup
/// of SO (q odd) or O (q even); the derived subgroup computed by [`generators`] can
/// be smaller in a few small cases.
pub fn expected_order(spec: &ClassicalSpec) -> Result<u128> {
    spec.validate()?;
    let q = (spec.p as u128).pow(spec.e);
    let n = spec.n as u32;
    let odd = q % 2 == 1;
    let q0 = (spec.p as u128).pow(spec.e / 2);
    Ok(match spec.family {
        Family::GL => gl_order(n, q),
        Family::SL => gl_order(n, q) / (q - 1),
        Family::Sp => sp_order(n / 2, q),
        Family::GU => gu_order(n, q0),
        Family::SU => gu_order(n, q0) / (q0 + 1),
        Family::GO => go_order(n, q, spec.orth_sign()?),
        Family::SO => {
            let o = go_order(n, q, spec.orth_sign()?);
            if odd {
                o / 2
            } else {
                o
            }
        }
        Family::Omega => {
            let o = go_order(n, q, spec.orth_sign()?);
            if odd {
                o / 4
            } else {
                o / 2
            }
        }
        Family::Delta => match spec.form_family()? {
            Family::Sp => sp_order(n / 2, q) * (q - 1),
            Family::GU => gu_order(n, q0) * (q - 1) / (q0 + 1),
            Family::GO => {
                let o = go_order(n, q, spec.orth_sign()?);
                if n % 2 == 1 && odd {
                    o * (q - 1) / 2
                } else {
                    o * (q - 1)
                }
            }
            _ => unreachable!(),
        },
    })
}

/// Result of one isomorphism spot check.
#[derive(Debug, Clone, Serialize)]
pub struct SpotCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Elements of `G / Z` where `Z` is the group of scalar matrices in `G`, each coset
/// represented by its smallest member.
fn projective_elements(g: &Group) -> Vec<Mat> {
    let scalars: Vec<Mat> = g.elements().iter().filter(|x| x.scalar_value().is_some()).cloned().collect();
    let mut reps: Vec<Mat> = g
        .elements()
        .iter()
        .map(|x| scalars.iter().map(|z| z.mul(x)).min().unwrap())
        .collect();
    reps.sort();
    reps.dedup();
    reps
}

/// Cayley table of a finite set closed under `op`.
fn cayley<T: Clone + Ord>(elems: &[T], op: impl Fn(&T, &T) -> T) -> Vec<Vec<usize>> {
    elems
        .iter()
        .map(|a| {
            elems
                .iter()
                .map(|b| elems.binary_search(&op(a, b)).unwrap_or_else(|_| panic!("not closed")))
                .collect()
        })
        .collect()
}

/// Whether two groups given by Cayley tables are isomorphic (brute force on images of
/// a generating pair, adequate for orders up to a few dozen).
pub fn tables_isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let id = |t: &[Vec<usize>]| (0..t.len()).find(|&i| (0..t.len()).all(|j| t[i][j] == j)).unwrap();
    let (ia, ib) = (id(a), id(b));
    let order = |t: &[Vec<usize>], i0: usize, x: usize| {
        let mut y = x;
        let mut k = 1;
        while y != i0 {
            y = t[y][x];
            k += 1;
        }
        k
    };
    // a generating set of a of size at most 2 (found greedily), else give up
    let span = |t: &[Vec<usize>], i0: usize, gens: &[usize]| {
        let mut seen = vec![false; t.len()];
        let mut stack = vec![i0];
        seen[i0] = true;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = t[x][g];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.iter().filter(|&&s| s).count()
    };
    let mut gens = Vec::new();
    'find: for x in 0..n {
        if span(a, ia, &[x]) == n {
            gens = vec![x];
            break;
        }
        for y in 0..n {
            if span(a, ia, &[x, y]) == n {
                gens = vec![x, y];
                break 'find;
            }
        }
    }
    if gens.is_empty() {
        return n == 1;
    }
    let oa: Vec<usize> = gens.iter().map(|&g| order(a, ia, g)).collect();
    let candidates: Vec<usize> = (0..n).collect();
    let try_map = |imgs: &[usize]| -> bool {
        // extend along a spanning tree of the Cayley graph, then check homomorphism
        let mut phi = vec![usize::MAX; n];
        phi[ia] = ib;
        let mut stack = vec![ia];
        while let Some(x) = stack.pop() {
            for (k, &g) in gens.iter().enumerate() {
                let y = a[x][g];
                let img = b[phi[x]][imgs[k]];
                if phi[y] == usize::MAX {
                    phi[y] = img;
                    stack.push(y);
                } else if phi[y] != img {
                    return false;
                }
            }
        }
        let mut hit = vec![false; n];
        for &v in &phi {
            if hit[v] {
                return false;
            }
            hit[v] = true;
        }
        (0..n).all(|x| (0..n).all(|y| phi[a[x][y]] == b[phi[x]][phi[y]]))
    };
    let imgs0: Vec<usize> = candidates.iter().copied().filter(|&c| order(b, ib, c) == oa[0]).collect();
    if gens.len() == 1 {
        return imgs0.iter().any(|&c| try_map(&[c]));
    }
    let imgs1: Vec<usize> = candidates.iter().copied().filter(|&c| order(b, ib, c) == oa[1]).collect();
    imgs0.iter().any(|&c0| imgs1.iter().any(|&c1| try_map(&[c0, c1])))
}

#[allow(clippy::ptr_arg)] // matches the element type of `cayley`
fn perm_compose(a: &Vec<u8>, b: &Vec<u8>) -> Vec<u8> {
    b.iter().map(|&i| a[i as usize]).collect()
}

fn symmetric_group(k: u8, even_only: bool) -> Vec<Vec<u8>> {
    fn perms(k: u8) -> Vec<Vec<u8>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for pos in 0..k as usize {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
    let parity = |p: &Vec<u8>| {
        let mut inv = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv % 2
    };
    let mut all: Vec<Vec<u8>> = perms(k).into_iter().filter(|p| !even_only || parity(p) == 0).collect();
    all.sort();
    all
}

fn is_dihedral(g: &Group, order: usize) -> bool {
    if g.order() != order {
        return false;
    }
    if order <= 2 {
        return true;
    }
    let half = order / 2;
    let els: Vec<&Mat> = g.elements().iter().collect();
    // a cyclic subgroup of index 2 and an involution outside it inverting it
    els.iter().any(|r| {
        r.order(order as u64) == Some(half as u64) && {
            let cyc: Vec<Mat> = (0..half).map(|k| r.pow(k as u64)).collect();
            let rinv = r.inverse().unwrap();
            els.iter().any(|s| {
                !cyc.contains(s) && s.mul(s).is_identity() && s.mul(r).mul(s) == rinv
            })
        }
    })
}

/// Small exceptional isomorphisms, checked from scratch.
pub fn isomorphism_spot_checks() -> Result<Vec<SpotCheck>> {
    let mut out = Vec::new();
    for (q, target, name, even) in [(2u32, 3u8, "PSL2(2) = S3", false), (3, 4, "PSL2(3) = A4", true)] {
        let sl = Group::close(&generators(&ClassicalSpec::new(Family::SL, 2, q, 1), None)?, 10_000)?;
        let proj = projective_elements(&sl);
        let scalars: Vec<Mat> = sl.elements().iter().filter(|x| x.scalar_value().is_some()).cloned().collect();
        let reduce = |x: &Mat| scalars.iter().map(|z| z.mul(x)).min().unwrap();
        let ta = cayley(&proj, |a, b| reduce(&a.mul(b)));
        let perms = symmetric_group(target, even);
        let tb = cayley(&perms, perm_compose);
        let passed = tables_isomorphic(&ta, &tb);
        out.push(SpotCheck {
            name: name.into(),
            passed,
            detail: format!("|PSL| = {}, target order {}", proj.len(), perms.len()),
        });
    }
    {
        let sp = Group::close(&generators(&ClassicalSpec::new(Family::Sp, 2, 3, 1), None)?, 10_000)?;
        let sl = Group::close(&generators(&ClassicalSpec::new(Family::SL, 2, 3, 1), None)?, 10_000)?;
        out.push(SpotCheck {
            name: "Sp2(3) = SL2(3)".into(),
            passed: sp.same_elements(&sl) && sp.order() == 24,
            detail: format!("|Sp2(3)| = {}, |SL2(3)| = {}", sp.order(), sl.order()),
        });
    }
    for q in [2u32, 3] {
        for sign in [OrthType::Plus, OrthType::Minus] {
            let spec = ClassicalSpec::new(Family::GO, 2, q, 1).with_sign(sign);
            let g = Group::close(&generators(&spec, None)?, 10_000)?;
            let want = 2 * if sign == OrthType::Plus { q - 1 } else { q + 1 } as usize;
            out.push(SpotCheck {
                name: format!("O2{}({q}) dihedral of order {want}", sign.sign()),
                passed: is_dihedral(&g, want),
                detail: format!("order {}", g.order()),
            });
        }
    }
    // GO4+(2) = S3 wr 2 has derived subgroup 3^2:2, half the Dickson kernel;
    // GO4-(2) = S5 has derived subgroup A5.
    for (sign, derived) in [(OrthType::Plus, 18u128), (OrthType::Minus, 60)] {
        let spec = ClassicalSpec::new(Family::Omega, 4, 2, 1).with_sign(sign);
        let g = Group::close(&generators(&spec, None)?, 10_000)?;
        let conventional = expected_order(&spec)?;
        out.push(SpotCheck {
            name: format!("derived subgroup of GO4{}(2)", sign.sign()),
            passed: g.order() as u128 == derived,
            detail: format!("order {} (want {derived}; Dickson kernel has order {conventional})", g.order()),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders_match_formulas() {
        for spec in [
            ClassicalSpec::new(Family::GL, 2, 3, 1),
            ClassicalSpec::new(Family::SL, 3, 2, 1),
            ClassicalSpec::new(Family::Sp, 4, 2, 1),
            ClassicalSpec::new(Family::GO, 3, 3, 1),
            ClassicalSpec::new(Family::GO, 4, 2, 1).with_sign(OrthType::Minus),
            ClassicalSpec::delta(Family::Sp, 2, 5, 1),
        ] {
            let g = Group::close(&generators(&spec, None).unwrap(), 100_000).unwrap();
            assert_eq!(g.order() as u128, expected_order(&spec).unwrap(), "{}", spec.label());
        }
    }

    #[test]
    fn literature_orders() {
        let o = |s: ClassicalSpec| expected_order(&s).unwrap();
        assert_eq!(o(ClassicalSpec::new(Family::GL, 2, 3, 1)), 48);
        assert_eq!(o(ClassicalSpec::new(Family::SL, 2, 3, 1)), 24);
        assert_eq!(o(ClassicalSpec::new(Family::Sp, 4, 2, 1)), 720);
        assert_eq!(o(ClassicalSpec::new(Family::SU, 3, 2, 2)), 216);
        assert_eq!(o(ClassicalSpec::new(Family::GU, 3, 2, 2)), 648);
        assert_eq!(o(ClassicalSpec::new(Family::GO, 2, 2, 1).with_sign(OrthType::Minus)), 6);
    }

    #[test]
    fn generators_preserve_the_form() {
        let spec = ClassicalSpec::new(Family::GU, 2, 2, 2);
        let form = standard_form(&spec).unwrap().unwrap();
        for g in generators(&spec, None).unwrap().gens() {
            assert!(form.is_isometry(g).unwrap());
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(ClassicalSpec::new(Family::Sp, 3, 3, 1).validate().is_err());
        assert!(ClassicalSpec::new(Family::GU, 2, 3, 1).validate().is_err());
        assert!(ClassicalSpec::new(Family::GO, 4, 3, 1).validate().is_err());
    }
}
