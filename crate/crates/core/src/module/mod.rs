//! Module analysis for a matrix algebra acting on column vectors.
//!
//! Irreducibility uses the Norton test: a random algebra element `theta` with an
//! irreducible factor `f` of its minimal polynomial, where `ker f(theta)` has
//! dimension `deg f`, settles the question by spinning one vector of the kernel and
//! one vector of the transposed kernel.

pub mod descent;

pub use descent::{descent_certificate, minimal_field, scaled_over_subfield, trace_field_degree, MinimalField};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::projective_points;
use crate::gf::{poly, Felt, FieldDesc, Mat, Subspace};

/// Limits for the exhaustive fallback of the irreducibility test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubspaceCaps {
    pub max_dim: usize,
    pub max_q: u32,
}

impl Default for SubspaceCaps {
    fn default() -> Self {
        SubspaceCaps { max_dim: 4, max_q: 4 }
    }
}

/// Default seed for randomized module algorithms.
pub const MODULE_SEED: u64 = 0x6d65_6174;

/// Evidence that a module is irreducible.
#[derive(Debug, Clone)]
pub enum IrreducibleCertificate {
    /// `ker f(theta)` has dimension `deg f`; a kernel vector and a vector of the
    /// transposed kernel both spin to the whole space.
    Norton { theta: Mat, factor: Vec<Felt>, v: Vec<Felt>, w: Vec<Felt> },
    /// Every nonzero vector spins to the whole space.
    Exhaustive,
    /// Dimension one.
    Trivial,
}

#[derive(Debug, Clone)]
pub enum Irreducibility {
    Reducible(Subspace),
    Irreducible(IrreducibleCertificate),
    Inconclusive(String),
}

fn first_gen(gens: &[Mat]) -> Result<&Mat> {
    gens.first().ok_or_else(|| Error::InvalidSpec("empty generating set".into()))
}

/// Smallest subspace containing `vecs` and invariant under every generator.
pub fn spin(gens: &[Mat], vecs: &[Vec<Felt>], field: &FieldDesc, n: usize) -> Subspace {
    let mut basis: Vec<Vec<Felt>> = Vec::new();
    let mut span = Subspace::zero(field, n);
    let mut queue: Vec<Vec<Felt>> = vecs.to_vec();
    while let Some(v) = queue.pop() {
        if span.contains(&v) {
            continue;
        }
        basis.push(v.clone());
        span = Subspace::from_vectors(field, n, &basis);
        if span.dim() == n {
            break;
        }
        for g in gens {
            queue.push(g.apply(&v));
        }
    }
    span
}

fn random_elt(rng: &mut ChaCha8Rng, f: &FieldDesc) -> Felt {
    Felt(rng.gen_range(0..f.q()) as u16)
}

/// Random element of the enveloping algebra: a combination of the identity, the
/// generators and a few short products.
fn random_algebra_element(gens: &[Mat], rng: &mut ChaCha8Rng) -> Mat {
    let f = gens[0].field().clone();
    let n = gens[0].rows();
    let mut pool = vec![Mat::identity(&f, n)];
    pool.extend(gens.iter().cloned());
    for _ in 0..3 {
        let a = &gens[rng.gen_range(0..gens.len())];
        let b = &pool[rng.gen_range(0..pool.len())];
        let c = a.mul(b);
        pool.push(c);
    }
    let mut theta = Mat::zeros(&f, n, n);
    for m in &pool {
        theta = theta.add(&m.scale(random_elt(rng, &f)));
    }
    theta
}

/// Irreducible factors of `m` that can be isolated cheaply: linear factors from
/// roots, and distinct-degree products that are themselves irreducible.
fn usable_factors(f: &FieldDesc, m: &[Felt]) -> Vec<Vec<Felt>> {
    let m = m.to_vec();
    let mut out = Vec::new();
    if f.q() <= 1 << 12 {
        for a in f.elements() {
            if poly::eval(f, &m, a).is_zero() {
                out.push(vec![f.neg(a), f.one()]);
            }
        }
    }
    for (d, h) in poly::distinct_degree(f, &m) {
        let small_roots = d == 1 && f.q() <= 1 << 12;
        if !small_roots && poly::degree(&h) == Some(d) {
            out.push(h);
        }
    }
    out.sort_by_key(|h| h.len());
    out
}

/// Looks for a proper nonzero invariant subspace.
pub fn find_invariant_subspace(gens: &[Mat], caps: SubspaceCaps, seed: u64) -> Result<Irreducibility> {
    let g0 = first_gen(gens)?;
    let f = g0.field().clone();
    let n = g0.rows();
    if n <= 1 {
        return Ok(Irreducibility::Irreducible(IrreducibleCertificate::Trivial));
    }
    // standard basis vectors first: cheap and often decisive
    for i in 0..n {
        let mut e = vec![Felt(0); n];
        e[i] = f.one();
        let s = spin(gens, &[e], &f, n);
        if s.dim() < n {
            return Ok(Irreducibility::Reducible(s));
        }
    }
    let transposed: Vec<Mat> = gens.iter().map(|g| g.transpose()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..40 {
        let theta = random_algebra_element(gens, &mut rng);
        let m = poly::min_poly(&f, &theta);
        for fac in usable_factors(&f, &m) {
            let ft = poly::eval_mat(&f, &fac, &theta);
            let ker = ft.kernel();
            if ker.dim() == 0 {
                continue;
            }
            let deg = fac.len() - 1;
            let v = ker.vectors()[0].clone();
            let s = spin(gens, std::slice::from_ref(&v), &f, n);
            if s.dim() < n {
                return Ok(Irreducibility::Reducible(s));
            }
            if ker.dim() != deg {
                // not a Norton element; a few kernel points may still reveal a submodule
                for p in projective_points(&ker).into_iter().take(64) {
                    let s = spin(gens, &[p], &f, n);
                    if s.dim() < n {
                        return Ok(Irreducibility::Reducible(s));
                    }
                }
                continue;
            }
            let kt = ft.transpose().kernel();
            let w = kt.vectors()[0].clone();
            let u = spin(&transposed, std::slice::from_ref(&w), &f, n);
            if u.dim() < n {
                let ann = u.basis().kernel();
                return Ok(Irreducibility::Reducible(ann));
            }
            return Ok(Irreducibility::Irreducible(IrreducibleCertificate::Norton {
                theta,
                factor: fac,
                v,
                w,
            }));
        }
    }
    if n <= caps.max_dim && f.q() <= caps.max_q {
        for p in projective_points(&Subspace::full(&f, n)) {
            let s = spin(gens, &[p], &f, n);
            if s.dim() < n {
                return Ok(Irreducibility::Reducible(s));
            }
        }
        return Ok(Irreducibility::Irreducible(IrreducibleCertificate::Exhaustive));
    }
    Ok(Irreducibility::Inconclusive(format!(
        "no Norton element found for n={n}, q={}",
        f.q()
    )))
}

pub fn is_irreducible(gens: &[Mat], caps: SubspaceCaps, seed: u64) -> Result<bool> {
    match find_invariant_subspace(gens, caps, seed)? {
        Irreducibility::Reducible(_) => Ok(false),
        Irreducibility::Irreducible(_) => Ok(true),
        Irreducibility::Inconclusive(why) => Err(Error::Inconclusive(why)),
    }
}

/// Solutions `X` (as `rows x cols` matrices) of `A_i X = X B_i` for every `i`.
pub fn intertwiners(a: &[Mat], b: &[Mat], rows: usize, cols: usize) -> Vec<Mat> {
    let f = a[0].field().clone();
    let mut sys = Mat::zeros(&f, a.len() * rows * cols, rows * cols);
    for (t, (ai, bi)) in a.iter().zip(b).enumerate() {
        for i in 0..rows {
            for j in 0..cols {
                let r = t * rows * cols + i * cols + j;
                // (A X)_{ij} = sum_k A_ik X_kj
                for k in 0..rows {
                    let c = ai.get(i, k);
                    if !c.is_zero() {
                        let idx = k * cols + j;
                        sys.set(r, idx, f.add(sys.get(r, idx), c));
                    }
                }
                // -(X B)_{ij} = -sum_k X_ik B_kj
                for k in 0..cols {
                    let c = bi.get(k, j);
                    if !c.is_zero() {
                        let idx = i * cols + k;
                        sys.set(r, idx, f.sub(sys.get(r, idx), c));
                    }
                }
            }
        }
    }
    sys.kernel()
        .vectors()
        .iter()
        .map(|v| Mat::from_vec(&f, rows, cols, v))
        .collect()
}

/// Basis of the commutant `{X : X g = g X}`.
pub fn end_ring(gens: &[Mat]) -> Result<Vec<Mat>> {
    let n = first_gen(gens)?.rows();
    Ok(intertwiners(gens, gens, n, n))
}

/// Irreducible with a one-dimensional endomorphism ring.
pub fn is_absolutely_irreducible(gens: &[Mat], caps: SubspaceCaps, seed: u64) -> Result<bool> {
    Ok(is_irreducible(gens, caps, seed)? && end_ring(gens)?.len() == 1)
}

/// Basis of the center of the algebra spanned by `basis`.
pub fn algebra_center(basis: &[Mat]) -> Vec<Mat> {
    let f = basis[0].field().clone();
    let n = basis[0].rows();
    let k = basis.len();
    // X = sum c_i B_i commuting with every B_j
    let mut sys = Mat::zeros(&f, k * n * n, k);
    for (j, bj) in basis.iter().enumerate() {
        for (i, bi) in basis.iter().enumerate() {
            let comm = bi.mul(bj).sub(&bj.mul(bi));
            for (r, &x) in comm.data().iter().enumerate() {
                sys.set(j * n * n + r, i, x);
            }
        }
    }
    sys.kernel()
        .vectors()
        .iter()
        .map(|c| {
            c.iter()
                .zip(basis)
                .fold(Mat::zeros(&f, n, n), |acc, (&ci, b)| acc.add(&b.scale(ci)))
        })
        .collect()
}

/// A minimal invariant subspace (irreducible submodule).
pub fn irreducible_submodule(gens: &[Mat], caps: SubspaceCaps, seed: u64) -> Result<Subspace> {
    let g0 = first_gen(gens)?;
    let f = g0.field().clone();
    let n = g0.rows();
    let mut w = Subspace::full(&f, n);
    loop {
        let restricted: Vec<Mat> = gens.iter().map(|g| w.restrict(g)).collect();
        match find_invariant_subspace(&restricted, caps, seed)? {
            Irreducibility::Irreducible(_) => return Ok(w),
            Irreducibility::Reducible(sub) => w = w.embed_subspace(&sub),
            Irreducibility::Inconclusive(why) => return Err(Error::Inconclusive(why)),
        }
    }
}

/// One homogeneous component of a semisimple module.
#[derive(Debug, Clone)]
pub struct HomogeneousComponent {
    pub space: Subspace,
    /// Action of the generators on one irreducible constituent.
    pub constituent: Vec<Mat>,
    pub multiplicity: usize,
}

/// Homogeneous components of a completely reducible module. Fails with
/// `Inconclusive` when the module turns out not to be semisimple.
pub fn homogeneous_components(gens: &[Mat], caps: SubspaceCaps, seed: u64) -> Result<Vec<HomogeneousComponent>> {
    let g0 = first_gen(gens)?;
    let f = g0.field().clone();
    let n = g0.rows();
    let mut covered = Subspace::zero(&f, n);
    let mut out = Vec::new();
    while covered.dim() < n {
        let quot: Vec<Mat> = gens.iter().map(|g| covered.quotient_action(g)).collect();
        let m_sub = irreducible_submodule(&quot, caps, seed)?;
        let constituent: Vec<Mat> = quot.iter().map(|g| m_sub.restrict(g)).collect();
        let k = m_sub.dim();
        let homs = intertwiners(gens, &constituent, n, k);
        let mut cols: Vec<Vec<Felt>> = Vec::new();
        for h in &homs {
            for j in 0..k {
                cols.push(h.col(j));
            }
        }
        let comp = Subspace::from_vectors(&f, n, &cols);
        if comp.dim() == 0 || comp.intersection(&covered).dim() > 0 {
            return Err(Error::Inconclusive("module is not completely reducible".into()));
        }
        covered = covered.sum(&comp);
        out.push(HomogeneousComponent {
            multiplicity: comp.dim() / k,
            space: comp,
            constituent,
        });
    }
    Ok(out)
}

/// Whether `perm_gens` permute the given subspaces, and whether they do so transitively.
pub fn permutes_transitively(perm_gens: &[Mat], spaces: &[Subspace]) -> (bool, bool) {
    let mut images: Vec<Vec<usize>> = Vec::new();
    for h in perm_gens {
        let mut img = Vec::new();
        for s in spaces {
            let t = s.image(h);
            match spaces.iter().position(|x| *x == t) {
                Some(j) => img.push(j),
                None => return (false, false),
            }
        }
        images.push(img);
    }
    let mut seen = vec![false; spaces.len()];
    let mut stack = vec![0];
    if !spaces.is_empty() {
        seen[0] = true;
    }
    while let Some(i) = stack.pop() {
        for img in &images {
            let j = img[i];
            if !seen[j] {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    (true, seen.iter().all(|&s| s))
}

/// Basis change exhibiting a homogeneous module as `V_1 (x) F^d`.
#[derive(Debug, Clone)]
pub struct TensorSplit {
    /// Columns `i * d + j` hold `alpha_j(e_i)`, so `g^-1 x g = x_1 (x) I_d`.
    pub basis: Mat,
    pub dims: (usize, usize),
    pub factor: Vec<Mat>,
}

pub fn tensor_split(gens: &[Mat], caps: SubspaceCaps, seed: u64) -> Result<TensorSplit> {
    let g0 = first_gen(gens)?;
    let f = g0.field().clone();
    let n = g0.rows();
    let comps = homogeneous_components(gens, caps, seed)?;
    if comps.len() != 1 {
        return Err(Error::NotHomogeneous);
    }
    let c = &comps[0];
    let a = c.constituent[0].rows();
    let d = n / a;
    if d == 1 {
        return Err(Error::MultiplicityOne);
    }
    let homs = intertwiners(gens, &c.constituent, n, a);
    if homs.len() != d {
        return Err(Error::SplitFailed(format!(
            "Hom space has dimension {} for multiplicity {d}; constituent is not absolutely irreducible",
            homs.len()
        )));
    }
    let mut basis = Mat::zeros(&f, n, n);
    for i in 0..a {
        for (j, h) in homs.iter().enumerate() {
            for r in 0..n {
                basis.set(r, i * d + j, h.get(r, i));
            }
        }
    }
    let inv = basis.inverse().map_err(|_| Error::SplitFailed("intertwiners are dependent".into()))?;
    for (x, x1) in gens.iter().zip(&c.constituent) {
        if inv.mul(x).mul(&basis) != x1.kronecker(&Mat::identity(&f, d)) {
            return Err(Error::SplitFailed("conjugated generator is not of the form x (x) I".into()));
        }
    }
    Ok(TensorSplit {
        basis,
        dims: (a, d),
        factor: c.constituent.clone(),
    })
}

/// Writes `m` as `A (x) B` with `A` of size `a`, if possible.
pub fn kron_factor(m: &Mat, a: usize) -> Option<(Mat, Mat)> {
    let n = m.rows();
    if a == 0 || !n.is_multiple_of(a) {
        return None;
    }
    let f = m.field();
    let d = n / a;
    let (bi, bj) = (0..a)
        .flat_map(|i| (0..a).map(move |j| (i, j)))
        .find(|&(i, j)| !m.block(i * d, j * d, d, d).is_zero())?;
    let b = m.block(bi * d, bj * d, d, d);
    let (pr, pc) = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .find(|&(i, j)| !b.get(i, j).is_zero())?;
    let mut am = Mat::zeros(f, a, a);
    for i in 0..a {
        for j in 0..a {
            let blk = m.block(i * d, j * d, d, d);
            let c = f.div(blk.get(pr, pc), b.get(pr, pc)).unwrap();
            if blk != b.scale(c) {
                return None;
            }
            am.set(i, j, c);
        }
    }
    Some((am, b))
}

/// Writes `m` as a Kronecker product of `k` factors of size `s`, if possible.
pub fn kron_factor_all(m: &Mat, s: usize, k: usize) -> Option<Vec<Mat>> {
    if k == 1 {
        return (m.rows() == s).then(|| vec![m.clone()]);
    }
    let (a, rest) = kron_factor(m, s)?;
    let mut tail = kron_factor_all(&rest, s, k - 1)?;
    tail.insert(0, a);
    Some(tail)
}

/// Permutation matrix on `(F^s)^{(x) k}` moving tensor factor `i` to position `perm[i]`.
pub fn tensor_permutation(f: &FieldDesc, s: usize, perm: &[usize]) -> Mat {
    let k = perm.len();
    let n = s.pow(k as u32);
    let mut m = Mat::zeros(f, n, n);
    for idx in 0..n {
        // digits of idx, most significant = factor 0
        let mut digits = vec![0usize; k];
        let mut x = idx;
        for t in (0..k).rev() {
            digits[t] = x % s;
            x /= s;
        }
        let mut new = vec![0usize; k];
        for t in 0..k {
            new[perm[t]] = digits[t];
        }
        let target = new.iter().fold(0, |acc, &dgt| acc * s + dgt);
        m.set(target, idx, f.one());
    }
    m
}

/// All permutations of `0..k`.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn borel_is_reducible() {
        let f = make_field(3, 1).unwrap();
        let gens = [Mat::from_ints(&f, 2, 2, &[1, 1, 0, 1]), Mat::from_ints(&f, 2, 2, &[2, 0, 0, 1])];
        match find_invariant_subspace(&gens, SubspaceCaps::default(), 1).unwrap() {
            Irreducibility::Reducible(w) => {
                assert_eq!(w.dim(), 1);
                assert!(gens.iter().all(|g| w.is_invariant(g)));
            }
            other => panic!("expected a submodule, got {other:?}"),
        }
    }

    #[test]
    fn singer_cycle_is_irreducible_but_not_absolutely() {
        let f = make_field(3, 1).unwrap();
        // companion matrix of x^2 + x + 2, a primitive polynomial over GF(3)
        let s = Mat::from_ints(&f, 2, 2, &[0, 1, 1, 2]);
        assert!(is_irreducible(std::slice::from_ref(&s), SubspaceCaps { max_dim: 0, max_q: 0 }, 3).unwrap());
        assert_eq!(end_ring(&[s]).unwrap().len(), 2);
    }

    #[test]
    fn kron_roundtrip_and_tensor_permutation() {
        let f = make_field(5, 1).unwrap();
        let a = Mat::from_ints(&f, 2, 2, &[1, 2, 3, 4]);
        let b = Mat::from_ints(&f, 2, 2, &[0, 1, 1, 1]);
        let (x, y) = kron_factor(&a.kronecker(&b), 2).unwrap();
        assert_eq!(x.kronecker(&y), a.kronecker(&b));
        let p = tensor_permutation(&f, 2, &[1, 0]);
        assert_eq!(p.mul(&a.kronecker(&b)).mul(&p.inverse().unwrap()), b.kronecker(&a));
    }

    #[test]
    fn split_of_doubled_module() {
        let f = make_field(3, 1).unwrap();
        let x = Mat::from_ints(&f, 2, 2, &[1, 1, 0, 1]);
        let y = Mat::from_ints(&f, 2, 2, &[1, 0, 1, 1]);
        let i2 = Mat::identity(&f, 2);
        // V_1 (x) F^2 written as I (x) x, so the split must find a nontrivial basis change
        let gens = vec![i2.kronecker(&x), i2.kronecker(&y)];
        let t = tensor_split(&gens, SubspaceCaps::default(), 5).unwrap();
        assert_eq!(t.dims, (2, 2));
    }
}
