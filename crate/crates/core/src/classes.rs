//! Members of the Aschbacher classes C1 to C8 of `GL(n, q)`: constructors,
//! witnesses of the stabilized structure, and membership checks.

use serde::{Deserialize, Serialize};

use crate::classical::{expected_order, generators, greedy_generators, standard_form, ClassicalSpec, Family};
use crate::error::{Error, Result};
use crate::extraspecial::{
    c6_conditions, identify, normalizer_by_lifting, normalizer_by_scan, rep_matrices, RGroupSpec, SCAN_LIMIT,
};
use crate::forms::{FormJson, FormKind, FormSpec, OrthType};
use crate::gf::poly::{is_irreducible, min_poly};
use crate::gf::{is_prime, make_field, Embedding, Felt, FieldDesc, Mat, MatJson, Subspace, SubspaceJson};
use crate::group::{GenSet, GenSetJson, Group};
use crate::module::descent::scaled_over_subfield;
use crate::module::{kron_factor, kron_factor_all, permutations, tensor_permutation};

/// Seed for generator selection inside class constructors.
const CLASS_SEED: u64 = 0x5eed_0002;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum ClassParams {
    /// Stabilizer of a `k`-dimensional subspace.
    C1 { k: usize },
    /// Stabilizer of a decomposition into `k` subspaces of dimension `m`.
    C2 { m: usize, k: usize },
    /// Normalizer of an extension field of prime degree `r`.
    C3 { r: u32 },
    /// Tensor product `GL(n1) (x) GL(n2)` with `n1 != n2`.
    C4 { n1: usize, n2: usize },
    /// Subfield group for a subfield of prime index `r`.
    C5 { r: u32 },
    /// Normalizer of a symplectic-type r-group.
    C6 { rgroup: RGroupSpec },
    /// Normalizer of `GL(m) (x) ... (x) GL(m)` with `k` factors.
    C7 { m: usize, k: usize },
    /// Similarity group of a classical form.
    C8 {
        kind: FormKind,
        #[serde(default)]
        subtype: Option<OrthType>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSpec {
    pub n: usize,
    pub p: u32,
    pub e: u32,
    pub params: ClassParams,
}

impl ClassSpec {
    pub fn new(n: usize, p: u32, e: u32, params: ClassParams) -> ClassSpec {
        ClassSpec { n, p, e, params }
    }

    pub fn class_id(&self) -> u8 {
        match self.params {
            ClassParams::C1 { .. } => 1,
            ClassParams::C2 { .. } => 2,
            ClassParams::C3 { .. } => 3,
            ClassParams::C4 { .. } => 4,
            ClassParams::C5 { .. } => 5,
            ClassParams::C6 { .. } => 6,
            ClassParams::C7 { .. } => 7,
            ClassParams::C8 { .. } => 8,
        }
    }

    pub fn field(&self) -> Result<FieldDesc> {
        make_field(self.p, self.e)
    }

    pub fn label(&self) -> String {
        let q = (self.p as u64).pow(self.e);
        let params = match &self.params {
            ClassParams::C1 { k } => format!("k={k}"),
            ClassParams::C2 { m, k } => format!("m={m},k={k}"),
            ClassParams::C3 { r } | ClassParams::C5 { r } => format!("r={r}"),
            ClassParams::C4 { n1, n2 } => format!("{n1}x{n2}"),
            ClassParams::C6 { rgroup } => rgroup.label(),
            ClassParams::C7 { m, k } => format!("m={m},k={k}"),
            ClassParams::C8 { kind, subtype } => {
                format!("{kind:?}{}", subtype.map(|s| s.sign()).unwrap_or(""))
            }
        };
        format!("C{}({},{q},{params})", self.class_id(), self.n)
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.field()?;
        let n = self.n;
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if n < 2 {
            return bad("n must be at least 2".into());
        }
        match &self.params {
            ClassParams::C1 { k } if *k == 0 || *k >= n => bad(format!("need 0 < k < n, got k={k}")),
            ClassParams::C2 { m, k } if m * k != n || *k < 2 || *m == 0 => {
                bad(format!("need m*k = n with k >= 2, got m={m}, k={k}"))
            }
            ClassParams::C3 { r } if !is_prime(*r) || !n.is_multiple_of(*r as usize) => {
                bad(format!("r={r} must be a prime dividing n"))
            }
            ClassParams::C3 { r } => make_field(self.p, self.e * r).map(|_| ()),
            ClassParams::C4 { n1, n2 } if n1 * n2 != n || n1 == n2 || *n1 < 2 || *n2 < 2 => {
                bad(format!("need n1*n2 = n, n1 != n2, both >= 2, got {n1}x{n2}"))
            }
            ClassParams::C5 { r } if !is_prime(*r) || f.e() % r != 0 => {
                bad(format!("r={r} must be a prime dividing e={}", f.e()))
            }
            ClassParams::C6 { rgroup } => {
                rgroup.validate()?;
                if rgroup.degree() != n {
                    return bad(format!("{} acts in dimension {}", rgroup.label(), rgroup.degree()));
                }
                let shape = crate::extraspecial::RGroupShape {
                    r: rgroup.r,
                    m: rgroup.m,
                    variant: rgroup.variant,
                };
                c6_conditions(&shape, self.p, self.e).map_err(Error::InvalidSpec)
            }
            ClassParams::C7 { m, k } if *m < 3 || *k < 2 || m.pow(*k as u32) != n => {
                bad(format!("need m >= 3, k >= 2, m^k = n, got m={m}, k={k}"))
            }
            ClassParams::C8 { kind, subtype } => c8_conditions(*kind, *subtype, n, &f).map_err(Error::InvalidSpec),
            _ => Ok(()),
        }
    }
}

pub(crate) fn c8_conditions(kind: FormKind, subtype: Option<OrthType>, n: usize, f: &FieldDesc) -> std::result::Result<(), String> {
    match kind {
        FormKind::Unitary if f.e() % 2 == 1 => Err("unitary forms need q square".into()),
        FormKind::Unitary if n < 3 => Err("unitary C8 members need n >= 3".into()),
        FormKind::Symplectic if n < 4 || n % 2 == 1 => Err("symplectic C8 members need even n >= 4".into()),
        FormKind::SymmetricBilinear | FormKind::Quadratic if f.p() == 2 => {
            Err("orthogonal C8 members need q odd".into())
        }
        FormKind::SymmetricBilinear | FormKind::Quadratic if n < 3 => Err("orthogonal C8 members need n >= 3".into()),
        FormKind::SymmetricBilinear | FormKind::Quadratic => match (n % 2, subtype) {
            (1, None | Some(OrthType::Circ)) => Ok(()),
            (0, Some(OrthType::Plus | OrthType::Minus)) => Ok(()),
            _ => Err("orthogonal subtype does not match the parity of n".into()),
        },
        FormKind::Zero => Err("the zero form defines no class".into()),
        _ => Ok(()),
    }
}

/// The structure a class member stabilizes.
#[derive(Debug, Clone)]
pub enum ClassWitness {
    C1 { subspace: Subspace },
    C2 { summands: Vec<Subspace> },
    /// `generator` is an `F`-linear map whose span of powers is a field of degree `degree`.
    C3 { generator: Mat, degree: u32 },
    /// `basis^-1 h basis` is a Kronecker product with left factor of size `dims.0`.
    C4 { basis: Mat, dims: (usize, usize) },
    /// `basis^-1 h basis` is a scalar multiple of a matrix over `GF(p^subfield_degree)`.
    C5 { basis: Mat, subfield_degree: u32 },
    C6 { rgroup: GenSet },
    /// `basis^-1 h basis` is a Kronecker product of `factors` matrices of size
    /// `factor_dim` followed by a tensor-factor permutation.
    C7 { basis: Mat, factor_dim: usize, factors: usize },
    C8 { form: FormSpec },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "class")]
pub enum WitnessJson {
    C1 { subspace: SubspaceJson },
    C2 { summands: Vec<SubspaceJson> },
    C3 { generator: MatJson, degree: u32 },
    C4 { basis: MatJson, dims: (usize, usize) },
    C5 { basis: MatJson, subfield_degree: u32 },
    C6 { rgroup: GenSetJson },
    C7 { basis: MatJson, factor_dim: usize, factors: usize },
    C8 { form: FormJson },
}

impl ClassWitness {
    pub fn class_id(&self) -> u8 {
        match self {
            ClassWitness::C1 { .. } => 1,
            ClassWitness::C2 { .. } => 2,
            ClassWitness::C3 { .. } => 3,
            ClassWitness::C4 { .. } => 4,
            ClassWitness::C5 { .. } => 5,
            ClassWitness::C6 { .. } => 6,
            ClassWitness::C7 { .. } => 7,
            ClassWitness::C8 { .. } => 8,
        }
    }

    pub fn to_json(&self) -> WitnessJson {
        match self {
            ClassWitness::C1 { subspace } => WitnessJson::C1 { subspace: subspace.to_json() },
            ClassWitness::C2 { summands } => WitnessJson::C2 {
                summands: summands.iter().map(|s| s.to_json()).collect(),
            },
            ClassWitness::C3 { generator, degree } => WitnessJson::C3 {
                generator: generator.to_json(),
                degree: *degree,
            },
            ClassWitness::C4 { basis, dims } => WitnessJson::C4 {
                basis: basis.to_json(),
                dims: *dims,
            },
            ClassWitness::C5 { basis, subfield_degree } => WitnessJson::C5 {
                basis: basis.to_json(),
                subfield_degree: *subfield_degree,
            },
            ClassWitness::C6 { rgroup } => WitnessJson::C6 { rgroup: rgroup.to_json() },
            ClassWitness::C7 { basis, factor_dim, factors } => WitnessJson::C7 {
                basis: basis.to_json(),
                factor_dim: *factor_dim,
                factors: *factors,
            },
            ClassWitness::C8 { form } => WitnessJson::C8 { form: form.to_json() },
        }
    }

    pub fn from_json(j: &WitnessJson) -> Result<ClassWitness> {
        Ok(match j {
            WitnessJson::C1 { subspace } => ClassWitness::C1 {
                subspace: Subspace::from_json(subspace)?,
            },
            WitnessJson::C2 { summands } => ClassWitness::C2 {
                summands: summands.iter().map(Subspace::from_json).collect::<Result<_>>()?,
            },
            WitnessJson::C3 { generator, degree } => ClassWitness::C3 {
                generator: Mat::from_json(generator)?,
                degree: *degree,
            },
            WitnessJson::C4 { basis, dims } => ClassWitness::C4 {
                basis: Mat::from_json(basis)?,
                dims: *dims,
            },
            WitnessJson::C5 { basis, subfield_degree } => ClassWitness::C5 {
                basis: Mat::from_json(basis)?,
                subfield_degree: *subfield_degree,
            },
            WitnessJson::C6 { rgroup } => ClassWitness::C6 {
                rgroup: GenSet::from_json(rgroup)?,
            },
            WitnessJson::C7 { basis, factor_dim, factors } => ClassWitness::C7 {
                basis: Mat::from_json(basis)?,
                factor_dim: *factor_dim,
                factors: *factors,
            },
            WitnessJson::C8 { form } => ClassWitness::C8 {
                form: FormSpec::from_json(form)?,
            },
        })
    }

    /// Image of the witness under the basis change `h -> x^-1 h x`.
    pub fn conjugate(&self, x: &Mat) -> Result<ClassWitness> {
        let xi = x.inverse()?;
        let onto = |m: &Mat| xi.mul(m);
        Ok(match self {
            ClassWitness::C1 { subspace } => ClassWitness::C1 {
                subspace: subspace.image(&xi),
            },
            ClassWitness::C2 { summands } => ClassWitness::C2 {
                summands: summands.iter().map(|s| s.image(&xi)).collect(),
            },
            ClassWitness::C3 { generator, degree } => ClassWitness::C3 {
                generator: xi.mul(generator).mul(x),
                degree: *degree,
            },
            ClassWitness::C4 { basis, dims } => ClassWitness::C4 {
                basis: onto(basis),
                dims: *dims,
            },
            ClassWitness::C5 { basis, subfield_degree } => ClassWitness::C5 {
                basis: onto(basis),
                subfield_degree: *subfield_degree,
            },
            ClassWitness::C6 { rgroup } => ClassWitness::C6 {
                rgroup: rgroup.conjugate(x)?,
            },
            ClassWitness::C7 { basis, factor_dim, factors } => ClassWitness::C7 {
                basis: onto(basis),
                factor_dim: *factor_dim,
                factors: *factors,
            },
            ClassWitness::C8 { form } => ClassWitness::C8 {
                form: form.change_basis(x)?,
            },
        })
    }
}

/// A constructed class member.
#[derive(Debug, Clone)]
pub struct Member {
    pub gens: GenSet,
    pub expected_order: u128,
    pub witness: ClassWitness,
}

fn gl(n: usize, q: u128) -> u128 {
    (0..n as u32).map(|i| q.pow(n as u32) - q.pow(i)).product()
}

fn factorial(k: usize) -> u128 {
    (1..=k as u128).product()
}

fn gl_gens(f: &FieldDesc, n: usize) -> Result<Vec<Mat>> {
    Ok(generators(&ClassicalSpec::new(Family::GL, n, f.p(), f.e()), None)?.gens().to_vec())
}

/// Block-diagonal matrix with `a` at block position `pos` and identities elsewhere.
fn block_embed(f: &FieldDesc, a: &Mat, pos: usize, blocks: usize) -> Mat {
    let m = a.rows();
    let mut g = Mat::identity(f, m * blocks);
    g.set_block(pos * m, pos * m, a);
    g
}

/// Permutation matrix sending block `i` to block `perm[i]`.
fn block_permutation(f: &FieldDesc, m: usize, perm: &[usize]) -> Mat {
    let n = m * perm.len();
    let mut g = Mat::zeros(f, n, n);
    for (i, &j) in perm.iter().enumerate() {
        for t in 0..m {
            g.set(j * m + t, i * m + t, f.one());
        }
    }
    g
}

/// Transposition and `k`-cycle, without duplicates.
fn symmetric_generators(k: usize) -> Vec<Vec<usize>> {
    let mut swap: Vec<usize> = (0..k).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
    if swap == cycle {
        vec![swap]
    } else {
        vec![swap, cycle]
    }
}

/// Coordinates of `GF(q^r)` over `GF(q)` in the basis `1, x, ..., x^(r-1)`.
struct ExtensionCoords {
    big: FieldDesc,
    small: FieldDesc,
    x: Felt,
    r: usize,
    solve: Mat,
}

impl ExtensionCoords {
    fn new(small: &FieldDesc, r: u32) -> Result<ExtensionCoords> {
        let big = make_field(small.p(), small.e() * r)?;
        let emb = Embedding::new(small, &big)?;
        let x = big.primitive();
        let prime = make_field(small.p(), 1)?;
        let e = small.e() as usize;
        let r = r as usize;
        let size = e * r;
        let mut cols = Vec::with_capacity(size);
        for i in 0..r {
            let xi = big.pow(x, i as u64);
            for j in 0..e {
                let mut unit = vec![0u32; e];
                unit[j] = 1;
                let b = big.mul(emb.map(small.from_digits(&unit)), xi);
                cols.push(big.digits(b).iter().map(|&d| Felt(d as u16)).collect::<Vec<_>>());
            }
        }
        let solve = Mat::from_cols(&prime, size, &cols).inverse()?;
        Ok(ExtensionCoords {
            big,
            small: small.clone(),
            x,
            r,
            solve,
        })
    }

    fn coords(&self, y: Felt) -> Vec<Felt> {
        let e = self.small.e() as usize;
        let d: Vec<Felt> = self.big.digits(y).iter().map(|&c| Felt(c as u16)).collect();
        let a = self.solve.apply(&d);
        (0..self.r)
            .map(|i| {
                let digits: Vec<u32> = (0..e).map(|j| a[i * e + j].0 as u32).collect();
                self.small.from_digits(&digits)
            })
            .collect()
    }

    /// Matrix over the small field of multiplication by `y`.
    fn mult(&self, y: Felt) -> Mat {
        let cols: Vec<Vec<Felt>> = (0..self.r)
            .map(|i| self.coords(self.big.mul(y, self.big.pow(self.x, i as u64))))
            .collect();
        Mat::from_cols(&self.small, self.r, &cols)
    }

    /// Matrix of `y -> y^q`.
    fn frobenius(&self) -> Mat {
        let cols: Vec<Vec<Felt>> = (0..self.r)
            .map(|i| self.coords(self.big.frobenius(self.big.pow(self.x, i as u64), self.small.e())))
            .collect();
        Mat::from_cols(&self.small, self.r, &cols)
    }

    /// Writes an `m x m` matrix over the big field as an `mr x mr` matrix over the small one.
    fn blow_up(&self, a: &Mat) -> Mat {
        let m = a.rows();
        let mut g = Mat::zeros(&self.small, m * self.r, m * self.r);
        for t in 0..m {
            for s in 0..m {
                g.set_block(t * self.r, s * self.r, &self.mult(a.get(t, s)));
            }
        }
        g
    }
}

/// Generators, expected order and witness for a member of the given class.
pub fn construct(spec: &ClassSpec) -> Result<Member> {
    spec.validate()?;
    let f = spec.field()?;
    let n = spec.n;
    let q = f.q() as u128;
    let label = spec.label();
    let (gens, expected_order, witness) = match &spec.params {
        ClassParams::C1 { k } => {
            let (k, m) = (*k, n - *k);
            let mut gens = Vec::new();
            for a in gl_gens(&f, k)? {
                let mut g = Mat::identity(&f, n);
                g.set_block(0, 0, &a);
                gens.push(g);
            }
            for c in gl_gens(&f, m)? {
                let mut g = Mat::identity(&f, n);
                g.set_block(k, k, &c);
                gens.push(g);
            }
            let mut t = Mat::identity(&f, n);
            t.set(0, k, f.one());
            gens.push(t);
            let order = q.pow((k * m) as u32) * gl(k, q) * gl(m, q);
            let idx: Vec<usize> = (0..k).collect();
            (gens, order, ClassWitness::C1 {
                subspace: Subspace::coordinate(&f, n, &idx),
            })
        }
        ClassParams::C2 { m, k } => {
            let (m, k) = (*m, *k);
            let mut gens: Vec<Mat> = gl_gens(&f, m)?.iter().map(|a| block_embed(&f, a, 0, k)).collect();
            for perm in symmetric_generators(k) {
                gens.push(block_permutation(&f, m, &perm));
            }
            let order = gl(m, q).pow(k as u32) * factorial(k);
            let summands = (0..k)
                .map(|i| Subspace::coordinate(&f, n, &(i * m..(i + 1) * m).collect::<Vec<_>>()))
                .collect();
            (gens, order, ClassWitness::C2 { summands })
        }
        ClassParams::C3 { r } => {
            let ext = ExtensionCoords::new(&f, *r)?;
            let m = n / *r as usize;
            let mut gens: Vec<Mat> = gl_gens(&ext.big, m)?.iter().map(|a| ext.blow_up(a)).collect();
            let phi = ext.frobenius();
            gens.push(block_diag_repeat(&f, &phi, m));
            let big_q = ext.big.q() as u128;
            let order = gl(m, big_q) * *r as u128;
            let generator = ext.blow_up(&Mat::scalar(&ext.big, m, ext.x));
            (gens, order, ClassWitness::C3 { generator, degree: *r })
        }
        ClassParams::C4 { n1, n2 } => {
            let mut gens = Vec::new();
            for a in gl_gens(&f, *n1)? {
                gens.push(a.kronecker(&Mat::identity(&f, *n2)));
            }
            for b in gl_gens(&f, *n2)? {
                gens.push(Mat::identity(&f, *n1).kronecker(&b));
            }
            let order = gl(*n1, q) * gl(*n2, q) / (q - 1);
            (gens, order, ClassWitness::C4 {
                basis: Mat::identity(&f, n),
                dims: (*n1, *n2),
            })
        }
        ClassParams::C5 { r } => {
            let d = f.e() / r;
            let small = make_field(f.p(), d)?;
            let emb = Embedding::new(&small, &f)?;
            let mut gens: Vec<Mat> = gl_gens(&small, n)?.iter().map(|a| a.embed(&emb)).collect();
            gens.push(Mat::scalar(&f, n, f.primitive()));
            let q0 = small.q() as u128;
            let order = gl(n, q0) * (q - 1) / (q0 - 1);
            (gens, order, ClassWitness::C5 {
                basis: Mat::identity(&f, n),
                subfield_degree: d,
            })
        }
        ClassParams::C6 { rgroup } => {
            let r_gens = rep_matrices(rgroup, &f)?;
            let gens = c6_normalizer_generators(&r_gens)?;
            let order = (q - 1) * (rgroup.r as u128).pow(2 * rgroup.m) * rgroup.outer_quotient_order()?;
            (gens, order, ClassWitness::C6 { rgroup: r_gens })
        }
        ClassParams::C7 { m, k } => {
            let (m, k) = (*m, *k);
            let rest = Mat::identity(&f, m.pow(k as u32 - 1));
            let mut gens: Vec<Mat> = gl_gens(&f, m)?.iter().map(|a| a.kronecker(&rest)).collect();
            for perm in symmetric_generators(k) {
                gens.push(tensor_permutation(&f, m, &perm));
            }
            let order = gl(m, q).pow(k as u32) / (q - 1).pow(k as u32 - 1) * factorial(k);
            (gens, order, ClassWitness::C7 {
                basis: Mat::identity(&f, n),
                factor_dim: m,
                factors: k,
            })
        }
        ClassParams::C8 { kind, subtype } => {
            let of = match kind {
                FormKind::Symplectic => Family::Sp,
                FormKind::Unitary => Family::GU,
                _ => Family::GO,
            };
            let mut cs = ClassicalSpec::delta(of, n, f.p(), f.e());
            if of == Family::GO {
                cs = cs.with_sign(subtype.unwrap_or(OrthType::Circ));
            }
            let form = standard_form(&cs)?.expect("classical form");
            let gens = generators(&cs, Some(&form))?.gens().to_vec();
            (gens, expected_order(&cs)?, ClassWitness::C8 { form })
        }
    };
    Ok(Member {
        gens: GenSet::new(label, &f, n, gens)?,
        expected_order,
        witness,
    })
}

fn block_diag_repeat(f: &FieldDesc, a: &Mat, copies: usize) -> Mat {
    let s = a.rows();
    let mut g = Mat::zeros(f, s * copies, s * copies);
    for i in 0..copies {
        g.set_block(i * s, i * s, a);
    }
    g
}

/// Generators of `N_GL(R)`: `R`, the scalars, and normalizer elements found by
/// scanning the ambient group when small enough, otherwise by lifting automorphisms.
pub fn c6_normalizer_generators(r_gens: &GenSet) -> Result<Vec<Mat>> {
    let f = r_gens.field().clone();
    let n = r_gens.dim();
    let r = Group::close(r_gens, 100_000)?;
    let mut gens = r_gens.gens().to_vec();
    gens.push(Mat::scalar(&f, n, f.primitive()));
    let q = f.q() as u64;
    let scan_ok = q.checked_pow((n * n) as u32).is_some_and(|t| t <= SCAN_LIMIT);
    if scan_ok {
        let all = normalizer_by_scan(&r)?;
        return greedy_generators(&f, n, &all, CLASS_SEED);
    }
    let mut current = Group::close_mats(&f, n, &gens, usize::MAX)?;
    for x in normalizer_by_lifting(r_gens)? {
        if !current.contains(&x) {
            gens.push(x);
            current = Group::close_mats(&f, n, &gens, usize::MAX)?;
        }
    }
    Ok(gens)
}

/// Outcome of a membership check.
#[derive(Debug, Clone, Serialize)]
pub struct MemberCheck {
    pub passed: bool,
    /// Index of the first generator that fails to preserve the witness.
    pub failing_generator: Option<usize>,
    pub detail: String,
}

impl MemberCheck {
    fn ok() -> MemberCheck {
        MemberCheck {
            passed: true,
            failing_generator: None,
            detail: "every generator preserves the witness".into(),
        }
    }
    fn bad(detail: impl Into<String>) -> MemberCheck {
        MemberCheck {
            passed: false,
            failing_generator: None,
            detail: detail.into(),
        }
    }
    fn at(i: usize) -> MemberCheck {
        MemberCheck {
            passed: false,
            failing_generator: Some(i),
            detail: format!("generator {i} does not preserve the witness"),
        }
    }
}

fn each_gen(gens: &[Mat], ok: impl Fn(&Mat) -> bool) -> MemberCheck {
    match gens.iter().position(|g| !ok(g)) {
        Some(i) => MemberCheck::at(i),
        None => MemberCheck::ok(),
    }
}

fn square_invertible(m: &Mat, n: usize) -> Option<Mat> {
    if m.rows() != n || m.cols() != n {
        return None;
    }
    m.inverse().ok()
}

/// Checks that every generator preserves the witness, and that the witness is a
/// valid object of its class.
pub fn verify_member(gens: &GenSet, witness: &ClassWitness) -> MemberCheck {
    let f = gens.field().clone();
    let n = gens.dim();
    let hs = gens.gens();
    match witness {
        ClassWitness::C1 { subspace } => {
            if subspace.ambient_dim() != n || subspace.dim() == 0 || subspace.dim() == n {
                return MemberCheck::bad("subspace is not proper and nonzero");
            }
            each_gen(hs, |h| subspace.is_invariant(h))
        }
        ClassWitness::C2 { summands } => {
            let k = summands.len();
            if k < 2 || summands.iter().any(|s| s.ambient_dim() != n || s.dim() * k != n) {
                return MemberCheck::bad("summands do not have equal dimension n/k with k >= 2");
            }
            let total = summands.iter().fold(Subspace::zero(&f, n), |acc, s| acc.sum(s));
            if total.dim() != n {
                return MemberCheck::bad("summands do not span V");
            }
            each_gen(hs, |h| {
                summands.iter().all(|s| {
                    let t = s.image(h);
                    summands.contains(&t)
                })
            })
        }
        ClassWitness::C3 { generator, degree } => {
            let r = *degree;
            if !is_prime(r) || !n.is_multiple_of(r as usize) || generator.rows() != n || generator.cols() != n {
                return MemberCheck::bad("degree must be a prime dividing n");
            }
            let mp = min_poly(&f, generator);
            if mp.len() != r as usize + 1 || !is_irreducible(&f, &mp) {
                return MemberCheck::bad("minimal polynomial is not irreducible of the stated degree");
            }
            let powers: Vec<Vec<Felt>> = (0..r).map(|i| generator.pow(i as u64).to_vec()).collect();
            let span = Subspace::from_vectors(&f, n * n, &powers);
            each_gen(hs, |h| {
                let hi = h.inverse().unwrap();
                span.contains(&h.mul(generator).mul(&hi).to_vec())
            })
        }
        ClassWitness::C4 { basis, dims } => {
            let (a, b) = *dims;
            if a * b != n || a == b || a < 2 || b < 2 {
                return MemberCheck::bad("tensor dimensions must be unequal, at least 2, with product n");
            }
            let Some(bi) = square_invertible(basis, n) else {
                return MemberCheck::bad("basis is not invertible");
            };
            each_gen(hs, |h| kron_factor(&bi.mul(h).mul(basis), a).is_some())
        }
        ClassWitness::C5 { basis, subfield_degree } => {
            let d = *subfield_degree;
            if d == 0 || !f.e().is_multiple_of(d) || !is_prime(f.e() / d) {
                return MemberCheck::bad("subfield must have prime index");
            }
            let Some(bi) = square_invertible(basis, n) else {
                return MemberCheck::bad("basis is not invertible");
            };
            each_gen(hs, |h| scaled_over_subfield(&bi.mul(h).mul(basis), d))
        }
        ClassWitness::C6 { rgroup } => {
            if rgroup.dim() != n || rgroup.field() != &f {
                return MemberCheck::bad("r-group does not act on V");
            }
            let Ok(r) = Group::close(rgroup, 100_000) else {
                return MemberCheck::bad("r-group closure exceeds the cap");
            };
            let Some(shape) = identify(&r) else {
                return MemberCheck::bad("not a symplectic-type r-group of minimal exponent with scalar centre");
            };
            if (shape.r as usize).pow(shape.m) != n {
                return MemberCheck::bad("dimension is not r^m");
            }
            if let Err(why) = c6_conditions(&shape, f.p(), f.e()) {
                return MemberCheck::bad(why);
            }
            each_gen(hs, |h| {
                let hi = h.inverse().unwrap();
                r.gens().iter().all(|x| r.contains(&h.mul(x).mul(&hi)))
            })
        }
        ClassWitness::C7 { basis, factor_dim, factors } => {
            let (s, k) = (*factor_dim, *factors);
            if s < 3 || k < 2 || s.checked_pow(k as u32) != Some(n) {
                return MemberCheck::bad("need factor dimension >= 3, at least 2 factors, and s^k = n");
            }
            let Some(bi) = square_invertible(basis, n) else {
                return MemberCheck::bad("basis is not invertible");
            };
            let perms: Vec<Mat> = permutations(k)
                .iter()
                .map(|p| tensor_permutation(&f, s, p).inverse().unwrap())
                .collect();
            each_gen(hs, |h| {
                let g = bi.mul(h).mul(basis);
                perms.iter().any(|pi| kron_factor_all(&g.mul(pi), s, k).is_some())
            })
        }
        ClassWitness::C8 { form } => {
            if form.dim() != n || form.field() != &f || !form.is_nondegenerate() {
                return MemberCheck::bad("form is not a nondegenerate form on V");
            }
            if let Err(why) = c8_conditions(form.kind(), form.subtype(), n, &f) {
                // the subtype of an odd-dimensional orthogonal form is not stored
                if !(matches!(form.kind(), FormKind::SymmetricBilinear | FormKind::Quadratic) && n % 2 == 1) {
                    return MemberCheck::bad(why);
                }
                if f.p() == 2 || n < 3 {
                    return MemberCheck::bad(why);
                }
            }
            each_gen(hs, |h| form.is_similarity(h).unwrap_or(false))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transvection_leaves_the_line() {
        let f = make_field(3, 1).unwrap();
        let g = GenSet::new("t", &f, 2, vec![Mat::from_ints(&f, 2, 2, &[1, 0, 1, 1])]).unwrap();
        let w = ClassWitness::C1 {
            subspace: Subspace::coordinate(&f, 2, &[0]),
        };
        let check = verify_member(&g, &w);
        assert!(!check.passed);
        assert_eq!(check.failing_generator, Some(0));
    }

    #[test]
    fn extension_coordinates_round_trip() {
        let f = make_field(2, 1).unwrap();
        let ext = ExtensionCoords::new(&f, 3).unwrap();
        let emb = Embedding::new(&f, &ext.big).unwrap();
        for y in ext.big.elements() {
            let c = ext.coords(y);
            let back = c.iter().enumerate().fold(ext.big.zero(), |acc, (i, &ci)| {
                ext.big.add(acc, ext.big.mul(emb.map(ci), ext.big.pow(ext.x, i as u64)))
            });
            assert_eq!(back, y);
        }
        let a = ext.mult(ext.x);
        let b = ext.mult(ext.big.mul(ext.x, ext.x));
        assert_eq!(a.mul(&a), b);
    }
}
