//! Sesquilinear and quadratic forms.
//!
//! A form with Gram matrix `B` and twist `theta = x -> x^(p^j)` is
//! `f(v, w) = v B (w^theta)^T` on row vectors. A quadratic form is stored as an
//! upper-triangular `U` with `Q(v) = v U v^T`; its polar form has Gram `U + U^T`.
//! A matrix `g` preserves `f` when `g B (g^theta)^T = B`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Felt, FieldDesc, Mat, MatJson, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    Zero,
    Symplectic,
    Unitary,
    SymmetricBilinear,
    Quadratic,
}

/// Witt type of an orthogonal geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrthType {
    Plus,
    Minus,
    Circ,
}

impl OrthType {
    pub fn sign(self) -> &'static str {
        match self {
            OrthType::Plus => "+",
            OrthType::Minus => "-",
            OrthType::Circ => "o",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSpec {
    kind: FormKind,
    gram: Mat,
    theta_power: u32,
    subtype: Option<OrthType>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FormJson {
    pub kind: FormKind,
    pub subtype: Option<OrthType>,
    pub theta_power: u32,
    pub gram: MatJson,
}

fn is_upper_triangular(m: &Mat) -> bool {
    (0..m.rows()).all(|i| (0..i).all(|j| m.get(i, j).is_zero()))
}

/// Upper-triangular representative of the quadratic form `v M v^T`.
pub fn upper_part(m: &Mat) -> Mat {
    let f = m.field();
    let n = m.rows();
    let mut u = Mat::zeros(f, n, n);
    for i in 0..n {
        u.set(i, i, m.get(i, i));
        for j in i + 1..n {
            u.set(i, j, f.add(m.get(i, j), m.get(j, i)));
        }
    }
    u
}

impl FormSpec {
    pub fn new(kind: FormKind, gram: Mat, theta_power: u32, subtype: Option<OrthType>) -> Result<FormSpec> {
        if !gram.is_square() {
            return Err(Error::ShapeMismatch("Gram matrix must be square".into()));
        }
        let f = gram.field().clone();
        let e = f.e();
        match kind {
            FormKind::Unitary => {
                if !e.is_multiple_of(2) || theta_power != e / 2 {
                    return Err(Error::ThetaMismatch(theta_power));
                }
            }
            _ if theta_power != 0 => return Err(Error::ThetaMismatch(theta_power)),
            _ => {}
        }
        let t = gram.transpose();
        let ok = match kind {
            FormKind::Zero => gram.is_zero(),
            FormKind::Symplectic => {
                t == gram.neg() && (0..gram.rows()).all(|i| gram.get(i, i).is_zero())
            }
            FormKind::SymmetricBilinear => t == gram,
            FormKind::Unitary => t == gram.frobenius(theta_power),
            FormKind::Quadratic => is_upper_triangular(&gram),
        };
        if !ok {
            return Err(Error::InvalidSpec(format!("Gram matrix does not have the shape of a {kind:?} form")));
        }
        Ok(FormSpec {
            kind,
            gram,
            theta_power,
            subtype,
        })
    }

    /// Form whose kind is read off from a sesquilinear Gram matrix.
    pub fn from_gram(gram: Mat, theta_power: u32) -> Result<FormSpec> {
        let f = gram.field().clone();
        let kind = if gram.is_zero() {
            FormKind::Zero
        } else if theta_power != 0 {
            FormKind::Unitary
        } else if gram.transpose() == gram.neg()
            && (0..gram.rows()).all(|i| gram.get(i, i).is_zero())
        {
            FormKind::Symplectic
        } else if gram.transpose() == gram {
            FormKind::SymmetricBilinear
        } else {
            return Err(Error::InvalidSpec("Gram matrix is neither symmetric nor alternating".into()));
        };
        let mut spec = FormSpec::new(kind, gram, theta_power, None)?;
        if kind == FormKind::SymmetricBilinear && f.p() != 2 {
            spec.subtype = spec.orth_type().ok();
        }
        Ok(spec)
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }
    pub fn gram(&self) -> &Mat {
        &self.gram
    }
    pub fn theta_power(&self) -> u32 {
        self.theta_power
    }
    pub fn subtype(&self) -> Option<OrthType> {
        self.subtype
    }
    pub fn with_subtype(mut self, t: Option<OrthType>) -> FormSpec {
        self.subtype = t;
        self
    }
    pub fn field(&self) -> &FieldDesc {
        self.gram.field()
    }
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    /// Gram matrix of the associated sesquilinear form (the polar form for quadratics).
    pub fn bilinear_gram(&self) -> Mat {
        match self.kind {
            FormKind::Quadratic => self.gram.add(&self.gram.transpose()),
            _ => self.gram.clone(),
        }
    }

    pub fn eval(&self, v: &[Felt], w: &[Felt]) -> Felt {
        let f = self.field();
        let b = self.bilinear_gram();
        let vb = b.apply_row(v);
        vb.iter()
            .zip(w)
            .fold(Felt(0), |acc, (&x, &y)| f.add(acc, f.mul(x, f.frobenius(y, self.theta_power))))
    }

    /// `Q(v)` for quadratic forms, `f(v, v)` otherwise.
    pub fn norm(&self, v: &[Felt]) -> Felt {
        match self.kind {
            FormKind::Quadratic => {
                let f = self.field();
                let uv = self.gram.apply_row(v);
                uv.iter().zip(v).fold(Felt(0), |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
            }
            _ => self.eval(v, v),
        }
    }

    /// `{v : f(w, v) = 0 for all w in W}`.
    pub fn perp(&self, w: &Subspace) -> Subspace {
        let f = self.field();
        let n = self.dim();
        let b = self.bilinear_gram();
        let inv = (f.e() - self.theta_power) % f.e();
        let rows: Vec<Vec<Felt>> = w
            .vectors()
            .iter()
            .map(|x| b.apply_row(x).iter().map(|&c| f.frobenius(c, inv)).collect())
            .collect();
        if rows.is_empty() {
            return Subspace::full(f, n);
        }
        Mat::from_rows(f, n, &rows).kernel()
    }

    pub fn radical(&self) -> Subspace {
        self.perp(&Subspace::full(self.field(), self.dim()))
    }

    pub fn is_nondegenerate(&self) -> bool {
        let f = self.field();
        let rad = self.radical();
        match self.kind {
            FormKind::Zero => self.dim() == 0,
            FormKind::Quadratic if f.p() == 2 => {
                // the polar form may have a one-dimensional radical on which Q is anisotropic
                match rad.dim() {
                    0 => true,
                    1 => !self.norm(&rad.vectors()[0]).is_zero(),
                    _ => false,
                }
            }
            _ => rad.dim() == 0,
        }
    }

    fn check_square(&self, g: &Mat) -> Result<()> {
        if g.rows() != self.dim() || !g.is_square() {
            return Err(Error::ShapeMismatch("matrix and form dimensions differ".into()));
        }
        if g.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// `g B (g^theta)^T`, reduced to upper-triangular form for quadratics.
    pub fn transform(&self, g: &Mat) -> Mat {
        let m = g.mul(&self.gram).mul(&g.frobenius(self.theta_power).transpose());
        match self.kind {
            FormKind::Quadratic => upper_part(&m),
            _ => m,
        }
    }

    pub fn is_isometry(&self, g: &Mat) -> Result<bool> {
        self.check_square(g)?;
        Ok(self.transform(g) == self.gram)
    }

    /// Multiplier `lambda` with `g B (g^theta)^T = lambda B`, if `g` is a similarity.
    pub fn similarity_multiplier(&self, g: &Mat) -> Result<Option<Felt>> {
        self.check_square(g)?;
        let t = self.transform(g);
        let f = self.field();
        let Some((i, j)) = (0..self.dim())
            .flat_map(|i| (0..self.dim()).map(move |j| (i, j)))
            .find(|&(i, j)| !self.gram.get(i, j).is_zero())
        else {
            return Ok(None);
        };
        let lambda = f.div(t.get(i, j), self.gram.get(i, j)).unwrap();
        if lambda.is_zero() {
            return Ok(None);
        }
        Ok((t == self.gram.scale(lambda)).then_some(lambda))
    }

    pub fn is_similarity(&self, g: &Mat) -> Result<bool> {
        Ok(self.similarity_multiplier(g)?.is_some())
    }

    /// Dimension of a maximal totally singular subspace.
    pub fn witt_index(&self) -> Result<usize> {
        let f = self.field();
        let n = self.dim();
        if n > 6 || f.q() > 9 {
            return Err(Error::TooLarge(format!("witt index for n={n}, q={}", f.q())));
        }
        // Maximal totally singular subspaces all have the same dimension, so greedy
        // extension by singular points of the perp reaches the index.
        let mut w = Subspace::zero(f, n);
        loop {
            let p = self.perp(&w);
            let found = projective_points(&p).into_iter().find(|v| {
                !w.contains(v) && self.norm(v).is_zero()
            });
            match found {
                Some(v) => {
                    let mut vecs = w.vectors();
                    vecs.push(v);
                    w = Subspace::from_vectors(f, n, &vecs);
                }
                None => return Ok(w.dim()),
            }
        }
    }

    /// Witt type of a nondegenerate orthogonal form.
    pub fn orth_type(&self) -> Result<OrthType> {
        let n = self.dim();
        if n % 2 == 1 {
            return Ok(OrthType::Circ);
        }
        Ok(if self.witt_index()? == n / 2 {
            OrthType::Plus
        } else {
            OrthType::Minus
        })
    }

    pub fn to_json(&self) -> FormJson {
        FormJson {
            kind: self.kind,
            subtype: self.subtype,
            theta_power: self.theta_power,
            gram: self.gram.to_json(),
        }
    }

    pub fn from_json(j: &FormJson) -> Result<FormSpec> {
        FormSpec::new(j.kind, Mat::from_json(&j.gram)?, j.theta_power, j.subtype)
    }

    /// The same form written in the basis given by the rows of `x`: Gram `X B (X^theta)^T`.
    pub fn change_basis(&self, x: &Mat) -> Result<FormSpec> {
        FormSpec::new(self.kind, self.transform(x), self.theta_power, self.subtype)
    }
}

/// Canonical representatives (first nonzero coordinate 1) of the points of a subspace.
pub fn projective_points(w: &Subspace) -> Vec<Vec<Felt>> {
    let f = w.field();
    let k = w.dim();
    let n = w.ambient_dim();
    let basis = w.vectors();
    let q = f.q() as usize;
    let mut out = Vec::new();
    for lead in 0..k {
        let tail = k - lead - 1;
        let count = q.pow(tail as u32);
        for t in 0..count {
            let mut coeffs = vec![Felt(0); k];
            coeffs[lead] = f.one();
            let mut x = t;
            for c in coeffs.iter_mut().skip(lead + 1) {
                *c = Felt((x % q) as u16);
                x /= q;
            }
            let mut v = vec![Felt(0); n];
            for (c, b) in coeffs.iter().zip(&basis) {
                if c.is_zero() {
                    continue;
                }
                for (vi, &bi) in v.iter_mut().zip(b) {
                    *vi = f.add(*vi, f.mul(*c, bi));
                }
            }
            out.push(v);
        }
    }
    out
}

/// Tensor product of two forms; its kind is recomputed from the Kronecker Gram matrix.
pub fn tensor_forms(a: &FormSpec, b: &FormSpec) -> Result<FormSpec> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.theta_power != b.theta_power {
        return Err(Error::ThetaMismatch(b.theta_power));
    }
    let f = a.field();
    let gram_of = |s: &FormSpec| -> Result<Mat> {
        match s.kind {
            FormKind::Quadratic => {
                if f.p() == 2 {
                    return Err(Error::InvalidSpec(
                        "tensor of quadratic forms is not defined through polarization in characteristic 2"
                            .into(),
                    ));
                }
                let half = f.inv(f.from_int(2)).unwrap();
                Ok(s.bilinear_gram().scale(half))
            }
            _ => Ok(s.gram.clone()),
        }
    };
    FormSpec::from_gram(gram_of(a)?.kronecker(&gram_of(b)?), a.theta_power)
}

/// Basis of `{B : g B (g^theta)^T = B for every g}` where `theta = x -> x^(p^j)`.
pub fn invariant_form_space(gens: &[Mat], j: u32) -> Result<Vec<Mat>> {
    let Some(g0) = gens.first() else {
        return Err(Error::InvalidSpec("empty generating set".into()));
    };
    let f = g0.field().clone();
    let n = g0.rows();
    if j != 0 && (f.e() % 2 != 0 || j != f.e() / 2) {
        return Err(Error::ThetaMismatch(j));
    }
    // unknown B_{kl} at index k*n + l; equation (i, m) of g B h^T - B with h = g^theta
    let mut sys = Mat::zeros(&f, gens.len() * n * n, n * n);
    for (gi, g) in gens.iter().enumerate() {
        let h = g.frobenius(j);
        for i in 0..n {
            for m in 0..n {
                let row = gi * n * n + i * n + m;
                for k in 0..n {
                    let a = g.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    for l in 0..n {
                        let c = f.mul(a, h.get(m, l));
                        let idx = k * n + l;
                        sys.set(row, idx, f.add(sys.get(row, idx), c));
                    }
                }
                let idx = i * n + m;
                sys.set(row, idx, f.sub(sys.get(row, idx), f.one()));
            }
        }
    }
    Ok(sys
        .kernel()
        .vectors()
        .iter()
        .map(|v| Mat::from_vec(&f, n, n, v))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn hyperbolic_plane_and_anisotropic_line() {
        let f = make_field(3, 1).unwrap();
        let h = FormSpec::new(FormKind::Quadratic, Mat::from_ints(&f, 2, 2, &[0, 1, 0, 0]), 0, None).unwrap();
        assert_eq!(h.witt_index().unwrap(), 1);
        assert_eq!(h.orth_type().unwrap(), OrthType::Plus);
        // x^2 + y^2 over GF(3) is anisotropic
        let a = FormSpec::new(FormKind::Quadratic, Mat::from_ints(&f, 2, 2, &[1, 0, 0, 1]), 0, None).unwrap();
        assert_eq!(a.witt_index().unwrap(), 0);
        assert_eq!(a.orth_type().unwrap(), OrthType::Minus);
    }

    #[test]
    fn char_two_quadratic_in_odd_dimension() {
        let f = make_field(2, 1).unwrap();
        // x0 x1 + x2^2: the polar form has a radical where Q is nonzero
        let q = FormSpec::new(FormKind::Quadratic, Mat::from_ints(&f, 3, 3, &[0, 1, 0, 0, 0, 0, 0, 0, 1]), 0, None)
            .unwrap();
        assert!(q.is_nondegenerate());
        let d = FormSpec::new(FormKind::Quadratic, Mat::from_ints(&f, 3, 3, &[0, 1, 0, 0, 0, 0, 0, 0, 0]), 0, None)
            .unwrap();
        assert!(!d.is_nondegenerate());
    }

    #[test]
    fn rejects_bad_shapes() {
        let f = make_field(3, 1).unwrap();
        assert!(FormSpec::new(FormKind::Symplectic, Mat::identity(&f, 2), 0, None).is_err());
        assert_eq!(
            FormSpec::new(FormKind::Unitary, Mat::identity(&f, 2), 0, None).unwrap_err(),
            Error::ThetaMismatch(0)
        );
        let f9 = make_field(3, 2).unwrap();
        let u = FormSpec::new(FormKind::Unitary, Mat::identity(&f9, 2), 1, None).unwrap();
        assert!(u.is_nondegenerate());
    }

    #[test]
    fn symplectic_tensor_symplectic_is_symmetric() {
        let f = make_field(5, 1).unwrap();
        let j = FormSpec::new(FormKind::Symplectic, Mat::from_ints(&f, 2, 2, &[0, 1, 4, 0]), 0, None).unwrap();
        let t = tensor_forms(&j, &j).unwrap();
        assert_eq!(t.kind(), FormKind::SymmetricBilinear);
        assert_eq!(t.subtype(), Some(OrthType::Plus));
        let s = tensor_forms(&t, &j).unwrap();
        assert_eq!(s.kind(), FormKind::Symplectic);
    }

    #[test]
    fn sl2_preserves_only_the_symplectic_form() {
        let f = make_field(3, 1).unwrap();
        let gens = [Mat::from_ints(&f, 2, 2, &[1, 1, 0, 1]), Mat::from_ints(&f, 2, 2, &[1, 0, 1, 1])];
        let sp = invariant_form_space(&gens, 0).unwrap();
        assert_eq!(sp.len(), 1);
        let form = FormSpec::from_gram(sp[0].clone(), 0).unwrap();
        assert_eq!(form.kind(), FormKind::Symplectic);
        for g in &gens {
            assert!(form.is_isometry(g).unwrap());
        }
    }
}
