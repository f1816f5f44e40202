//! Subspaces of `F^n` kept as reduced row echelon bases.

use serde::{Deserialize, Serialize};

use super::field::{Felt, FieldDesc};
use super::matrix::{Mat, MatJson};
use crate::error::Result;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    basis: Mat,
    pivots: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubspaceJson {
    pub dim: usize,
    pub ambient: usize,
    pub basis: MatJson,
}

impl Subspace {
    pub fn zero(field: &FieldDesc, n: usize) -> Subspace {
        Subspace {
            basis: Mat::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &FieldDesc, n: usize) -> Subspace {
        Subspace {
            basis: Mat::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &Mat) -> Subspace {
        let (r, pivots) = m.rref();
        let k = pivots.len();
        Subspace {
            basis: r.block(0, 0, k, m.cols()),
            pivots,
        }
    }

    pub fn from_vectors(field: &FieldDesc, n: usize, vecs: &[Vec<Felt>]) -> Subspace {
        if vecs.is_empty() {
            return Subspace::zero(field, n);
        }
        Subspace::row_space(&Mat::from_rows(field, n, vecs))
    }

    /// Span of the first `k` standard basis vectors.
    pub fn coordinate(field: &FieldDesc, n: usize, idx: &[usize]) -> Subspace {
        let vecs: Vec<Vec<Felt>> = idx
            .iter()
            .map(|&i| {
                let mut v = vec![Felt(0); n];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace::from_vectors(field, n, &vecs)
    }

    pub fn field(&self) -> &FieldDesc {
        self.basis.field()
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }
    pub fn basis(&self) -> &Mat {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<Felt>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    /// `v` minus its projection along the echelon basis; zero exactly when `v` lies in the subspace.
    pub fn reduce(&self, v: &[Felt]) -> Vec<Felt> {
        let f = self.field();
        let mut r = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = r[pc];
            if c.is_zero() {
                continue;
            }
            let nc = f.neg(c);
            for (x, &b) in r.iter_mut().zip(self.basis.row(i)) {
                *x = f.add(*x, f.mul(nc, b));
            }
        }
        r
    }

    pub fn contains(&self, v: &[Felt]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coordinates with respect to the echelon basis.
    pub fn coords(&self, v: &[Felt]) -> Option<Vec<Felt>> {
        self.contains(v)
            .then(|| self.pivots.iter().map(|&pc| v[pc]).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.vectors().iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vecs = self.vectors();
        vecs.extend(other.vectors());
        Subspace::from_vectors(self.field(), self.ambient_dim(), &vecs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let f = self.field();
        let n = self.ambient_dim();
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Subspace::zero(f, n);
        }
        // columns: basis of self, then negated basis of other
        let mut m = Mat::zeros(f, n, a + b);
        for i in 0..a {
            for j in 0..n {
                m.set(j, i, self.basis.get(i, j));
            }
        }
        for i in 0..b {
            for j in 0..n {
                m.set(j, a + i, f.neg(other.basis.get(i, j)));
            }
        }
        let ker = m.kernel();
        let vecs: Vec<Vec<Felt>> = ker
            .vectors()
            .iter()
            .map(|k| self.basis.apply_row(&k[..a]))
            .collect();
        Subspace::from_vectors(f, n, &vecs)
    }

    /// `{g v : v in W}` under the column action.
    pub fn image(&self, g: &Mat) -> Subspace {
        let vecs: Vec<Vec<Felt>> = self.vectors().iter().map(|v| g.apply(v)).collect();
        Subspace::from_vectors(self.field(), self.ambient_dim(), &vecs)
    }

    pub fn is_invariant(&self, g: &Mat) -> bool {
        self.vectors().iter().all(|v| self.contains(&g.apply(v)))
    }

    /// Matrix of `g` restricted to this (invariant) subspace, in echelon coordinates.
    pub fn restrict(&self, g: &Mat) -> Mat {
        let cols: Vec<Vec<Felt>> = self
            .vectors()
            .iter()
            .map(|v| self.coords(&g.apply(v)).expect("subspace is invariant"))
            .collect();
        Mat::from_cols(self.field(), self.dim(), &cols)
    }

    /// Indices of the standard vectors spanning a complement.
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient_dim()).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Matrix of `g` on `V / W` in the basis given by [`complement_indices`](Self::complement_indices).
    pub fn quotient_action(&self, g: &Mat) -> Mat {
        let f = self.field();
        let comp = self.complement_indices();
        let n = self.ambient_dim();
        let cols: Vec<Vec<Felt>> = comp
            .iter()
            .map(|&c| {
                let mut e = vec![Felt(0); n];
                e[c] = f.one();
                let r = self.reduce(&g.apply(&e));
                comp.iter().map(|&i| r[i]).collect()
            })
            .collect();
        Mat::from_cols(f, comp.len(), &cols)
    }

    /// Preimage in `V` of a subspace of `V / W` given in quotient coordinates.
    pub fn lift_from_quotient(&self, sub: &Subspace) -> Subspace {
        let f = self.field();
        let comp = self.complement_indices();
        let n = self.ambient_dim();
        let mut vecs = self.vectors();
        for u in sub.vectors() {
            let mut v = vec![Felt(0); n];
            for (k, &c) in comp.iter().enumerate() {
                v[c] = u[k];
            }
            vecs.push(v);
        }
        Subspace::from_vectors(f, n, &vecs)
    }

    /// Image of a subspace of `F^k` under the embedding given by this subspace's basis.
    pub fn embed_subspace(&self, sub: &Subspace) -> Subspace {
        let vecs: Vec<Vec<Felt>> = sub.vectors().iter().map(|c| self.basis.apply_row(c)).collect();
        Subspace::from_vectors(self.field(), self.ambient_dim(), &vecs)
    }

    pub fn to_json(&self) -> SubspaceJson {
        SubspaceJson {
            dim: self.dim(),
            ambient: self.ambient_dim(),
            basis: self.basis.to_json(),
        }
    }

    pub fn from_json(j: &SubspaceJson) -> Result<Subspace> {
        Ok(Subspace::row_space(&Mat::from_json(&j.basis)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn intersection_and_sum_dimensions() {
        let f = make_field(3, 1).unwrap();
        let a = Subspace::coordinate(&f, 3, &[0, 1]);
        let b = Subspace::coordinate(&f, 3, &[1, 2]);
        assert_eq!(a.intersection(&b).dim(), 1);
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn borel_fixes_first_line() {
        let f = make_field(3, 1).unwrap();
        let w = Subspace::coordinate(&f, 2, &[0]);
        assert!(w.is_invariant(&Mat::from_ints(&f, 2, 2, &[1, 1, 0, 1])));
        assert!(!w.is_invariant(&Mat::from_ints(&f, 2, 2, &[1, 0, 1, 1])));
    }
}
