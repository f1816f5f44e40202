//! Dense matrices over a [`FieldDesc`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::field::{Felt, FieldDesc, FieldJson};
use super::subspace::Subspace;
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Mat {
    field: FieldDesc,
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl Eq for Mat {}

impl Hash for Mat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.data.hash(state);
    }
}

impl PartialOrd for Mat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|x| x.0.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// JSON form: `{"field", "rows", "cols", "entries"}` with entries row-major and packed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatJson {
    pub field: FieldJson,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<u32>,
}

impl Mat {
    pub fn new(field: &FieldDesc, rows: usize, cols: usize, data: Vec<Felt>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| x.0 as u32 >= field.q()) {
            return Err(Error::InvalidSpec(format!("{} is not an element of {field:?}", bad.0)));
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Matrix from packed integers, row-major. Panics on bad input; meant for literals.
    pub fn from_ints(field: &FieldDesc, rows: usize, cols: usize, ints: &[u32]) -> Mat {
        Mat::new(field, rows, cols, ints.iter().map(|&a| Felt(a as u16)).collect())
            .expect("valid matrix literal")
    }

    pub fn zeros(field: &FieldDesc, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![Felt(0); rows * cols],
        }
    }

    pub fn identity(field: &FieldDesc, n: usize) -> Mat {
        Mat::scalar(field, n, field.one())
    }

    pub fn scalar(field: &FieldDesc, n: usize, c: Felt) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn diag(field: &FieldDesc, d: &[Felt]) -> Mat {
        let n = d.len();
        let mut m = Mat::zeros(field, n, n);
        for (i, &c) in d.iter().enumerate() {
            m.data[i * n + i] = c;
        }
        m
    }

    /// Uniformly random matrix.
    pub fn random(field: &FieldDesc, rows: usize, cols: usize, rng: &mut impl rand::Rng) -> Mat {
        let mut m = Mat::zeros(field, rows, cols);
        for x in m.data.iter_mut() {
            *x = Felt(rng.gen_range(0..field.q()) as u16);
        }
        m
    }

    /// Uniformly random invertible matrix, by rejection.
    pub fn random_invertible(field: &FieldDesc, n: usize, rng: &mut impl rand::Rng) -> Mat {
        loop {
            let m = Mat::random(field, n, n, rng);
            if m.inverse().is_ok() {
                return m;
            }
        }
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_rows(field: &FieldDesc, cols: usize, rows: &[Vec<Felt>]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Mat {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(field: &FieldDesc, rows: usize, cols: &[Vec<Felt>]) -> Mat {
        Mat::from_rows(field, rows, cols).transpose()
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[Felt] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Felt {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Felt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Felt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_json(&self) -> MatJson {
        MatJson {
            field: self.field.to_json(),
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(|x| x.0 as u32).collect(),
        }
    }

    pub fn from_json(j: &MatJson) -> Result<Mat> {
        let f = FieldDesc::from_json(&j.field)?;
        Mat::new(&f, j.rows, j.cols, j.entries.iter().map(|&a| Felt(a as u16)).collect())
    }

    fn check_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let mut data = vec![Felt(0); n * m];
        for i in 0..n {
            let out = &mut data[i * m..(i + 1) * m];
            for l in 0..k {
                let a = self.data[i * k + l];
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[l * m..(l + 1) * m];
                for (o, &b) in out.iter_mut().zip(brow) {
                    if !b.is_zero() {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        Mat {
            field: f.clone(),
            rows: n,
            cols: m,
            data,
        }
    }

    /// Product; panics on shape mismatch.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        self.mul_unchecked(other)
    }

    pub fn checked_add(&self, other: &Mat) -> Result<Mat> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch("sum of different shapes".into()));
        }
        Ok(self.add(other))
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Mat {
        self.map(|f, a| f.neg(a))
    }

    pub fn scale(&self, c: Felt) -> Mat {
        self.map(|f, a| f.mul(c, a))
    }

    pub fn map(&self, mut g: impl FnMut(&FieldDesc, Felt) -> Felt) -> Mat {
        let f = &self.field;
        Mat {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| g(f, a)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { Felt(1) } else { Felt(0) })
            })
    }

    /// `Some(c)` when the matrix equals `c * I`.
    pub fn scalar_value(&self) -> Option<Felt> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0);
        let ok = (0..self.rows)
            .all(|i| (0..self.cols).all(|j| self.get(i, j) == if i == j { c } else { Felt(0) }));
        ok.then_some(c)
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        out
    }

    /// Entrywise `a -> a^(p^j)`.
    pub fn frobenius(&self, j: u32) -> Mat {
        self.map(|f, a| f.frobenius(a, j))
    }

    pub fn trace(&self) -> Felt {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(Felt(0), |acc, i| f.add(acc, self.get(i, i)))
    }

    /// Kronecker product, row index `i * rows(b) + k`, column `j * cols(b) + l`.
    pub fn kronecker(&self, b: &Mat) -> Mat {
        let f = &self.field;
        let (r, c) = (self.rows * b.rows, self.cols * b.cols);
        let mut out = Mat::zeros(f, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        out.data[(i * b.rows + k) * c + j * b.cols + l] = f.mul(a, b.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Block `[r0, r0+nr) x [c0, c0+nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> Mat {
        let mut out = Mat::zeros(&self.field, nr, nc);
        for i in 0..nr {
            for j in 0..nc {
                out.data[i * nc + j] = self.get(r0 + i, c0 + j);
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Felt]) -> Vec<Felt> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Felt(0), |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// `v M` for a row vector `v`.
    pub fn apply_row(&self, v: &[Felt]) -> Vec<Felt> {
        let f = &self.field;
        let mut out = vec![Felt(0); self.cols];
        for (i, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.row(i)) {
                *o = f.add(*o, f.mul(a, b));
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..m.cols {
                    let v = f.add(m.get(i, j), f.mul(nf, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Mat::zeros(&self.field, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Mat::identity(&self.field, n));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.block(0, n, n, n))
    }

    pub fn det(&self) -> Result<Felt> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Felt(0));
            };
            if pr != c {
                for j in 0..n {
                    m.data.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pv = m.get(c, c);
            det = f.mul(det, pv);
            let inv = f.inv(pv).unwrap();
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor.is_zero() {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..n {
                    let v = f.add(m.get(i, j), f.mul(nf, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Right null space `{x : M x = 0}`.
    pub fn kernel(&self) -> Subspace {
        let f = &self.field;
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut vecs = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![Felt(0); self.cols];
            v[fc] = f.one();
            for (i, &pc) in piv.iter().enumerate() {
                v[pc] = f.neg(r.get(i, fc));
            }
            vecs.push(v);
        }
        Subspace::from_vectors(f, self.cols, &vecs)
    }

    pub fn pow(&self, mut k: u64) -> Mat {
        let mut result = Mat::identity(&self.field, self.rows);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        result
    }

    /// Multiplicative order of an invertible matrix, found by repeated products.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut x = self.clone();
        for k in 1..=limit {
            if x.is_identity() {
                return Some(k);
            }
            x = x.mul(self);
        }
        None
    }

    /// Bytes used for canonical ordering and hashing of group elements.
    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.data.len() * 2);
        for x in &self.data {
            out.extend_from_slice(&x.0.to_be_bytes());
        }
        out
    }

    /// Whether every entry lies in the subfield of degree `d`.
    pub fn over_subfield(&self, d: u32) -> bool {
        self.data.iter().all(|&a| self.field.in_subfield(a, d))
    }

    /// Entries viewed as a single vector (row-major).
    pub fn to_vec(&self) -> Vec<Felt> {
        self.data.clone()
    }

    pub fn from_vec(field: &FieldDesc, rows: usize, cols: usize, v: &[Felt]) -> Mat {
        Mat::from_rows(field, rows * cols, &[v.to_vec()]).reshape(rows, cols)
    }

    fn reshape(mut self, rows: usize, cols: usize) -> Mat {
        assert_eq!(rows * cols, self.data.len());
        self.rows = rows;
        self.cols = cols;
        self
    }

    /// Change of field along an embedding.
    pub fn embed(&self, emb: &super::field::Embedding) -> Mat {
        Mat {
            field: emb.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| emb.map(a)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn inverse_over_gf3() {
        let f = make_field(3, 1).unwrap();
        let m = Mat::from_ints(&f, 2, 2, &[1, 1, 0, 1]);
        assert_eq!(m.inverse().unwrap(), Mat::from_ints(&f, 2, 2, &[1, 2, 0, 1]));
        let s = Mat::from_ints(&f, 2, 2, &[1, 2, 2, 1]);
        assert_eq!(s.inverse().unwrap_err(), Error::Singular);
    }

    #[test]
    fn errors() {
        let f = make_field(3, 1).unwrap();
        let g = make_field(5, 1).unwrap();
        let a = Mat::identity(&f, 2);
        assert_eq!(a.checked_mul(&Mat::identity(&g, 2)).unwrap_err(), Error::FieldMismatch);
        assert!(matches!(a.checked_mul(&Mat::zeros(&f, 3, 3)), Err(Error::ShapeMismatch(_))));
        assert!(Mat::new(&f, 1, 1, vec![Felt(3)]).is_err());
    }

    #[test]
    fn kernel_is_annihilated() {
        let f = make_field(5, 1).unwrap();
        let m = Mat::from_ints(&f, 2, 4, &[1, 2, 3, 4, 2, 4, 1, 0]);
        let k = m.kernel();
        assert_eq!(k.dim(), 2);
        for v in k.vectors() {
            assert!(m.apply(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn kronecker_layout() {
        let f = make_field(7, 1).unwrap();
        let a = Mat::from_ints(&f, 2, 2, &[1, 2, 3, 4]);
        let b = Mat::from_ints(&f, 2, 2, &[0, 1, 1, 0]);
        let k = a.kronecker(&b);
        assert_eq!(k.get(0, 1), Felt(1));
        assert_eq!(k.get(1, 2), Felt(2));
        assert_eq!(k.get(3, 2), Felt(4));
        assert_eq!(k.get(2, 1), Felt(3));
    }
}
