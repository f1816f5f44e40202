use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldDesc, FieldJson, Mat, MatJson};

/// A labelled generating set of invertible `dim x dim` matrices over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSet {
    label: String,
    field: FieldDesc,
    dim: usize,
    gens: Vec<Mat>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GenSetJson {
    pub label: String,
    pub dim: usize,
    pub field: FieldJson,
    pub gens: Vec<MatJson>,
}

impl GenSet {
    pub fn new(label: impl Into<String>, field: &FieldDesc, dim: usize, gens: Vec<Mat>) -> Result<GenSet> {
        for g in &gens {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if g.rows() != dim || g.cols() != dim {
                return Err(Error::ShapeMismatch(format!("generator is not {dim}x{dim}")));
            }
            if g.det()?.is_zero() {
                return Err(Error::Singular);
            }
        }
        Ok(GenSet {
            label: label.into(),
            field: field.clone(),
            dim,
            gens,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }
    pub fn field(&self) -> &FieldDesc {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn gens(&self) -> &[Mat] {
        &self.gens
    }

    pub fn relabel(mut self, label: impl Into<String>) -> GenSet {
        self.label = label.into();
        self
    }

    /// The same set with extra generators appended.
    pub fn with(&self, extra: &[Mat]) -> Result<GenSet> {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(extra);
        GenSet::new(self.label.clone(), &self.field, self.dim, gens)
    }

    /// `x^-1 g x` for every generator.
    pub fn conjugate(&self, x: &Mat) -> Result<GenSet> {
        let xi = x.inverse()?;
        GenSet::new(
            self.label.clone(),
            &self.field,
            self.dim,
            self.gens.iter().map(|g| xi.mul(g).mul(x)).collect(),
        )
    }

    pub fn to_json(&self) -> GenSetJson {
        GenSetJson {
            label: self.label.clone(),
            dim: self.dim,
            field: self.field.to_json(),
            gens: self.gens.iter().map(|g| g.to_json()).collect(),
        }
    }

    pub fn from_json(j: &GenSetJson) -> Result<GenSet> {
        let field = FieldDesc::from_json(&j.field)?;
        let gens = j.gens.iter().map(Mat::from_json).collect::<Result<Vec<_>>>()?;
        GenSet::new(j.label.clone(), &field, j.dim, gens)
    }
}
