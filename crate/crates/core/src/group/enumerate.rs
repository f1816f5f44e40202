use std::collections::HashSet;

use indexmap::IndexSet;

use super::genset::GenSet;
use crate::error::{Error, Result};
use crate::gf::{gcd, FieldDesc, Mat};

/// A finite matrix group held as an explicit element list.
///
/// Elements are ordered by breadth-first layer from the identity and, within a
/// layer, by their byte key, so the order is a function of the generators alone.
#[derive(Debug, Clone)]
pub struct Group {
    field: FieldDesc,
    dim: usize,
    gens: Vec<Mat>,
    elements: IndexSet<Mat>,
}

impl Group {
    /// Breadth-first closure under left multiplication by the generators.
    pub fn close(gens: &GenSet, cap: usize) -> Result<Group> {
        Group::close_mats(gens.field(), gens.dim(), gens.gens(), cap)
    }

    pub fn close_mats(field: &FieldDesc, dim: usize, gens: &[Mat], cap: usize) -> Result<Group> {
        let mut elements = IndexSet::new();
        elements.insert(Mat::identity(field, dim));
        let mut layer_start = 0;
        loop {
            let layer_end = elements.len();
            let mut next: IndexSet<Mat> = IndexSet::new();
            for idx in layer_start..layer_end {
                let x = &elements[idx];
                for g in gens {
                    let y = g.mul(x);
                    if !elements.contains(&y) {
                        next.insert(y);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            let mut next: Vec<Mat> = next.into_iter().collect();
            next.sort();
            for y in next {
                elements.insert(y);
                if elements.len() > cap {
                    return Err(Error::CapExceeded {
                        cap,
                        partial: elements.len(),
                    });
                }
            }
            layer_start = layer_end;
        }
        Ok(Group {
            field: field.clone(),
            dim,
            gens: gens.to_vec(),
            elements,
        })
    }

    /// Subgroup generated by the listed elements of `self`, with a small generating
    /// set picked greedily in element order.
    pub fn subgroup_from_indices(&self, idx: &[usize]) -> Group {
        let mut sorted = idx.to_vec();
        sorted.sort_unstable();
        let mut gens: Vec<Mat> = Vec::new();
        let mut current = Group::close_mats(&self.field, self.dim, &gens, usize::MAX).unwrap();
        for &i in &sorted {
            let x = &self.elements[i];
            if !current.contains(x) {
                gens.push(x.clone());
                current = Group::close_mats(&self.field, self.dim, &gens, usize::MAX).unwrap();
                if current.order() == sorted.len() {
                    break;
                }
            }
        }
        current
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
    pub fn order(&self) -> usize {
        self.elements.len()
    }
    pub fn elements(&self) -> &IndexSet<Mat> {
        &self.elements
    }
    pub fn element(&self, i: usize) -> &Mat {
        &self.elements[i]
    }
    pub fn contains(&self, m: &Mat) -> bool {
        self.elements.contains(m)
    }
    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        self.elements.get_index_of(m)
    }

    pub fn genset(&self, label: &str) -> GenSet {
        GenSet::new(label, &self.field, self.dim, self.gens.clone()).expect("group generators are valid")
    }

    pub fn same_elements(&self, other: &Group) -> bool {
        self.order() == other.order() && self.elements.iter().all(|x| other.contains(x))
    }

    pub fn is_subgroup_of(&self, other: &Group) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Whether every generator of `ambient` normalizes `self`.
    pub fn is_normalized_by(&self, ambient_gens: &[Mat]) -> bool {
        ambient_gens.iter().all(|g| {
            let gi = g.inverse().expect("invertible");
            self.gens.iter().all(|x| self.contains(&g.mul(x).mul(&gi)))
        })
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|a| self.gens.iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn center(&self) -> Group {
        let idx: Vec<usize> = (0..self.order())
            .filter(|&i| {
                let x = &self.elements[i];
                self.gens.iter().all(|g| g.mul(x) == x.mul(g))
            })
            .collect();
        self.subgroup_from_indices(&idx)
    }

    /// Order of the element at index `i`.
    pub fn element_order(&self, i: usize) -> u64 {
        let x = &self.elements[i];
        x.order(self.order() as u64).expect("element of a finite group")
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order()).fold(1u64, |acc, i| {
            let o = self.element_order(i);
            acc / gcd(acc, o) * o
        })
    }

    /// Derived subgroup: normal closure of the commutators of the generators.
    pub fn derived_subgroup(&self) -> Group {
        let inv: Vec<Mat> = self.gens.iter().map(|g| g.inverse().unwrap()).collect();
        let mut gens: Vec<Mat> = Vec::new();
        let mut seen: HashSet<Mat> = HashSet::new();
        for (i, a) in self.gens.iter().enumerate() {
            for (j, b) in self.gens.iter().enumerate() {
                let c = a.mul(b).mul(&inv[i]).mul(&inv[j]);
                if !c.is_identity() && seen.insert(c.clone()) {
                    gens.push(c);
                }
            }
        }
        let mut current = Group::close_mats(&self.field, self.dim, &gens, usize::MAX).unwrap();
        loop {
            let mut added = false;
            'outer: for (k, g) in self.gens.iter().enumerate() {
                for x in current.gens.clone() {
                    let y = g.mul(&x).mul(&inv[k]);
                    if !current.contains(&y) {
                        gens.push(y);
                        current = Group::close_mats(&self.field, self.dim, &gens, usize::MAX).unwrap();
                        added = true;
                        break 'outer;
                    }
                }
            }
            if !added {
                return current;
            }
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_subgroup().order() == self.order()
    }

    pub fn is_solvable(&self) -> bool {
        let mut g = self.clone();
        loop {
            if g.order() == 1 {
                return true;
            }
            let d = g.derived_subgroup();
            if d.order() == g.order() {
                return false;
            }
            g = d;
        }
    }

    /// Last term of the derived series.
    pub fn perfect_core(&self) -> Group {
        let mut g = self.clone();
        loop {
            let d = g.derived_subgroup();
            if d.order() == g.order() {
                return g;
            }
            g = d;
        }
    }

    /// Conjugacy classes as index lists, in order of their first element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let inv: Vec<Mat> = self.gens.iter().map(|g| g.inverse().unwrap()).collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut head = 0;
            while head < members.len() {
                let x = self.elements[members[head]].clone();
                head += 1;
                for (g, gi) in self.gens.iter().zip(&inv) {
                    let y = g.mul(&x).mul(gi);
                    let j = self.index_of(&y).expect("closed under conjugation");
                    if class_of[j] == usize::MAX {
                        class_of[j] = id;
                        members.push(j);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Elements of `self` normalizing the subgroup generated by `target`.
    pub fn normalizer(&self, target: &Group) -> Group {
        let idx: Vec<usize> = (0..self.order())
            .filter(|&i| {
                let g = &self.elements[i];
                let gi = g.inverse().unwrap();
                target.gens.iter().all(|x| target.contains(&g.mul(x).mul(&gi)))
            })
            .collect();
        self.subgroup_from_indices(&idx)
    }

    /// Elements of `self` commuting with every generator of `target`.
    pub fn centralizer(&self, target: &Group) -> Group {
        let idx: Vec<usize> = (0..self.order())
            .filter(|&i| {
                let g = &self.elements[i];
                target.gens.iter().all(|x| g.mul(x) == x.mul(g))
            })
            .collect();
        self.subgroup_from_indices(&idx)
    }

    /// Whether every element is a scalar matrix.
    pub fn is_scalar(&self) -> bool {
        self.gens.iter().all(|g| g.scalar_value().is_some())
    }

    /// Whether the order is a power of a prime; returns that prime.
    pub fn prime_power_base(&self) -> Option<u64> {
        let n = self.order() as u64;
        if n == 1 {
            return None;
        }
        let ps = crate::gf::prime_divisors(n);
        (ps.len() == 1).then(|| ps[0])
    }
}
