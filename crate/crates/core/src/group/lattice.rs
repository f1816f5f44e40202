//! Normal subgroups as unions of conjugacy classes.

use std::collections::HashSet;

use super::enumerate::Group;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassSet(Vec<u64>);

impl ClassSet {
    fn empty(n: usize) -> ClassSet {
        ClassSet(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, i % 64);
        let was = self.0[w] >> b & 1 == 1;
        self.0[w] |= 1 << b;
        !was
    }
    pub fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn union_with(&mut self, other: &ClassSet) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= *b;
        }
    }
    pub fn is_subset(&self, other: &ClassSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

#[derive(Debug, Clone)]
pub struct NormalSubgroup {
    pub classes: ClassSet,
    pub order: usize,
}

/// The lattice of normal subgroups of an enumerated group.
#[derive(Debug, Clone)]
pub struct NormalLattice {
    classes: Vec<Vec<usize>>,
    members: Vec<NormalSubgroup>,
}

/// Upper bound on the number of lattice members before giving up.
const MAX_MEMBERS: usize = 4096;

impl NormalLattice {
    pub fn compute(g: &Group, cap: usize) -> Result<NormalLattice> {
        if g.order() > cap {
            return Err(Error::CapExceeded {
                cap,
                partial: g.order(),
            });
        }
        let classes = g.conjugacy_classes();
        let k = classes.len();
        let mut class_of = vec![0usize; g.order()];
        for (c, members) in classes.iter().enumerate() {
            for &i in members {
                class_of[i] = c;
            }
        }
        // support[a][b]: classes meeting the set product of classes a and b
        let mut support = vec![vec![ClassSet::empty(k); k]; k];
        for a in 0..k {
            let rep = g.element(classes[a][0]);
            for b in 0..k {
                for &j in &classes[b] {
                    let c = class_of[g.index_of(&rep.mul(g.element(j))).expect("closed")];
                    support[a][b].insert(c);
                }
            }
        }
        let id_class = class_of[g.index_of(&crate::gf::Mat::identity(g.field(), g.dim())).unwrap()];
        let close = |start: &ClassSet| -> ClassSet {
            let mut s = start.clone();
            s.insert(id_class);
            loop {
                let cur: Vec<usize> = s.iter().collect();
                let mut next = s.clone();
                for &a in &cur {
                    for &b in &cur {
                        next.union_with(&support[a][b]);
                    }
                }
                if next == s {
                    return s;
                }
                s = next;
            }
        };
        let order_of = |s: &ClassSet| -> usize { s.iter().map(|c| classes[c].len()).sum() };
        let mut seen: HashSet<ClassSet> = HashSet::new();
        let mut members: Vec<ClassSet> = Vec::new();
        let mut trivial = ClassSet::empty(k);
        trivial.insert(id_class);
        seen.insert(trivial.clone());
        members.push(trivial);
        for c in 0..k {
            let mut s = ClassSet::empty(k);
            s.insert(c);
            let n = close(&s);
            if seen.insert(n.clone()) {
                members.push(n);
            }
        }
        let mut i = 0;
        while i < members.len() {
            for j in 0..i {
                let mut u = members[i].clone();
                u.union_with(&members[j]);
                let n = close(&u);
                if seen.insert(n.clone()) {
                    members.push(n);
                    if members.len() > MAX_MEMBERS {
                        return Err(Error::CapExceeded {
                            cap: MAX_MEMBERS,
                            partial: members.len(),
                        });
                    }
                }
            }
            i += 1;
        }
        let mut members: Vec<NormalSubgroup> = members
            .into_iter()
            .map(|c| NormalSubgroup {
                order: order_of(&c),
                classes: c,
            })
            .collect();
        members.sort_by(|a, b| (a.order, &a.classes).cmp(&(b.order, &b.classes)));
        Ok(NormalLattice { classes, members })
    }

    /// Members sorted by order (ties broken by class set), trivial group first.
    pub fn members(&self) -> &[NormalSubgroup] {
        &self.members
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn element_indices(&self, n: &NormalSubgroup) -> Vec<usize> {
        let mut out: Vec<usize> = n.classes.iter().flat_map(|c| self.classes[c].iter().copied()).collect();
        out.sort_unstable();
        out
    }

    pub fn to_group(&self, g: &Group, n: &NormalSubgroup) -> Group {
        g.subgroup_from_indices(&self.element_indices(n))
    }

    /// Nontrivial members containing no other nontrivial member.
    pub fn minimal(&self) -> Vec<&NormalSubgroup> {
        self.members
            .iter()
            .filter(|m| m.order > 1)
            .filter(|m| {
                !self
                    .members
                    .iter()
                    .any(|o| o.order > 1 && o.order < m.order && o.classes.is_subset(&m.classes))
            })
            .collect()
    }

    /// Proper members contained in no other proper member.
    pub fn maximal_proper(&self) -> Vec<&NormalSubgroup> {
        let top = self.members.last().map(|m| m.order).unwrap_or(1);
        self.members
            .iter()
            .filter(|m| m.order < top)
            .filter(|m| {
                !self
                    .members
                    .iter()
                    .any(|o| o.order < top && o.order > m.order && m.classes.is_subset(&o.classes))
            })
            .collect()
    }
}
