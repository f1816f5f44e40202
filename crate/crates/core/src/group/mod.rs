//! Enumeration of finite matrix groups and the structure computed from the element list.

mod enumerate;
mod genset;
mod lattice;

pub use enumerate::Group;
pub use genset::{GenSet, GenSetJson};
pub use lattice::{ClassSet, NormalLattice, NormalSubgroup};

use crate::error::Result;

/// Default enumeration cap.
pub const CLOSURE_CAP: usize = 200_000;
/// Default cap on the order of groups whose normal lattice is computed.
pub const NORMAL_CAP: usize = 20_000;

/// Every normal subgroup, smallest first.
pub fn all_normal_subgroups(g: &Group, cap: usize) -> Result<Vec<Group>> {
    let lat = NormalLattice::compute(g, cap)?;
    Ok(lat.members().iter().map(|m| lat.to_group(g, m)).collect())
}

pub fn minimal_normal_subgroups(g: &Group, cap: usize) -> Result<Vec<Group>> {
    let lat = NormalLattice::compute(g, cap)?;
    Ok(lat.minimal().into_iter().map(|m| lat.to_group(g, m)).collect())
}

/// Perfect, and every normal subgroup is central or everything.
pub fn is_quasisimple(g: &Group, cap: usize) -> Result<bool> {
    if g.order() == 1 || !g.is_perfect() {
        return Ok(false);
    }
    let z = g.center();
    let lat = NormalLattice::compute(g, cap)?;
    Ok(lat.members().iter().all(|m| {
        m.order == g.order() || lat.element_indices(m).iter().all(|&i| z.contains(g.element(i)))
    }))
}

/// Subnormal quasisimple subgroups.
///
/// Components are perfect, so they lie in the perfect core; a perfect group that
/// is not quasisimple has each component inside some maximal normal subgroup.
pub fn components(g: &Group, cap: usize) -> Result<Vec<Group>> {
    let mut out: Vec<Group> = Vec::new();
    collect_components(g, cap, &mut out)?;
    Ok(out)
}

fn collect_components(g: &Group, cap: usize, out: &mut Vec<Group>) -> Result<()> {
    let core = g.perfect_core();
    if core.order() == 1 {
        return Ok(());
    }
    if core.order() < g.order() {
        return collect_components(&core, cap, out);
    }
    if is_quasisimple(g, cap)? {
        if !out.iter().any(|c| c.same_elements(g)) {
            out.push(g.clone());
        }
        return Ok(());
    }
    let lat = NormalLattice::compute(g, cap)?;
    for m in lat.maximal_proper() {
        let sub = lat.to_group(g, m);
        collect_components(&sub, cap, out)?;
    }
    Ok(())
}

/// The layer `E(G)` together with its components.
#[derive(Debug, Clone)]
pub struct Layer {
    pub group: Group,
    pub components: Vec<Group>,
}

pub fn layer(g: &Group, cap: usize) -> Result<Layer> {
    let comps = components(g, cap)?;
    let gens: Vec<crate::gf::Mat> = comps.iter().flat_map(|c| c.gens().iter().cloned()).collect();
    let group = Group::close_mats(g.field(), g.dim(), &gens, cap.max(g.order()))?;
    Ok(Layer {
        group,
        components: comps,
    })
}
