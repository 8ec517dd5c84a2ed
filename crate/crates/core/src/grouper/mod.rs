//! Permutation groups stored by full element list: closure, centralizers,
//! conjugacy classes and isomorphism keys.

mod group;
mod iso;
pub mod named;
mod perm;

pub use group::{ConjClass, PermGroup, MAX_ORDER};
pub use iso::{find_isomorphism, is_isomorphic, iso_key, Fingerprint, GroupKey, IsoRegistry};
pub use perm::Perm;

pub fn group_from_generators(degree: usize, gens: Vec<Perm>) -> crate::Result<PermGroup> {
    PermGroup::from_generators(degree, gens)
}

pub fn centralizer(g: &PermGroup, xs: &[Perm]) -> crate::Result<PermGroup> {
    g.centralizer(xs)
}

pub fn conjugacy_classes(g: &PermGroup) -> Vec<ConjClass> {
    g.conjugacy_classes()
}
