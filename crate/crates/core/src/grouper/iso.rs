use std::collections::{BTreeMap, HashMap, VecDeque};

use super::group::{PermGroup, MAX_ORDER};
use crate::error::{Error, Result};
use crate::treegen::ClassKey;

/// Isomorphism invariants of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    /// `(element order, count)` ascending.
    pub element_orders: Vec<(usize, usize)>,
    pub center_order: usize,
    /// `(class size, count)` ascending.
    pub class_sizes: Vec<(usize, usize)>,
    pub derived_order: usize,
}

fn histogram(xs: impl IntoIterator<Item = usize>) -> Vec<(usize, usize)> {
    let mut h: BTreeMap<usize, usize> = BTreeMap::new();
    for x in xs {
        *h.entry(x).or_default() += 1;
    }
    h.into_iter().collect()
}

impl Fingerprint {
    pub fn of(g: &PermGroup) -> Self {
        Fingerprint {
            order: g.order(),
            abelian: g.is_abelian(),
            element_orders: histogram(g.element_orders()),
            center_order: g.center_order(),
            class_sizes: histogram(g.conjugacy_classes().iter().map(|c| c.size)),
            derived_order: g.derived_subgroup().order(),
        }
    }
}

/// Isomorphism-class name: invariants plus a tag separating non-isomorphic
/// groups with equal invariants. Tags are registry-local.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupKey {
    pub fingerprint: Fingerprint,
    pub tag: usize,
}

impl GroupKey {
    pub fn class_key(&self) -> ClassKey {
        ClassKey::new(self.to_string())
    }
}

impl std::fmt::Display for GroupKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fp = &self.fingerprint;
        let orders: Vec<String> = fp.element_orders.iter().map(|(o, c)| format!("{o}^{c}")).collect();
        let classes: Vec<String> = fp.class_sizes.iter().map(|(s, c)| format!("{s}^{c}")).collect();
        write!(
            f,
            "G{}{}|ord[{}]|Z{}|cls[{}]|D{}#{}",
            fp.order,
            if fp.abelian { "a" } else { "n" },
            orders.join(","),
            fp.center_order,
            classes.join(","),
            fp.derived_order,
            self.tag
        )
    }
}

/// Per-run registry of isomorphism-class representatives.
#[derive(Debug, Default)]
pub struct IsoRegistry {
    reps: HashMap<Fingerprint, Vec<PermGroup>>,
}

impl IsoRegistry {
    pub fn new() -> Self {
        IsoRegistry::default()
    }

    /// Key of `g`, registering it as a new representative when no
    /// registered group is isomorphic to it.
    pub fn key(&mut self, g: &PermGroup) -> Result<GroupKey> {
        check_order(g)?;
        let fingerprint = Fingerprint::of(g);
        let reps = self.reps.entry(fingerprint.clone()).or_default();
        for (tag, h) in reps.iter().enumerate() {
            if find_isomorphism(g, h).is_some() {
                return Ok(GroupKey { fingerprint, tag });
            }
        }
        reps.push(g.clone());
        Ok(GroupKey { fingerprint, tag: reps.len() - 1 })
    }

    /// Registered representative for a key.
    pub fn representative(&self, key: &GroupKey) -> Option<&PermGroup> {
        self.reps.get(&key.fingerprint)?.get(key.tag)
    }

    pub fn len(&self) -> usize {
        self.reps.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_order(g: &PermGroup) -> Result<()> {
    if g.order() > MAX_ORDER {
        return Err(Error::OrderLimitExceeded { order: g.order(), limit: MAX_ORDER });
    }
    Ok(())
}

/// Key of a single group in a fresh registry.
pub fn iso_key(g: &PermGroup) -> Result<GroupKey> {
    IsoRegistry::new().key(g)
}

pub fn is_isomorphic(g: &PermGroup, h: &PermGroup) -> Result<bool> {
    check_order(g)?;
    check_order(h)?;
    if g.order() != h.order() {
        return Ok(false);
    }
    if Fingerprint::of(g) != Fingerprint::of(h) {
        return Ok(false);
    }
    Ok(find_isomorphism(g, h).is_some())
}

/// Searches for an isomorphism `g -> h`, returned as element-index images.
///
/// Generators of `g` are sent to elements of `h` with matching order and
/// centralizer size; each partial assignment is extended along the Cayley
/// graph and rejected on the first inconsistency or collision.
pub fn find_isomorphism(g: &PermGroup, h: &PermGroup) -> Option<Vec<usize>> {
    let n = g.order();
    if n != h.order() {
        return None;
    }
    let gens: Vec<usize> = g.generators().iter().map(|p| g.index_of(p).expect("generator in group")).collect();
    let sig = |grp: &PermGroup, i: usize| {
        let x = &grp.elements()[i];
        let cent = grp.elements().iter().filter(|y| y.commutes_with(x)).count();
        (x.order(), cent)
    };
    let h_sigs: Vec<(usize, usize)> = (0..n).map(|i| sig(h, i)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&gi| {
            let s = sig(g, gi);
            (0..n).filter(|&j| h_sigs[j] == s).collect()
        })
        .collect();
    let mut images = vec![0usize; gens.len()];
    search(g, h, &gens, &candidates, &mut images, 0)
}

fn search(
    g: &PermGroup,
    h: &PermGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut [usize],
    k: usize,
) -> Option<Vec<usize>> {
    if k == gens.len() {
        let map = extend(g, h, gens, images, k)?;
        return map.into_iter().collect();
    }
    for &c in &candidates[k] {
        images[k] = c;
        if extend(g, h, gens, images, k + 1).is_some() {
            if let Some(found) = search(g, h, gens, candidates, images, k + 1) {
                return Some(found);
            }
        }
    }
    None
}

/// Extends `gens[..k] -> images[..k]` to the generated subgroup, or `None`
/// if the assignment is not an injective homomorphism there.
fn extend(g: &PermGroup, h: &PermGroup, gens: &[usize], images: &[usize], k: usize) -> Option<Vec<Option<usize>>> {
    let n = g.order();
    let mut map: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    let (eg, eh) = (g.identity_index(), h.identity_index());
    map[eg] = Some(eh);
    used[eh] = true;
    let mut queue = VecDeque::from([eg]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].expect("queued elements are mapped");
        for s in 0..k {
            let y = g.mul_idx(x, gens[s]);
            let fy = h.mul_idx(fx, images[s]);
            match map[y] {
                Some(prev) if prev != fy => return None,
                Some(_) => {}
                None => {
                    if used[fy] {
                        return None;
                    }
                    used[fy] = true;
                    map[y] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(map)
}
