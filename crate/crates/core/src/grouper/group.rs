use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use super::perm::Perm;
use crate::error::{Error, Result};

/// Largest group order handled anywhere in the crate (large enough for `S_6`).
pub const MAX_ORDER: usize = 720;

/// Finite permutation group with its full, sorted element list.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    table: OnceLock<Vec<u16>>,
}

/// A conjugacy class, represented by its lexicographically least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub rep: Perm,
    pub size: usize,
}

fn closure(degree: usize, gens: &[Perm]) -> Result<Vec<Perm>> {
    let id = Perm::identity(degree);
    let mut seen: HashMap<Perm, ()> = HashMap::from([(id.clone(), ())]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if !seen.contains_key(&y) {
                if out.len() >= MAX_ORDER {
                    return Err(Error::OrderLimitExceeded { order: out.len() + 1, limit: MAX_ORDER });
                }
                seen.insert(y.clone(), ());
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Ok(out)
}

impl PermGroup {
    /// Closure of the generators under multiplication.
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        let elements = closure(degree, &gens)?;
        Ok(PermGroup::from_parts(degree, gens, elements))
    }

    fn from_parts(degree: usize, generators: Vec<Perm>, mut elements: Vec<Perm>) -> Self {
        elements.sort();
        let index = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PermGroup { degree, generators, elements, index, table: OnceLock::new() }
    }

    /// Wraps an element set already known to be a subgroup; a small
    /// generating set is chosen greedily.
    pub(crate) fn from_subgroup_elements(degree: usize, elements: Vec<Perm>) -> Self {
        let mut g = PermGroup::from_parts(degree, Vec::new(), elements);
        g.generators = g.greedy_generators();
        g
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::from_parts(degree, Vec::new(), vec![Perm::identity(degree)])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements in ascending lexicographic order.
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    /// Multiplication table on element indices, `table[i * n + j] = e_i * e_j`.
    pub fn table(&self) -> &[u16] {
        self.table.get_or_init(|| {
            let n = self.order();
            let mut t = Vec::with_capacity(n * n);
            for a in &self.elements {
                for b in &self.elements {
                    t.push(self.index[&a.mul(b)] as u16);
                }
            }
            t
        })
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.table()[i * self.order() + j] as usize
    }

    pub fn inverse_idx(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements.iter().map(Perm::order).collect()
    }

    /// Subgroup generated by the given elements of this group.
    pub fn subgroup(&self, gens: &[Perm]) -> Result<PermGroup> {
        if gens.iter().any(|g| !self.contains(g)) {
            return Err(Error::ElementNotInGroup);
        }
        let elements = closure(self.degree, gens)?;
        Ok(PermGroup::from_parts(self.degree, gens.to_vec(), elements))
    }

    /// Elements commuting with every member of `xs`.
    pub fn centralizer(&self, xs: &[Perm]) -> Result<PermGroup> {
        if xs.iter().any(|x| !self.contains(x)) {
            return Err(Error::ElementNotInGroup);
        }
        let elements: Vec<Perm> =
            self.elements.iter().filter(|g| xs.iter().all(|x| g.commutes_with(x))).cloned().collect();
        Ok(PermGroup::from_subgroup_elements(self.degree, elements))
    }

    pub fn center_order(&self) -> usize {
        self.elements.iter().filter(|z| self.generators.iter().all(|g| g.commutes_with(z))).count()
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms: Vec<Perm> = Vec::new();
        for a in &self.elements {
            for b in &self.generators {
                let c = a.mul(b).mul(&a.inverse()).mul(&b.inverse());
                if !c.is_identity() && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        // Normal closure of the generator commutators is the derived subgroup.
        let mut normal: Vec<Perm> = Vec::new();
        for c in &comms {
            for g in &self.elements {
                let d = c.conjugate_by(g);
                if !normal.contains(&d) {
                    normal.push(d);
                }
            }
        }
        let elements = closure(self.degree, &normal).expect("subgroup of a bounded group");
        PermGroup::from_subgroup_elements(self.degree, elements)
    }

    /// Orbits of the conjugation action, ordered by representative.
    pub fn conjugacy_classes(&self) -> Vec<ConjClass> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut out = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let x = &self.elements[i];
            let mut size = 0;
            for g in &self.elements {
                let j = self.index[&x.conjugate_by(g)];
                if class_of[j] == usize::MAX {
                    class_of[j] = out.len();
                    size += 1;
                }
            }
            out.push(ConjClass { rep: x.clone(), size });
        }
        out
    }

    /// `g H g^{-1}` for an arbitrary permutation `g` of the same degree.
    pub fn conjugate(&self, g: &Perm) -> PermGroup {
        let gens = self.generators.iter().map(|x| x.conjugate_by(g)).collect();
        let elements = self.elements.iter().map(|x| x.conjugate_by(g)).collect();
        PermGroup::from_parts(self.degree, gens, elements)
    }

    /// Greedy generating set: scan elements by decreasing order and keep
    /// any element outside the subgroup generated so far.
    pub fn greedy_generators(&self) -> Vec<Perm> {
        let mut candidates: Vec<&Perm> = self.elements.iter().collect();
        candidates.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.cmp(b)));
        let mut gens: Vec<Perm> = Vec::new();
        let mut span: Vec<Perm> = vec![Perm::identity(self.degree)];
        for c in candidates {
            if span.len() == self.order() {
                break;
            }
            if span.contains(c) {
                continue;
            }
            gens.push(c.clone());
            span = closure(self.degree, &gens).expect("subgroup of a bounded group");
        }
        gens
    }
}
