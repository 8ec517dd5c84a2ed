//! Simultaneous conjugacy classes of commuting tuples in a finite group.
//!
//! The orbit of a commuting tuple is keyed by the isomorphism type of its
//! centralizer; the children of a node with centralizer `Z` are the
//! conjugacy classes of `Z`, each keyed by its own centralizer in `Z`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::Result;
use crate::exactalg::RatFun;
use crate::grouper::{GroupKey, IsoRegistry, PermGroup};
use crate::orbit::Action;
use crate::treegen::{self, BranchingMatrix, BranchingProcess, ChildMultiset, ClassKey};

/// An integer partition with weakly decreasing parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `(i, m_i)` for each distinct part `i`, ascending in `i`.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut m: BTreeMap<usize, usize> = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_default() += 1;
        }
        m.into_iter().collect()
    }

    /// Centralizer order of a permutation of this cycle type:
    /// `prod_i m_i! * i^{m_i}`.
    pub fn zlambda(&self) -> BigInt {
        self.multiplicities()
            .into_iter()
            .map(|(i, mi)| {
                let fact: BigInt = (1..=mi).map(BigInt::from).product();
                fact * BigInt::from(i).pow(mi as u32)
            })
            .product()
    }
}

pub fn zlambda(lambda: &Partition) -> BigInt {
    lambda.zlambda()
}

/// Partitions of `m`, in lexicographic order of their part sequences.
pub fn partitions(m: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in 1..=rest.min(max) {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// Branching process of commuting-tuple orbits, keyed by centralizer type.
#[derive(Debug)]
pub struct CommutingProcess {
    group: PermGroup,
    registry: IsoRegistry,
    reps: HashMap<ClassKey, PermGroup>,
    keys: HashMap<ClassKey, GroupKey>,
    memo: HashMap<ClassKey, ChildMultiset>,
}

impl CommutingProcess {
    pub fn new(group: PermGroup) -> Self {
        CommutingProcess {
            group,
            registry: IsoRegistry::new(),
            reps: HashMap::new(),
            keys: HashMap::new(),
            memo: HashMap::new(),
        }
    }

    fn register(&mut self, g: PermGroup) -> Result<ClassKey> {
        let gk = self.registry.key(&g)?;
        let ck = gk.class_key();
        self.reps.entry(ck.clone()).or_insert(g);
        self.keys.entry(ck.clone()).or_insert(gk);
        Ok(ck)
    }

    /// Representative centralizer group for a discovered key.
    pub fn representative(&self, key: &ClassKey) -> Option<&PermGroup> {
        self.reps.get(key)
    }
}

pub fn commuting_process(g: &PermGroup) -> CommutingProcess {
    CommutingProcess::new(g.clone())
}

impl BranchingProcess for CommutingProcess {
    fn root(&mut self) -> Result<ClassKey> {
        self.register(self.group.clone())
    }

    fn children(&mut self, key: &ClassKey) -> Result<ChildMultiset> {
        if let Some(kids) = self.memo.get(key) {
            return Ok(kids.clone());
        }
        let z = self.reps.get(key).cloned().expect("children requested for a discovered key");
        let mut kids: ChildMultiset = Vec::new();
        for class in z.conjugacy_classes() {
            let c = z.centralizer(std::slice::from_ref(&class.rep))?;
            let k = self.register(c)?;
            match kids.iter_mut().find(|(kk, _)| *kk == k) {
                Some(slot) => slot.1 += 1,
                None => kids.push((k, 1)),
            }
        }
        self.memo.insert(key.clone(), kids.clone());
        Ok(kids)
    }

    fn label(&self, key: &ClassKey) -> String {
        match self.keys.get(key) {
            Some(gk) => describe(gk),
            None => key.to_string(),
        }
    }
}

fn describe(k: &GroupKey) -> String {
    let fp = &k.fingerprint;
    let orders: Vec<String> = fp.element_orders.iter().map(|(o, c)| format!("{o}:{c}")).collect();
    format!(
        "order {} {} (element orders {}){}",
        fp.order,
        if fp.abelian { "abelian" } else { "non-abelian" },
        orders.join(" "),
        if k.tag > 0 { format!(" #{}", k.tag) } else { String::new() }
    )
}

pub fn commuting_branching(g: &PermGroup) -> Result<BranchingMatrix> {
    treegen::build_branching(&mut commuting_process(g))
}

/// `h_G(t)`: generating function of commuting-tuple orbit counts.
pub fn commuting_gf(g: &PermGroup) -> Result<RatFun> {
    treegen::gf_total(&commuting_branching(g)?)
}

/// `f_G(t) = (1/|G|) sum_{g in G} 1/(1 - |Z_G(g)| t)`, summed element by
/// element (grouped by centralizer order).
pub fn burnside_gf(g: &PermGroup) -> RatFun {
    let mut by_size: BTreeMap<usize, usize> = BTreeMap::new();
    for x in g.elements() {
        let z = g.elements().iter().filter(|y| y.commutes_with(x)).count();
        *by_size.entry(z).or_default() += 1;
    }
    let order = BigInt::from(g.order());
    by_size
        .into_iter()
        .map(|(z, count)| {
            let weight = RatFun::from_ratio(BigInt::from(count), order.clone()).expect("nonzero order");
            &weight * &RatFun::geometric(BigInt::from(z))
        })
        .sum()
}

/// `f_{S_m}(t) = sum_{λ ⊢ m} 1 / (z_λ (1 - z_λ t))`.
pub fn symmetric_burnside_gf(m: usize) -> RatFun {
    partitions(m)
        .into_iter()
        .map(|lambda| {
            let z = lambda.zlambda();
            let weight = RatFun::from_ratio(BigInt::one(), z.clone()).expect("positive z");
            &weight * &RatFun::geometric(z)
        })
        .sum()
}

/// Orbits of `G` on commuting `n`-tuples under simultaneous conjugation,
/// by direct enumeration.
pub fn commuting_orbit_oracle(g: &PermGroup, n: usize, budget: u64) -> Result<u64> {
    let order = g.order();
    let elems = g.elements();
    let mut commute = vec![false; order * order];
    for i in 0..order {
        for j in 0..order {
            commute[i * order + j] = g.mul_idx(i, j) == g.mul_idx(j, i);
        }
    }
    let perms: Vec<Vec<u32>> = (0..order)
        .map(|a| {
            let inv = g.inverse_idx(a);
            (0..order).map(|x| g.mul_idx(g.mul_idx(a, x), inv) as u32).collect()
        })
        .collect();
    debug_assert_eq!(elems.len(), order);
    let action = Action::new(order, perms);
    let candidates = |prefix: &[u32]| {
        (0..order as u32)
            .filter(|&y| prefix.iter().all(|&x| commute[x as usize * order + y as usize]))
            .collect::<Vec<u32>>()
    };
    action.canonical_tuples(n, candidates, |_| {}, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Poly;
    use crate::grouper::named::{cyclic, symmetric};
    use crate::orbit::DEFAULT_WORK_BUDGET;

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(Poly::from_i64s(num), Poly::from_i64s(den)).unwrap()
    }

    #[test]
    fn zlambda_examples() {
        assert_eq!(Partition::new(vec![1, 1, 1]).zlambda(), BigInt::from(6));
        assert_eq!(Partition::new(vec![2, 1]).zlambda(), BigInt::from(2));
        assert_eq!(Partition::new(vec![3, 2]).zlambda(), BigInt::from(6));
    }

    #[test]
    fn partition_enumeration() {
        let p4: Vec<Vec<usize>> = partitions(4).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(p4, vec![vec![1, 1, 1, 1], vec![2, 1, 1], vec![2, 2], vec![3, 1], vec![4]]);
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(0).len(), 1);
    }

    #[test]
    fn s3_process() {
        let s3 = symmetric(3).unwrap();
        let bm = commuting_branching(&s3).unwrap();
        assert!(bm.equivalent_to(&[vec![1, 0, 0], vec![1, 2, 0], vec![1, 0, 3]]));
        assert_eq!(commuting_gf(&s3).unwrap(), rf(&[1, -3, 1], &[1, -6, 11, -6]));
    }

    #[test]
    fn abelian_groups_are_single_class() {
        for k in [1, 2, 5, 6] {
            let c = cyclic(k).unwrap();
            let bm = commuting_branching(&c).unwrap();
            assert_eq!(bm.matrix(), &[vec![k as u64]]);
            let expected = RatFun::geometric(BigInt::from(k));
            assert_eq!(commuting_gf(&c).unwrap(), expected);
            assert_eq!(burnside_gf(&c), expected);
        }
    }

    #[test]
    fn burnside_examples() {
        assert_eq!(burnside_gf(&symmetric(1).unwrap()), rf(&[1], &[1, -1]));
        let s3 = burnside_gf(&symmetric(3).unwrap());
        let den = Poly::from_i64s(&[1, -2]) * Poly::from_i64s(&[1, -3]) * Poly::from_i64s(&[1, -6]);
        assert!(s3.same_function(&RatFun::new(Poly::from_i64s(&[1, -8, 14]), den).unwrap()));
        assert_eq!(symmetric_burnside_gf(3), s3);
        assert_eq!(symmetric_burnside_gf(2), rf(&[1], &[1, -2]));
    }

    #[test]
    fn oracle_small_cases() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(commuting_orbit_oracle(&s3, 2, DEFAULT_WORK_BUDGET).unwrap(), 8);
        assert_eq!(commuting_orbit_oracle(&s3, 0, DEFAULT_WORK_BUDGET).unwrap(), 1);
        let s4 = symmetric(4).unwrap();
        assert_eq!(commuting_orbit_oracle(&s4, 1, DEFAULT_WORK_BUDGET).unwrap(), 5);
        assert!(commuting_orbit_oracle(&s4, 4, 10).is_err());
    }
}
