use std::collections::HashMap;
use std::sync::Arc;

use super::iso::{RingKey, RingRegistry, SIZE_LIMIT};
use super::mat::MatRing;
use super::subalg::Subalgebra;
use crate::error::{Error, Result};
use crate::exactalg::RatFun;
use crate::orbit::Action;
use crate::treegen::{self, BranchingProcess, ChildMultiset, ClassKey};

/// Largest root ring run without opting in to [`Scale::Stretch`].
pub const DESK_LIMIT: usize = 81;

/// How large a root ring a computation may take on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Scale {
    /// Root rings of at most [`DESK_LIMIT`] elements.
    #[default]
    Desk,
    /// Up to [`SIZE_LIMIT`] elements, e.g. `M_3(F_2)`. Slow.
    Stretch,
}

impl Scale {
    pub fn limit(self) -> usize {
        match self {
            Scale::Desk => DESK_LIMIT,
            Scale::Stretch => SIZE_LIMIT,
        }
    }
}

fn checked_ring(q: u64, m: usize, scale: Scale) -> Result<Arc<MatRing>> {
    let ring = MatRing::new(q, m)?;
    let size = usize::try_from(ring.size()).unwrap_or(usize::MAX);
    if size > scale.limit() {
        return Err(Error::SizeLimitExceeded { size, limit: scale.limit() });
    }
    Ok(Arc::new(ring))
}

/// Commuting `n`-tuples in `M_m(F_q)` up to simultaneous similarity, keyed
/// by the isomorphism type of their centralizer ring.
#[derive(Debug)]
pub struct ModuleProcess {
    ring: Arc<MatRing>,
    registry: RingRegistry,
    reps: HashMap<ClassKey, Subalgebra>,
    keys: HashMap<ClassKey, RingKey>,
    memo: HashMap<ClassKey, ChildMultiset>,
    state_limit: usize,
}

impl ModuleProcess {
    pub fn ring(&self) -> &MatRing {
        &self.ring
    }

    pub fn with_state_limit(mut self, limit: usize) -> Self {
        self.state_limit = limit;
        self
    }

    pub fn representative(&self, key: &ClassKey) -> Option<&Subalgebra> {
        self.reps.get(key)
    }

    fn register(&mut self, z: Subalgebra) -> Result<ClassKey> {
        let rk = self.registry.key(&z)?;
        let ck = rk.class_key();
        self.reps.entry(ck.clone()).or_insert(z);
        self.keys.entry(ck.clone()).or_insert(rk);
        Ok(ck)
    }
}

pub fn module_process(q: u64, m: usize, scale: Scale) -> Result<ModuleProcess> {
    Ok(ModuleProcess {
        ring: checked_ring(q, m, scale)?,
        registry: RingRegistry::new(),
        reps: HashMap::new(),
        keys: HashMap::new(),
        memo: HashMap::new(),
        state_limit: treegen::DEFAULT_STATE_LIMIT,
    })
}

impl BranchingProcess for ModuleProcess {
    fn root(&mut self) -> Result<ClassKey> {
        self.register(Subalgebra::full(self.ring.clone()))
    }

    fn children(&mut self, key: &ClassKey) -> Result<ChildMultiset> {
        if let Some(kids) = self.memo.get(key) {
            return Ok(kids.clone());
        }
        let z = self.reps.get(key).cloned().expect("children requested for a discovered key");
        let mut kids: ChildMultiset = Vec::new();
        for (rep, _) in z.unit_conjugacy_classes() {
            let k = self.register(z.centralizer(&rep)?)?;
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
            Some(rk) => {
                let fp = &rk.fingerprint;
                format!(
                    "ring of order {} ({} units, center {}, {}){}",
                    fp.size,
                    fp.units,
                    fp.center,
                    if fp.commutative { "commutative" } else { "non-commutative" },
                    if rk.tag > 0 { format!(" #{}", rk.tag) } else { String::new() }
                )
            }
            None => key.to_string(),
        }
    }

    fn state_limit(&self) -> usize {
        self.state_limit
    }
}

/// `h_{q,m}(t)`: generating function of isomorphism classes of
/// `m`-dimensional `F_q[x_1, ..., x_n]`-modules.
pub fn module_gf(q: u64, m: usize, scale: Scale) -> Result<RatFun> {
    let bm = treegen::build_branching(&mut module_process(q, m, scale)?)?;
    treegen::gf_total(&bm)
}

/// Orbits of `GL_m(F_q)` on commuting `n`-tuples in `M_m(F_q)` by direct
/// enumeration.
pub fn module_orbit_oracle(q: u64, m: usize, n: usize, scale: Scale, budget: u64) -> Result<u64> {
    let ring = checked_ring(q, m, scale)?;
    let full = Subalgebra::full(ring.clone());
    let els = full.elements();
    let perms: Vec<Vec<u32>> = full
        .units()
        .iter()
        .map(|(g, ginv)| {
            els.iter().map(|x| full.index_of(&ring.mul(&ring.mul(g, x), ginv)).expect("closed") as u32).collect()
        })
        .collect();
    let action = Action::new(els.len(), perms);
    let candidates = |prefix: &[u32]| {
        (0..els.len() as u32)
            .filter(|&y| prefix.iter().all(|&x| ring.commute(&els[x as usize], &els[y as usize])))
            .collect::<Vec<u32>>()
    };
    action.canonical_tuples(n, candidates, |_| {}, budget)
}
