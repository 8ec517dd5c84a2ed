//! Brute-force orbit enumeration for diagonal group actions on tuples.
//!
//! The acting group is given as a list of permutations of the point set
//! `0..n`. An orbit is counted through its lexicographically least tuple;
//! a depth-first search extends only prefixes that are themselves least in
//! their orbits, carrying the stabilizer of the prefix along.

use crate::error::{Error, Result};

pub const DEFAULT_WORK_BUDGET: u64 = 10_000_000;

/// Work budget from the `LINEAL_WORK_BUDGET` environment variable, if set
/// and parseable, else [`DEFAULT_WORK_BUDGET`].
pub fn budget_from_env() -> u64 {
    std::env::var("LINEAL_WORK_BUDGET")
        .ok()
        .and_then(|v| v.trim().replace('_', "").parse().ok())
        .unwrap_or(DEFAULT_WORK_BUDGET)
}

/// Permutation action of a finite group on points `0..points`.
#[derive(Clone, Debug)]
pub struct Action {
    points: usize,
    perms: Vec<Vec<u32>>,
}

impl Action {
    pub fn new(points: usize, perms: Vec<Vec<u32>>) -> Self {
        debug_assert!(perms.iter().all(|p| p.len() == points));
        Action { points, perms }
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn group_order(&self) -> usize {
        self.perms.len()
    }

    pub fn apply(&self, g: usize, x: u32) -> u32 {
        self.perms[g][x as usize]
    }

    /// Least image of `tuple` under the group.
    pub fn canonical(&self, tuple: &[u32]) -> Vec<u32> {
        self.perms
            .iter()
            .map(|p| tuple.iter().map(|&x| p[x as usize]).collect::<Vec<u32>>())
            .min()
            .unwrap_or_else(|| tuple.to_vec())
    }

    /// Visits the least representative of every orbit on `n`-tuples whose
    /// entries are drawn from `candidates(prefix)`. The candidate rule must
    /// be invariant under the group. Returns the number of orbits.
    pub fn canonical_tuples<C, V>(&self, n: usize, mut candidates: C, mut visit: V, budget: u64) -> Result<u64>
    where
        C: FnMut(&[u32]) -> Vec<u32>,
        V: FnMut(&[u32]),
    {
        let stab: Vec<u32> = (0..self.perms.len() as u32).collect();
        let mut prefix = Vec::with_capacity(n);
        let mut work = 0u64;
        let mut count = 0u64;
        self.dfs(n, &mut prefix, &stab, &mut candidates, &mut visit, &mut work, budget, &mut count)?;
        Ok(count)
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs<C, V>(
        &self,
        n: usize,
        prefix: &mut Vec<u32>,
        stab: &[u32],
        candidates: &mut C,
        visit: &mut V,
        work: &mut u64,
        budget: u64,
        count: &mut u64,
    ) -> Result<()>
    where
        C: FnMut(&[u32]) -> Vec<u32>,
        V: FnMut(&[u32]),
    {
        if prefix.len() == n {
            *count += 1;
            visit(prefix);
            return Ok(());
        }
        for x in candidates(prefix) {
            *work += 1;
            if *work > budget {
                return Err(Error::WorkBudgetExceeded { budget });
            }
            let mut next_stab = Vec::new();
            let mut least = true;
            for &g in stab {
                let y = self.perms[g as usize][x as usize];
                if y < x {
                    least = false;
                    break;
                }
                if y == x {
                    next_stab.push(g);
                }
            }
            if !least {
                continue;
            }
            prefix.push(x);
            self.dfs(n, prefix, &next_stab, candidates, visit, work, budget, count)?;
            prefix.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_action() -> Action {
        // C2 swapping points 0 and 1 of {0, 1, 2}
        Action::new(3, vec![vec![0, 1, 2], vec![1, 0, 2]])
    }

    #[test]
    fn burnside_agreement() {
        // Orbits of C2 on pairs over 3 points: (9 + 1) / 2 = 5
        let a = swap_action();
        let all = |_: &[u32]| (0..3).collect::<Vec<u32>>();
        let mut reps = Vec::new();
        let n = a.canonical_tuples(2, all, |t| reps.push(t.to_vec()), 1000).unwrap();
        assert_eq!(n, 5);
        for r in &reps {
            assert_eq!(&a.canonical(r), r);
        }
        assert_eq!(a.canonical_tuples(0, all, |_| {}, 10).unwrap(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let a = swap_action();
        let all = |_: &[u32]| (0..3).collect::<Vec<u32>>();
        assert_eq!(a.canonical_tuples(6, all, |_| {}, 20), Err(Error::WorkBudgetExceeded { budget: 20 }));
    }
}
