//! Branching-matrix engine.
//!
//! A [`BranchingProcess`] names node classes by [`ClassKey`] and reports the
//! multiset of child classes of any node in a class. The engine closes the
//! reachable class set breadth-first from the root, tabulates the branching
//! matrix `B` (`b[i][j]` = children in class `i` of a class-`j` node), and
//! reads generating functions off the resolvent `(I - B t)^{-1} e_1`.
//!
//! Any keying finer than true lineal isomorphism works, as long as equal
//! keys always produce equal child multisets.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactalg::{resolvent_column, RatFun};

pub const DEFAULT_STATE_LIMIT: usize = 10_000;

/// Depth to which every resolvent is cross-checked against power iteration.
const RESOLVENT_CHECK_DEPTH: usize = 8;

/// Canonical fingerprint naming a node class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassKey(Vec<u8>);

impl ClassKey {
    pub fn new(bytes: impl Into<Vec<u8>>) -> Self {
        ClassKey(bytes.into())
    }

    pub fn from_index(i: u64) -> Self {
        ClassKey(format!("#{i}").into_bytes())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ClassKey({})", String::from_utf8_lossy(&self.0))
    }
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", String::from_utf8_lossy(&self.0))
    }
}

/// Child classes of a node, with multiplicities. Keys may repeat.
pub type ChildMultiset = Vec<(ClassKey, u64)>;

/// A rooted tree described class-by-class.
///
/// Implementations may memoize behind `&mut self`; the engine only requires
/// `children` to be deterministic.
pub trait BranchingProcess {
    fn root(&mut self) -> Result<ClassKey>;

    fn children(&mut self, key: &ClassKey) -> Result<ChildMultiset>;

    fn label(&self, key: &ClassKey) -> String {
        key.to_string()
    }

    fn state_limit(&self) -> usize {
        DEFAULT_STATE_LIMIT
    }
}

/// A process given by an explicit table of child multisets.
#[derive(Clone, Debug)]
pub struct TableProcess {
    root: ClassKey,
    table: HashMap<ClassKey, ChildMultiset>,
    state_limit: usize,
}

impl TableProcess {
    pub fn new(root: ClassKey, table: HashMap<ClassKey, ChildMultiset>) -> Self {
        TableProcess { root, table, state_limit: DEFAULT_STATE_LIMIT }
    }

    /// Classes numbered `0..n`, root 0, with `counts[j]` listing
    /// `(child class, multiplicity)` for class `j`.
    pub fn from_counts(counts: &[Vec<(u64, u64)>]) -> Self {
        let table = counts
            .iter()
            .enumerate()
            .map(|(j, cs)| {
                let kids = cs.iter().map(|&(i, m)| (ClassKey::from_index(i), m)).collect();
                (ClassKey::from_index(j as u64), kids)
            })
            .collect();
        TableProcess::new(ClassKey::from_index(0), table)
    }

    pub fn with_state_limit(mut self, limit: usize) -> Self {
        self.state_limit = limit;
        self
    }
}

impl BranchingProcess for TableProcess {
    fn root(&mut self) -> Result<ClassKey> {
        Ok(self.root.clone())
    }

    fn children(&mut self, key: &ClassKey) -> Result<ChildMultiset> {
        Ok(self.table.get(key).cloned().unwrap_or_default())
    }

    fn state_limit(&self) -> usize {
        self.state_limit
    }
}

/// Square branching matrix over discovered classes; class 0 is the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingMatrix {
    keys: Vec<ClassKey>,
    labels: Vec<String>,
    b: Vec<Vec<u64>>,
}

impl BranchingMatrix {
    /// Wraps an explicit matrix; classes are keyed by index.
    pub fn from_matrix(b: Vec<Vec<u64>>) -> Self {
        let n = b.len();
        assert!(b.iter().all(|r| r.len() == n), "branching matrix must be square");
        let keys: Vec<ClassKey> = (0..n as u64).map(ClassKey::from_index).collect();
        let labels = keys.iter().map(ToString::to_string).collect();
        BranchingMatrix { keys, labels, b }
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    pub fn keys(&self) -> &[ClassKey] {
        &self.keys
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &[Vec<u64>] {
        &self.b
    }

    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.b[i][j]
    }

    pub fn index_of(&self, key: &ClassKey) -> Option<usize> {
        self.keys.iter().position(|k| k == key)
    }

    /// Total children of a class-`j` node.
    pub fn column_sum(&self, j: usize) -> u64 {
        self.b.iter().map(|row| row[j]).sum()
    }

    /// Overwrites one entry; used to build negative-control fixtures.
    pub fn set_entry(&mut self, i: usize, j: usize, v: u64) {
        self.b[i][j] = v;
    }

    /// Class graph in Graphviz DOT: node per class, edge `j -> i` weighted
    /// by `b[i][j]`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph branching {\n");
        for (i, label) in self.labels.iter().enumerate() {
            let shape = if i == 0 { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  c{i} [label=\"{}\", shape={shape}];", label.replace('"', "'"));
        }
        for j in 0..self.len() {
            for i in 0..self.len() {
                if self.b[i][j] > 0 {
                    let _ = writeln!(out, "  c{j} -> c{i} [label=\"{}\"];", self.b[i][j]);
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// True when `other` equals `self` after some relabelling of classes
    /// that keeps the root at index 0.
    pub fn equivalent_to(&self, other: &[Vec<u64>]) -> bool {
        let n = self.len();
        if other.len() != n || other.iter().any(|r| r.len() != n) {
            return false;
        }
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        perm[0] = 0;
        used[0] = true;
        fn search(a: &[Vec<u64>], b: &[Vec<u64>], perm: &mut [usize], used: &mut [bool], k: usize) -> bool {
            let n = a.len();
            if k == n {
                return (0..n).all(|i| (0..n).all(|j| a[i][j] == b[perm[i]][perm[j]]));
            }
            for c in 0..n {
                if used[c] || a[k][k] != b[c][c] {
                    continue;
                }
                let consistent = (0..k).all(|j| a[k][j] == b[c][perm[j]] && a[j][k] == b[perm[j]][c]);
                if !consistent {
                    continue;
                }
                perm[k] = c;
                used[c] = true;
                if search(a, b, perm, used, k + 1) {
                    return true;
                }
                used[c] = false;
            }
            false
        }
        n == 0 || search(&self.b, other, &mut perm, &mut used, 1)
    }
}

fn merge(children: ChildMultiset) -> Vec<(ClassKey, u64)> {
    let mut out: Vec<(ClassKey, u64)> = Vec::new();
    for (k, m) in children {
        if m == 0 {
            continue;
        }
        match out.iter_mut().find(|(kk, _)| *kk == k) {
            Some(slot) => slot.1 += m,
            None => out.push((k, m)),
        }
    }
    out
}

/// Breadth-first closure of the class set reachable from the root.
pub fn build_branching<P: BranchingProcess + ?Sized>(p: &mut P) -> Result<BranchingMatrix> {
    let limit = p.state_limit();
    let root = p.root()?;
    let mut keys = vec![root.clone()];
    let mut index: HashMap<ClassKey, usize> = HashMap::from([(root, 0)]);
    let mut columns: Vec<Vec<(usize, u64)>> = Vec::new();
    let mut j = 0;
    while j < keys.len() {
        let kids = merge(p.children(&keys[j])?);
        let mut col = Vec::with_capacity(kids.len());
        for (k, m) in kids {
            let i = match index.get(&k) {
                Some(&i) => i,
                None => {
                    if keys.len() >= limit {
                        return Err(Error::StateExplosion { limit });
                    }
                    keys.push(k.clone());
                    index.insert(k, keys.len() - 1);
                    keys.len() - 1
                }
            };
            col.push((i, m));
        }
        columns.push(col);
        j += 1;
    }
    let n = keys.len();
    let mut b = vec![vec![0u64; n]; n];
    for (j, col) in columns.into_iter().enumerate() {
        for (i, m) in col {
            b[i][j] += m;
        }
    }
    let labels = keys.iter().map(|k| p.label(k)).collect();
    Ok(BranchingMatrix { keys, labels, b })
}

/// Generating functions of every class, in class order.
pub fn gf_classes(bm: &BranchingMatrix) -> Result<Vec<RatFun>> {
    resolvent_column(bm.matrix(), RESOLVENT_CHECK_DEPTH)
}

/// Generating function of class-`i` node counts (0-based, root = 0).
pub fn gf_class(bm: &BranchingMatrix, i: usize) -> Result<RatFun> {
    if i >= bm.len() {
        return Err(Error::IndexOutOfRange { index: i, len: bm.len() });
    }
    Ok(gf_classes(bm)?.swap_remove(i))
}

/// Generating function of total node counts per level.
pub fn gf_total(bm: &BranchingMatrix) -> Result<RatFun> {
    Ok(gf_classes(bm)?.into_iter().sum())
}

/// Exact node counts per level, per class, by iterating child multisets
/// directly through the process (no matrix is formed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelCounts {
    /// Classes in order of first appearance.
    pub keys: Vec<ClassKey>,
    /// `per_class[n][i]` = nodes of class `keys[i]` at depth `n`.
    pub per_class: Vec<Vec<BigInt>>,
    pub totals: Vec<BigInt>,
}

impl LevelCounts {
    pub fn class_series(&self, key: &ClassKey) -> Option<Vec<BigInt>> {
        let i = self.keys.iter().position(|k| k == key)?;
        Some(self.per_class.iter().map(|row| row.get(i).cloned().unwrap_or_default()).collect())
    }
}

pub fn bfs_level_counts<P: BranchingProcess + ?Sized>(p: &mut P, depth: usize) -> Result<LevelCounts> {
    let limit = p.state_limit();
    let root = p.root()?;
    let mut keys = vec![root.clone()];
    let mut seen: HashMap<ClassKey, usize> = HashMap::from([(root, 0)]);
    let mut level: HashMap<usize, BigInt> = HashMap::from([(0, BigInt::from(1))]);
    let mut per_class = Vec::with_capacity(depth + 1);
    let mut totals = Vec::with_capacity(depth + 1);
    let mut child_cache: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for n in 0..=depth {
        let mut row = vec![BigInt::from(0); keys.len()];
        for (&i, c) in &level {
            row[i] = c.clone();
        }
        totals.push(row.iter().sum());
        per_class.push(row);
        if n == depth {
            break;
        }
        let mut next: HashMap<usize, BigInt> = HashMap::new();
        let mut current: Vec<(usize, BigInt)> = level.into_iter().collect();
        current.sort_by_key(|(i, _)| *i);
        for (j, count) in current {
            if let Entry::Vacant(slot) = child_cache.entry(j) {
                let mut resolved = Vec::new();
                for (k, m) in p.children(&keys[j].clone())? {
                    let i = match seen.get(&k) {
                        Some(&i) => i,
                        None => {
                            if keys.len() >= limit {
                                return Err(Error::StateExplosion { limit });
                            }
                            keys.push(k.clone());
                            seen.insert(k, keys.len() - 1);
                            keys.len() - 1
                        }
                    };
                    resolved.push((i, m));
                }
                slot.insert(resolved);
            }
            for &(i, m) in &child_cache[&j] {
                *next.entry(i).or_default() += &count * BigInt::from(m);
            }
        }
        level = next;
    }
    let width = keys.len();
    for row in &mut per_class {
        row.resize(width, BigInt::from(0));
    }
    Ok(LevelCounts { keys, per_class, totals })
}

/// Compares the expansion of `gf_total(bm)` against independently iterated
/// level totals.
pub fn verify_matrix(bm: &BranchingMatrix, counts: &LevelCounts) -> Result<bool> {
    let depth = counts.totals.len().saturating_sub(1);
    let total = match gf_total(bm) {
        Ok(f) => f,
        Err(Error::ResolventMismatch { .. }) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(total.series(depth)? == counts.totals)
}

/// Resolvent path and level-iteration path agree up to `depth`.
pub fn verify_tree<P: BranchingProcess + ?Sized>(p: &mut P, depth: usize) -> Result<bool> {
    let bm = build_branching(p)?;
    let counts = bfs_level_counts(p, depth)?;
    verify_matrix(&bm, &counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Poly;

    fn two_class() -> TableProcess {
        TableProcess::from_counts(&[vec![(0, 1), (1, 2)], vec![(1, 2)]])
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn two_class_matrix_and_gfs() {
        let bm = build_branching(&mut two_class()).unwrap();
        assert_eq!(bm.matrix(), &[vec![1, 0], vec![2, 2]]);
        let g2 = gf_class(&bm, 1).unwrap();
        assert_eq!(g2, RatFun::new(Poly::from_i64s(&[0, 2]), Poly::from_i64s(&[1, -3, 2])).unwrap());
        let total = gf_total(&bm).unwrap();
        assert_eq!(total, RatFun::new(Poly::one(), Poly::from_i64s(&[1, -3, 2])).unwrap());
        assert_eq!(gf_class(&bm, 2), Err(Error::IndexOutOfRange { index: 2, len: 2 }));
    }

    #[test]
    fn level_counts() {
        let counts = bfs_level_counts(&mut two_class(), 3).unwrap();
        assert_eq!(counts.totals, ints(&[1, 3, 7, 15]));
        let zero = bfs_level_counts(&mut two_class(), 0).unwrap();
        assert_eq!(zero.totals, ints(&[1]));
        assert_eq!(zero.per_class, vec![ints(&[1])]);
        assert!(verify_tree(&mut two_class(), 6).unwrap());
    }

    #[test]
    fn childless_root() {
        let mut p = TableProcess::from_counts(&[vec![]]);
        let bm = build_branching(&mut p).unwrap();
        assert_eq!(bm.matrix(), &[vec![0]]);
        assert_eq!(gf_total(&bm).unwrap(), RatFun::one());
        assert_eq!(gf_class(&bm, 0).unwrap(), RatFun::one());
    }

    #[test]
    fn corrupted_matrix_fails_verification() {
        let mut p = two_class();
        let mut bm = build_branching(&mut p).unwrap();
        let counts = bfs_level_counts(&mut p, 6).unwrap();
        assert!(verify_matrix(&bm, &counts).unwrap());
        bm.set_entry(1, 1, 3);
        assert!(!verify_matrix(&bm, &counts).unwrap());
    }

    #[test]
    fn state_limit_enforced() {
        struct Counter;
        impl BranchingProcess for Counter {
            fn root(&mut self) -> Result<ClassKey> {
                Ok(ClassKey::from_index(0))
            }
            fn children(&mut self, key: &ClassKey) -> Result<ChildMultiset> {
                let i: u64 = key.to_string()[1..].parse().unwrap();
                Ok(vec![(ClassKey::from_index(i + 1), 1)])
            }
            fn state_limit(&self) -> usize {
                50
            }
        }
        assert_eq!(build_branching(&mut Counter), Err(Error::StateExplosion { limit: 50 }));
        assert_eq!(
            bfs_level_counts(&mut Counter, 100).map(|c| c.totals.len()),
            Err(Error::StateExplosion { limit: 50 })
        );
    }

    #[test]
    fn dot_output_lists_edges() {
        let bm = build_branching(&mut two_class()).unwrap();
        let dot = bm.to_dot();
        assert!(dot.contains("c0 -> c1 [label=\"2\"]"));
        assert!(dot.contains("c1 -> c1 [label=\"2\"]"));
        assert!(dot.starts_with("digraph"));
    }

    #[test]
    fn equivalence_up_to_relabelling() {
        let bm = BranchingMatrix::from_matrix(vec![vec![1, 0, 0], vec![1, 2, 0], vec![1, 0, 3]]);
        assert!(bm.equivalent_to(&[vec![1, 0, 0], vec![1, 3, 0], vec![1, 0, 2]]));
        assert!(!bm.equivalent_to(&[vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 3]]));
    }
}
