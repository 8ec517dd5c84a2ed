//! Point configurations in a finite set and vector configurations in
//! `F_q^m`: Stirling and Bell numbers, Gaussian binomials and their
//! Bell analog, each tied to a two-diagonal branching process.
//!
//! Classical tables: Bell numbers are OEIS A000110, Stirling numbers of the
//! second kind A008277.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::RatFun;
use crate::matalg::{Fq, MatRing};
use crate::orbit::Action;
use crate::treegen::{self, BranchingProcess, ChildMultiset, ClassKey};

/// Number of distinct points (point case) or span dimension (vector case).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypeIndex(pub usize);

impl TypeIndex {
    pub fn key(self) -> ClassKey {
        ClassKey::new(format!("type {}", self.0))
    }

    pub fn from_key(key: &ClassKey) -> Option<TypeIndex> {
        std::str::from_utf8(key.as_bytes()).ok()?.strip_prefix("type ")?.parse().ok().map(TypeIndex)
    }
}

impl fmt::Display for TypeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type {}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfigKind {
    /// `S_m` acting on `{1..m}`.
    Point,
    /// `GL_m(F_q)` acting on `F_q^m`.
    Vector { q: u64 },
}

/// Chain process on types `0..=m`: a type-`i` node has `d_i` children of
/// type `i` and one of type `i + 1` while `i < m`.
#[derive(Clone, Debug)]
pub struct ConfigProcess {
    kind: ConfigKind,
    m: usize,
}

impl ConfigProcess {
    pub fn kind(&self) -> ConfigKind {
        self.kind
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Children of type `i` under a node of type `i`.
    pub fn stay(&self, i: usize) -> u64 {
        match self.kind {
            ConfigKind::Point => i as u64,
            ConfigKind::Vector { q } => q.pow(i as u32),
        }
    }
}

impl BranchingProcess for ConfigProcess {
    fn root(&mut self) -> Result<ClassKey> {
        Ok(TypeIndex(0).key())
    }

    fn children(&mut self, key: &ClassKey) -> Result<ChildMultiset> {
        let i = TypeIndex::from_key(key).expect("type key").0;
        let mut kids = Vec::with_capacity(2);
        if self.stay(i) > 0 {
            kids.push((TypeIndex(i).key(), self.stay(i)));
        }
        if i < self.m {
            kids.push((TypeIndex(i + 1).key(), 1));
        }
        Ok(kids)
    }

    fn label(&self, key: &ClassKey) -> String {
        let i = TypeIndex::from_key(key).map_or(0, |t| t.0);
        match self.kind {
            ConfigKind::Point => format!("type {i} ({i} distinct points)"),
            ConfigKind::Vector { .. } => format!("type {i} (span of dimension {i})"),
        }
    }
}

pub fn point_config_process(m: usize) -> ConfigProcess {
    ConfigProcess { kind: ConfigKind::Point, m }
}

pub fn vector_config_process(q: u64, m: usize) -> Result<ConfigProcess> {
    Fq::new(q)?;
    Ok(ConfigProcess { kind: ConfigKind::Vector { q }, m })
}

/// Generating function of `n`-point configurations in an `m`-set, from the
/// branching process.
pub fn point_config_gf(m: usize) -> Result<RatFun> {
    treegen::gf_total(&treegen::build_branching(&mut point_config_process(m))?)
}

/// Generating function of `n`-vector configurations in `F_q^m`.
pub fn vector_config_gf(q: u64, m: usize) -> Result<RatFun> {
    treegen::gf_total(&treegen::build_branching(&mut vector_config_process(q, m)?)?)
}

/// `t^i prod_{r=1..i} 1/(1 - r t)`, the series of `S(n, i)`.
pub fn point_type_gf(i: usize) -> RatFun {
    (1..=i as u64).fold(RatFun::one(), |acc, r| &acc * &RatFun::geometric(r.into())).shift(i)
}

/// `t^i prod_{r=0..i} 1/(1 - q^r t)`, the series of the Gaussian binomials
/// `[n choose i]_q`.
pub fn vector_type_gf(q: u64, i: usize) -> RatFun {
    (0..=i as u32).fold(RatFun::one(), |acc, r| &acc * &RatFun::geometric(BigInt::from(q).pow(r))).shift(i)
}

/// `S(n, k)` for `0 <= n, k <= n_max` by `S(n,k) = S(n-1,k-1) + k S(n-1,k)`.
pub fn stirling2_table(n_max: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); n_max + 1]; n_max + 1];
    t[0][0] = BigInt::one();
    for n in 1..=n_max {
        for k in 1..=n {
            t[n][k] = &t[n - 1][k - 1] + BigInt::from(k) * &t[n - 1][k];
        }
    }
    t
}

pub fn stirling2(n: usize, i: usize) -> BigInt {
    if i > n {
        return BigInt::zero();
    }
    stirling2_table(n)[n][i].clone()
}

pub fn bell(n: usize) -> BigInt {
    stirling2_table(n)[n].iter().sum()
}

/// Gaussian binomials `[n choose i]_q` for `n <= n_max`, by
/// `[n, i] = q^{n-i} [n-1, i-1] + [n-1, i]`. Any integer `q >= 1` is allowed.
pub fn gaussian_table(n_max: usize, q: u64) -> Vec<Vec<BigInt>> {
    let q = BigInt::from(q);
    let mut t = vec![vec![BigInt::zero(); n_max + 1]; n_max + 1];
    for n in 0..=n_max {
        t[n][0] = BigInt::one();
        for i in 1..=n {
            t[n][i] = q.pow((n - i) as u32) * &t[n - 1][i - 1] + &t[n - 1][i];
        }
    }
    t
}

pub fn gaussian_binom(n: usize, i: usize, q: u64) -> BigInt {
    if i > n {
        return BigInt::zero();
    }
    gaussian_table(n, q)[n][i].clone()
}

/// `S_q(n, i)` for `i = 0..=n`: type-`i` level-`n` counts of the vector
/// configuration chain, iterated through the branching process with `m = n`.
/// `q` may be any integer `>= 1`.
pub fn q_stirling_row(n: usize, q: u64) -> Result<Vec<BigInt>> {
    if q == 0 {
        return Err(Error::InvalidFieldOrder(q));
    }
    let mut p = ConfigProcess { kind: ConfigKind::Vector { q }, m: n };
    let counts = treegen::bfs_level_counts(&mut p, n)?;
    Ok((0..=n).map(|i| counts.class_series(&TypeIndex(i).key()).map_or_else(BigInt::zero, |s| s[n].clone())).collect())
}

pub fn q_stirling(n: usize, i: usize, q: u64) -> Result<BigInt> {
    Ok(q_stirling_row(n, q)?.get(i).cloned().unwrap_or_default())
}

/// `B_{q,n} = sum_i S_q(n, i)`, the number of subspaces of `F_q^n`.
pub fn q_bell(n: usize, q: u64) -> Result<BigInt> {
    Ok(q_stirling_row(n, q)?.into_iter().sum())
}

/// Orbit counts split by type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigCounts {
    pub total: u64,
    /// `by_type[i]` for `i = 0..=m`.
    pub by_type: Vec<u64>,
}

fn permutations(m: usize) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = (0..m as u32).collect();
    let mut out = vec![cur.clone()];
    // lexicographic successor
    loop {
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

fn encode(v: &[u8], q: usize) -> u32 {
    v.iter().rev().fold(0, |acc, &x| acc * q as u32 + x as u32)
}

fn decode(mut code: u32, q: usize, dim: usize) -> Vec<u8> {
    (0..dim)
        .map(|_| {
            let d = (code % q as u32) as u8;
            code /= q as u32;
            d
        })
        .collect()
}

fn rank(f: &Fq, vs: &[Vec<u8>]) -> usize {
    // row reduction on a copy
    let mut rows: Vec<Vec<u8>> = vs.to_vec();
    let dim = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..rows.len()).find(|&k| rows[k][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][col]).expect("nonzero");
        let pivot: Vec<u8> = rows[r].iter().map(|&x| f.mul(inv, x)).collect();
        for row in rows.iter_mut().skip(r + 1) {
            let c = row[col];
            if c != 0 {
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

/// All vectors in the span, as sorted codes.
fn span(f: &Fq, vs: &[Vec<u8>], dim: usize) -> BTreeSet<u32> {
    let q = f.order();
    let mut set: Vec<Vec<u8>> = vec![vec![0; dim]];
    for v in vs {
        let mut next = HashSet::new();
        for s in &set {
            for c in 0..q as u8 {
                next.insert(s.iter().zip(v).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect::<Vec<u8>>());
            }
        }
        set = next.into_iter().collect();
    }
    set.iter().map(|v| encode(v, q)).collect()
}

/// Every subspace of `F_q^n` as its sorted set of vector codes, grown from
/// `{0}` by adjoining one vector at a time.
pub fn subspaces(q: u64, n: usize) -> Result<Vec<BTreeSet<u32>>> {
    let f = Fq::new(q)?;
    let qu = f.order();
    let total = (qu as u32).pow(n as u32);
    let zero: BTreeSet<u32> = BTreeSet::from([0]);
    let mut seen: HashSet<BTreeSet<u32>> = HashSet::from([zero.clone()]);
    let mut queue = vec![zero];
    let mut out = Vec::new();
    while let Some(s) = queue.pop() {
        for v in 0..total {
            if s.contains(&v) {
                continue;
            }
            let vv = decode(v, qu, n);
            let mut t: BTreeSet<u32> = BTreeSet::new();
            for &x in &s {
                let xv = decode(x, qu, n);
                for c in 0..qu as u8 {
                    t.insert(encode(&xv.iter().zip(&vv).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect::<Vec<_>>(), qu));
                }
            }
            if seen.insert(t.clone()) {
                queue.push(t);
            }
        }
        out.push(s);
    }
    out.sort();
    Ok(out)
}

/// `q^e` with `e = log_q |S|`.
fn log_q(size: usize, q: usize) -> usize {
    let mut d = 0;
    let mut s = 1;
    while s < size {
        s *= q;
        d += 1;
    }
    d
}

struct VectorAction {
    f: Fq,
    m: usize,
    action: Action,
}

fn vector_action(q: u64, m: usize, budget: u64) -> Result<VectorAction> {
    let ring = MatRing::new(q, m)?;
    if ring.size() > budget {
        return Err(Error::WorkBudgetExceeded { budget });
    }
    let f = ring.field().clone();
    let qu = f.order();
    let points = qu.pow(m as u32);
    let vectors: Vec<Vec<u8>> = (0..points as u32).map(|c| decode(c, qu, m)).collect();
    let perms = ring
        .elements()
        .into_iter()
        .filter(|g| ring.det(g) != 0)
        .map(|g| {
            vectors
                .iter()
                .map(|v| {
                    let gv: Vec<u8> = (0..m)
                        .map(|i| (0..m).fold(0, |acc, j| f.add(acc, f.mul(ring.entry(&g, i, j), v[j]))))
                        .collect();
                    encode(&gv, qu)
                })
                .collect()
        })
        .collect();
    Ok(VectorAction { f, m, action: Action::new(points, perms) })
}

/// Direct orbit enumeration for `S_m` on `{1..m}^n` or `GL_m(F_q)` on
/// `(F_q^m)^n`, split by type.
pub fn config_orbit_oracle(kind: ConfigKind, m: usize, n: usize, budget: u64) -> Result<ConfigCounts> {
    let mut by_type = vec![0u64; m + 1];
    let total = match kind {
        ConfigKind::Point => {
            let fact: u64 = (1..=m as u64).try_fold(1u64, |a, k| a.checked_mul(k)).unwrap_or(u64::MAX);
            if fact.saturating_mul(m as u64) > budget {
                return Err(Error::WorkBudgetExceeded { budget });
            }
            let action = Action::new(m, permutations(m));
            let all = |_: &[u32]| (0..m as u32).collect::<Vec<u32>>();
            action.canonical_tuples(
                n,
                all,
                |t| {
                    let distinct: HashSet<&u32> = t.iter().collect();
                    by_type[distinct.len()] += 1;
                },
                budget,
            )?
        }
        ConfigKind::Vector { q } => {
            let va = vector_action(q, m, budget)?;
            let points = va.action.points() as u32;
            let all = |_: &[u32]| (0..points).collect::<Vec<u32>>();
            let qu = va.f.order();
            va.action.canonical_tuples(
                n,
                all,
                |t| {
                    let vs: Vec<Vec<u8>> = t.iter().map(|&c| decode(c, qu, va.m)).collect();
                    by_type[rank(&va.f, &vs)] += 1;
                },
                budget,
            )?
        }
    };
    Ok(ConfigCounts { total, by_type })
}

/// Checks that sending a tuple of `n` vectors in `F_q^m` to the row space of
/// its `m x n` coordinate matrix is a bijection from configurations onto the
/// subspaces of `F_q^n` of dimension at most `m`, matching type with
/// dimension.
pub fn row_space_bijection_check(q: u64, m: usize, n: usize, budget: u64) -> Result<bool> {
    let va = vector_action(q, m, budget)?;
    let (f, qu) = (&va.f, va.f.order());
    let points = va.action.points() as u32;
    let mut images: BTreeMap<BTreeSet<u32>, u64> = BTreeMap::new();
    let mut types_match = true;
    va.action.canonical_tuples(
        n,
        |_: &[u32]| (0..points).collect(),
        |t| {
            let cols: Vec<Vec<u8>> = t.iter().map(|&c| decode(c, qu, m)).collect();
            let rows: Vec<Vec<u8>> = (0..m).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
            let rs = span(f, &rows, n);
            types_match &= log_q(rs.len(), qu) == rank(f, &cols);
            *images.entry(rs).or_default() += 1;
        },
        budget,
    )?;
    let injective = images.values().all(|&c| c == 1);
    let expected: BTreeSet<BTreeSet<u32>> = subspaces(q, n)?.into_iter().filter(|s| log_q(s.len(), qu) <= m).collect();
    let onto = images.keys().cloned().collect::<BTreeSet<_>>() == expected;
    Ok(types_match && injective && onto)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit::DEFAULT_WORK_BUDGET;

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn point_chain_matrix() {
        let bm = treegen::build_branching(&mut point_config_process(3)).unwrap();
        assert_eq!(bm.matrix(), &[vec![0, 0, 0, 0], vec![1, 1, 0, 0], vec![0, 1, 2, 0], vec![0, 0, 1, 3]]);
        let empty = treegen::build_branching(&mut point_config_process(0)).unwrap();
        assert_eq!(empty.matrix(), &[vec![0]]);
        assert_eq!(point_config_gf(0).unwrap(), RatFun::one());
    }

    #[test]
    fn vector_chain_matrix() {
        let bm = treegen::build_branching(&mut vector_config_process(2, 2).unwrap()).unwrap();
        assert_eq!(bm.matrix(), &[vec![1, 0, 0], vec![1, 2, 0], vec![0, 1, 4]]);
        assert_eq!(vector_config_gf(2, 1).unwrap(), RatFun::geometric(BigInt::from(2)));
        assert_eq!(vector_config_gf(5, 0).unwrap(), RatFun::geometric(BigInt::from(1)));
        assert!(vector_config_process(6, 2).is_err());
    }

    #[test]
    fn point_series() {
        assert_eq!(point_config_gf(1).unwrap(), RatFun::geometric(BigInt::from(1)));
        assert_eq!(point_config_gf(3).unwrap().series(5).unwrap(), ints(&[1, 1, 2, 5, 14, 41]));
    }

    #[test]
    fn stirling_and_bell() {
        assert_eq!(stirling2(4, 2), BigInt::from(7));
        assert_eq!(stirling2(2, 5), BigInt::zero());
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(bell(0), BigInt::one());
        assert_eq!(bell(3), BigInt::from(5));
        assert_eq!(bell(5), BigInt::from(52));
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binom(2, 1, 2), BigInt::from(3));
        assert_eq!(gaussian_binom(4, 2, 2), BigInt::from(35));
        assert_eq!(gaussian_binom(3, 4, 2), BigInt::zero());
        assert_eq!(gaussian_binom(5, 2, 1), BigInt::from(10));
        assert_eq!(q_stirling(3, 1, 2).unwrap(), BigInt::from(7));
        assert_eq!(q_stirling(4, 4, 3).unwrap(), BigInt::one());
        assert_eq!(q_stirling(2, 3, 3).unwrap(), BigInt::zero());
        assert_eq!(q_bell(0, 2).unwrap(), BigInt::one());
        assert_eq!(q_bell(2, 2).unwrap(), BigInt::from(5));
        assert_eq!(q_bell(3, 2).unwrap(), BigInt::from(16));
    }

    #[test]
    fn subspace_enumeration() {
        let counts = |q, n| {
            let mut c = vec![0; n + 1];
            for s in subspaces(q, n).unwrap() {
                c[log_q(s.len(), q as usize)] += 1;
            }
            c
        };
        assert_eq!(counts(2, 2), vec![1, 3, 1]);
        assert_eq!(counts(2, 4), vec![1, 15, 35, 15, 1]);
        assert_eq!(counts(3, 2), vec![1, 4, 1]);
    }

    #[test]
    fn oracle_splits() {
        let pts = config_orbit_oracle(ConfigKind::Point, 3, 3, DEFAULT_WORK_BUDGET).unwrap();
        assert_eq!(pts, ConfigCounts { total: 5, by_type: vec![0, 1, 3, 1] });
        let vs = config_orbit_oracle(ConfigKind::Vector { q: 2 }, 2, 2, DEFAULT_WORK_BUDGET).unwrap();
        assert_eq!(vs.total, 5);
        assert_eq!(vs.by_type, vec![1, 3, 1]);
        for kind in [ConfigKind::Point, ConfigKind::Vector { q: 3 }] {
            assert_eq!(config_orbit_oracle(kind, 2, 0, DEFAULT_WORK_BUDGET).unwrap().total, 1);
        }
        assert!(config_orbit_oracle(ConfigKind::Point, 4, 6, 10).is_err());
    }

    #[test]
    fn row_space_examples() {
        for (m, n) in [(2, 2), (3, 2), (1, 3)] {
            assert!(row_space_bijection_check(2, m, n, DEFAULT_WORK_BUDGET).unwrap());
        }
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(0), vec![Vec::<u32>::new()]);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }

    #[test]
    fn type_keys_round_trip() {
        assert_eq!(TypeIndex::from_key(&TypeIndex(7).key()), Some(TypeIndex(7)));
        assert_eq!(TypeIndex::from_key(&ClassKey::new("x")), None);
    }
}
