//! Standard permutation groups.

use super::group::{PermGroup, MAX_ORDER};
use super::perm::Perm;
use crate::error::{Error, Result};

fn cycle_on(degree: usize, points: impl IntoIterator<Item = usize>) -> Perm {
    let pts: Vec<usize> = points.into_iter().collect();
    Perm::from_cycles(degree, &[&pts]).expect("distinct points")
}

/// Fails early with the true order when `n` exceeds [`MAX_ORDER`].
fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        return Err(Error::OrderLimitExceeded { order: n, limit: MAX_ORDER });
    }
    Ok(())
}

fn factorial(m: usize) -> usize {
    (1..=m).try_fold(1usize, |a, k| a.checked_mul(k)).unwrap_or(usize::MAX)
}

/// `S_m` on `m` points.
pub fn symmetric(m: usize) -> Result<PermGroup> {
    check_order(factorial(m))?;
    let d = m.max(1);
    let mut gens = Vec::new();
    if m >= 2 {
        gens.push(cycle_on(d, [0, 1]));
    }
    if m >= 3 {
        gens.push(cycle_on(d, 0..m));
    }
    PermGroup::from_generators(d, gens)
}

/// `A_m` on `m` points.
pub fn alternating(m: usize) -> Result<PermGroup> {
    check_order(factorial(m) / 2)?;
    let d = m.max(1);
    let gens = (2..m).map(|k| cycle_on(d, [0, 1, k])).collect();
    PermGroup::from_generators(d, gens)
}

/// Cyclic group of order `k`, regular on `k` points.
pub fn cyclic(k: usize) -> Result<PermGroup> {
    check_order(k)?;
    let d = k.max(1);
    let gens = if k >= 2 { vec![cycle_on(d, 0..k)] } else { vec![] };
    PermGroup::from_generators(d, gens)
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> Result<PermGroup> {
    check_order(n.saturating_mul(2))?;
    match n {
        0 => Err(Error::Parse("dihedral group needs n >= 1".into())),
        1 => cyclic(2),
        2 => direct_product(&cyclic(2)?, &cyclic(2)?),
        _ => {
            let rot = cycle_on(n, 0..n);
            let refl = Perm::from_images((0..n).map(|i| (n - i) % n).collect())?;
            PermGroup::from_generators(n, vec![rot, refl])
        }
    }
}

fn embed(p: &Perm, offset: usize, degree: usize) -> Perm {
    let mut images: Vec<usize> = (0..degree).collect();
    for i in 0..p.degree() {
        images[offset + i] = offset + p.apply(i);
    }
    Perm::from_images(images).expect("shifted bijection")
}

/// Direct product acting on the disjoint union of the two point sets.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    let d = a.degree() + b.degree();
    let gens = a
        .generators()
        .iter()
        .map(|g| embed(g, 0, d))
        .chain(b.generators().iter().map(|g| embed(g, a.degree(), d)))
        .collect();
    PermGroup::from_generators(d, gens)
}

/// Wreath product `base ≀ S_k` in its imprimitive action on `k` blocks.
pub fn wreath_with_symmetric(base: &PermGroup, k: usize) -> Result<PermGroup> {
    let b = base.degree();
    let d = b * k;
    let mut gens: Vec<Perm> = base.generators().iter().map(|g| embed(g, 0, d)).collect();
    let block_perm = |sigma: &Perm| {
        let images = (0..d).map(|x| sigma.apply(x / b) * b + x % b).collect();
        Perm::from_images(images).expect("block permutation")
    };
    for s in symmetric(k)?.generators() {
        gens.push(block_perm(s));
    }
    PermGroup::from_generators(d, gens)
}

/// Parses names like `S4`, `A5`, `C6`, `D4` (order 8), `C2xS3`, `C2wrS2`.
pub fn by_name(name: &str) -> Result<PermGroup> {
    let name = name.trim();
    if let Some((l, r)) = name.split_once("wr") {
        let k = r
            .strip_prefix('S')
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("wreath top group must be S_k in {name:?}")))?;
        return wreath_with_symmetric(&by_name(l)?, k);
    }
    if name.contains(['x', '×']) {
        let mut acc: Option<PermGroup> = None;
        for part in name.split(['x', '×']) {
            let g = by_name(part)?;
            acc = Some(match acc {
                None => g,
                Some(a) => direct_product(&a, &g)?,
            });
        }
        return acc.ok_or_else(|| Error::Parse("empty product".into()));
    }
    let bad = || Error::Parse(format!("unknown group name {name:?}"));
    let mut chars = name.chars();
    let family = chars.next().ok_or_else(bad)?;
    let n: usize = chars.as_str().parse().map_err(|_| bad())?;
    match family {
        'S' if n >= 1 => symmetric(n),
        'A' if n >= 1 => alternating(n),
        'C' if n >= 1 => cyclic(n),
        'D' if n >= 1 => dihedral(n),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (name, order) in [
            ("S1", 1),
            ("S2", 2),
            ("S5", 120),
            ("A4", 12),
            ("C6", 6),
            ("D4", 8),
            ("D6", 12),
            ("C2xS3", 12),
            ("C2wrS2", 8),
            ("C3xC2", 6),
        ] {
            assert_eq!(by_name(name).unwrap().order(), order, "{name}");
        }
        assert!(by_name("Q8").is_err());
        assert!(by_name("S").is_err());
    }

    #[test]
    fn abelian_flags() {
        assert!(by_name("C2xC2").unwrap().is_abelian());
        assert!(!by_name("D4").unwrap().is_abelian());
        assert!(!by_name("C2wrS2").unwrap().is_abelian());
    }
}
