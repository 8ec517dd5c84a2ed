use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{0, .., d-1}` stored as its image array.
///
/// Ordering is lexicographic on the image array, which fixes the choice of
/// class representatives throughout the crate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u16>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm { images: (0..degree as u16).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            if x >= d || seen[x] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Perm { images: images.into_iter().map(|x| x as u16).collect() })
    }

    /// Builds from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x >= degree || touched[x] {
                    return Err(Error::InvalidPermutation(format!("bad cycle {cycle:?}")));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(images)
    }

    /// Parses 1-based cycle notation such as `"(1,2)(3,4)"`; `"()"` is the
    /// identity. Commas may be omitted when every point is a single digit.
    pub fn parse(s: &str, degree: usize) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let open =
                rest.strip_prefix('(').ok_or_else(|| Error::InvalidPermutation(format!("expected '(' in {s:?}")))?;
            let close = open.find(')').ok_or_else(|| Error::InvalidPermutation(format!("unclosed cycle in {s:?}")))?;
            let body = open[..close].trim();
            rest = open[close + 1..].trim_start();
            if body.is_empty() {
                continue;
            }
            let points: Vec<&str> = if body.contains(',') {
                body.split(',').map(str::trim).collect()
            } else if body.contains(' ') {
                body.split_whitespace().collect()
            } else {
                body.char_indices().map(|(i, c)| &body[i..i + c.len_utf8()]).collect()
            };
            let cycle = points
                .into_iter()
                .map(|p| match p.parse::<usize>() {
                    Ok(x) if x >= 1 => Ok(x - 1),
                    _ => Err(Error::InvalidPermutation(format!("bad point {p:?} in {s:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            cycles.push(cycle);
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Perm::from_cycles(degree, &refs)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// Composition `self * other`: apply `other` first, then `self`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm { images: inv }
    }

    /// `g * self * g^{-1}`
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.mul(self).mul(&g.inverse())
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Disjoint cycles, each starting at its least point, cycles ordered by
    /// least point. Fixed points are omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, weakly decreasing.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(Vec::len).fold(1, num_integer::lcm)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self)
    }
}

/// Parses cycle notation with the degree inferred from the largest point.
impl FromStr for Perm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Perm> {
        let max = s
            .split(|c: char| !c.is_ascii_digit())
            .filter(|t| !t.is_empty())
            .flat_map(|t| {
                if s.contains(',') || s.contains(' ') {
                    vec![t.parse::<usize>().unwrap_or(0)]
                } else {
                    t.chars().map(|c| c.to_digit(10).unwrap_or(0) as usize).collect()
                }
            })
            .max()
            .unwrap_or(0);
        Perm::parse(s, max)
    }
}
