use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use super::mat::{Echelon, Mat, MatRing};
use crate::error::{Error, Result};

/// A unital subring of `M_m(F_q)` closed under `F_q`-scaling, held as an
/// explicit sorted element set together with an `F_q`-basis.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    ring: Arc<MatRing>,
    elements: Vec<Mat>,
    index: HashMap<Mat, usize>,
    basis: Vec<Mat>,
}

impl Subalgebra {
    /// The whole of `M_m(F_q)`.
    pub fn full(ring: Arc<MatRing>) -> Self {
        let elements = ring.elements();
        Self::from_sorted(ring, elements)
    }

    fn from_sorted(ring: Arc<MatRing>, elements: Vec<Mat>) -> Self {
        let mut ech = Echelon::new(ring.field());
        let mut basis = Vec::new();
        for x in &elements {
            if ech.insert(x.entries()) {
                basis.push(x.clone());
            }
        }
        let index = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let sub = Subalgebra { ring, elements, index, basis };
        debug_assert_eq!((sub.ring.field().order() as u64).pow(sub.basis.len() as u32), sub.elements.len() as u64);
        sub
    }

    /// The subalgebra spanned by the given elements and the identity, closed
    /// under multiplication.
    pub fn generated_by(ring: Arc<MatRing>, gens: &[Mat]) -> Self {
        let f = ring.field();
        let mut ech = Echelon::new(f);
        let mut basis: Vec<Mat> = Vec::new();
        let mut queue = vec![ring.identity()];
        queue.extend(gens.iter().cloned());
        while let Some(x) = queue.pop() {
            if !ech.insert(x.entries()) {
                continue;
            }
            for b in basis.iter().chain(std::iter::once(&x)) {
                queue.push(ring.mul(b, &x));
                queue.push(ring.mul(&x, b));
            }
            basis.push(x);
        }
        let mut elements = vec![ring.zero()];
        for b in &basis {
            let mut next = Vec::with_capacity(elements.len() * f.order());
            for c in 0..f.order() as u8 {
                let cb = ring.scale(c, b);
                next.extend(elements.iter().map(|e| ring.add(e, &cb)));
            }
            elements = next;
        }
        elements.sort();
        Self::from_sorted(ring, elements)
    }

    pub fn ring(&self) -> &MatRing {
        &self.ring
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, a: &Mat) -> bool {
        self.index.contains_key(a)
    }

    pub fn index_of(&self, a: &Mat) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn is_commutative(&self) -> bool {
        self.basis.iter().enumerate().all(|(i, a)| self.basis[i + 1..].iter().all(|b| self.ring.commute(a, b)))
    }

    /// Elements commuting with every basis element.
    pub fn center_size(&self) -> usize {
        self.elements.iter().filter(|x| self.basis.iter().all(|b| self.ring.commute(x, b))).count()
    }

    /// `Z_Z(a) = {b in Z : ab = ba}`.
    pub fn centralizer(&self, a: &Mat) -> Result<Subalgebra> {
        if !self.contains(a) {
            return Err(Error::ElementNotInAlgebra);
        }
        let elements = self.elements.iter().filter(|b| self.ring.commute(a, b)).cloned().collect();
        Ok(Self::from_sorted(self.ring.clone(), elements))
    }

    /// Units with their inverses. Each inverse is checked to lie in `Z`.
    pub fn units(&self) -> Vec<(Mat, Mat)> {
        self.elements
            .iter()
            .filter_map(|x| {
                let inv = self.ring.inverse(x)?;
                assert!(self.contains(&inv), "inverse of a unit left the subalgebra");
                Some((x.clone(), inv))
            })
            .collect()
    }

    /// Orbits of the unit group acting by conjugation, each given by its least
    /// element and size, in ascending order of representative.
    pub fn unit_conjugacy_classes(&self) -> Vec<(Mat, usize)> {
        let units = self.units();
        let mut seen: HashSet<usize> = HashSet::new();
        let mut out = Vec::new();
        for (i, x) in self.elements.iter().enumerate() {
            if seen.contains(&i) {
                continue;
            }
            let mut orbit = 0;
            for (u, uinv) in &units {
                let y = self.ring.mul(&self.ring.mul(u, x), uinv);
                let j = self.index[&y];
                if seen.insert(j) {
                    orbit += 1;
                }
            }
            out.push((x.clone(), orbit));
        }
        out
    }

    /// `gZg^{-1}` for an invertible `g` of the ambient ring.
    pub fn conjugate(&self, g: &Mat) -> Option<Subalgebra> {
        let ginv = self.ring.inverse(g)?;
        let mut elements: Vec<Mat> = self.elements.iter().map(|x| self.ring.mul(&self.ring.mul(g, x), &ginv)).collect();
        elements.sort();
        Some(Self::from_sorted(self.ring.clone(), elements))
    }
}

pub fn centralizer_ring(z: &Subalgebra, a: &Mat) -> Result<Subalgebra> {
    z.centralizer(a)
}

pub fn unit_conjugacy_classes(z: &Subalgebra) -> Vec<(Mat, usize)> {
    z.unit_conjugacy_classes()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m2f2() -> (Arc<MatRing>, Subalgebra) {
        let r = Arc::new(MatRing::new(2, 2).unwrap());
        let z = Subalgebra::full(r.clone());
        (r, z)
    }

    #[test]
    fn centralizers_in_m2f2() {
        let (r, z) = m2f2();
        assert_eq!(z.dim(), 4);
        assert_eq!(z.centralizer(&r.identity()).unwrap().len(), 16);
        let d = r.from_rows(&[vec![1, 0], vec![0, 0]]).unwrap();
        let cd = z.centralizer(&d).unwrap();
        assert_eq!(cd.len(), 4);
        assert!(cd.elements().iter().all(|x| r.entry(x, 0, 1) == 0 && r.entry(x, 1, 0) == 0));
        let n = r.from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        let cn = z.centralizer(&n).unwrap();
        let mut polys = vec![r.zero(), r.identity(), n.clone(), r.add(&r.identity(), &n)];
        polys.sort();
        assert_eq!(cn.elements(), &polys[..]);
        assert_eq!(cn.dim(), 2);
        let outside = MatRing::new(2, 2).unwrap().from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(cd.centralizer(&outside).unwrap_err(), Error::ElementNotInAlgebra);
    }

    #[test]
    fn conjugacy_classes_of_m2f2() {
        let (_, z) = m2f2();
        let classes = z.unit_conjugacy_classes();
        assert_eq!(classes.len(), 6);
        assert_eq!(classes.iter().map(|c| c.1).sum::<usize>(), 16);
        assert_eq!(z.units().len(), 6);
        assert_eq!(z.center_size(), 2);
        assert!(!z.is_commutative());
    }

    #[test]
    fn commutative_rings_have_singleton_orbits() {
        let r = Arc::new(MatRing::new(3, 1).unwrap());
        let z = Subalgebra::full(r);
        assert_eq!(z.unit_conjugacy_classes().len(), 3);
        let (r, z) = m2f2();
        let d = z.centralizer(&r.from_rows(&[vec![1, 0], vec![0, 0]]).unwrap()).unwrap();
        assert!(d.is_commutative());
        assert!(d.unit_conjugacy_classes().iter().all(|c| c.1 == 1));
    }

    #[test]
    fn generated_subalgebras() {
        let r = Arc::new(MatRing::new(2, 2).unwrap());
        let n = r.from_rows(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(Subalgebra::generated_by(r.clone(), &[n.clone()]).len(), 4);
        let nt = r.from_rows(&[vec![0, 0], vec![1, 0]]).unwrap();
        assert_eq!(Subalgebra::generated_by(r.clone(), &[n, nt]).len(), 16);
        assert_eq!(Subalgebra::generated_by(r, &[]).len(), 2);
    }
}
