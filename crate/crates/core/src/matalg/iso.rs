use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::field::Fq;
use super::mat::{Echelon, Mat, MatRing};
use super::subalg::Subalgebra;
use crate::error::{Error, Result};
use crate::treegen::ClassKey;

/// Largest ring handled by the isomorphism machinery.
pub const SIZE_LIMIT: usize = 512;

/// Isomorphism invariants of a finite ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingFingerprint {
    pub size: usize,
    pub units: usize,
    pub center: usize,
    pub commutative: bool,
    /// Additive exponent, the characteristic of the base field.
    pub exponent: usize,
    pub idempotents: usize,
    pub nilpotents: usize,
    /// `(multiplicative order, count)` over the units.
    pub unit_orders: Vec<(usize, usize)>,
    /// `(minimal polynomial over F_p, count)`, coefficients low to high.
    pub minpolys: Vec<(Vec<u8>, usize)>,
    /// `(|Z(x)|, count)`.
    pub centralizers: Vec<(usize, usize)>,
}

/// Fingerprint plus a tag separating non-isomorphic rings that share it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingKey {
    pub fingerprint: RingFingerprint,
    pub tag: usize,
}

impl RingKey {
    pub fn class_key(&self) -> ClassKey {
        ClassKey::new(self.to_string())
    }
}

fn hist<K: fmt::Display>(h: &[(K, usize)]) -> String {
    h.iter().map(|(k, c)| format!("{k}:{c}")).collect::<Vec<_>>().join(",")
}

impl fmt::Display for RingKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fp = &self.fingerprint;
        let mp: Vec<(String, usize)> =
            fp.minpolys.iter().map(|(p, c)| (p.iter().map(u8::to_string).collect::<Vec<_>>().join("."), *c)).collect();
        write!(
            f,
            "R{}{}|u{}|z{}|p{}|e{}|n{}|ord[{}]|mp[{}]|cz[{}]#{}",
            fp.size,
            if fp.commutative { "c" } else { "n" },
            fp.units,
            fp.center,
            fp.exponent,
            fp.idempotents,
            fp.nilpotents,
            hist(&fp.unit_orders),
            hist(&mp),
            hist(&fp.centralizers),
            self.tag
        )
    }
}

pub(crate) fn minimal_polynomial(ring: &MatRing, fp: &Fq, x: &Mat) -> Vec<u8> {
    let mut ech = Echelon::new(fp);
    let mut power = ring.identity();
    loop {
        let c = ring.prime_coords(&power);
        if let Some(co) = ech.coords(&c) {
            let mut poly: Vec<u8> = co.iter().map(|&v| fp.neg(v)).collect();
            poly.push(1);
            return poly;
        }
        ech.insert(&c);
        power = ring.mul(&power, x);
    }
}

fn histogram<K: Ord + Clone>(items: impl IntoIterator<Item = K>) -> Vec<(K, usize)> {
    let mut h: BTreeMap<K, usize> = BTreeMap::new();
    for k in items {
        *h.entry(k).or_default() += 1;
    }
    h.into_iter().collect()
}

/// Word basis of the algebra generated by `gens`: index 0 is the identity,
/// every later word is `words[parent] * gens[g]`.
struct WordBasis {
    prov: Vec<(usize, usize)>,
    /// `structure[i * n + j]`: coordinates of `w_i w_j` in the words.
    structure: Vec<Vec<u8>>,
}

fn word_basis(ring: &MatRing, fp: &Fq, gens: &[&Mat], with_structure: bool) -> (Vec<Mat>, WordBasis, usize) {
    let mut ech = Echelon::new(fp);
    let mut words = vec![ring.identity()];
    let mut prov = vec![(0, 0)];
    ech.insert(&ring.prime_coords(&words[0]));
    let mut i = 0;
    while i < words.len() {
        for (g, gen) in gens.iter().enumerate() {
            let w = ring.mul(&words[i], gen);
            if ech.insert(&ring.prime_coords(&w)) {
                words.push(w);
                prov.push((i, g));
            }
        }
        i += 1;
    }
    let mut structure = Vec::new();
    if with_structure {
        for a in &words {
            for b in &words {
                let c = ech.coords(&ring.prime_coords(&ring.mul(a, b))).expect("closed under products");
                structure.push(c);
            }
        }
    }
    let rank = ech.rank();
    (words, WordBasis { prov, structure }, rank)
}

/// Precomputed data for isomorphism tests against one ring.
#[derive(Clone, Debug)]
struct RingData {
    z: Subalgebra,
    prime: Fq,
    minpoly: Vec<Vec<u8>>,
    cent: Vec<usize>,
    gens: Vec<usize>,
    prefixes: Vec<WordBasisData>,
}

#[derive(Clone, Debug)]
struct WordBasisData {
    prov: Vec<(usize, usize)>,
    structure: Vec<Vec<u8>>,
}

impl RingData {
    fn new(z: &Subalgebra) -> Result<(RingData, RingFingerprint)> {
        let ring = z.ring();
        let prime = Fq::new(ring.field().characteristic() as u64)?;
        let els = z.elements();
        let minpoly: Vec<Vec<u8>> = els.iter().map(|x| minimal_polynomial(ring, &prime, x)).collect();
        let cent: Vec<usize> = els.iter().map(|x| els.iter().filter(|y| ring.commute(x, y)).count()).collect();
        let one = ring.identity();
        let zero = ring.zero();
        let mut unit_orders = Vec::new();
        for x in els {
            if ring.det(x) == 0 {
                continue;
            }
            let mut k = 1;
            let mut p = x.clone();
            while p != one {
                p = ring.mul(&p, x);
                k += 1;
            }
            unit_orders.push(k);
        }
        let nilpotents =
            els.iter().filter(|x| (1..ring.dim()).fold((*x).clone(), |p, _| ring.mul(&p, x)) == zero).count();
        let fingerprint = RingFingerprint {
            size: els.len(),
            units: unit_orders.len(),
            center: z.center_size(),
            commutative: z.is_commutative(),
            exponent: prime.order(),
            idempotents: els.iter().filter(|x| ring.mul(x, x) == **x).count(),
            nilpotents,
            unit_orders: histogram(unit_orders),
            minpolys: histogram(minpoly.iter().cloned()),
            centralizers: histogram(cent.iter().copied()),
        };

        // Greedy generators, preferring elements of high minimal-polynomial degree.
        let full_rank = z.dim() * ring.field().degree();
        let mut order: Vec<usize> = (0..els.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(minpoly[i].len()), i));
        let mut gens: Vec<usize> = Vec::new();
        let mut prefixes = Vec::new();
        loop {
            let gen_mats: Vec<&Mat> = gens.iter().map(|&i| &els[i]).collect();
            let (words, wb, rank) = word_basis(ring, &prime, &gen_mats, !gens.is_empty());
            if !gens.is_empty() {
                prefixes.push(WordBasisData { prov: wb.prov, structure: wb.structure });
            }
            if rank == full_rank {
                break;
            }
            let mut span = Echelon::new(&prime);
            for w in &words {
                span.insert(&ring.prime_coords(w));
            }
            let next = order
                .iter()
                .copied()
                .find(|&i| span.coords(&ring.prime_coords(&els[i])).is_none())
                .expect("a proper subspace misses some element");
            gens.push(next);
        }
        let data = RingData { z: z.clone(), prime, minpoly, cent, gens, prefixes };
        Ok((data, fingerprint))
    }

    /// Whether `images[t]` for the first generators extends to an embedding
    /// of the subalgebra they generate.
    fn consistent(&self, other: &RingData, images: &[usize]) -> bool {
        let pre = &self.prefixes[images.len() - 1];
        let ring = other.z.ring();
        let p = &other.prime;
        let hs: Vec<&Mat> = images.iter().map(|&i| &other.z.elements()[i]).collect();
        let mut img: Vec<Mat> = Vec::with_capacity(pre.prov.len());
        for (w, &(parent, g)) in pre.prov.iter().enumerate() {
            let x = if w == 0 { ring.identity() } else { ring.mul(&img[parent], hs[g]) };
            img.push(x);
        }
        let coords: Vec<Vec<u8>> = img.iter().map(|x| ring.prime_coords(x)).collect();
        let mut ech = Echelon::new(p);
        if !coords.iter().all(|c| ech.insert(c)) {
            return false;
        }
        let n = img.len();
        for i in 0..n {
            for j in 0..n {
                let prod = ring.prime_coords(&ring.mul(&img[i], &img[j]));
                let mut expect = vec![0u8; prod.len()];
                for (l, &c) in pre.structure[i * n + j].iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (e, &v) in expect.iter_mut().zip(&coords[l]) {
                        *e = p.add(*e, p.mul(c, v));
                    }
                }
                if prod != expect {
                    return false;
                }
            }
        }
        true
    }

    fn isomorphic_to(&self, other: &RingData) -> bool {
        if self.z.len() != other.z.len() || self.prime != other.prime {
            return false;
        }
        let candidates: Vec<Vec<usize>> = self
            .gens
            .iter()
            .map(|&g| {
                (0..other.z.len())
                    .filter(|&y| other.minpoly[y] == self.minpoly[g] && other.cent[y] == self.cent[g])
                    .collect()
            })
            .collect();
        let mut images = Vec::with_capacity(self.gens.len());
        self.search(other, &candidates, &mut images)
    }

    fn search(&self, other: &RingData, candidates: &[Vec<usize>], images: &mut Vec<usize>) -> bool {
        let t = images.len();
        if t == self.gens.len() {
            return true;
        }
        for &y in &candidates[t] {
            images.push(y);
            if self.consistent(other, images) && self.search(other, candidates, images) {
                return true;
            }
            images.pop();
        }
        false
    }
}

fn check_size(z: &Subalgebra) -> Result<()> {
    if z.len() > SIZE_LIMIT {
        return Err(Error::SizeLimitExceeded { size: z.len(), limit: SIZE_LIMIT });
    }
    Ok(())
}

/// Unital ring isomorphism test.
pub fn is_ring_isomorphic(a: &Subalgebra, b: &Subalgebra) -> Result<bool> {
    check_size(a)?;
    check_size(b)?;
    let (da, fa) = RingData::new(a)?;
    let (db, fb) = RingData::new(b)?;
    Ok(fa == fb && da.isomorphic_to(&db))
}

/// Key with tag 0, meaningful only up to fingerprint. Use a
/// [`RingRegistry`] to separate fingerprint collisions.
pub fn ring_iso_key(z: &Subalgebra) -> Result<RingKey> {
    RingRegistry::new().key(z)
}

/// Assigns keys so that equal keys mean isomorphic rings.
#[derive(Debug, Default)]
pub struct RingRegistry {
    reps: HashMap<RingFingerprint, Vec<RingData>>,
}

impl RingRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn key(&mut self, z: &Subalgebra) -> Result<RingKey> {
        check_size(z)?;
        let (data, fingerprint) = RingData::new(z)?;
        let reps = self.reps.entry(fingerprint.clone()).or_default();
        let tag = match reps.iter().position(|r| r.isomorphic_to(&data)) {
            Some(t) => t,
            None => {
                reps.push(data);
                reps.len() - 1
            }
        };
        Ok(RingKey { fingerprint, tag })
    }

    /// Number of isomorphism classes seen.
    pub fn len(&self) -> usize {
        self.reps.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn ring(q: u64, m: usize) -> Arc<MatRing> {
        Arc::new(MatRing::new(q, m).unwrap())
    }

    #[test]
    fn field_vs_split_algebra() {
        let r = ring(2, 2);
        // companion matrix of x^2 + x + 1 generates F_4
        let c = r.from_rows(&[vec![0, 1], vec![1, 1]]).unwrap();
        let f4 = Subalgebra::generated_by(r.clone(), &[c]);
        let diag = Subalgebra::generated_by(r.clone(), &[r.from_rows(&[vec![1, 0], vec![0, 0]]).unwrap()]);
        let dual = Subalgebra::generated_by(r.clone(), &[r.from_rows(&[vec![0, 1], vec![0, 0]]).unwrap()]);
        assert_eq!(f4.len(), 4);
        let kf = ring_iso_key(&f4).unwrap();
        let kd = ring_iso_key(&diag).unwrap();
        let kn = ring_iso_key(&dual).unwrap();
        assert_eq!(kf.fingerprint.units, 3);
        assert_eq!(kd.fingerprint.units, 1);
        assert_ne!(kf, kd);
        assert_ne!(kn, kd);
        assert_eq!(kn.fingerprint.nilpotents, 2);
        assert!(!is_ring_isomorphic(&dual, &diag).unwrap());
        let f4b = Subalgebra::full(ring(4, 1));
        assert!(is_ring_isomorphic(&f4, &f4b).unwrap());
    }

    #[test]
    fn conjugate_subalgebras_share_keys() {
        let r = ring(3, 2);
        let full = Subalgebra::full(r.clone());
        let a = r.from_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        let z = full.centralizer(&a).unwrap();
        let g = r.from_rows(&[vec![0, 1], vec![1, 2]]).unwrap();
        let zg = z.conjugate(&g).unwrap();
        assert_ne!(z.elements(), zg.elements());
        let mut reg = RingRegistry::new();
        assert_eq!(reg.key(&z).unwrap(), reg.key(&zg).unwrap());
        assert_eq!(reg.len(), 1);
    }

    #[test]
    fn isomorphism_across_ambients() {
        // F_2 x F_2 as diagonal 2x2 matrices and inside M_3 as diag(a, b, b)
        let r2 = ring(2, 2);
        let r3 = ring(2, 3);
        let d2 = Subalgebra::generated_by(r2.clone(), &[r2.from_rows(&[vec![1, 0], vec![0, 0]]).unwrap()]);
        let e = r3.from_rows(&[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
        let d3 = Subalgebra::generated_by(r3, &[e]);
        assert!(is_ring_isomorphic(&d2, &d3).unwrap());
        assert_eq!(ring_iso_key(&d2).unwrap(), ring_iso_key(&d3).unwrap());
    }

    #[test]
    fn size_limit() {
        let big = Subalgebra::full(ring(3, 2));
        assert!(ring_iso_key(&big).is_ok());
        let err = ring_iso_key(&Subalgebra::full(ring(5, 2))).unwrap_err();
        assert_eq!(err, Error::SizeLimitExceeded { size: 625, limit: 512 });
    }
}
