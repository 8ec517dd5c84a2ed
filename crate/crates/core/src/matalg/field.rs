use crate::error::{Error, Result};

/// Finite field `F_q` with table arithmetic on element indices `0..q`.
///
/// Element `a` encodes the polynomial `sum_i d_i x^i` over `F_p` whose
/// coefficients `d_i` are the base-`p` digits of `a`, so addition is
/// digit-wise mod `p` and prime fields are plain residues.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fq {
    q: usize,
    p: usize,
    k: usize,
    /// Monic modulus, low to high, including the leading 1. Empty for prime q.
    modulus: Vec<usize>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

pub const MAX_FIELD_ORDER: usize = 256;

fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut r = q;
    let mut k = 0;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn digits(a: usize, p: usize, k: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(k);
    let mut r = a;
    for _ in 0..k {
        out.push(r % p);
        r /= p;
    }
    out
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

/// `a mod f` over `F_p`, `f` monic.
fn poly_rem(a: &[usize], f: &[usize], p: usize) -> Vec<usize> {
    let mut r = a.to_vec();
    let df = f.len() - 1;
    while r.len() > df {
        let lead = r.pop().expect("nonempty");
        if lead != 0 {
            let shift = r.len() - df;
            for (i, &c) in f[..df].iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = digits(code, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Fq {
    pub fn new(q: u64) -> Result<Self> {
        let qu = usize::try_from(q).map_err(|_| Error::InvalidFieldOrder(q))?;
        if qu > MAX_FIELD_ORDER {
            return Err(Error::InvalidFieldOrder(q));
        }
        let (p, k) = prime_power(qu).ok_or(Error::InvalidFieldOrder(q))?;
        let modulus = if k == 1 {
            Vec::new()
        } else {
            (0..p.pow(k as u32))
                .map(|code| {
                    let mut f = digits(code, p, k);
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible(f, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let mut add = vec![0u8; qu * qu];
        let mut mul = vec![0u8; qu * qu];
        for a in 0..qu {
            let da = digits(a, p, k);
            for b in 0..qu {
                let db = digits(b, p, k);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * qu + b] = undigits(&sum, p) as u8;
                let prod = if k == 1 {
                    (a * b) % p
                } else {
                    let mut c = vec![0usize; 2 * k - 1];
                    for (i, x) in da.iter().enumerate() {
                        for (j, y) in db.iter().enumerate() {
                            c[i + j] = (c[i + j] + x * y) % p;
                        }
                    }
                    let mut r = poly_rem(&c, &modulus, p);
                    r.resize(k, 0);
                    undigits(&r, p)
                };
                mul[a * qu + b] = prod as u8;
            }
        }
        let neg = (0..qu).map(|a| (0..qu).find(|&b| add[a * qu + b] == 0).expect("additive inverse") as u8).collect();
        let inv = (0..qu)
            .map(|a| if a == 0 { 0 } else { (1..qu).find(|&b| mul[a * qu + b] == 1).unwrap_or(0) as u8 })
            .collect();
        let f = Fq { q: qu, p, k, modulus, add, mul, neg, inv };
        if qu <= 9 {
            f.check_axioms()?;
        }
        Ok(f)
    }

    fn check_axioms(&self) -> Result<()> {
        let q = self.q as u8;
        let bad = || Error::InvalidFieldOrder(self.q as u64);
        for a in 0..q {
            if a != 0 && self.mul(a, self.inv[a as usize]) != 1 {
                return Err(bad());
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(bad());
                }
                for c in 0..q {
                    let assoc = self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                        && self.add(self.add(a, b), c) == self.add(a, self.add(b, c));
                    let dist = self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c));
                    if !assoc || !dist {
                        return Err(bad());
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    /// Coordinates over the prime field.
    pub fn prime_digits(&self, a: u8) -> impl Iterator<Item = u8> + '_ {
        let mut r = a as usize;
        (0..self.k).map(move |_| {
            let d = r % self.p;
            r /= self.p;
            d as u8
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f = Fq::new(3).unwrap();
        assert_eq!(f.mul(2, 2), 1);
        assert_eq!(f.add(2, 2), 1);
        assert_eq!(f.neg(1), 2);
        assert_eq!(f.inv(2), Some(2));
        assert_eq!(f.inv(0), None);
    }

    #[test]
    fn extension_fields() {
        let f4 = Fq::new(4).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // x * x = x + 1
        assert_eq!(f4.mul(2, 2), 3);
        for q in [8, 9, 16, 25, 27] {
            let f = Fq::new(q).unwrap();
            for a in 1..q as u8 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
            }
        }
        assert_eq!(Fq::new(9).unwrap().prime_digits(5).collect::<Vec<_>>(), vec![2, 1]);
    }

    #[test]
    fn rejects_non_prime_powers() {
        for q in [0, 1, 6, 10, 12] {
            assert_eq!(Fq::new(q), Err(Error::InvalidFieldOrder(q)));
        }
        assert!(Fq::new(257).is_err());
    }
}
