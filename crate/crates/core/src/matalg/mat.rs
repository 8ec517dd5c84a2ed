use std::fmt;

use super::field::Fq;
use crate::error::{Error, Result};

/// An `m x m` matrix over `F_q`, row-major. Ordered lexicographically by entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat(Box<[u8]>);

impl Mat {
    pub fn entries(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = (self.0.len() as f64).sqrt().round() as usize;
        write!(f, "[")?;
        for (i, row) in self.0.chunks(m.max(1)).enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            let cells: Vec<String> = row.iter().map(u8::to_string).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

/// The full matrix ring `M_m(F_q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatRing {
    field: Fq,
    m: usize,
}

impl MatRing {
    pub fn new(q: u64, m: usize) -> Result<Self> {
        Ok(MatRing { field: Fq::new(q)?, m })
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    /// `q^{m^2}`, saturating.
    pub fn size(&self) -> u64 {
        (self.field.order() as u64).saturating_pow((self.m * self.m) as u32)
    }

    pub fn zero(&self) -> Mat {
        Mat(vec![0; self.m * self.m].into_boxed_slice())
    }

    pub fn scalar(&self, c: u8) -> Mat {
        let mut a = vec![0; self.m * self.m];
        for i in 0..self.m {
            a[i * self.m + i] = c;
        }
        Mat(a.into_boxed_slice())
    }

    pub fn identity(&self) -> Mat {
        self.scalar(1)
    }

    pub fn from_rows(&self, rows: &[Vec<u8>]) -> Result<Mat> {
        let q = self.field.order();
        if rows.len() != self.m || rows.iter().any(|r| r.len() != self.m || r.iter().any(|&x| x as usize >= q)) {
            return Err(Error::Parse(format!("expected {0}x{0} matrix over F_{q}", self.m)));
        }
        Ok(Mat(rows.concat().into_boxed_slice()))
    }

    pub fn entry(&self, a: &Mat, i: usize, j: usize) -> u8 {
        a.0[i * self.m + j]
    }

    pub fn add(&self, a: &Mat, b: &Mat) -> Mat {
        Mat(a.0.iter().zip(b.0.iter()).map(|(&x, &y)| self.field.add(x, y)).collect())
    }

    pub fn sub(&self, a: &Mat, b: &Mat) -> Mat {
        Mat(a.0.iter().zip(b.0.iter()).map(|(&x, &y)| self.field.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &Mat) -> Mat {
        Mat(a.0.iter().map(|&x| self.field.neg(x)).collect())
    }

    pub fn scale(&self, c: u8, a: &Mat) -> Mat {
        Mat(a.0.iter().map(|&x| self.field.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let (m, f) = (self.m, &self.field);
        let mut c = vec![0u8; m * m];
        for i in 0..m {
            for k in 0..m {
                let x = a.0[i * m + k];
                if x == 0 {
                    continue;
                }
                for j in 0..m {
                    let cell = &mut c[i * m + j];
                    *cell = f.add(*cell, f.mul(x, b.0[k * m + j]));
                }
            }
        }
        Mat(c.into_boxed_slice())
    }

    pub fn commute(&self, a: &Mat, b: &Mat) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn det(&self, a: &Mat) -> u8 {
        let (m, f) = (self.m, &self.field);
        let mut w = a.0.to_vec();
        let mut det = 1u8;
        for col in 0..m {
            let Some(piv) = (col..m).find(|&r| w[r * m + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..m {
                    w.swap(piv * m + j, col * m + j);
                }
                det = f.neg(det);
            }
            let p = w[col * m + col];
            det = f.mul(det, p);
            let pinv = f.inv(p).expect("nonzero pivot");
            for r in col + 1..m {
                let factor = f.mul(w[r * m + col], pinv);
                if factor != 0 {
                    for j in col..m {
                        w[r * m + j] = f.sub(w[r * m + j], f.mul(factor, w[col * m + j]));
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self, a: &Mat) -> Option<Mat> {
        let (m, f) = (self.m, &self.field);
        let mut w = a.0.to_vec();
        let mut inv = self.identity().0.to_vec();
        for col in 0..m {
            let piv = (col..m).find(|&r| w[r * m + col] != 0)?;
            for j in 0..m {
                w.swap(piv * m + j, col * m + j);
                inv.swap(piv * m + j, col * m + j);
            }
            let pinv = f.inv(w[col * m + col]).expect("nonzero pivot");
            for j in 0..m {
                w[col * m + j] = f.mul(pinv, w[col * m + j]);
                inv[col * m + j] = f.mul(pinv, inv[col * m + j]);
            }
            for r in 0..m {
                let factor = w[r * m + col];
                if r == col || factor == 0 {
                    continue;
                }
                for j in 0..m {
                    w[r * m + j] = f.sub(w[r * m + j], f.mul(factor, w[col * m + j]));
                    inv[r * m + j] = f.sub(inv[r * m + j], f.mul(factor, inv[col * m + j]));
                }
            }
        }
        Some(Mat(inv.into_boxed_slice()))
    }

    /// Every element, in ascending order.
    pub fn elements(&self) -> Vec<Mat> {
        let q = self.field.order() as u8;
        let n = self.m * self.m;
        let mut out = Vec::with_capacity(self.size() as usize);
        let mut cur = vec![0u8; n];
        loop {
            out.push(Mat(cur.clone().into_boxed_slice()));
            let Some(pos) = (0..n).rev().find(|&i| cur[i] + 1 < q) else {
                break;
            };
            cur[pos] += 1;
            for c in &mut cur[pos + 1..] {
                *c = 0;
            }
        }
        out
    }

    /// Coordinates over the prime field.
    pub fn prime_coords(&self, a: &Mat) -> Vec<u8> {
        a.0.iter().flat_map(|&x| self.field.prime_digits(x)).collect()
    }
}

/// Incremental row echelon form over a field, remembering how each stored
/// row combines the vectors inserted so far.
#[derive(Clone, Debug)]
pub(crate) struct Echelon<'f> {
    f: &'f Fq,
    rows: Vec<Row>,
}

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    vec: Vec<u8>,
    combo: Vec<u8>,
}

impl<'f> Echelon<'f> {
    pub(crate) fn new(f: &'f Fq) -> Self {
        Echelon { f, rows: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `v = residual + sum_i c_i b_i` over the independent inserted `b_i`.
    fn reduce(&self, v: &[u8]) -> (Vec<u8>, Vec<u8>) {
        let f = self.f;
        let mut r = v.to_vec();
        let mut c = vec![0u8; self.rows.len()];
        for row in &self.rows {
            let coef = r[row.pivot];
            if coef == 0 {
                continue;
            }
            for (x, &y) in r.iter_mut().zip(&row.vec) {
                *x = f.sub(*x, f.mul(coef, y));
            }
            for (x, &y) in c.iter_mut().zip(&row.combo) {
                *x = f.add(*x, f.mul(coef, y));
            }
        }
        (r, c)
    }

    /// Adds `v` if independent of what is stored; reports whether it was.
    pub(crate) fn insert(&mut self, v: &[u8]) -> bool {
        let (r, c) = self.reduce(v);
        let Some(pivot) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.f;
        let inv = f.inv(r[pivot]).expect("nonzero");
        let mut combo: Vec<u8> = c.iter().map(|&x| f.mul(inv, f.neg(x))).collect();
        combo.push(inv);
        let vec = r.iter().map(|&x| f.mul(inv, x)).collect();
        self.rows.push(Row { pivot, vec, combo });
        true
    }

    /// Coordinates of `v` in the inserted vectors, if it lies in their span.
    pub(crate) fn coords(&self, v: &[u8]) -> Option<Vec<u8>> {
        let (r, c) = self.reduce(v);
        r.iter().all(|&x| x == 0).then_some(c)
    }
}
