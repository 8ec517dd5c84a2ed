use num_bigint::BigInt;

use super::poly::Poly;
use super::ratfun::RatFun;
use crate::error::{Error, Result};

/// Dense matrix of integer polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Poly::zero(); rows * cols] }
    }

    /// `I - B t` for a square non-negative integer matrix `B`.
    pub fn identity_minus_bt(b: &[Vec<u64>]) -> Self {
        let n = b.len();
        let mut m = PolyMatrix::zeros(n, n);
        for (i, row) in b.iter().enumerate() {
            assert_eq!(row.len(), n, "branching matrix must be square");
            for (j, &bij) in row.iter().enumerate() {
                let c0 = if i == j { 1 } else { 0 };
                m.set(i, j, Poly::new(vec![BigInt::from(c0), -BigInt::from(bij)]));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    /// Fraction-free Gauss-Jordan elimination of a square system `M x = rhs`.
    ///
    /// Returns `(det M, adj(M) rhs)`; every division performed is exact in
    /// `Z[t]`. Requires all leading principal minors to be nonzero, which
    /// holds for `I - B t` since each such minor has constant term 1.
    pub fn solve_fraction_free(&self, rhs: &[Poly]) -> (Poly, Vec<Poly>) {
        let n = self.rows;
        assert_eq!(n, self.cols);
        assert_eq!(rhs.len(), n);
        let w = n + 1;
        let mut a: Vec<Poly> = Vec::with_capacity(n * w);
        for (i, r) in rhs.iter().enumerate() {
            for j in 0..n {
                a.push(self.get(i, j).clone());
            }
            a.push(r.clone());
        }
        let mut prev = Poly::one();
        for k in 0..n {
            let pivot = a[k * w + k].clone();
            assert!(!pivot.is_zero(), "vanishing leading principal minor");
            for i in (0..n).filter(|&i| i != k) {
                let factor = a[i * w + k].clone();
                for j in (0..w).filter(|&j| j != k) {
                    let val = &(&pivot * &a[i * w + j]) - &(&factor * &a[k * w + j]);
                    a[i * w + j] = val.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i * w + k] = Poly::zero();
            }
            prev = pivot;
        }
        let sol = (0..n).map(|i| a[i * w + n].clone()).collect();
        (prev, sol)
    }
}

/// `det(I - B t)`.
pub fn det_i_minus_bt(b: &[Vec<u64>]) -> Poly {
    if b.is_empty() {
        return Poly::one();
    }
    let m = PolyMatrix::identity_minus_bt(b);
    let mut rhs = vec![Poly::zero(); b.len()];
    rhs[0] = Poly::one();
    m.solve_fraction_free(&rhs).0
}

/// `B^n e_1` for `n = 0 ..= n_max`, by exact integer iteration.
pub fn power_iteration(b: &[Vec<u64>], n_max: usize) -> Vec<Vec<BigInt>> {
    let n = b.len();
    let mut v = vec![BigInt::from(0); n];
    if n > 0 {
        v[0] = BigInt::from(1);
    }
    let mut out = vec![v.clone()];
    for _ in 0..n_max {
        let next = (0..n)
            .map(|i| b[i].iter().zip(&v).filter(|(bij, _)| **bij != 0).map(|(bij, vj)| BigInt::from(*bij) * vj).sum())
            .collect::<Vec<BigInt>>();
        out.push(next.clone());
        v = next;
    }
    out
}

/// First column of `(I - B t)^{-1}` as reduced rational functions.
///
/// Entry `i` is the generating function of class-`i` node counts when
/// class 0 is the root. Each entry's expansion is checked against the
/// power iteration `B^n e_1` for `n <= n_max_check`.
pub fn resolvent_column(b: &[Vec<u64>], n_max_check: usize) -> Result<Vec<RatFun>> {
    let n = b.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = PolyMatrix::identity_minus_bt(b);
    let mut rhs = vec![Poly::zero(); n];
    rhs[0] = Poly::one();
    let (det, adj_col) = m.solve_fraction_free(&rhs);
    let column = adj_col.into_iter().map(|num| RatFun::new(num, det.clone())).collect::<Result<Vec<_>>>()?;
    let iter = power_iteration(b, n_max_check);
    for (i, f) in column.iter().enumerate() {
        let series = f.series(n_max_check)?;
        for (term, (got, step)) in series.iter().zip(&iter).enumerate() {
            if *got != step[i] {
                return Err(Error::ResolventMismatch { class: i, term });
            }
        }
    }
    Ok(column)
}
