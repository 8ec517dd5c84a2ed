//! Exact arithmetic for integer polynomials and rational functions in one
//! variable `t`, and the resolvent `(I - B t)^{-1} e_1` of a branching
//! matrix computed by fraction-free elimination over `Z[t]`.

mod matrix;
mod poly;
mod ratfun;

pub use matrix::{det_i_minus_bt, power_iteration, resolvent_column, PolyMatrix};
pub use poly::Poly;
pub use ratfun::{ratfun_eq, series_expand, RatFun};

/// Ring operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &Poly, b: &Poly, op: PolyOp) -> Poly {
    match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    }
}

/// Field operation selector for [`ratfun_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RatOp {
    Add,
    Mul,
}

pub fn ratfun_arith(a: &RatFun, b: &RatFun, op: RatOp) -> RatFun {
    match op {
        RatOp::Add => a + b,
        RatOp::Mul => a * b,
    }
}

/// `prod_k 1/(1 - k t)` over the given `k`.
pub fn geometric_product<I: IntoIterator<Item = u64>>(ks: I) -> RatFun {
    ks.into_iter().fold(RatFun::one(), |acc, k| &acc * &RatFun::geometric(k.into()))
}
