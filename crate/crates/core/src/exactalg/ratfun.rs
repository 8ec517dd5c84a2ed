use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

/// Reduced quotient of two integer polynomials.
///
/// Normal form: numerator and denominator are coprime in `Q[t]`, share no
/// integer content, and the denominator has positive constant term. For any
/// function whose power series has integer coefficients (every generating
/// function produced by the tree engine) this forces `den(0) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Normalizes `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if den.constant_term().is_zero() {
            return Err(Error::NonUnitConstantTerm);
        }
        Ok(Self::normalize_unchecked(num, den))
    }

    fn normalize_unchecked(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) && g.leading().is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        if den.constant_term().is_negative() {
            num = -&num;
            den = -&den;
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFun::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun { num: p, den: Poly::one() }
    }

    /// The rational constant `n / d`.
    pub fn from_ratio(n: BigInt, d: BigInt) -> Result<Self> {
        RatFun::new(Poly::constant(n), Poly::constant(d))
    }

    /// `1 / (1 - k t)`
    pub fn geometric(k: BigInt) -> Self {
        RatFun { num: Poly::one(), den: Poly::one_minus(k) }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Equality of the represented functions, by cross-multiplication.
    pub fn same_function(&self, other: &RatFun) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Power-series coefficients `c_0 ..= c_n_max`.
    ///
    /// Errors with `NonIntegerCoefficient` as soon as a coefficient leaves the
    /// integers, which can only happen when `den(0) != 1`.
    pub fn series(&self, n_max: usize) -> Result<Vec<BigInt>> {
        let d0 = self.den.constant_term();
        let dcs = self.den.coeffs();
        let mut out: Vec<BigInt> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut acc = self.num.coeff(n);
            for k in 1..dcs.len().min(n + 1) {
                acc -= &dcs[k] * &out[n - k];
            }
            let (q, r) = acc.div_rem(&d0);
            if !r.is_zero() {
                return Err(Error::NonIntegerCoefficient { index: n });
            }
            out.push(q);
        }
        Ok(out)
    }

    /// Power series coefficients over `Q`; never fails.
    pub fn series_rational(&self, n_max: usize) -> Vec<BigRational> {
        let d0 = BigRational::from_integer(self.den.constant_term());
        let dcs = self.den.coeffs();
        let mut out: Vec<BigRational> = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut acc = BigRational::from_integer(self.num.coeff(n));
            for k in 1..dcs.len().min(n + 1) {
                acc -= BigRational::from_integer(dcs[k].clone()) * &out[n - k];
            }
            out.push(acc / &d0);
        }
        out
    }

    /// `t^k * self`
    pub fn shift(&self, k: usize) -> RatFun {
        RatFun { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn inverse(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        RatFun::new(self.den.clone(), self.num.clone())
    }
}

/// Equality of functions; see [`RatFun::same_function`].
pub fn ratfun_eq(a: &RatFun, b: &RatFun) -> bool {
    a.same_function(b)
}

/// Power-series expansion; see [`RatFun::series`].
pub fn series_expand(f: &RatFun, n_max: usize) -> Result<Vec<BigInt>> {
    f.series(n_max)
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.den == rhs.den {
            return RatFun::normalize_unchecked(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::normalize_unchecked(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        RatFun::normalize_unchecked(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatFun {
    type Output = RatFun;
    fn add(self, rhs: RatFun) -> RatFun {
        &self + &rhs
    }
}

impl Mul for RatFun {
    type Output = RatFun;
    fn mul(self, rhs: RatFun) -> RatFun {
        &self * &rhs
    }
}

impl std::iter::Sum for RatFun {
    fn sum<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::zero(), |acc, x| &acc + &x)
    }
}

fn linear_factor(k: &BigInt) -> String {
    let mag = k.abs();
    let sign = if k.is_negative() { '+' } else { '-' };
    if mag.is_one() {
        format!("(1 {sign} t)")
    } else {
        format!("(1 {sign} {mag}*t)")
    }
}

/// Renders the denominator as a product of `(1 - k*t)` factors where it
/// splits that way over the integers; any remaining cofactor is printed
/// in expanded form.
impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.term_count() > 1 { format!("({})", self.num) } else { self.num.to_string() };
        let (factors, rest) = self.den.factor_linear();
        let mut parts: Vec<String> = Vec::new();
        if !rest.is_one() {
            if rest.term_count() > 1 {
                parts.push(format!("({rest})"));
            } else {
                parts.push(rest.to_string());
            }
        }
        for (k, e) in &factors {
            let lf = linear_factor(k);
            if *e == 1 {
                parts.push(lf);
            } else {
                parts.push(format!("{lf}^{e}"));
            }
        }
        let single = parts.len() == 1 && (factors.len() == 1 && factors[0].1 == 1 || factors.is_empty());
        if single {
            write!(f, "{num}/{}", parts[0])
        } else {
            write!(f, "{num}/({})", parts.join("*"))
        }
    }
}
