use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Univariate polynomial in `t` with arbitrary-precision integer coefficients.
///
/// `coeffs[n]` is the coefficient of `t^n`. The highest stored coefficient is
/// never zero, so the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// `1 - k t`
    pub fn one_minus(k: BigInt) -> Self {
        Poly::new(vec![BigInt::one(), -k])
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^n`, zero beyond the degree.
    pub fn coeff(&self, n: usize) -> BigInt {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Exact division of every coefficient by `c`; panics if inexact.
    pub fn div_scalar(&self, c: &BigInt) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(c);
                    assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        )
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    /// Non-negative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// The polynomial divided by its content, with positive leading coefficient.
    pub fn primitive_part(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("pseudo-remainder by zero polynomial");
        let lb = b.leading();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading();
            r = &r.scale(&lb) - &b.scale(&lr).shift(dr - db);
        }
        r
    }

    /// Exact quotient `self / b` over the integers, or `None` when `b` does
    /// not divide `self` in `Z[t]`.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        let db = b.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let lb = b.leading();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.coeffs.len().saturating_sub(db).max(1)];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let (c, rem) = r.leading().div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            r = &r - &b.scale(&c).shift(dr - db);
            q[dr - db] = c;
        }
        Some(Poly::new(q))
    }

    /// Greatest common divisor in `Z[t]`, normalized to positive leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.scale(&c)
    }

    /// Splits off factors `(1 - k t)` with integer `k`, returned in
    /// ascending order of `k` with multiplicities, plus the cofactor.
    pub fn factor_linear(&self) -> (Vec<(BigInt, u32)>, Poly) {
        let mut rest = self.clone();
        let mut found = Vec::new();
        if self.degree().unwrap_or(0) == 0 || self.constant_term().is_zero() {
            return (found, rest);
        }
        // (1 - k t) | p forces k | leading coefficient.
        let mut candidates: Vec<BigInt> = Vec::new();
        for d in divisors(&rest.leading().abs()) {
            candidates.push(-d.clone());
            candidates.push(d);
        }
        candidates.sort();
        for k in candidates {
            let f = Poly::one_minus(k.clone());
            let mut mult = 0;
            while rest.degree().unwrap_or(0) > 0 {
                match rest.div_exact(&f) {
                    Some(q) => {
                        rest = q;
                        mult += 1;
                    }
                    None => break,
                }
            }
            if mult > 0 {
                found.push((k, mult));
            }
        }
        (found, rest)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let other = n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}*t")?,
                (_, true) => write!(f, "t^{n}")?,
                (_, false) => write!(f, "{mag}*t^{n}")?,
            }
        }
        Ok(())
    }
}

/// Parses either a comma-separated coefficient list (`"1,-3,1"`) or an
/// arithmetic expression in `t` with `+ - * ^` and parentheses, e.g.
/// `"(1 - t)*(1 - 2*t)"`.
impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        if !trimmed.contains('t') && trimmed.contains(',') {
            let coeffs = trimmed
                .split(',')
                .map(|c| c.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("bad coefficient {c:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            return Ok(Poly::new(coeffs));
        }
        let mut p = ExprParser { src: trimmed.as_bytes(), pos: 0 };
        let poly = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(Error::Parse(format!("unexpected input at offset {}", p.pos)));
        }
        Ok(poly)
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                // implicit product: "2t", "3(1 - t)"
                Some(b't') | Some(b'(') => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e = u32::try_from(e).map_err(|_| Error::Parse("exponent out of range".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(Poly::monomial(BigInt::one(), 1))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.power()?)
            }
            Some(c) if c.is_ascii_digit() => Ok(Poly::constant(self.integer()?)),
            Some(c) => Err(Error::Parse(format!("unexpected character {:?}", c as char))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected integer at offset {start}")));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_i64s(cs)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p(&[1, -3, 1]) * &Poly::one(), p(&[1, -3, 1]));
        assert_eq!(&p(&[1, -1]) * &p(&[1, -2]), p(&[1, -3, 2]));
        assert_eq!(&p(&[1, -8, 14]) + &p(&[0, 8, -14]), Poly::one());
        assert!((&p(&[1, 2]) - &p(&[1, 2])).is_zero());
        assert_eq!(Poly::new(vec![BigInt::zero(); 3]), Poly::zero());
    }

    #[test]
    fn gcd_and_division() {
        let a = &p(&[1, -2]) * &p(&[1, -3]);
        let b = &p(&[1, -2]) * &p(&[2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 2]));
        assert_eq!(p(&[2, 4]).gcd(&p(&[6])), p(&[2]));
        assert_eq!(a.div_exact(&p(&[1, -3])), Some(p(&[1, -2])));
        assert_eq!(a.div_exact(&p(&[2, -3])), None);
        assert_eq!(p(&[4, 6]).primitive_part(), p(&[2, 3]));
    }

    #[test]
    fn linear_factors() {
        let d = &(&p(&[1, -1]) * &p(&[1, -2])) * &(&p(&[1, -2]) * &p(&[1, -6]));
        let (fs, rest) = d.factor_linear();
        assert!(rest.is_one());
        let ks: Vec<(i64, u32)> = fs.iter().map(|(k, e)| (i64::try_from(k).unwrap(), *e)).collect();
        assert_eq!(ks, vec![(1, 1), (2, 2), (6, 1)]);
        let (fs, rest) = p(&[1, 0, 1]).factor_linear();
        assert!(fs.is_empty());
        assert_eq!(rest, p(&[1, 0, 1]));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p(&[1, -3, 1]).to_string(), "1 - 3*t + t^2");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!("1 - 3*t + t^2".parse::<Poly>().unwrap(), p(&[1, -3, 1]));
        assert_eq!("(1 - t)*(1 - 2t)".parse::<Poly>().unwrap(), p(&[1, -3, 2]));
        assert_eq!("1,-3,2".parse::<Poly>().unwrap(), p(&[1, -3, 2]));
        assert_eq!("-(1+t)^2".parse::<Poly>().unwrap(), p(&[-1, -2, -1]));
        assert_eq!("7".parse::<Poly>().unwrap(), p(&[7]));
        assert!("1 - x".parse::<Poly>().is_err());
        assert!("(1 - t".parse::<Poly>().is_err());
    }
}
