//! Dense univariate polynomials over an arbitrary commutative ring.
//!
//! Nesting (`Poly<Poly<GaussRat>>`) gives the bivariate polynomials in `(X, t)` used by the
//! Thue construction.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gauss::GaussRat;
use crate::exactnum::Rat;

pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_rat(q: &Rat) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(&Rat::from_integer(BigInt::from(n)))
    }
}

pub trait Field: Ring + Div<Output = Self> {}

impl Ring for Rat {
    fn from_rat(q: &Rat) -> Self {
        q.clone()
    }
}
impl Field for Rat {}

impl Ring for GaussRat {
    fn from_rat(q: &Rat) -> Self {
        GaussRat::real(q.clone())
    }
}
impl Field for GaussRat {}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// The indeterminate itself.
    pub fn x() -> Self {
        Poly::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, k: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs.iter().rev().fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `self(q)` for a polynomial argument.
    pub fn compose(&self, q: &Poly<R>) -> Poly<R> {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| acc * q.clone() + Poly::constant(c.clone()))
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * R::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// Keep only coefficients of index `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Poly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    /// `x^k · self`.
    pub fn shift(&self, k: usize) -> Self {
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(v)
    }

    /// Coefficient reversal padded to degree `n`: `X^n · self(1/X)`.
    pub fn reverse(&self, n: usize) -> Self {
        assert!(self.degree().is_none_or(|d| d <= n), "reverse below degree");
        let mut v = self.coeffs.clone();
        v.resize(n + 1, R::zero());
        v.reverse();
        Poly::new(v)
    }

    /// Pseudo-remainder of `self` by `m` (valid over any integral domain).
    pub fn pseudo_rem(&self, m: &Poly<R>) -> Poly<R> {
        let dm = m.degree().expect("pseudo-division by zero polynomial");
        let lm = m.lead();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            let lr = r.lead();
            r = r.scale(&lm) - m.scale(&lr).shift(dr - dm);
        }
        r
    }
}

impl<R: Field> Poly<R> {
    /// Euclidean division.
    pub fn div_rem(&self, m: &Poly<R>) -> (Poly<R>, Poly<R>) {
        let dm = m.degree().expect("division by zero polynomial");
        let inv = R::one() / m.lead();
        let mut q = vec![R::zero(); self.coeffs.len().saturating_sub(dm)];
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dm {
                break;
            }
            let c = r.lead() * inv.clone();
            q[dr - dm] = c.clone();
            r = r - m.scale(&c).shift(dr - dm);
        }
        (Poly::new(q), r)
    }
}

impl<R: Ring> Zero for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Poly<R> {
    fn one() -> Self {
        Poly::constant(R::one())
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, o: Poly<R>) -> Poly<R> {
        let (mut long, short) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        for (i, c) in short.coeffs.into_iter().enumerate() {
            let a = std::mem::replace(&mut long.coeffs[i], R::zero());
            long.coeffs[i] = a + c;
        }
        Poly::new(long.coeffs)
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, o: Poly<R>) -> Poly<R> {
        self + (-o)
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, o: Poly<R>) -> Poly<R> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![R::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let prod = a.clone() * b.clone();
                let cur = std::mem::replace(&mut v[i + j], R::zero());
                v[i + j] = cur + prod;
            }
        }
        Poly::new(v)
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn from_rat(q: &Rat) -> Self {
        Poly::constant(R::from_rat(q))
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})X")?,
                _ => write!(f, "({c})X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Homogenized evaluation `sum c_k x^k y^(n-k)` of a rational polynomial of degree `<= n`.
pub fn homogeneous_eval<R: Ring>(p: &Poly<Rat>, n: usize, x: &R, y: &R) -> R {
    let mut xp = vec![R::one()];
    let mut yp = vec![R::one()];
    for _ in 0..n {
        xp.push(xp.last().unwrap().clone() * x.clone());
        yp.push(yp.last().unwrap().clone() * y.clone());
    }
    let mut acc = R::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = acc + R::from_rat(c) * xp[k].clone() * yp[n - k].clone();
        }
    }
    acc
}
