//! Truncated power series in `s = 1/t`.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::poly::{Field, Poly};
use crate::error::{Error, Result};
use crate::exactnum::{int, Rat};

/// A power series known modulo `s^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<R> {
    coeffs: Vec<R>,
    order: usize,
}

impl<R: Field> Series<R> {
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order, R::zero());
        Series { coeffs, order }
    }

    pub fn from_poly(p: &Poly<R>, order: usize) -> Self {
        Series::new(p.coeffs().iter().take(order).cloned().collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> Poly<R> {
        Poly::new(self.coeffs.clone())
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Series::new(self.coeffs[..order].to_vec(), order)
    }

    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation().is_none()
    }

    pub fn scale(&self, k: &R) -> Self {
        Series::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(), self.order)
    }

    /// Multiply by `s^k`, which raises the known order by `k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut v = vec![R::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Series::new(v, self.order + k)
    }

    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::Valuation("series with zero constant term is not invertible".into()));
        }
        let n = self.order;
        let inv0 = R::one() / c0;
        let mut r: Vec<R> = Vec::with_capacity(n);
        r.push(inv0.clone());
        for k in 1..n {
            let mut acc = R::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    acc = acc + a.clone() * r[k - j].clone();
                }
            }
            r.push(-(acc * inv0.clone()));
        }
        Ok(Series::new(r, n))
    }

    pub fn div(&self, o: &Series<R>) -> Result<Self> {
        Ok(self.clone() * o.inv()?)
    }

    pub fn eval_poly(&self, p: &Poly<R>) -> Self {
        p.coeffs().iter().rev().fold(Series::zero(self.order), |acc, c| {
            acc * self.clone() + Series::new(vec![c.clone()], self.order)
        })
    }
}

impl<R: Field> Add for Series<R> {
    type Output = Series<R>;
    fn add(self, o: Series<R>) -> Series<R> {
        let n = self.order.min(o.order);
        Series::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect(), n)
    }
}

impl<R: Field> Sub for Series<R> {
    type Output = Series<R>;
    fn sub(self, o: Series<R>) -> Series<R> {
        self + (-o)
    }
}

impl<R: Field> Neg for Series<R> {
    type Output = Series<R>;
    fn neg(self) -> Series<R> {
        Series::new(self.coeffs.into_iter().map(|c| -c).collect(), self.order)
    }
}

impl<R: Field> Mul for Series<R> {
    type Output = Series<R>;
    fn mul(self, o: Series<R>) -> Series<R> {
        let n = self.order.min(o.order);
        let mut v = vec![R::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n - i) {
                let cur = std::mem::replace(&mut v[i + j], R::zero());
                v[i + j] = cur + a.clone() * b.clone();
            }
        }
        Series::new(v, n)
    }
}

/// The polynomial `s·f_t(X) = sX^4 - X^3 - 6sX^2 + X + s`, with coefficients in `Q[s]`.
pub fn scaled_form() -> Poly<Poly<Rat>> {
    let s = |c: i64| Poly::monomial(int(c), 1);
    let k = |c: i64| Poly::constant(int(c));
    Poly::new(vec![s(1), k(1), s(-6), k(-1), s(1)])
}

fn eval_scaled_form(x: &Series<Rat>, deriv: bool) -> Series<Rat> {
    let f = scaled_form();
    let f = if deriv { f.derivative() } else { f };
    let n = x.order();
    f.coeffs().iter().rev().fold(Series::zero(n), |acc, c| acc * x.clone() + Series::from_poly(c, n))
}

/// The root `alpha(s)` of `s·f_t` with `alpha(0) = 0`, modulo `s^order`.
pub fn newton_alpha_series(order: usize) -> Series<Rat> {
    assert!(order >= 2, "truncation order must be at least 2");
    let steps = (usize::BITS - (order - 1).leading_zeros()) as usize + 1;
    let mut x = Series::zero(order);
    for _ in 0..steps {
        let g = eval_scaled_form(&x, false);
        let gp = eval_scaled_form(&x, true);
        x = x.clone() - g.div(&gp).expect("g'(0) = 1 is invertible");
    }
    x
}

/// Residual `s·f_t(alpha(s))` to the known order; zero for a correct root series.
pub fn defining_residual(alpha: &Series<Rat>) -> Series<Rat> {
    eval_scaled_form(alpha, false)
}

/// Series of the root `-(alpha + 1)/(alpha - 1)` near 1.
pub fn alpha3_series(alpha: &Series<Rat>) -> Result<Series<Rat>> {
    let n = alpha.order();
    let one = Series::new(vec![int(1)], n);
    let num = -(alpha.clone() + one.clone());
    let den = alpha.clone() - one;
    num.div(&den)
}

/// `c` with `|expr(1/t)| <= c/|t|^lead_exp` for all `|t| >= tmin`: `sum |c_j| tmin^(lead_exp - j)`.
pub fn tail_bound(expr: &Poly<Rat>, lead_exp: usize, tmin: &Rat) -> Result<Rat> {
    if let Some(v) = expr.valuation() {
        if v < lead_exp {
            return Err(Error::Contract(format!(
                "term of exponent {v} below the lead exponent {lead_exp}"
            )));
        }
    }
    let mut c = Rat::zero();
    for (j, a) in expr.coeffs().iter().enumerate() {
        if !a.is_zero() {
            c += a.abs() / crate::exactnum::rat::powi(tmin, (j - lead_exp) as u32);
        }
    }
    Ok(c)
}
