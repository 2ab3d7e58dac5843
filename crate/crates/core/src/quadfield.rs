//! Rings of integers of imaginary quadratic fields `Q(√-d)`.
//!
//! Elements are written `a + bω` with `ω = (1 + √-d)/2` when `d ≡ 3 (mod 4)` and `ω = √-d`
//! otherwise.

use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::rat::{dyadic_round, sqrt_bounds};
use crate::exactnum::{int, Rat};
use crate::series::GaussRat;

pub fn is_squarefree(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

fn omega_half(d: u64) -> bool {
    d % 4 == 3
}

fn narrow(v: i128) -> i64 {
    i64::try_from(v).expect("quadratic integer coordinate overflow")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuadInt {
    pub d: u64,
    pub a: i64,
    pub b: i64,
}

impl QuadInt {
    pub fn new(d: u64, a: i64, b: i64) -> Result<Self> {
        if !is_squarefree(d) {
            return Err(Error::Domain(format!("d = {d} is not a positive square-free integer")));
        }
        Ok(QuadInt { d, a, b })
    }

    /// Rational integer `n` as an element of `Q(√-d)`.
    pub fn embed(n: i64, d: u64) -> Self {
        QuadInt { d, a: n, b: 0 }
    }

    pub fn zero(d: u64) -> Self {
        QuadInt::embed(0, d)
    }

    pub fn one(d: u64) -> Self {
        QuadInt::embed(1, d)
    }

    pub fn omega(d: u64) -> Self {
        QuadInt { d, a: 0, b: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// Move into field `d`; only rational integers can change field.
    pub fn in_field(&self, d: u64) -> Result<Self> {
        if self.d == d {
            Ok(*self)
        } else if self.is_rational() {
            Ok(QuadInt::embed(self.a, d))
        } else {
            Err(Error::MixedField(self.d, d))
        }
    }

    fn same(&self, o: &QuadInt) -> Result<u64> {
        if self.d == o.d {
            Ok(self.d)
        } else if o.is_rational() || self.is_rational() {
            // rational integers live in every field
            Ok(if self.is_rational() { o.d } else { self.d })
        } else {
            Err(Error::MixedField(self.d, o.d))
        }
    }

    /// `|x|^2`, which is always a rational integer.
    pub fn norm(&self) -> i128 {
        let (a, b, d) = (self.a as i128, self.b as i128, self.d as i128);
        if omega_half(self.d) {
            a * a + a * b + b * b * (1 + d) / 4
        } else {
            a * a + d * b * b
        }
    }

    pub fn abs_sq(&self) -> Rat {
        Rat::from_integer(self.norm().into())
    }

    pub fn conj(&self) -> Self {
        if omega_half(self.d) {
            QuadInt { d: self.d, a: self.a + self.b, b: -self.b }
        } else {
            QuadInt { d: self.d, a: self.a, b: -self.b }
        }
    }

    pub fn neg(&self) -> Self {
        QuadInt { d: self.d, a: -self.a, b: -self.b }
    }

    pub fn add(&self, o: &QuadInt) -> Result<Self> {
        let d = self.same(o)?;
        Ok(QuadInt { d, a: self.a + o.a, b: self.b + o.b })
    }

    pub fn sub(&self, o: &QuadInt) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &QuadInt) -> Result<Self> {
        let d = self.same(o)?;
        let (a1, b1, a2, b2) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        let bb = b1 * b2;
        let (a, b) = if omega_half(d) {
            // ω² = ω - (1 + d)/4
            (a1 * a2 - bb * ((1 + d as i128) / 4), a1 * b2 + a2 * b1 + bb)
        } else {
            (a1 * a2 - bb * d as i128, a1 * b2 + a2 * b1)
        };
        Ok(QuadInt { d, a: narrow(a), b: narrow(b) })
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(QuadInt::one(self.d), |acc, _| acc.mul(self).expect("same field"))
    }

    /// `self / o` if `o` divides `self` in the ring, `None` otherwise.
    pub fn div_exact(&self, o: &QuadInt) -> Result<Option<QuadInt>> {
        let d = self.same(o)?;
        if o.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let x = self.in_field(d)?;
        let y = o.in_field(d)?;
        let num = x.mul(&y.conj())?;
        let n = y.norm();
        let (a, b) = (num.a as i128, num.b as i128);
        if a % n != 0 || b % n != 0 {
            return Ok(None);
        }
        Ok(Some(QuadInt { d, a: narrow(a / n), b: narrow(b / n) }))
    }

    pub fn to_quadrat(&self) -> QuadRat {
        QuadRat { d: self.d, a: int(self.a), b: int(self.b) }
    }

    /// Coordinates `(p, q)` with `self = p + q√-d`.
    pub fn sqrt_coords(&self) -> (Rat, Rat) {
        self.to_quadrat().sqrt_coords()
    }

    /// Upper half-plane or positive rational integer.
    pub fn is_normalized(&self) -> bool {
        self.b > 0 || (self.b == 0 && self.a > 0)
    }

    /// The representative of `{self, -self}` that is normalized (zero is returned unchanged).
    pub fn normalized(&self) -> Self {
        if self.is_zero() || self.is_normalized() {
            *self
        } else {
            self.neg()
        }
    }

    /// A rational approximation of the complex value and an error bound on it.
    pub fn approx(&self, bits: u32) -> (GaussRat, Rat) {
        let (p, q) = self.sqrt_coords();
        if q.is_zero() {
            return (GaussRat::real(p), Rat::zero());
        }
        let (lo, hi) = sqrt_bounds(&int(self.d as i64), bits + 2);
        let s = dyadic_round(&((&lo + &hi) / int(2)), bits + 2);
        let err = (&hi - &lo) * q.abs();
        (GaussRat::new(p, &q * &s), err)
    }

    pub fn render(&self) -> String {
        let (p, q) = self.sqrt_coords();
        render_sqrt(self.d, &p, &q)
    }
}

fn render_sqrt(d: u64, p: &Rat, q: &Rat) -> String {
    let root = if d == 1 { "i".to_string() } else { format!("√-{d}") };
    let denom = p.denom().max(q.denom()).clone();
    let (pn, qn) = ((p * Rat::from_integer(denom.clone())).to_integer(), (q * Rat::from_integer(denom.clone())).to_integer());
    let mut s = String::new();
    if !qn.is_zero() {
        if qn == (-1).into() {
            s.push('-');
        } else if qn != 1.into() {
            s.push_str(&qn.to_string());
        }
        s.push_str(&root);
    }
    if !pn.is_zero() || s.is_empty() {
        if !s.is_empty() && pn.is_positive() {
            s.push('+');
        }
        s.push_str(&pn.to_string());
    }
    if denom != 1.into() {
        s = format!("({s})/{denom}");
    }
    s
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Element `a + bω` of `Q(√-d)` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadRat {
    pub d: u64,
    pub a: Rat,
    pub b: Rat,
}

impl QuadRat {
    /// `p + q√-d`.
    pub fn from_sqrt_coords(d: u64, p: Rat, q: Rat) -> Self {
        if omega_half(d) {
            // √-d = 2ω - 1
            QuadRat { d, a: &p - &q, b: &q * int(2) }
        } else {
            QuadRat { d, a: p, b: q }
        }
    }

    pub fn sqrt_coords(&self) -> (Rat, Rat) {
        if omega_half(self.d) {
            let half = &self.b / int(2);
            (&self.a + &half, half)
        } else {
            (self.a.clone(), self.b.clone())
        }
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn to_quadint(&self) -> Option<QuadInt> {
        if !self.is_integral() {
            return None;
        }
        let a = i64::try_from(self.a.to_integer()).ok()?;
        let b = i64::try_from(self.b.to_integer()).ok()?;
        Some(QuadInt { d: self.d, a, b })
    }

    pub fn norm(&self) -> Rat {
        let (p, q) = self.sqrt_coords();
        &p * &p + int(self.d as i64) * &q * &q
    }

    pub fn render(&self) -> String {
        let (p, q) = self.sqrt_coords();
        render_sqrt(self.d, &p, &q)
    }

    fn check(&self, o: &QuadRat) -> Result<()> {
        if self.d == o.d {
            Ok(())
        } else {
            Err(Error::MixedField(self.d, o.d))
        }
    }

    pub fn add(&self, o: &QuadRat) -> Result<QuadRat> {
        self.check(o)?;
        Ok(QuadRat { d: self.d, a: &self.a + &o.a, b: &self.b + &o.b })
    }

    pub fn sub(&self, o: &QuadRat) -> Result<QuadRat> {
        self.check(o)?;
        Ok(QuadRat { d: self.d, a: &self.a - &o.a, b: &self.b - &o.b })
    }

    pub fn mul(&self, o: &QuadRat) -> Result<QuadRat> {
        self.check(o)?;
        let (p1, q1) = self.sqrt_coords();
        let (p2, q2) = o.sqrt_coords();
        let d = int(self.d as i64);
        let p = &p1 * &p2 - d * &q1 * &q2;
        let q = &p1 * &q2 + &p2 * &q1;
        Ok(QuadRat::from_sqrt_coords(self.d, p, q))
    }

    pub fn div(&self, o: &QuadRat) -> Result<QuadRat> {
        self.check(o)?;
        let n = o.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (p, q) = o.sqrt_coords();
        let inv = QuadRat::from_sqrt_coords(self.d, &p / &n, -&q / &n);
        self.mul(&inv)
    }
}

/// The unit group of the ring of integers of `Q(√-d)`.
pub fn roots_of_unity(d: u64) -> Vec<QuadInt> {
    match d {
        1 => vec![QuadInt::embed(1, 1), QuadInt::omega(1), QuadInt::embed(-1, 1), QuadInt::omega(1).neg()],
        3 => {
            let z = QuadInt::omega(3);
            let z2 = z.mul(&z).unwrap();
            vec![QuadInt::embed(1, 3), z, z2, QuadInt::embed(-1, 3), z.neg(), z2.neg()]
        }
        _ => vec![QuadInt::embed(1, d), QuadInt::embed(-1, d)],
    }
}

pub fn is_unit(x: &QuadInt) -> bool {
    x.norm() == 1
}

/// Square-free `d` admitting a non-rational element of modulus at most `m`.
pub fn eligible_fields(m: &Rat) -> Vec<u64> {
    let m2 = m * m;
    let mut out = Vec::new();
    let mut d = 1u64;
    loop {
        let min_norm = |dd: u64| if omega_half(dd) { Rat::new((1 + dd as i64).into(), 4.into()) } else { int(dd as i64) };
        // the (1+d)/4 bound is the weaker one, so stop once it fails
        if Rat::new((1 + d as i64).into(), 4.into()) > m2 {
            break;
        }
        if is_squarefree(d) && min_norm(d) <= m2 {
            out.push(d);
        }
        d += 1;
    }
    out
}

/// Elements of field `d` with `0 < |x| <= m` and `b != 0`, ordered by `b` then `a`.
fn nonrational_in_field(d: u64, m2: &Rat, normalize: bool) -> Vec<QuadInt> {
    let mut out = Vec::new();
    let bmax = {
        // |x|^2 >= d b^2 / 4 in the ω-half case, d b^2 otherwise
        let mut b = 0i64;
        loop {
            let lower = if omega_half(d) { Rat::new((d as i64 * (b + 1) * (b + 1)).into(), 4.into()) } else { int(d as i64 * (b + 1) * (b + 1)) };
            if &lower > m2 {
                break b;
            }
            b += 1;
        }
    };
    let amax = m2.ceil().to_integer();
    let amax = i64::try_from(amax.sqrt()).unwrap_or(i64::MAX / 4) + 1;
    let bs: Vec<i64> = if normalize { (1..=bmax).collect() } else { (-bmax..=bmax).filter(|&b| b != 0).collect() };
    for b in bs {
        let shift = if omega_half(d) { b.div_euclid(2) } else { 0 };
        for a in (-amax - shift - 1)..=(amax - shift + 1) {
            let x = QuadInt { d, a, b };
            if &x.abs_sq() <= m2 {
                out.push(x);
            }
        }
    }
    out
}

/// All elements of field `d` with `0 < |x| <= m` (rational integers included).
pub fn enumerate_in_field(d: u64, m: &Rat, normalize: bool) -> Vec<QuadInt> {
    let m2 = m * m;
    let n = m.floor().to_integer();
    let n = i64::try_from(n).unwrap_or(0).max(0);
    let mut out: Vec<QuadInt> = if normalize { (1..=n).map(|k| QuadInt::embed(k, d)).collect() } else { (-n..=n).filter(|&k| k != 0).map(|k| QuadInt::embed(k, d)).collect() };
    out.extend(nonrational_in_field(d, &m2, normalize));
    out
}

/// All imaginary quadratic integers with `0 < |x| <= m` over every field, rational integers
/// listed once (under `d = 1`). Ordered by `d`, then `b`, then `a`.
pub fn enumerate_bounded(m: &Rat, normalize: bool) -> Vec<QuadInt> {
    if m.is_negative() {
        return Vec::new();
    }
    let m2 = m * m;
    let fields = eligible_fields(m);
    let mut per_d: Vec<Vec<QuadInt>> = fields.par_iter().map(|&d| nonrational_in_field(d, &m2, normalize)).collect();
    let n = i64::try_from(m.floor().to_integer()).unwrap_or(0).max(0);
    let ints: Vec<QuadInt> = if normalize { (1..=n).map(|k| QuadInt::embed(k, 1)).collect() } else { (-n..=n).filter(|&k| k != 0).map(|k| QuadInt::embed(k, 1)).collect() };
    let mut out = Vec::new();
    for (i, list) in per_d.iter_mut().enumerate() {
        if fields[i] == 1 {
            out.extend(ints.iter().copied());
        }
        out.append(list);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn moduli() {
        assert_eq!(QuadInt::new(1, 1, 1).unwrap().abs_sq(), int(2));
        assert_eq!(QuadInt::new(3, 0, 1).unwrap().abs_sq(), int(1));
        assert_eq!(QuadInt::new(2, 3, 0).unwrap().abs_sq(), int(9));
        assert!(QuadInt::new(4, 1, 1).is_err());
    }

    #[test]
    fn exact_division() {
        let i = QuadInt::omega(1);
        let two_i = QuadInt::new(1, 0, 2).unwrap();
        assert_eq!(QuadInt::embed(-4, 1).div_exact(&two_i).unwrap(), Some(two_i));
        assert_eq!(QuadInt::new(1, 1, 1).unwrap().mul(&QuadInt::new(1, 1, -1).unwrap()).unwrap(), QuadInt::embed(2, 1));
        assert_eq!(QuadInt::new(5, 1, 1).unwrap().div_exact(&QuadInt::embed(2, 5)).unwrap(), None);
        assert_eq!(i.div_exact(&QuadInt::zero(1)), Err(Error::DivisionByZero));
        assert!(i.mul(&QuadInt::omega(2)).is_err());
    }

    #[test]
    fn unit_groups() {
        assert_eq!(roots_of_unity(1).len(), 4);
        assert_eq!(roots_of_unity(3).len(), 6);
        assert_eq!(roots_of_unity(7).len(), 2);
        for d in [1, 3, 7] {
            let us = roots_of_unity(d);
            for u in &us {
                assert!(is_unit(u));
                for v in &us {
                    assert!(us.contains(&u.mul(v).unwrap()));
                }
            }
        }
    }

    #[test]
    fn appendix_count() {
        let xs = enumerate_bounded(&int(3), true);
        assert_eq!(xs.len(), 76);
        let mut ds: Vec<u64> = xs.iter().map(|x| x.d).collect();
        ds.dedup();
        assert_eq!(ds, vec![1, 2, 3, 5, 6, 7, 11, 15, 19, 23, 31, 35]);
        assert!(enumerate_bounded(&rat(1, 2), true).is_empty());
        let units: Vec<String> = enumerate_bounded(&int(1), true).iter().map(|x| x.render()).collect();
        assert_eq!(units, vec!["1", "i", "(√-3-1)/2", "(√-3+1)/2"]);
    }

    #[test]
    fn integrality() {
        assert!(QuadRat::from_sqrt_coords(3, rat(1, 2), rat(1, 2)).is_integral());
        assert!(!QuadRat::from_sqrt_coords(1, rat(1, 2), int(0)).is_integral());
        assert!(!QuadRat::from_sqrt_coords(3, int(0), rat(7, 3)).is_integral());
        assert!(!QuadRat::from_sqrt_coords(3, int(0), rat(-7, 3)).is_integral());
    }

    #[test]
    fn rendering() {
        let x = QuadRat::from_sqrt_coords(3, rat(3, 2), rat(5, 2)).to_quadint().unwrap();
        assert_eq!(x.render(), "(5√-3+3)/2");
        assert_eq!(QuadInt::new(1, -1, 3).unwrap().render(), "3i-1");
        assert_eq!(QuadInt::new(17, 0, 1).unwrap().render(), "√-17");
        assert_eq!(QuadInt::embed(-4, 2).render(), "-4");
    }
}
