//! Complex balls with rational midpoints and radii.
//!
//! Midpoints of products and quotients are rounded onto the grid `2^-GRID_BITS` and the
//! rounding error is folded into the radius, which keeps denominators bounded.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::{dyadic_round, int, parse_rat, powi, sqrt_lower, sqrt_upper, Rat};
use crate::error::{Error, Result};

pub const GRID_BITS: u32 = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexBall {
    pub re: Rat,
    pub im: Rat,
    pub rad: Rat,
}

impl ComplexBall {
    pub fn new(re: Rat, im: Rat, rad: Rat) -> Self {
        assert!(!rad.is_negative(), "negative ball radius");
        ComplexBall { re, im, rad }
    }

    pub fn exact(re: Rat, im: Rat) -> Self {
        ComplexBall::new(re, im, Rat::zero())
    }

    pub fn real(x: Rat) -> Self {
        ComplexBall::exact(x, Rat::zero())
    }

    pub fn zero() -> Self {
        ComplexBall::real(Rat::zero())
    }

    pub fn one() -> Self {
        ComplexBall::real(Rat::one())
    }

    pub fn i() -> Self {
        ComplexBall::exact(Rat::zero(), Rat::one())
    }

    pub fn mid_abs_sq(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Rigorous `[lo, hi]` for `|z|` over the ball.
    pub fn abs_bounds(&self) -> (Rat, Rat) {
        let n = self.mid_abs_sq();
        let lo = sqrt_lower(&n, GRID_BITS) - &self.rad;
        let lo = if lo.is_negative() { Rat::zero() } else { lo };
        (lo, sqrt_upper(&n, GRID_BITS) + &self.rad)
    }

    pub fn abs_upper(&self) -> Rat {
        self.abs_bounds().1
    }

    pub fn abs_lower(&self) -> Rat {
        self.abs_bounds().0
    }

    pub fn contains_zero(&self) -> bool {
        self.mid_abs_sq() <= &self.rad * &self.rad
    }

    pub fn contains(&self, re: &Rat, im: &Rat) -> bool {
        let dr = re - &self.re;
        let di = im - &self.im;
        &dr * &dr + &di * &di <= &self.rad * &self.rad
    }

    pub fn conj(&self) -> Self {
        ComplexBall::new(self.re.clone(), -&self.im, self.rad.clone())
    }

    pub fn inflate(&self, extra: &Rat) -> Self {
        ComplexBall::new(self.re.clone(), self.im.clone(), &self.rad + extra)
    }

    fn rounded(re: Rat, im: Rat, rad: Rat) -> Self {
        let r2 = dyadic_round(&re, GRID_BITS);
        let i2 = dyadic_round(&im, GRID_BITS);
        let err = (&r2 - &re).abs() + (&i2 - &im).abs();
        ComplexBall::new(r2, i2, rad + err)
    }

    pub fn scale(&self, k: &Rat) -> Self {
        ComplexBall::new(&self.re * k, &self.im * k, &self.rad * k.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.contains_zero() {
            return Err(Error::Indeterminate);
        }
        let n = self.mid_abs_sq();
        let re = &self.re / &n;
        let im = -&self.im / &n;
        // |1/z - 1/c| <= r / (|c| (|c| - r)) for |z - c| <= r < |c|
        let c_lo = sqrt_lower(&n, GRID_BITS);
        let gap = &c_lo - &self.rad;
        if !gap.is_positive() {
            return Err(Error::Indeterminate);
        }
        let rad = if self.rad.is_zero() { Rat::zero() } else { &self.rad / (&c_lo * gap) };
        Ok(ComplexBall::rounded(re, im, rad))
    }

    pub fn div(&self, other: &ComplexBall) -> Result<Self> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = ComplexBall::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Principal `n`-th root: the root whose argument lies in `(-pi/n, pi/n]`.
    ///
    /// Fails with `Indeterminate` if the enclosure cannot be shown to stay inside the
    /// principal sector (e.g. inputs touching the negative real axis).
    pub fn nth_root(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("root of order 0".into()));
        }
        if n == 1 {
            return Ok(self.clone());
        }
        let c_hi = sqrt_upper(&self.mid_abs_sq(), GRID_BITS);
        if self.contains_zero() {
            // every root has modulus at most (|c| + r)^(1/n)
            let bound = rat_root_upper(&(c_hi + &self.rad), n);
            return Ok(ComplexBall::new(Rat::zero(), Rat::zero(), bound));
        }
        // floating seed, then Newton refinement in exact arithmetic
        let (cr, ci) = (self.re.to_f64().unwrap_or(0.0), self.im.to_f64().unwrap_or(0.0));
        let (m, a) = ((cr * cr + ci * ci).sqrt(), ci.atan2(cr));
        let (m, a) = (m.powf(1.0 / n as f64), a / n as f64);
        let mut zr = rat_from_f64(m * a.cos());
        let mut zi = rat_from_f64(m * a.sin());
        let target = ComplexBall::exact(self.re.clone(), self.im.clone());
        for _ in 0..8 {
            let z = ComplexBall::exact(zr.clone(), zi.clone());
            let zn1 = z.pow(n - 1);
            let f = &(&zn1 * &z) - &target;
            let fp = zn1.scale(&int(n as i64));
            let Ok(step) = ComplexBall::exact(f.re, f.im).div(&ComplexBall::exact(fp.re, fp.im)) else {
                break;
            };
            zr = dyadic_round(&(&zr - &step.re), GRID_BITS + 8);
            zi = dyadic_round(&(&zi - &step.im), GRID_BITS + 8);
        }
        let z0 = ComplexBall::exact(zr.clone(), zi.clone());
        let resid = (&z0.pow(n) - &target).abs_upper() + &self.rad;
        let z_lo = z0.abs_lower();
        if !z_lo.is_positive() {
            return Err(Error::Indeterminate);
        }
        // z^n - w has a root within n |p(z0)| / |p'(z0)| = |p(z0)| / |z0|^(n-1) of z0
        let rho = &resid / powi(&z_lo, n - 1);
        // the disc isolates one root: consecutive roots are 2 |z| sin(pi/n) >= 4 |z| / n apart
        if &rho * int(n as i64) >= z_lo {
            return Err(Error::Indeterminate);
        }
        if !disc_in_sector(&zr, &zi, &rho, n) {
            return Err(Error::Indeterminate);
        }
        Ok(ComplexBall::new(zr, zi, rho))
    }
}

/// Whether the closed disc lies inside the open sector `|arg z| < pi/n`.
fn disc_in_sector(x: &Rat, y: &Rat, rho: &Rat, n: u32) -> bool {
    if n == 2 {
        return x > rho;
    }
    // t is a rational lower bound for tan(pi/n)
    let t = match n {
        3 => parse_rat("1.732").unwrap(),
        4 => Rat::one(),
        _ => parse_rat("3.14159").unwrap() / int(n as i64),
    };
    let gap = &t * x - y.abs();
    gap.is_positive() && &gap * &gap > rho * rho * (Rat::one() + &t * &t)
}

fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).unwrap_or_else(Rat::zero)
}

/// A rational `u >= x^(1/n)` for `x >= 0`.
fn rat_root_upper(x: &Rat, n: u32) -> Rat {
    if x.is_zero() {
        return Rat::zero();
    }
    let mut u = rat_from_f64(x.to_f64().unwrap_or(f64::MAX).powf(1.0 / n as f64) * 1.000_001 + 1e-300);
    while powi(&u, n) < *x {
        u *= parse_rat("1.001").unwrap();
    }
    u
}

impl fmt::Display for ComplexBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i) +/- {}", self.re, self.im, self.rad)
    }
}

impl Add for &ComplexBall {
    type Output = ComplexBall;
    fn add(self, o: &ComplexBall) -> ComplexBall {
        ComplexBall::new(&self.re + &o.re, &self.im + &o.im, &self.rad + &o.rad)
    }
}

impl Sub for &ComplexBall {
    type Output = ComplexBall;
    fn sub(self, o: &ComplexBall) -> ComplexBall {
        ComplexBall::new(&self.re - &o.re, &self.im - &o.im, &self.rad + &o.rad)
    }
}

impl Neg for &ComplexBall {
    type Output = ComplexBall;
    fn neg(self) -> ComplexBall {
        ComplexBall::new(-&self.re, -&self.im, self.rad.clone())
    }
}

impl Mul for &ComplexBall {
    type Output = ComplexBall;
    fn mul(self, o: &ComplexBall) -> ComplexBall {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        let rad = if self.rad.is_zero() && o.rad.is_zero() {
            Rat::zero()
        } else {
            let a = sqrt_upper(&self.mid_abs_sq(), GRID_BITS);
            let b = sqrt_upper(&o.mid_abs_sq(), GRID_BITS);
            a * &o.rad + b * &self.rad + &self.rad * &o.rad
        };
        if self.rad.is_zero() && o.rad.is_zero() && re.denom().bits() <= 2 * GRID_BITS as u64 {
            return ComplexBall::new(re, im, rad);
        }
        ComplexBall::rounded(re, im, rad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat::rat;

    #[test]
    fn gaussian_product_is_exact() {
        let p = &ComplexBall::one() * &ComplexBall::i();
        assert_eq!(p, ComplexBall::i());
    }

    #[test]
    fn three_four_five() {
        let (lo, hi) = ComplexBall::exact(int(3), int(4)).abs_bounds();
        assert_eq!((lo, hi), (int(5), int(5)));
    }

    #[test]
    fn fourth_root_of_sixteen() {
        let r = ComplexBall::real(int(16)).nth_root(4).unwrap();
        assert!(r.contains(&int(2), &int(0)));
        assert!(r.rad < rat(1, 1_000_000_000));
    }

    #[test]
    fn principal_square_root_of_i() {
        let r = ComplexBall::i().nth_root(2).unwrap();
        let h = rat(7071067811865475, 10_000_000_000_000_000);
        assert!((&r.re - &h).abs() < rat(1, 1_000_000_000_000));
        assert!(r.im.is_positive());
    }

    #[test]
    fn division_by_ball_around_zero() {
        let z = ComplexBall::new(rat(1, 10), int(0), rat(1, 5));
        assert_eq!(ComplexBall::one().div(&z), Err(Error::Indeterminate));
    }

    #[test]
    fn division_contains_quotient() {
        let a = ComplexBall::exact(int(1), int(2));
        let b = ComplexBall::new(int(3), int(-1), rat(1, 1000));
        let q = a.div(&b).unwrap();
        // (1+2i)/(3-i) = (1+7i)/10
        assert!(q.contains(&rat(1, 10), &rat(7, 10)));
    }
}
