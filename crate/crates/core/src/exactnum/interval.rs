//! Closed rational intervals, a certified natural logarithm and the exponent `kappa(t)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::{dyadic_ceil, dyadic_floor, int, parse_rat, pow10, pow2, round_up_sig, to_f64, Rat};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RatInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        RatInterval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// `Some(ordering)` when the intervals are disjoint or both are the same point.
    pub fn certified_cmp(&self, other: &RatInterval) -> Option<Ordering> {
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn recip(&self) -> Result<RatInterval> {
        if self.contains_zero() {
            return Err(Error::Indeterminate);
        }
        Ok(RatInterval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn div(&self, other: &RatInterval) -> Result<RatInterval> {
        Ok(self * &other.recip()?)
    }

    pub fn scale(&self, k: &Rat) -> RatInterval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            RatInterval::new(a, b)
        } else {
            RatInterval::new(b, a)
        }
    }

    /// Widen outward onto the grid `2^-bits`.
    pub fn outward(&self, bits: u32) -> RatInterval {
        RatInterval::new(dyadic_floor(&self.lo, bits), dyadic_ceil(&self.hi, bits))
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &RatInterval {
    type Output = RatInterval;
    fn add(self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }
}

impl Sub for &RatInterval {
    type Output = RatInterval;
    fn sub(self, o: &RatInterval) -> RatInterval {
        RatInterval::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }
}

impl Mul for &RatInterval {
    type Output = RatInterval;
    fn mul(self, o: &RatInterval) -> RatInterval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval::new(lo, hi)
    }
}

impl Neg for &RatInterval {
    type Output = RatInterval;
    fn neg(self) -> RatInterval {
        RatInterval::new(-&self.hi, -&self.lo)
    }
}

/// `floor(log2(x))` for `x > 0`.
fn floor_log2(x: &Rat) -> i64 {
    let mut k = x.numer().bits() as i64 - x.denom().bits() as i64;
    while pow2(k) > *x {
        k -= 1;
    }
    while pow2(k + 1) <= *x {
        k += 1;
    }
    k
}

/// Enclosure of `2·atanh(y)` for `0 <= y < 1` with total error below `2^-bits`.
fn two_atanh(y: &Rat, bits: u32) -> RatInterval {
    if y.is_zero() {
        return RatInterval::point(Rat::zero());
    }
    let grid = bits + 8;
    let y2 = y * y;
    let tail_factor = (Rat::one() - &y2).recip();
    let eps = pow2(-(bits as i64) - 2);
    let mut lo = Rat::zero();
    let mut hi = Rat::zero();
    let mut pw = y.clone();
    let mut n: i64 = 0;
    loop {
        let term = &pw / int(2 * n + 1);
        lo += dyadic_floor(&term, grid);
        hi += dyadic_ceil(&term, grid);
        pw = &pw * &y2;
        n += 1;
        // remaining terms are bounded by y^(2n+1)/(2n+1) · 1/(1-y^2)
        let tail = &pw / int(2 * n + 1) * &tail_factor;
        if tail < eps {
            hi += tail;
            break;
        }
    }
    RatInterval::new(lo * int(2), hi * int(2))
}

/// Interval containing `ln(x)` with width at most `target_width`.
pub fn ln_enclosure(x: &Rat, target_width: &Rat) -> Result<RatInterval> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("ln of non-positive value {x}")));
    }
    if !target_width.is_positive() {
        return Err(Error::Domain("target width must be positive".into()));
    }
    if x.is_one() {
        return Ok(RatInterval::point(Rat::zero()));
    }
    let k = floor_log2(x);
    let m = x / pow2(k);
    let mut bits = 8u32;
    while pow2(-(bits as i64)) * int(k.abs() + 4) > *target_width {
        bits += 8;
    }
    loop {
        let y = (&m - Rat::one()) / (&m + Rat::one());
        let lm = two_atanh(&y, bits);
        let l2 = two_atanh(&Rat::new(BigInt::one(), BigInt::from(3)), bits);
        let r = &lm + &l2.scale(&int(k));
        let r = r.outward(bits + 4);
        if r.width() <= *target_width {
            return Ok(r);
        }
        bits += 16;
    }
}

/// Interval containing `(ln t + 1.08)/(ln t - 2.59)`.
pub fn kappa(t_abs: &Rat, target_width: &Rat) -> Result<RatInterval> {
    let c1 = parse_rat("1.08").unwrap();
    let c2 = parse_rat("2.59").unwrap();
    if !t_abs.is_positive() || !target_width.is_positive() {
        return Err(Error::Domain("kappa requires t > 0 and a positive width".into()));
    }
    let mut w = target_width / int(64);
    for _ in 0..64 {
        let l = ln_enclosure(t_abs, &w)?;
        if l.hi <= c2 {
            return Err(Error::UndefinedKappa(t_abs.to_string()));
        }
        if l.lo > c2 {
            // decreasing in ln t
            let lo = (&l.hi + &c1) / (&l.hi - &c2);
            let hi = (&l.lo + &c1) / (&l.lo - &c2);
            let k = RatInterval::new(lo, hi);
            if k.width() <= *target_width {
                return Ok(k);
            }
        }
        w /= int(16);
    }
    Err(Error::UndefinedKappa(t_abs.to_string()))
}

/// Ordering of `a^(1/p)` versus `b^(1/q)`, decided exactly via `a^q` versus `b^p`.
pub fn pow_cmp(a: &Rat, p: u32, b: &Rat, q: u32) -> Ordering {
    assert!(a.is_positive() && b.is_positive() && p > 0 && q > 0, "pow_cmp needs positive inputs");
    // a^q ? b^p  <=>  na^q · db^p ? nb^p · da^q
    let lhs = a.numer().pow(q) * b.denom().pow(p);
    let rhs = b.numer().pow(p) * a.denom().pow(q);
    lhs.cmp(&rhs)
}

/// Ordering of `prod b_i^(e_i)` versus 1 for positive bases and rational exponents.
///
/// All exponents are scaled to integers by their common denominator, so the comparison is exact.
pub fn pow_product_cmp(terms: &[(Rat, Rat)]) -> Ordering {
    let den = terms.iter().fold(BigInt::one(), |l, (_, e)| l.lcm(e.denom()));
    // numerators and denominators of both sides, kept unreduced
    let (mut ln, mut ld, mut rn, mut rd) = (BigInt::one(), BigInt::one(), BigInt::one(), BigInt::one());
    for (b, e) in terms {
        assert!(b.is_positive(), "pow_product_cmp needs positive bases");
        let n = (e * Rat::from_integer(den.clone())).to_integer();
        let k = n.abs().to_u32().expect("exponent too large for an exact comparison");
        match n.sign() {
            Sign::Plus => {
                ln *= b.numer().pow(k);
                ld *= b.denom().pow(k);
            }
            Sign::Minus => {
                rn *= b.numer().pow(k);
                rd *= b.denom().pow(k);
            }
            Sign::NoSign => {}
        }
    }
    (ln * rd).cmp(&(rn * ld))
}

/// Least `m · 10^k` with `m` of at most `sig` digits that is `>= a^e` (`a > 0`, `e` rational).
pub fn rpow_upper(a: &Rat, e: &Rat, sig: u32) -> Rat {
    assert!(a.is_positive() && sig > 0);
    if e.is_zero() {
        return Rat::one();
    }
    let bits = |q: &BigInt| q.bits() as f64;
    let lg = match to_f64(a) {
        v if v.is_finite() && v > 0.0 => v.log10(),
        _ => (bits(a.numer()) - bits(a.denom())) * std::f64::consts::LOG10_2,
    };
    let l = lg * to_f64(e);
    let k = l.floor() as i64 - (sig as i64 - 1);
    let scale = pow10(k);
    let mut m = BigInt::from(10f64.powf(l - k as f64).ceil() as i64).max(BigInt::one());
    let ok = |m: &BigInt| {
        let x = Rat::from_integer(m.clone()) * &scale;
        pow_product_cmp(&[(a.clone(), e.clone()), (x, -Rat::one())]) != Ordering::Greater
    };
    while !ok(&m) {
        m += 1;
    }
    while m > BigInt::one() && ok(&(&m - 1)) {
        m -= 1;
    }
    round_up_sig(&(Rat::from_integer(m) * scale), sig)
}
