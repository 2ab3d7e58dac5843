//! Rational helpers on top of `BigRational`: exact decimal parsing, significant-digit
//! rounding, dyadic rounding and square-root brackets.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn pow10(e: i64) -> Rat {
    let p = BigInt::from(10u32).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

pub fn pow2(e: i64) -> Rat {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rat::from_integer(p)
    } else {
        Rat::new(BigInt::one(), p)
    }
}

/// Parse `"8.86"`, `"-3"`, `"1/2"`, `"3.74e12"` or `"1e-4"` as an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Rat::new(n, d));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{ip}{fp}").parse().map_err(|_| bad())?;
    let mut q = Rat::from_integer(digits) * pow10(exp - fp.len() as i64);
    if neg {
        q = -q;
    }
    Ok(q)
}

/// `floor(log10(q))` for `q > 0`.
pub fn floor_log10(q: &Rat) -> i64 {
    assert!(q.is_positive(), "floor_log10 of non-positive value");
    let nd = q.numer().to_string().len() as i64;
    let dd = q.denom().to_string().len() as i64;
    let mut e = nd - dd;
    while pow10(e) > *q {
        e -= 1;
    }
    while pow10(e + 1) <= *q {
        e += 1;
    }
    e
}

/// Smallest value with at most `digits` significant decimal digits that is `>= q`.
pub fn round_up_sig(q: &Rat, digits: u32) -> Rat {
    if q.is_zero() {
        return Rat::zero();
    }
    if q.is_negative() {
        return -round_down_sig(&-q, digits);
    }
    let scale = pow10(floor_log10(q) - (digits as i64 - 1));
    (q / &scale).ceil() * scale
}

/// Largest value with at most `digits` significant decimal digits that is `<= q`.
pub fn round_down_sig(q: &Rat, digits: u32) -> Rat {
    if q.is_zero() {
        return Rat::zero();
    }
    if q.is_negative() {
        return -round_up_sig(&-q, digits);
    }
    let scale = pow10(floor_log10(q) - (digits as i64 - 1));
    (q / &scale).floor() * scale
}

/// Smallest multiple of `10^-places` that is `>= q`.
pub fn round_up_dec(q: &Rat, places: u32) -> Rat {
    let scale = pow10(-(places as i64));
    (q / &scale).ceil() * scale
}

/// Round half-up to `digits` significant digits.
pub fn round_nearest_sig(q: &Rat, digits: u32) -> Rat {
    if q.is_zero() {
        return Rat::zero();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let scale = pow10(floor_log10(&a) - (digits as i64 - 1));
    let r = (a / &scale + rat(1, 2)).floor() * scale;
    if neg {
        -r
    } else {
        r
    }
}

/// Decimal rendering with `digits` significant digits (nearest), e.g. `429.8` or `4.726e8`.
pub fn decimal_hint(q: &Rat, digits: u32) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let r = round_nearest_sig(q, digits);
    let neg = r.is_negative();
    let a = r.abs();
    let e = floor_log10(&a);
    let mant = (&a / pow10(e - (digits as i64 - 1))).to_integer();
    let ms = mant.to_string();
    let sign = if neg { "-" } else { "" };
    if (0..6).contains(&e) && (e as usize) < ms.len() {
        let (ip, fp) = ms.split_at(e as usize + 1);
        if fp.is_empty() {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    } else if (0..6).contains(&e) {
        format!("{sign}{ms}{}", "0".repeat(e as usize + 1 - ms.len()))
    } else {
        let (h, t) = ms.split_at(1);
        if t.is_empty() {
            format!("{sign}{h}e{e}")
        } else {
            format!("{sign}{h}.{t}e{e}")
        }
    }
}

/// Canonical exact rendering: `"num/den"` or `"num"`.
pub fn exact_string(q: &Rat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn powi(q: &Rat, n: u32) -> Rat {
    Rat::new(q.numer().pow(n), q.denom().pow(n))
}

/// Floor of `q` on the grid `2^-bits`.
pub fn dyadic_floor(q: &Rat, bits: u32) -> Rat {
    let s = BigInt::one() << bits;
    Rat::new((q * Rat::from_integer(s.clone())).floor().to_integer(), s)
}

/// Ceiling of `q` on the grid `2^-bits`.
pub fn dyadic_ceil(q: &Rat, bits: u32) -> Rat {
    let s = BigInt::one() << bits;
    Rat::new((q * Rat::from_integer(s.clone())).ceil().to_integer(), s)
}

/// Nearest point of the grid `2^-bits` (ties away from zero are irrelevant here).
pub fn dyadic_round(q: &Rat, bits: u32) -> Rat {
    let s = BigInt::one() << bits;
    Rat::new((q * Rat::from_integer(s.clone())).round().to_integer(), s)
}

/// `(lo, hi)` with `lo <= sqrt(q) <= hi` and `hi - lo <= 2^-bits` (for `q >= 0`).
pub fn sqrt_bounds(q: &Rat, bits: u32) -> (Rat, Rat) {
    assert!(!q.is_negative(), "sqrt of negative rational");
    if q.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    // floor(sqrt(q * 4^bits)) / 2^bits
    let scaled = (q * Rat::from_integer(BigInt::one() << (2 * bits))).floor().to_integer();
    let r = scaled.to_biguint().map(|u| u.sqrt()).unwrap_or_else(BigUint::zero);
    let r = BigInt::from_biguint(Sign::Plus, r);
    let den = BigInt::one() << bits;
    let lo = Rat::new(r.clone(), den.clone());
    let mut hi = Rat::new(r + 1, den);
    if &lo * &lo == *q {
        hi = lo.clone();
    }
    (lo, hi)
}

pub fn sqrt_upper(q: &Rat, bits: u32) -> Rat {
    sqrt_bounds(q, bits).1
}

pub fn sqrt_lower(q: &Rat, bits: u32) -> Rat {
    sqrt_bounds(q, bits).0
}

pub fn to_f64(q: &Rat) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn max_rat(a: Rat, b: Rat) -> Rat {
    if a.cmp(&b) == Ordering::Less {
        b
    } else {
        a
    }
}

pub fn min_rat(a: Rat, b: Rat) -> Rat {
    if a.cmp(&b) == Ordering::Greater {
        b
    } else {
        a
    }
}

pub fn lcm_denoms<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
