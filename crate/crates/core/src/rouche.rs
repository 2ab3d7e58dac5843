//! Uniform root enclosures for `f_t` by Rouché's theorem, root separation, and a Newton-based
//! isolator for the four roots at a concrete `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::rat::{dyadic_round, powi, sqrt_lower, sqrt_upper};
use crate::exactnum::{int, parse_rat, Rat};
use crate::series::{shipped_series, GaussRat, Poly, Ring, RootType};

/// Laurent polynomial `s^low · poly(s)` in `s = 1/t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent {
    low: i64,
    poly: Poly<GaussRat>,
}

impl Laurent {
    pub fn new(low: i64, poly: Poly<GaussRat>) -> Self {
        let Some(v) = poly.valuation() else {
            return Laurent { low: 0, poly };
        };
        let coeffs = poly.coeffs()[v..].to_vec();
        Laurent { low: low + v as i64, poly: Poly::new(coeffs) }
    }

    pub fn monomial(c: GaussRat, exp: i64) -> Self {
        Laurent::new(exp, Poly::constant(c))
    }

    /// `-1/t`, `-1`, `1`, `t` and friends: a single term `c · s^exp`.
    pub fn term(c: i64, exp: i64) -> Self {
        Laurent::monomial(GaussRat::int(c, 0), exp)
    }

    pub fn from_series_poly(p: &Poly<Rat>) -> Self {
        Laurent::new(0, p.map(|c| GaussRat::real(c.clone())))
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(i64, GaussRat)> {
        self.poly
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.low + i as i64, c.clone()))
            .collect()
    }

    pub fn lowest(&self) -> Option<(i64, GaussRat)> {
        self.terms().into_iter().next()
    }

    /// Value at `s = 1/t` for a concrete `t`.
    pub fn eval_at_t(&self, t: &GaussRat) -> GaussRat {
        let s = t.inv().expect("t must be nonzero");
        let base = if self.low >= 0 { s.pow(self.low as u32) } else { t.pow((-self.low) as u32) };
        self.poly.eval(&s) * base
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = terms.iter().map(|(e, c)| format!("({c})s^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Zero for Laurent {
    fn zero() -> Self {
        Laurent { low: 0, poly: Poly::zero() }
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Laurent::term(1, 0)
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, o: Laurent) -> Laurent {
        if self.is_zero() {
            return o;
        }
        if o.is_zero() {
            return self;
        }
        let low = self.low.min(o.low);
        let a = self.poly.shift((self.low - low) as usize);
        let b = o.poly.shift((o.low - low) as usize);
        Laurent::new(low, a + b)
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { low: self.low, poly: -self.poly }
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, o: Laurent) -> Laurent {
        self + (-o)
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, o: Laurent) -> Laurent {
        Laurent::new(self.low + o.low, self.poly * o.poly)
    }
}

impl Ring for Laurent {
    fn from_rat(q: &Rat) -> Self {
        Laurent::monomial(GaussRat::real(q.clone()), 0)
    }
}

/// `f_t(X)` with Laurent coefficients (`t = s^-1`).
pub fn quartic_laurent() -> Poly<Laurent> {
    Poly::new(vec![Laurent::term(1, 0), Laurent::term(1, -1), Laurent::term(-6, 0), Laurent::term(-1, -1), Laurent::term(1, 0)])
}

/// One majorized term `coeff · |s|^s_power` of the normalized inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct MajorantTerm {
    pub z_power: usize,
    pub s_power: i64,
    pub coeff: Rat,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnclosureCert {
    pub center: Laurent,
    pub radius_c: Rat,
    pub radius_exp: i64,
    pub tmin: Rat,
    pub verified: bool,
    /// `1 - Σ majorants` at `|t| = tmin`: the certified relative gap.
    pub margin: Rat,
    pub terms: Vec<MajorantTerm>,
    pub diagnostic: Option<String>,
}

/// Certify that `f_t` has a root within `radius_c/|t|^radius_exp` of `center(1/t)` for every
/// `|t| >= tmin`.
///
/// With `h(z) = f(center + z)` and `rho` the radius, the dominant term `c_d s^j_d z` of the
/// linear coefficient is compared against everything else: each other term, divided by
/// `|c_d| rho |s|^j_d`, is a monomial in `|s|`; nonnegative exponents make the sum decrease in
/// `|t|`, so its value at `tmin` bounds all larger `|t|`.
pub fn certify_enclosure(center: &Laurent, radius_c: &Rat, radius_exp: i64, tmin: &Rat) -> Result<EnclosureCert> {
    if !tmin.is_positive() || !radius_c.is_positive() {
        return Err(Error::Precondition("tmin and radius must be positive".into()));
    }
    let shift: Poly<Laurent> = Poly::new(vec![center.clone(), Laurent::one()]);
    let h = quartic_laurent().compose(&shift);
    let (jd, cd) = h
        .coeff(1)
        .lowest()
        .ok_or_else(|| Error::Certification(format!("no linear term in f(center + z) for center {center}")))?;
    let cd_abs = sqrt_lower(&cd.norm(), 128);
    if !cd_abs.is_positive() {
        return Err(Error::Certification("dominant coefficient not bounded away from zero".into()));
    }
    let denom = &cd_abs * radius_c;
    let mut terms = Vec::new();
    for (k, coeff) in h.coeffs().iter().enumerate() {
        for (j, c) in coeff.terms() {
            if k == 1 && j == jd {
                continue;
            }
            let rk = if k == 0 { Rat::one() } else { powi(radius_c, k as u32) };
            terms.push(MajorantTerm {
                z_power: k,
                s_power: j + (k as i64 - 1) * radius_exp - jd,
                coeff: c.abs_upper() * rk / &denom,
            });
        }
    }
    let bad: Vec<&MajorantTerm> = terms.iter().filter(|m| m.s_power < 0).collect();
    let sum = terms.iter().fold(Rat::zero(), |acc, m| acc + &m.coeff / tpow(tmin, m.s_power.max(0)));
    let margin = Rat::one() - &sum;
    let diagnostic = if !bad.is_empty() {
        Some(format!("majorant with negative power of 1/|t| (z^{}, s^{})", bad[0].z_power, bad[0].s_power))
    } else if !margin.is_positive() {
        Some("|h(0)| bound does not stay below |h(z) - h(0)| on the circle".into())
    } else {
        None
    };
    Ok(EnclosureCert {
        center: center.clone(),
        radius_c: radius_c.clone(),
        radius_exp,
        tmin: tmin.clone(),
        verified: diagnostic.is_none(),
        margin,
        terms,
        diagnostic,
    })
}

fn tpow(t: &Rat, e: i64) -> Rat {
    powi(t, e as u32)
}

/// The four low-order enclosures, in root order `alpha^(0..3)`.
pub fn low_order_specs() -> Result<[(Laurent, Rat, i64); 4]> {
    Ok([
        (Laurent::term(-1, 1), parse_rat("5.01")?, 3),
        (Laurent::term(-1, 0), parse_rat("2.16")?, 1),
        (Laurent::term(1, -1), parse_rat("5.02")?, 1),
        (Laurent::term(1, 0), parse_rat("2.16")?, 1),
    ])
}

pub fn certify_low_order(tmin: &Rat) -> Result<Vec<EnclosureCert>> {
    low_order_specs()?.iter().map(|(c, r, e)| certify_enclosure(c, r, *e, tmin)).collect()
}

/// Center, radius constant and exponent of the high-order enclosure for `which`.
pub fn high_order_spec(which: RootType) -> Result<(Laurent, Rat, i64)> {
    let (b, b3) = shipped_series()?;
    Ok(match which {
        RootType::Type0 => (Laurent::from_series_poly(&b.to_poly()), parse_rat("2.71e16")?, 31),
        RootType::Type3 => (Laurent::from_series_poly(&b3.to_poly()), parse_rat("9.84e15")?, 30),
    })
}

pub fn certify_high_order(which: RootType) -> Result<EnclosureCert> {
    let (center, r, e) = high_order_spec(which)?;
    certify_enclosure(&center, &r, e, &int(100))
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSeparation {
    pub tmin: Rat,
    /// lower bound for the distance between any two of `alpha^(0)`, `alpha^(1)`, `alpha^(3)`
    pub min_pairwise: Rat,
    /// lower bound for `|alpha^(2) - alpha^(i)| / |t|`
    pub min_to_alpha2: Rat,
    /// lower bound for `|t| · |alpha^(0)|`
    pub alpha0_lower: Rat,
}

pub fn root_separation(tmin: &Rat) -> Result<RootSeparation> {
    let certs = certify_low_order(tmin)?;
    if let Some(c) = certs.iter().find(|c| !c.verified) {
        return Err(Error::Certification(format!("enclosure around {} not verified", c.center)));
    }
    let t = tmin;
    let t2 = t * t;
    let r0 = parse_rat("5.01")? / (&t2 * t);
    let r13 = parse_rat("2.16")? / t;
    let r2 = parse_rat("5.02")?;
    let one = Rat::one();
    let d01 = &one - one.clone() / t - &r0 - &r13;
    let d13 = int(2) - &r13 * int(2);
    let min_pairwise = d01.min(d13);
    // |t - (±1)| - radii and |t + 1/t| - radii, divided by |t|
    let d2_13 = &one - one.clone() / t - (&r2 + parse_rat("2.16")?) / &t2;
    let d2_0 = &one - (&r2 + &one) / &t2 - parse_rat("5.01")? / (&t2 * &t2);
    Ok(RootSeparation {
        tmin: t.clone(),
        min_pairwise,
        min_to_alpha2: d2_13.min(d2_0),
        alpha0_lower: &one - parse_rat("5.01")? / &t2,
    })
}

/// A disc `|z - center| <= radius` containing exactly one root of `f_t`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootDisc {
    pub center: GaussRat,
    pub radius: Rat,
}

fn eval_f(t: &GaussRat, z: &GaussRat) -> (GaussRat, GaussRat) {
    let z2 = z * z;
    let z3 = &z2 * z;
    let f = &z3 * z - t * &z3 - z2.scale(&int(6)) + t * z + GaussRat::one();
    let df = z3.scale(&int(4)) - t * &z2.scale(&int(3)) - z.scale(&int(12)) + t.clone();
    (f, df)
}

fn round_g(z: &GaussRat, bits: u32) -> GaussRat {
    GaussRat::new(dyadic_round(&z.re, bits), dyadic_round(&z.im, bits))
}

fn abs_lo(z: &GaussRat) -> Rat {
    sqrt_lower(&z.norm(), 128)
}

fn abs_hi(z: &GaussRat) -> Rat {
    sqrt_upper(&z.norm(), 128)
}

/// Newton refinement; returns the center and a certified radius `4|f|/|f'|` (inflated by the
/// error `t_err` in `t`).
fn newton_disc(t: &GaussRat, t_err: &Rat, start: GaussRat, bits: u32) -> Result<RootDisc> {
    let tol = crate::exactnum::rat::pow2(-(bits as i64) - 4);
    let mut z = start;
    for _ in 0..200 {
        let (f, df) = eval_f(t, &z);
        if df.is_zero() {
            return Err(Error::Indeterminate);
        }
        let step = f / df;
        z = round_g(&(z - step.clone()), bits + 16);
        if step.norm() < &tol * &tol {
            break;
        }
    }
    let (f, df) = eval_f(t, &z);
    let z2 = &z * &z;
    let dt_f = abs_hi(&(&z2 * &z - z.clone()));
    let dt_df = abs_hi(&(z2.scale(&int(3)) - GaussRat::one()));
    let num = abs_hi(&f) + t_err * dt_f;
    let den = abs_lo(&df) - t_err * dt_df;
    if !den.is_positive() {
        return Err(Error::Indeterminate);
    }
    Ok(RootDisc { center: z, radius: int(4) * num / den })
}

fn disjoint(a: &RootDisc, b: &RootDisc) -> bool {
    let d = (a.center.clone() - b.center.clone()).norm();
    let r = &a.radius + &b.radius;
    d > &r * &r
}

/// Image disc of `D(c, r)` under `z -> u + v/(z - p)`, given `|c - p| > r`.
fn mobius_image(disc: &RootDisc, u: i64, v: i64, p: i64) -> Result<RootDisc> {
    let cp = disc.center.clone() - GaussRat::int(p, 0);
    let m = abs_lo(&cp);
    if m <= disc.radius {
        return Err(Error::Indeterminate);
    }
    let center = GaussRat::int(u, 0) + GaussRat::int(v, 0) / cp;
    let radius = int(v.abs()) * &disc.radius / (&m * (&m - &disc.radius));
    Ok(RootDisc { center, radius })
}

/// Isolate the roots `alpha^(0..3)` of `f_t` for `t` known to within `t_err`, with
/// `alpha^(1) = (alpha-1)/(alpha+1)`, `alpha^(2) = -1/alpha`, `alpha^(3) = -(alpha+1)/(alpha-1)`
/// checked by enclosing the Möbius images.
pub fn isolate_roots(t: &GaussRat, t_err: &Rat, bits: u32) -> Result<[RootDisc; 4]> {
    let tinv = t.inv().ok_or(Error::Precondition("t must be nonzero".into()))?;
    let d0 = newton_disc(t, t_err, -tinv, bits)?;
    let c0 = &d0.center;
    let guesses = [
        (c0.clone() - GaussRat::one()) / (c0.clone() + GaussRat::one()),
        -c0.inv().ok_or(Error::Indeterminate)?,
        -(c0.clone() + GaussRat::one()) / (c0.clone() - GaussRat::one()),
    ];
    let mut discs = vec![d0.clone()];
    for g in guesses {
        discs.push(newton_disc(t, t_err, round_g(&g, bits + 16), bits)?);
    }
    for i in 0..4 {
        for j in i + 1..4 {
            if !disjoint(&discs[i], &discs[j]) {
                return Err(Error::Indeterminate);
            }
        }
    }
    // (z-1)/(z+1) = 1 - 2/(z+1); -1/z; -(z+1)/(z-1) = -1 - 2/(z-1)
    let images = [mobius_image(&d0, 1, -2, -1)?, mobius_image(&d0, 0, -1, 0)?, mobius_image(&d0, -1, -2, 1)?];
    for (k, img) in images.iter().enumerate() {
        for (i, disc) in discs.iter().enumerate() {
            if i != k + 1 && !disjoint(img, disc) {
                return Err(Error::Indeterminate);
            }
        }
    }
    Ok([discs[0].clone(), discs[1].clone(), discs[2].clone(), discs[3].clone()])
}
