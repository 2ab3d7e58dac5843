//! The terminating hypergeometric polynomials `chi_{4,r}`, their denominator data and the
//! finite-range check of the Lettl–Pethő–Voutier bounds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::rat::{lcm_denoms, powi};
use crate::exactnum::{int, parse_rat, rat, Rat};
use crate::series::poly::{homogeneous_eval, Poly, Ring};

/// `2F1(-r, -r - 1/4; 3/4; X)` as an exact polynomial of degree `r`.
pub fn chi(r: u32) -> Poly<Rat> {
    let a = -int(r as i64);
    let b = -int(r as i64) - rat(1, 4);
    let c = rat(3, 4);
    let mut coeffs = Vec::with_capacity(r as usize + 1);
    let mut term = Rat::one();
    coeffs.push(term.clone());
    for k in 0..r as i64 {
        let k_r = int(k);
        term = term * (&a + &k_r) * (&b + &k_r) / ((&c + &k_r) * int(k + 1));
        coeffs.push(term.clone());
    }
    Poly::new(coeffs)
}

/// `chi*(x, y) = y^r chi(x/y)`.
pub fn chi_star<R: Ring>(r: u32, x: &R, y: &R) -> R {
    homogeneous_eval(&chi(r), r as usize, x, y)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenomData {
    pub r: u32,
    /// lcm of the denominators of the coefficients of `chi_{4,r}`
    pub delta: BigInt,
    /// gcd of the numerators of the coefficients of `chi_{4,r}(1 - 8X)`
    pub n: BigInt,
    /// `(delta/n) · chi_{4,r}(1 - 8X)`, integral with content 1
    pub cleared: Poly<Rat>,
}

impl DenomData {
    pub fn ratio(&self) -> Rat {
        Rat::new(self.delta.clone(), self.n.clone())
    }
}

pub fn denom_data(r: u32) -> Result<DenomData> {
    if r == 0 {
        return Err(Error::Domain("denominator data needs r >= 1".into()));
    }
    let c = chi(r);
    let delta = lcm_denoms(c.coeffs());
    let shifted = c.compose(&Poly::new(vec![int(1), int(-8)]));
    let n = shifted.coeffs().iter().fold(BigInt::zero(), |g, q| g.gcd(q.numer()));
    let cleared = shifted.scale(&Rat::new(delta.clone(), n.clone()));
    if !cleared.coeffs().iter().all(|q| q.is_integer()) {
        return Err(Error::Integrality(format!("cleared chi_(4,{r})(1-8X) is not integral")));
    }
    Ok(DenomData { r, delta, n, cleared })
}

/// `Gamma(3/4) r! / Gamma(r + 3/4) = r! / prod_{k<r} (k + 3/4)`.
pub fn gamma_ratio_g1(r: u32) -> Rat {
    (0..r as i64).fold(Rat::one(), |acc, k| acc * int(k + 1) / (int(k) + rat(3, 4)))
}

/// `Gamma(r + 5/4) / (Gamma(1/4) r!) = (1/4) prod_{k=1..r} (k + 1/4) / r!`.
pub fn gamma_ratio_g2(r: u32) -> Rat {
    (1..=r as i64).fold(rat(1, 4), |acc, k| acc * (int(k) + rat(1, 4)) / int(k))
}

#[derive(Clone, Debug)]
pub struct LettlRow {
    pub r: u32,
    pub lhs1: Rat,
    pub rhs1: Rat,
    pub lhs2: Rat,
    pub rhs2: Rat,
}

impl LettlRow {
    /// Relative margins `1 - lhs/rhs` for both inequalities.
    pub fn margins(&self) -> (Rat, Rat) {
        (Rat::one() - &self.lhs1 / &self.rhs1, Rat::one() - &self.lhs2 / &self.rhs2)
    }

    pub fn ok(&self) -> bool {
        self.lhs1 < self.rhs1 && self.lhs2 < self.rhs2
    }
}

/// Check `2^(r+2) (delta/n) g1(r) < 3.32·1.35^r` and `2^(4r+3) (delta/n) g2(r) < 1.6·10.7^r`
/// exactly for `1 <= r <= rmax`.
pub fn verify_lettl(rmax: u32) -> Result<Vec<LettlRow>> {
    let (k1, b1) = (parse_rat("3.32")?, parse_rat("1.35")?);
    let (k2, b2) = (parse_rat("1.6")?, parse_rat("10.7")?);
    let two = int(2);
    let mut rows = Vec::new();
    for r in 1..=rmax {
        let dd = denom_data(r)?;
        let ratio = dd.ratio();
        let row = LettlRow {
            r,
            lhs1: powi(&two, r + 2) * &ratio * gamma_ratio_g1(r),
            rhs1: &k1 * powi(&b1, r),
            lhs2: powi(&two, 4 * r + 3) * &ratio * gamma_ratio_g2(r),
            rhs2: &k2 * powi(&b2, r),
        };
        if !row.ok() {
            return Err(Error::Certification(format!("Lettl bound violated at r = {r}")));
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Content (gcd of coefficients) of an integral polynomial.
pub fn content(p: &Poly<Rat>) -> BigInt {
    p.coeffs().iter().fold(BigInt::zero(), |g, q| g.gcd(&q.to_integer())).abs()
}
