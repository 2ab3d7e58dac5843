//! Lower bounds `|y| > |t|^k / c` for solutions of type 0 and type 3 with `min(|x|, |y|) >= 3`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::rat::{powi, round_down_sig, round_up_sig};
use crate::exactnum::{int, parse_rat, Rat};
use crate::rouche::{certify_enclosure, high_order_spec, root_separation};
use crate::series::thue::binary_form;
use crate::series::{pade, shipped_series, tail_bound, PadePair, Poly, RootType, Series};

/// `8.86`: the coefficient of `|x - alpha^(j) y| < 8.86 / (|t| |y|^3)`.
pub const BETA_COEFF: &str = "8.86";

fn lit(s: &str) -> Rat {
    parse_rat(s).expect("decimal literal")
}

/// `|y| > coeff · |t|`, valid for `|t| >= tmin`.
#[derive(Clone, Debug, PartialEq)]
pub struct Step1 {
    pub type_index: u8,
    /// the exact constant from the certified root enclosures
    pub coeff_exact: Rat,
    /// the published constant: `2.67` for type 0, `1/2.27` for type 3
    pub coeff: Rat,
}

/// The root enclosures and the separation behind the constant 8.86 must hold at `tmin`.
fn require_enclosures(tmin: &Rat) -> Result<()> {
    let sep = root_separation(tmin)?;
    // 8 / (0.96^2 · 0.98) < 8.86
    if sep.min_pairwise < lit("0.96") || sep.min_to_alpha2 < lit("0.98") {
        return Err(Error::Certification(format!("root separation too small at tmin = {tmin}")));
    }
    Ok(())
}

pub fn step1(which: RootType, tmin: &Rat) -> Result<Step1> {
    require_enclosures(tmin)?;
    // 8.86/(|t| |y|^3) <= (8.86/81) |y|/|t| once |y| >= 3
    let tail = lit(BETA_COEFF) / int(81);
    Ok(match which {
        RootType::Type0 => {
            // 3 <= |x| < (1.01 + 8.86/81) |y| / |t|, with 1 + 5.01/|t|^2 rounded to 1.01 first
            let exact = int(3) / (Rat::one() + lit("5.01") / (tmin * tmin) + &tail);
            let lead = round_up_sig(&(Rat::one() + lit("5.01") / (tmin * tmin)), 3);
            let divisor = round_up_sig(&(lead + tail), 3);
            let coeff = round_down_sig(&(int(3) / divisor), 3);
            Step1 { type_index: 0, coeff_exact: exact, coeff }
        }
        RootType::Type3 => {
            // 1 <= |x - y| < (2.16 + 8.86/81) |y| / |t|; x = y would give -4x^4 = mu
            let divisor = lit("2.16") + tail;
            let published = round_up_sig(&divisor, 3);
            Step1 { type_index: 3, coeff_exact: Rat::one() / divisor, coeff: Rat::one() / published }
        }
    })
}

/// `|y| > |t|^2 / divisor` for type 0.
#[derive(Clone, Debug, PartialEq)]
pub struct Step2 {
    pub divisor_exact: Rat,
    pub divisor: Rat,
    /// lower bound for `|1 - 5t^2|`; `tx + y = 0` would force `x^4 (1 - 5t^2) = mu`
    pub side_case_lower: Rat,
}

pub fn step2_type0(tmin: &Rat) -> Result<Step2> {
    let s1 = step1(RootType::Type0, tmin)?;
    // 1 <= |tx + y| < (5.01/|t|^2 + 8.86/(2.67 |t|)^4) |y|
    let exact = lit("5.01") + lit(BETA_COEFF) / (powi(&s1.coeff, 4) * tmin * tmin);
    let side = int(5) * tmin * tmin - Rat::one();
    if side <= Rat::one() {
        return Err(Error::Certification("|1 - 5t^2| > 1 fails".into()));
    }
    Ok(Step2 { divisor: round_up_sig(&exact, 3), divisor_exact: exact, side_case_lower: side })
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord {
    pub type_index: u8,
    pub k: u32,
    pub c0_in: Rat,
    /// bound on `|t|^(2k-1) |U(1/t) - B(1/t) V(1/t)|`
    pub c1: Rat,
    /// `8.86 c0^4`
    pub c2: Rat,
    /// bound on `|V(1/t)|`
    pub c3: Rat,
    pub c_exact: Rat,
    pub c_out: Rat,
    pub tmin: Rat,
    /// `tmin^k / c_out`
    pub y_lower: Rat,
    /// certified `|F_t(A(1/t) y, y)| - 1` lower bound at `|t| >= tmin`
    pub nonvanish_margin: Rat,
    pub nonvanish_ok: bool,
    /// degree of `P(t) = F_t(t^(k-1) U(1/t), t^(k-1) V(1/t))`
    pub p_degree: Option<usize>,
    pub pade: PadePair<Rat>,
    /// common denominator cleared from the Padé pair
    pub scale: BigInt,
}

/// Truncation error constant and exponent of the high-order series for `which`.
pub fn series_error(which: RootType) -> (Rat, u32) {
    match which {
        RootType::Type0 => (lit("2.71e16"), 31),
        RootType::Type3 => (lit("9.84e15"), 30),
    }
}

fn series_for(which: RootType) -> Result<Series<Rat>> {
    let (b, b3) = shipped_series()?;
    Ok(match which {
        RootType::Type0 => b,
        RootType::Type3 => b3,
    })
}

/// Balanced `[k-1/k-1]` approximant, lowering the numerator degree if the system is singular.
fn pade_for(b: &Series<Rat>, k: u32) -> Result<PadePair<Rat>> {
    let den = (k - 1) as usize;
    let mut num = den;
    loop {
        match pade(b, num, den) {
            Err(Error::DegeneratePade { .. }) if num > 0 => num -= 1,
            other => return other,
        }
    }
}

/// Lower bound for `|P(t)| / |t|^deg P` on `|t| >= tmin`: leading coefficient minus the rest.
fn leading_dominance(p: &Poly<Rat>, tmin: &Rat) -> Option<(usize, Rat)> {
    let deg = p.degree()?;
    let rest = p.coeffs()[..deg].iter().enumerate().fold(Rat::zero(), |acc, (j, c)| acc + c.abs() / powi(tmin, (deg - j) as u32));
    Some((deg, p.lead().abs() - rest))
}

/// Significant digits kept by the unrounded chain. Exact chaining is infeasible: `c2 = 8.86 c0^4`
/// quadruples the size of `c` at every step.
pub const FINE_DIGITS: u32 = 40;

/// One Padé descent step; `round` selects rounding `c` up to 4 significant digits, otherwise up
/// to `FINE_DIGITS`.
pub fn run_step(which: RootType, k: u32, c0: &Rat, tmin: &Rat, round: bool) -> Result<StepRecord> {
    if k < 2 {
        return Err(Error::Precondition("Padé steps start at k = 2".into()));
    }
    let b = series_for(which)?;
    let (e_const, e_exp) = series_error(which);
    if 2 * k > e_exp + 1 {
        return Err(Error::Contract(format!("k = {k} needs more than the shipped series precision")));
    }
    let (pair, scale) = pade_for(&b, k)?.integer_scaled();
    let residual = pair.u.clone() - b.to_poly() * pair.v.clone();
    let lead = (2 * k - 1) as usize;
    let c1 = tail_bound(&residual, lead, tmin)?;
    let c3 = tail_bound(&pair.v, 0, tmin)?;
    let c2 = lit(BETA_COEFF) * powi(c0, 4);
    let c_exact = &c1 + &c2 * &c3 / powi(tmin, 2 * k - 2) + e_const * &c3 / powi(tmin, e_exp + 1 - 2 * k);
    let c_out = round_up_sig(&c_exact, if round { 4 } else { FINE_DIGITS });

    let n = (k - 1) as usize;
    let ut = pair.u.reverse(n);
    let vt = pair.v.reverse(n);
    let p = binary_form(&ut, &vt, &Poly::x());
    let (p_degree, margin) = match leading_dominance(&p, tmin) {
        Some((deg, lower)) => {
            let m = powi(tmin, deg as u32) * lower / powi(&(&c3 * c0), 4) - Rat::one();
            (Some(deg), m)
        }
        None => (None, -Rat::one()),
    };
    Ok(StepRecord {
        type_index: which.index(),
        k,
        c0_in: c0.clone(),
        c1,
        c2,
        c3,
        c_exact,
        y_lower: powi(tmin, k) / &c_out,
        c_out,
        tmin: tmin.clone(),
        nonvanish_ok: margin.is_positive(),
        nonvanish_margin: margin,
        p_degree,
        pade: pair,
        scale,
    })
}

/// First Padé step and its input constant for each chain.
pub fn chain_start(which: RootType, tmin: &Rat) -> Result<(u32, Rat)> {
    Ok(match which {
        RootType::Type0 => (3, step2_type0(tmin)?.divisor),
        RootType::Type3 => (2, Rat::one() / step1(RootType::Type3, tmin)?.coeff),
    })
}

/// Chain the steps up to `kmax`, feeding each `c_out` into the next step.
pub fn run_descent(which: RootType, kmax: u32, tmin: &Rat, round: bool) -> Result<Vec<StepRecord>> {
    let (k0, mut c0) = chain_start(which, tmin)?;
    let (center, radius, exp) = high_order_spec(which)?;
    let cert = certify_enclosure(&center, &radius, exp, tmin)?;
    if !cert.verified {
        return Err(Error::Certification(format!("series enclosure for type {} fails at tmin = {tmin}", which.index())));
    }
    let mut out = Vec::new();
    for k in k0..=kmax {
        let rec = run_step(which, k, &c0, tmin, round)?;
        if !rec.nonvanish_ok {
            return Err(Error::Certification(format!(
                "non-vanishing check fails for type {} at k = {k} (margin {})",
                which.index(),
                rec.nonvanish_margin
            )));
        }
        c0 = rec.c_out.clone();
        out.push(rec);
    }
    Ok(out)
}

/// The generalized bounds for `|F_t(x, y)| <= Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StarBounds {
    pub q: Rat,
    pub t_abs: Rat,
    /// `|x - alpha^(j) y| < beta_bound_coeff / (|t| |y|^3)`
    pub beta_bound_coeff: Rat,
    /// `20.14 Q / |t|`; the type-swap threshold is its fourth root
    pub type_threshold_pow4: Rat,
}

impl StarBounds {
    /// Upper bound in the first step: `2.16 |y|/|t| + 8.86 Q/(|t| |y|^3)`.
    pub fn lb_rhs(&self, y_abs: &Rat) -> Rat {
        lit("2.16") * y_abs / &self.t_abs + &self.beta_bound_coeff / (&self.t_abs * powi(y_abs, 3))
    }

    /// Whether `m >= (20.14 Q/|t|)^(1/4)`, decided exactly.
    pub fn meets_threshold(&self, m: &Rat) -> bool {
        powi(m, 4) >= self.type_threshold_pow4
    }
}

pub fn star_bounds(q: &Rat, t_abs: &Rat) -> Result<StarBounds> {
    if !q.is_positive() || t_abs < &int(100) {
        return Err(Error::Precondition("need Q > 0 and |t| >= 100".into()));
    }
    Ok(StarBounds {
        q: q.clone(),
        t_abs: t_abs.clone(),
        beta_bound_coeff: lit(BETA_COEFF) * q,
        type_threshold_pow4: lit("20.14") * q / t_abs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_steps() {
        let t = int(100);
        assert_eq!(step1(RootType::Type0, &t).unwrap().coeff, lit("2.67"));
        let s3 = step1(RootType::Type3, &t).unwrap();
        assert_eq!(s3.coeff, Rat::one() / lit("2.27"));
        assert!(s3.coeff > lit("0.44"));
        let s2 = step2_type0(&t).unwrap();
        assert_eq!(s2.divisor, lit("5.02"));
        assert!(s2.side_case_lower > Rat::one());
        assert!(step1(RootType::Type0, &int(1000)).unwrap().coeff_exact >= step1(RootType::Type0, &t).unwrap().coeff_exact);
    }

    #[test]
    fn step_three() {
        let r = run_step(RootType::Type0, 3, &lit("5.02"), &int(100), true).unwrap();
        assert_eq!(r.c_out, lit("21.03"));
        assert_eq!(round_up_sig(&r.c1, 5), lit("21.028"));
        assert!(r.c3 < lit("1.01"));
        assert!(r.nonvanish_ok);
        assert_eq!(r.p_degree, Some(4));
    }

    #[test]
    fn first_type3_step() {
        let r = run_step(RootType::Type3, 2, &lit("2.27"), &int(100), true).unwrap();
        assert_eq!(r.c_out, lit("10.14"));
    }

    #[test]
    fn star_recovers_plain_bound() {
        let s = star_bounds(&Rat::one(), &int(100)).unwrap();
        assert_eq!(s.beta_bound_coeff, lit("8.86"));
        assert!(s.meets_threshold(&Rat::one()));
    }
}
