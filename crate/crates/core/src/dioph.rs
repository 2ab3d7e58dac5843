//! Finite computations on `F_t(X, Y) = mu`: the reducible members of the family, the zero form,
//! trivial and small solutions, equivalence orbits and solution types.

use std::collections::BTreeSet;

use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::rat::{sqrt_bounds, sqrt_upper};
use crate::exactnum::{int, parse_rat, Rat};
use crate::quadfield::{enumerate_bounded, enumerate_in_field, is_unit, roots_of_unity, QuadInt};
use crate::rouche::isolate_roots;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Solution {
    pub d: u64,
    pub t: QuadInt,
    pub x: QuadInt,
    pub y: QuadInt,
    pub mu: QuadInt,
    pub type_index: Option<u8>,
}

impl Solution {
    fn sort_key(&self) -> (u64, i128, [i64; 8]) {
        let s = self;
        (s.d, s.t.norm(), [s.t.a, s.t.b, s.x.a, s.x.b, s.y.a, s.y.b, s.mu.a, s.mu.b])
    }
}

fn common_field(xs: &[&QuadInt]) -> Result<u64> {
    let mut d = None;
    for x in xs.iter().filter(|x| !x.is_rational()) {
        match d {
            None => d = Some(x.d),
            Some(e) if e != x.d => return Err(Error::MixedField(e, x.d)),
            _ => {}
        }
    }
    Ok(d.unwrap_or(xs[0].d))
}

/// `F_t(x, y) = x^4 - t x^3 y - 6 x^2 y^2 + t x y^3 + y^4`.
pub fn eval_form(t: &QuadInt, x: &QuadInt, y: &QuadInt) -> Result<QuadInt> {
    let d = common_field(&[t, x, y])?;
    let (t, x, y) = (t.in_field(d)?, x.in_field(d)?, y.in_field(d)?);
    let x2 = x.mul(&x)?;
    let y2 = y.mul(&y)?;
    let xy = x.mul(&y)?;
    // x^4 + y^4 - 6x^2y^2 + t·xy·(y^2 - x^2)
    let even = x2.mul(&x2)?.add(&y2.mul(&y2)?)?.sub(&x2.mul(&y2)?.mul(&QuadInt::embed(6, d))?)?;
    even.add(&t.mul(&xy)?.mul(&y2.sub(&x2)?)?)
}

/// The equivalence class `{(x, y), (-y, x), (-x, -y), (y, -x)}`.
pub fn orbit(x: &QuadInt, y: &QuadInt) -> [(QuadInt, QuadInt); 4] {
    [(*x, *y), (y.neg(), *x), (x.neg(), y.neg()), (*y, x.neg())]
}

/// Orbit representative with `|x| <= |y|` and `x` normalized; ties broken by coordinates.
pub fn normalize_pair(x: &QuadInt, y: &QuadInt) -> (QuadInt, QuadInt) {
    let mut cands: Vec<(QuadInt, QuadInt)> =
        orbit(x, y).into_iter().filter(|(a, b)| a.norm() <= b.norm() && (a.is_normalized() || (a.is_zero() && b.is_normalized()))).collect();
    if cands.is_empty() {
        cands = orbit(x, y).to_vec();
    }
    cands.sort_by_key(|(a, b)| (a.a, a.b, b.a, b.b));
    cands[0]
}

/// Solutions `(xi, 0)` with `xi^4 = mu`, one per equivalence class. They hold for every `t`,
/// so `t` is reported as 0.
pub fn trivial_solutions(d: u64, mu: &QuadInt) -> Result<Vec<Solution>> {
    let mu = mu.in_field(d)?;
    if !is_unit(&mu) {
        return Err(Error::Domain(format!("{} is not a unit of Q(√-{d})", mu.render())));
    }
    Ok(roots_of_unity(d)
        .into_iter()
        .filter(|xi| xi.is_normalized() && xi.pow(4) == mu)
        .map(|xi| Solution { d, t: QuadInt::zero(d), x: xi, y: QuadInt::zero(d), mu, type_index: None })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IrreducibilityExceptions {
    /// every `t` for which `f_t` is reducible
    pub ts: Vec<QuadInt>,
    /// the subset where `f_t` has a root in its field (the factors coincide)
    pub root_in_field: Vec<QuadInt>,
}

fn canonical(x: QuadInt) -> QuadInt {
    if x.is_rational() {
        QuadInt::embed(x.a, 1)
    } else {
        x
    }
}

fn sort_quads(v: &mut [QuadInt]) {
    v.sort_by_key(|x| (x.d, x.norm(), x.a, x.b));
}

/// `f_t = (X^2 + aX - 1)(X^2 + cX - 1)` with `ac = -4`, `t = -(a + c)`.
pub fn irreducibility_exceptions() -> IrreducibilityExceptions {
    let mut ts = BTreeSet::new();
    let mut roots = BTreeSet::new();
    for a in enumerate_bounded(&int(4), true) {
        if 16 % a.norm() != 0 {
            continue;
        }
        let Ok(Some(c)) = QuadInt::embed(-4, a.d).div_exact(&a) else { continue };
        let t = a.add(&c).expect("same field").neg();
        for s in [t, t.neg()] {
            ts.insert(canonical(s));
            if a == c {
                roots.insert(canonical(s));
            }
        }
    }
    let mut ts: Vec<QuadInt> = ts.into_iter().collect();
    let mut root_in_field: Vec<QuadInt> = roots.into_iter().collect();
    sort_quads(&mut ts);
    sort_quads(&mut root_in_field);
    IrreducibilityExceptions { ts, root_in_field }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum ZeroSolutions {
    /// only `(0, 0)`
    Trivial,
    /// `(0, 0)` and every `(x, y) = (root·y, y)`, one family per root of `f_t` in the field
    Families(Vec<QuadInt>),
}

/// Solutions of `F_t(X, Y) = 0`. A root of the monic `f_t` in the field is an algebraic integer
/// dividing 1, so only units need checking.
pub fn solve_zero(t: &QuadInt) -> Result<ZeroSolutions> {
    let mut fields = vec![t.d];
    if t.is_rational() {
        fields = vec![1, 3];
    }
    let mut roots = Vec::new();
    for d in fields {
        for u in roots_of_unity(d) {
            if eval_form(&t.in_field(d)?, &u, &QuadInt::one(d))?.is_zero() {
                roots.push(u);
            }
        }
    }
    Ok(if roots.is_empty() { ZeroSolutions::Trivial } else { ZeroSolutions::Families(roots) })
}

fn solutions_for_x(x: QuadInt, tmin_sq: &Rat) -> Vec<Solution> {
    let n = x.norm();
    let ybound = if n == 1 { parse_rat("6.86").expect("literal") } else { int(1 + (n * n) as i64) };
    let ys = if x.is_rational() { enumerate_bounded(&ybound, true) } else { enumerate_in_field(x.d, &ybound, true) };
    let mut out = Vec::new();
    for y in ys.into_iter().filter(|y| y.norm() >= n) {
        let units: Vec<QuadInt> = if x.is_rational() && y.is_rational() {
            roots_of_unity(1).into_iter().chain(roots_of_unity(3).into_iter().filter(|u| !u.is_rational())).collect()
        } else {
            roots_of_unity(if y.is_rational() { x.d } else { y.d })
        };
        for mu in units {
            let d = mu.d;
            let (xe, ye) = (x.in_field(d).unwrap(), y.in_field(d).unwrap());
            let Some(sol) = t_for(&xe, &ye, &mu) else { continue };
            if sol.t.abs_sq() >= *tmin_sq {
                out.push(sol);
            }
        }
    }
    out
}

/// The unique `t` (if integral) with `F_t(x, y) = mu`, when `x^3 y - x y^3 != 0`.
fn t_for(x: &QuadInt, y: &QuadInt, mu: &QuadInt) -> Option<Solution> {
    let d = mu.d;
    let x2 = x.mul(x).ok()?;
    let y2 = y.mul(y).ok()?;
    let den = x.mul(y).ok()?.mul(&x2.sub(&y2).ok()?).ok()?;
    if den.is_zero() {
        return None;
    }
    let num = x2.mul(&x2).ok()?.add(&y2.mul(&y2).ok()?).ok()?.sub(&x2.mul(&y2).ok()?.mul(&QuadInt::embed(6, d)).ok()?).ok()?.sub(mu).ok()?;
    let t = num.div_exact(&den).ok()??;
    let all_rational = [&t, x, y, mu].iter().all(|q| q.is_rational());
    let sol = if all_rational {
        let e = |q: &QuadInt| QuadInt::embed(q.a, 1);
        Solution { d: 1, t: e(&t), x: e(x), y: e(y), mu: e(mu), type_index: None }
    } else {
        Solution { d, t, x: *x, y: *y, mu: *mu, type_index: None }
    };
    let check = eval_form(&sol.t, &sol.x, &sol.y).ok()?;
    assert_eq!(check.in_field(sol.d).ok()?, sol.mu, "t formula produced a non-solution");
    Some(sol)
}

/// Every non-trivial solution with `min(|x|, |y|) < 3` and `|t| >= tmin_abs`, normalized so
/// that `0 < |x| <= |y|`, `x` in the upper half-plane or a positive integer, and likewise `y`
/// (using `F_t(x, -y) = F_{-t}(x, y)`).
pub fn small_solution_search(tmin_abs: &Rat) -> Result<Vec<Solution>> {
    if tmin_abs.is_negative() {
        return Err(Error::Precondition("tmin must be nonnegative".into()));
    }
    let tmin_sq = tmin_abs * tmin_abs;
    let xs: Vec<QuadInt> = enumerate_bounded(&int(3), true).into_iter().filter(|x| x.norm() < 9).collect();
    let mut out: Vec<Solution> = xs.par_iter().flat_map_iter(|&x| solutions_for_x(x, &tmin_sq)).collect();
    out.sort_by_key(Solution::sort_key);
    out.dedup();
    Ok(out)
}

/// The set of `t` values of a solution list, closed under negation.
pub fn t_set(sols: &[Solution]) -> Vec<QuadInt> {
    let set: BTreeSet<QuadInt> = sols.iter().flat_map(|s| [canonical(s.t), canonical(s.t.neg())]).collect();
    let mut v: Vec<QuadInt> = set.into_iter().collect();
    sort_quads(&mut v);
    v
}

/// Precision ladder (in bits) for `classify_type`.
pub const CLASSIFY_LADDER: [u32; 3] = [64, 128, 256];

/// Index `j` minimizing `|x - alpha^(j) y|`.
pub fn classify_type(t: &QuadInt, x: &QuadInt, y: &QuadInt) -> Result<u8> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::Precondition("(x, y) must be nonzero".into()));
    }
    let d = common_field(&[t, x, y])?;
    let (t, x, y) = (t.in_field(d)?, x.in_field(d)?, y.in_field(d)?);
    let mut last = Error::Tie;
    for bits in CLASSIFY_LADDER {
        let (tc, te) = t.approx(bits);
        let discs = match isolate_roots(&tc, &te, bits) {
            Ok(discs) => discs,
            Err(e) => {
                last = e;
                continue;
            }
        };
        let (xc, xe) = x.approx(bits);
        let (yc, ye) = y.approx(bits);
        let y_abs = sqrt_upper(&yc.norm(), bits) + &ye;
        let bounds: Vec<(Rat, Rat)> = discs
            .iter()
            .map(|disc| {
                let v = xc.clone() - disc.center.clone() * yc.clone();
                let err = &xe + sqrt_upper(&disc.center.norm(), bits) * &ye + &disc.radius * &y_abs;
                let (lo, hi) = sqrt_bounds(&v.norm(), bits + 8);
                (lo - &err, hi + err)
            })
            .collect();
        for j in 0..4 {
            if (0..4).all(|i| i == j || bounds[j].1 < bounds[i].0) {
                return Ok(j as u8);
            }
        }
        last = Error::Tie;
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(a: i64, b: i64) -> QuadInt {
        QuadInt::new(1, a, b).unwrap()
    }

    #[test]
    fn form_values() {
        let t = g(3, 5);
        assert_eq!(eval_form(&t, &g(1, 0), &g(0, 0)).unwrap(), g(1, 0));
        let x = g(2, -1);
        assert_eq!(eval_form(&t, &x, &x).unwrap(), x.pow(4).mul(&g(-4, 0)).unwrap());
        assert_eq!(eval_form(&t, &g(0, 0).sub(&g(1, 2)).unwrap(), &x).unwrap(), eval_form(&t, &x, &g(1, 2)).unwrap());
    }

    #[test]
    fn orbits() {
        let o = orbit(&g(1, 0), &g(0, 0));
        let set: BTreeSet<_> = o.iter().copied().collect();
        assert_eq!(set.len(), 4);
        assert!(set.contains(&(g(0, 0), g(1, 0))));
        assert_eq!(normalize_pair(&g(0, 0), &g(-1, 0)), (g(0, 0), g(1, 0)));
    }

    #[test]
    fn trivial() {
        assert_eq!(trivial_solutions(2, &QuadInt::embed(1, 2)).unwrap().len(), 1);
        assert_eq!(trivial_solutions(1, &g(1, 0)).unwrap().len(), 2);
        assert!(trivial_solutions(1, &g(0, 1)).unwrap().is_empty());
        assert!(trivial_solutions(1, &g(-1, 0)).unwrap().is_empty());
        let z = QuadInt::omega(3);
        let sols = trivial_solutions(3, &z.neg()).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].x, z);
        assert!(trivial_solutions(1, &g(1, 1)).is_err());
    }

    #[test]
    fn zero_form() {
        assert_eq!(solve_zero(&g(3, 5)).unwrap(), ZeroSolutions::Trivial);
        assert_eq!(solve_zero(&g(0, 4)).unwrap(), ZeroSolutions::Families(vec![g(0, 1)]));
        assert_eq!(solve_zero(&g(0, -4)).unwrap(), ZeroSolutions::Families(vec![g(0, -1)]));
        assert_eq!(solve_zero(&g(0, 0)).unwrap(), ZeroSolutions::Trivial);
    }

    #[test]
    fn exceptions_list() {
        let ex = irreducibility_exceptions();
        let rendered: BTreeSet<String> = ex.ts.iter().map(|t| t.render()).collect();
        for want in ["0", "3", "-3", "3i+1", "-3i-1", "4i", "5i", "3√-2", "2√-3", "(5√-3+3)/2", "√-7", "(3√-7+1)/2", "√-15"] {
            assert!(rendered.contains(want), "missing {want}: {rendered:?}");
        }
        assert_eq!(ex.ts.len(), 27);
        assert_eq!(ex.root_in_field, vec![g(0, -4), g(0, 4)]);
    }

    #[test]
    fn search_at_large_tmin_is_empty() {
        assert!(small_solution_search(&int(100)).unwrap().is_empty());
        for s in small_solution_search(&int(0)).unwrap() {
            assert_eq!(eval_form(&s.t, &s.x, &s.y).unwrap().in_field(s.d).unwrap(), s.mu);
            assert!(s.x.norm() < 9 && s.x.norm() <= s.y.norm());
        }
    }

    #[test]
    fn degenerate_type_is_a_tie() {
        let t = g(0, 100);
        assert_eq!(classify_type(&t, &g(1, 0), &g(0, 0)), Err(Error::Tie));
    }

    #[test]
    fn type_near_centers() {
        let t = g(0, 100);
        // x/y close to -1/t, -1, t, 1 in turn
        assert_eq!(classify_type(&t, &g(0, 1), &g(100, 0)).unwrap(), 0);
        assert_eq!(classify_type(&t, &g(-7, 0), &g(7, 0)).unwrap(), 1);
        assert_eq!(classify_type(&t, &g(0, 100), &g(1, 0)).unwrap(), 2);
        assert_eq!(classify_type(&t, &g(5, 1), &g(5, 0)).unwrap(), 3);
    }
}
