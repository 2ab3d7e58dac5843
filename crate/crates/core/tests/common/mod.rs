//! Checks shared by the acceptance run and the property suites. Each returns `Err` with a
//! description of the first counterexample.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

use thueq::dioph::{classify_type, eval_form, orbit};
use thueq::exactnum::rat::{dyadic_round, sqrt_lower, sqrt_upper, to_f64};
use thueq::exactnum::{int, parse_rat, Rat};
use thueq::quadfield::{enumerate_in_field, QuadInt};
use thueq::rouche::isolate_roots;
use thueq::series::poly::Poly;
use thueq::series::thue::{approximants, at_t, thue_ab, thue_data};
use thueq::series::{newton_alpha_series, pade, GaussRat, RootType, Series};

pub type Check = Result<(), String>;

fn coeff(s: &[Rat], k: usize) -> Rat {
    s.get(k).cloned().unwrap_or_else(Rat::zero)
}

/// Naive truncated product, independent of the library's series multiplication.
pub fn mul_trunc(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    (0..n).map(|k| (0..=k).map(|i| coeff(a, i) * coeff(b, k - i)).sum()).collect()
}

/// `U - B V` vanishes through `s^(m+n)` for the `[m/n]` approximant of `B`.
pub fn pade_contact(b: &Series<Rat>, m: usize, n: usize) -> Check {
    let pair = pade(b, m, n).map_err(|e| e.to_string())?;
    if pair.u.degree().unwrap_or(0) > m || pair.v.degree().unwrap_or(0) > n {
        return Err(format!("[{m}/{n}]: degrees exceed the request"));
    }
    let bv = mul_trunc(b.coeffs(), pair.v.coeffs(), m + n + 1);
    for (k, c) in bv.iter().enumerate() {
        if coeff(pair.u.coeffs(), k) != *c {
            return Err(format!("[{m}/{n}]: U - BV has a nonzero s^{k} coefficient"));
        }
    }
    if pair.contact_order < m + n + 1 {
        return Err(format!("[{m}/{n}]: reported contact order {}", pair.contact_order));
    }
    Ok(())
}

/// `s B^4 - B^3 - 6 s B^2 + B + s = 0` through the truncation order, with naive products.
pub fn defining_residual(order: usize) -> Check {
    let b = newton_alpha_series(order);
    let c = b.coeffs();
    let b2 = mul_trunc(c, c, order);
    let b3 = mul_trunc(&b2, c, order);
    let b4 = mul_trunc(&b3, c, order);
    let shifted = |v: &[Rat], k: usize| if k == 0 { Rat::zero() } else { coeff(v, k - 1) };
    for k in 0..order {
        let s_term = if k == 1 { Rat::one() } else { Rat::zero() };
        let v = shifted(&b4, k) - coeff(&b3, k) - int(6) * shifted(&b2, k) + coeff(c, k) + s_term;
        if !v.is_zero() {
            return Err(format!("residual coefficient at s^{k} is {v}"));
        }
    }
    Ok(())
}

fn is_gaussian_integer_poly(p: &Poly<GaussRat>) -> bool {
    p.coeffs().iter().all(|c| c.re.is_integer() && c.im.is_integer())
}

pub fn approximants_integral(which: RootType, r: u32) -> Check {
    let (p, q) = approximants(which, r).map_err(|e| e.to_string())?;
    if !is_gaussian_integer_poly(&p) || !is_gaussian_integer_poly(&q) {
        return Err(format!("type {} r = {r}: non-integral coefficient", which.index()));
    }
    if q.is_zero() {
        return Err(format!("type {} r = {r}: q_r vanishes", which.index()));
    }
    Ok(())
}

pub fn cross_product_nonzero(which: RootType, r: u32) -> Check {
    let (p0, q0) = approximants(which, r).map_err(|e| e.to_string())?;
    let (p1, q1) = approximants(which, r + 1).map_err(|e| e.to_string())?;
    if (p0 * q1 - p1 * q0).is_zero() {
        return Err(format!("type {} r = {r}: p_r q_(r+1) = p_(r+1) q_r", which.index()));
    }
    Ok(())
}

/// Bit precision of the moduli below; far finer than any quantity they bound.
const ABS_BITS: u32 = 1200;

fn abs_hi(z: &GaussRat) -> Rat {
    sqrt_upper(&z.norm(), ABS_BITS)
}

fn abs_lo(z: &GaussRat) -> Rat {
    sqrt_lower(&z.norm(), ABS_BITS)
}

/// `sum_{k >= from} |g^(k)(c)| rho^k / k!`, bounding those Taylor terms of `g` at `c` over
/// `|z - c| <= rho`.
fn taylor_tail(g: &Poly<GaussRat>, c: &GaussRat, rho: &Rat, from: u32) -> Rat {
    let (mut dk, mut fact, mut rk) = (g.clone(), Rat::one(), Rat::one());
    let mut total = Rat::zero();
    let mut k = 0i64;
    while !dk.is_zero() {
        if k >= from as i64 {
            total += abs_hi(&dk.eval(c)) * &rk / &fact;
        }
        k += 1;
        fact *= int(k);
        rk *= rho;
        dk = dk.derivative();
    }
    total
}

fn quartic_at(t: &GaussRat) -> Poly<GaussRat> {
    let g = |a: i64| GaussRat::int(a, 0);
    Poly::new(vec![g(1), t.clone(), g(-6), -t.clone(), g(1)])
}

/// Newton-refined root of `f` near `start` and a radius `rho` around it that contains a root,
/// certified by `|f(c)| + sum_{k>=2} |f^(k)(c)| rho^k/k! < |f'(c)| rho`.
fn refine_root(f: &Poly<GaussRat>, start: &GaussRat, bits: u32) -> Result<(GaussRat, Rat), String> {
    let df = f.derivative();
    let round = |z: GaussRat| GaussRat::new(dyadic_round(&z.re, bits), dyadic_round(&z.im, bits));
    let mut c = start.clone();
    for _ in 0..6 {
        let step = f.eval(&c) / df.eval(&c);
        c = round(c - step);
    }
    let rho = Rat::one().max(abs_hi(&c)) / Rat::from_integer(BigInt::from(2).pow(bits - 20));
    let rest = abs_hi(&f.eval(&c)) + taylor_tail(f, &c, &rho, 2);
    if rest >= abs_lo(&df.eval(&c)) * &rho {
        return Err(format!("root near {c} not certified at {bits} bits"));
    }
    Ok((c, rho))
}

/// At `t = 100i`, `C_r = alpha A_r - B_r` and its first `2r` derivatives vanish at every root
/// `alpha`: with `g_j = X A_r^(j) - B_r^(j)`, each `|g_j(alpha)|` is below `1e-20`.
pub fn divisibility_at_100i(r: u32) -> Check {
    let t = GaussRat::int(0, 100);
    let f = quartic_at(&t);
    let mut roots = Vec::new();
    for d in isolate_roots(&t, &Rat::zero(), 128).map_err(|e| e.to_string())? {
        let (c, rho) = refine_root(&f, &d.center, 400)?;
        // inside the isolating disc, so it is the same root
        if abs_hi(&(c.clone() - d.center.clone())) + &rho > d.radius {
            return Err("refined disc leaves the isolating disc".into());
        }
        roots.push((c, rho));
    }
    let data = thue_data();
    let (a, b) = thue_ab(&data, r);
    let (mut a, mut b) = (at_t(&a, &t), at_t(&b, &t));
    let tol = parse_rat("1e-20").unwrap();
    let x: Poly<GaussRat> = Poly::x();
    for j in 0..=2 * r {
        let g = x.clone() * a.clone() - b.clone();
        for (i, (c, rho)) in roots.iter().enumerate() {
            let bound = taylor_tail(&g, c, rho, 0);
            if bound >= tol {
                return Err(format!("r = {r}, derivative {j}, root {i}: |C| <= {}", to_f64(&bound)));
            }
        }
        a = a.derivative();
        b = b.derivative();
    }
    Ok(())
}

/// `eval_form` is constant on the orbit `(x, y), (-x, -y), (-y, x), (y, -x)`.
pub fn orbit_invariance(t: &QuadInt, x: &QuadInt, y: &QuadInt) -> Check {
    let v = eval_form(t, x, y).map_err(|e| e.to_string())?;
    for (u, w) in orbit(x, y) {
        let v2 = eval_form(t, &u, &w).map_err(|e| e.to_string())?;
        if v2 != v {
            return Err(format!("t = {t}: F({x}, {y}) = {v} but F({u}, {w}) = {v2}"));
        }
    }
    Ok(())
}

/// Whether `min(|x|, |y|)^4 |t| >= 20.14 |F|`, decided on squares.
pub fn above_swap_threshold(t: &QuadInt, x: &QuadInt, y: &QuadInt, f: &QuadInt) -> bool {
    let m = Rat::from_integer(x.norm().min(y.norm()).into());
    let lhs = &m * &m * &m * &m * Rat::from_integer(t.norm().into());
    let k = parse_rat("20.14").unwrap();
    lhs >= &k * &k * Rat::from_integer(f.norm().into())
}

fn swap_pair(t: &QuadInt, x: &QuadInt, y: &QuadInt) -> Check {
    let a = classify_type(t, x, y).map_err(|e| format!("({x}, {y}): {e}"))?;
    let b = classify_type(t, &y.neg(), x).map_err(|e| format!("({}, {x}): {e}", y.neg()))?;
    if b != (a + 2) % 4 {
        return Err(format!("t = {t}: ({x}, {y}) has type {a} but ({}, {x}) has type {b}", y.neg()));
    }
    Ok(())
}

/// Type swap at `t = 20i` over the box `|x|^2, |y|^2 <= 25` with `|F| <= 40`, then over pairs
/// `x` nearest to `alpha^(j) y` for `|y| <= y_abs`, where `|F|` is small enough to qualify.
/// Returns the number of pairs checked in each part.
pub fn type_swap_at_20i(y_abs: i64) -> Result<(usize, usize), String> {
    let t = QuadInt::new(1, 0, 20).unwrap();
    let box_elems: Vec<QuadInt> = enumerate_in_field(1, &int(5), false).into_iter().filter(|x| x.norm() <= 25).collect();
    let forty = QuadInt::embed(40, 1);
    let mut in_box = 0;
    for x in &box_elems {
        for y in &box_elems {
            let f = eval_form(&t, x, y).map_err(|e| e.to_string())?;
            if f.norm() > 1600 || x.is_zero() || y.is_zero() || !above_swap_threshold(&t, x, y, &forty) {
                continue;
            }
            in_box += 1;
            swap_pair(&t, x, y)?;
        }
    }
    let discs = isolate_roots(&GaussRat::int(0, 20), &Rat::zero(), 64).map_err(|e| e.to_string())?;
    let roots: Vec<(f64, f64)> = discs.iter().map(|d| (to_f64(&d.center.re), to_f64(&d.center.im))).collect();
    let mut near = 0;
    for y in enumerate_in_field(1, &int(y_abs), false).iter().filter(|y| !y.is_zero()) {
        for (j, (re, im)) in roots.iter().enumerate() {
            let (ya, yb) = (y.a as f64, y.b as f64);
            let x = QuadInt::new(1, (re * ya - im * yb).round() as i64, (re * yb + im * ya).round() as i64).unwrap();
            let f = eval_form(&t, &x, y).map_err(|e| e.to_string())?;
            if x.is_zero() || !above_swap_threshold(&t, &x, y, &f) {
                continue;
            }
            near += 1;
            swap_pair(&t, &x, y)?;
            let a = classify_type(&t, &x, y).map_err(|e| e.to_string())?;
            if a as usize != j {
                return Err(format!("({x}, {y}) built near root {j} classified as {a}"));
            }
        }
    }
    Ok((in_box, near))
}
