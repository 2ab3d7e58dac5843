use num_traits::Signed;

use thueq::descent::{run_descent, series_error, StepRecord};
use thueq::exactnum::rat::{powi, round_up_sig};
use thueq::exactnum::{int, parse_rat, Rat};
use thueq::series::thue::binary_form;
use thueq::series::{shipped_series, GaussRat, Poly, RootType};

fn chains(round: bool) -> Vec<(RootType, Vec<StepRecord>)> {
    [RootType::Type0, RootType::Type3].into_iter().map(|w| (w, run_descent(w, 11, &int(100), round).unwrap())).collect()
}

fn gauss(p: &Poly<Rat>) -> Poly<GaussRat> {
    p.map(|c| GaussRat::real(c.clone()))
}

#[test]
fn table_constants_follow_from_their_parts() {
    for (which, steps) in chains(true) {
        let (e_const, e_exp) = series_error(which);
        let tmin = int(100);
        for (i, s) in steps.iter().enumerate() {
            let k = s.k;
            assert_eq!(s.c2, parse_rat("8.86").unwrap() * powi(&s.c0_in, 4), "type {} k = {k}", s.type_index);
            let c = &s.c1 + &s.c2 * &s.c3 / powi(&tmin, 2 * k - 2) + &e_const * &s.c3 / powi(&tmin, e_exp + 1 - 2 * k);
            assert_eq!(s.c_exact, c, "type {} k = {k}", s.type_index);
            assert_eq!(s.c_out, round_up_sig(&c, 4));
            assert!(s.c_out >= s.c1);
            assert_eq!(s.y_lower, powi(&tmin, k) / &s.c_out);
            if i > 0 {
                assert_eq!(s.c0_in, steps[i - 1].c_out, "chaining at k = {k}");
            }
        }
    }
}

#[test]
fn margins_and_degrees() {
    for (_, steps) in chains(true) {
        for s in &steps {
            let k = s.k as usize;
            assert!(s.nonvanish_ok && s.nonvanish_margin.is_positive(), "type {} k = {k}", s.type_index);
            assert_eq!(s.p_degree, Some(2 * k - 2), "type {} k = {k}", s.type_index);
            assert!(s.pade.u.degree().unwrap_or(0) < k && s.pade.v.degree().unwrap_or(0) < k);
        }
    }
}

#[test]
fn exact_chain_stays_below_the_rounded_one() {
    let (rounded, exact) = (chains(true), chains(false));
    for ((_, r), (_, e)) in rounded.iter().zip(&exact) {
        for (a, b) in r.iter().zip(e) {
            assert!(b.c_out <= a.c_out, "k = {}", a.k);
        }
    }
}

/// Gaussian integers with `100 <= |t| <= 101`.
fn samples() -> Vec<GaussRat> {
    let mut out = Vec::new();
    for a in -101i64..=101 {
        for b in [-1i64, 1] {
            let n2 = 100 * 100 - a * a;
            let mut y = (n2.max(0) as f64).sqrt().ceil() as i64;
            if a * a + y * y < 100 * 100 {
                y += 1;
            }
            if a * a + y * y <= 101 * 101 {
                out.push(GaussRat::int(a, b * y));
            }
        }
    }
    let step = out.len() / 20;
    out.into_iter().step_by(step.max(1)).take(20).collect()
}

/// At concrete `t` just above 100, the step majorants bound the actual values:
/// `|t|^(2k-1) |U - B V|(1/t) <= c1`, `|V(1/t)| <= c3` and `|P(t)| > (c3 c0)^4`.
#[test]
fn majorants_hold_at_sampled_t() {
    let (b, b3) = shipped_series().unwrap();
    let ts = samples();
    assert_eq!(ts.len(), 20);
    for (which, steps) in chains(true) {
        let series = if which == RootType::Type0 { b.to_poly() } else { b3.to_poly() };
        for s in &steps {
            let k = s.k;
            let residual = gauss(&(s.pade.u.clone() - series.clone() * s.pade.v.clone()));
            let n = (k - 1) as usize;
            let p = gauss(&binary_form(&s.pade.u.reverse(n), &s.pade.v.reverse(n), &Poly::x()));
            let v = gauss(&s.pade.v);
            for t in &ts {
                let u = t.inv().unwrap();
                let lhs = residual.eval(&u).norm() * t.norm().pow(2 * k as i32 - 1);
                assert!(lhs <= &s.c1 * &s.c1, "type {} k = {k} t = {t}: residual", s.type_index);
                assert!(v.eval(&u).norm() <= &s.c3 * &s.c3, "type {} k = {k} t = {t}: V", s.type_index);
                let floor = powi(&(&s.c3 * &s.c0_in), 8);
                assert!(p.eval(t).norm() > floor, "type {} k = {k} t = {t}: P", s.type_index);
            }
        }
    }
}
