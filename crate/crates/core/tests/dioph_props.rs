mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use thueq::dioph::{classify_type, eval_form, normalize_pair, orbit, small_solution_search, t_set};
use thueq::exactnum::rat::to_f64;
use thueq::exactnum::{int, rat};
use thueq::quadfield::{enumerate_in_field, roots_of_unity, QuadInt};
use thueq::rouche::isolate_roots;
use thueq::series::GaussRat;

fn canonical(x: QuadInt) -> QuadInt {
    if x.is_rational() {
        QuadInt::embed(x.a, 1)
    } else {
        x
    }
}

/// Every `t` with `F_t(x, y) = mu` for `x, y` in field `d`, `|x|^2, |y|^2 <= 50`,
/// `min(|x|, |y|) < 3` and `xy(x^2 - y^2) != 0`, found by solving for `t` exactly.
fn brute_force_ts(d: u64) -> BTreeSet<QuadInt> {
    let elems: Vec<QuadInt> = enumerate_in_field(d, &rat(71, 10), false).into_iter().filter(|x| x.norm() <= 50).collect();
    let six = QuadInt::embed(6, d);
    let mut out = BTreeSet::new();
    for x in &elems {
        for y in elems.iter().filter(|y| x.norm().min(y.norm()) < 9) {
            let (x2, y2) = (x.mul(x).unwrap(), y.mul(y).unwrap());
            let den = x.mul(y).unwrap().mul(&x2.sub(&y2).unwrap()).unwrap();
            if den.is_zero() {
                continue;
            }
            let even = x2.mul(&x2).unwrap().add(&y2.mul(&y2).unwrap()).unwrap().sub(&x2.mul(&y2).unwrap().mul(&six).unwrap()).unwrap();
            for mu in roots_of_unity(d) {
                if let Some(t) = even.sub(&mu).unwrap().div_exact(&den).unwrap() {
                    assert_eq!(eval_form(&t, x, y).unwrap(), mu);
                    out.insert(canonical(t));
                    out.insert(canonical(t.neg()));
                }
            }
        }
    }
    out
}

#[test]
fn small_solution_search_is_complete_at_desk_scale() {
    let sols = small_solution_search(&int(0)).unwrap();
    for s in &sols {
        assert_eq!(eval_form(&s.t, &s.x, &s.y).unwrap().in_field(s.d).unwrap(), s.mu, "{s:?}");
    }
    let found: BTreeSet<QuadInt> = t_set(&sols).into_iter().collect();
    for d in [1, 2, 3] {
        let oracle = brute_force_ts(d);
        let missing: Vec<String> = oracle.difference(&found).map(|t| t.render()).collect();
        assert!(missing.is_empty(), "d = {d}: search misses t = {missing:?}");
        // and the search finds nothing in this box that the oracle does not
        for s in sols.iter().filter(|s| s.d == d && s.x.norm() <= 50 && s.y.norm() <= 50) {
            assert!(oracle.contains(&canonical(s.t)), "d = {d}: unexpected {s:?}");
        }
    }
}

fn field_element() -> impl Strategy<Value = QuadInt> {
    (proptest::sample::select(vec![1u64, 2, 3, 5, 7, 11]), -30i64..30, -30i64..30).prop_map(|(d, a, b)| QuadInt::new(d, a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normalization_is_idempotent_and_stays_in_the_orbit(x in field_element(), (a, b) in (-30i64..30, -30i64..30)) {
        let y = QuadInt::new(x.d, a, b).unwrap();
        let n = normalize_pair(&x, &y);
        prop_assert_eq!(normalize_pair(&n.0, &n.1), n);
        prop_assert!(orbit(&x, &y).contains(&n));
    }

    /// Near-root pairs at `|t| >= 100`: the type and the form value are invariant under
    /// `(x, y) -> (-x, -y)`.
    #[test]
    fn negation_keeps_the_type(
        (ta, tb) in (-300i64..300, 100i64..300),
        (ya, yb) in (-40i64..40, -40i64..40),
        j in 0usize..4,
        (da, db) in (-1i64..=1, -1i64..=1),
    ) {
        prop_assume!((ya, yb) != (0, 0));
        let t = QuadInt::new(1, ta, tb).unwrap();
        let y = QuadInt::new(1, ya, yb).unwrap();
        let x = near_root(&t, &y, j, (da, db));
        prop_assume!(!x.is_zero());
        prop_assert_eq!(classify_type(&t, &x.neg(), &y.neg()).unwrap(), classify_type(&t, &x, &y).unwrap());
        prop_assert_eq!(eval_form(&t, &x.neg(), &y.neg()).unwrap(), eval_form(&t, &x, &y).unwrap());
    }

    /// Above the swap threshold, `(-y, x)` and `(y, -x)` have type `j + 2 mod 4`.
    #[test]
    fn rotation_swaps_types(
        (ta, tb) in (-300i64..300, 100i64..300),
        (ya, yb) in (-40i64..40, -40i64..40),
        j in proptest::sample::select(vec![1usize, 3]),
    ) {
        let t = QuadInt::new(1, ta, tb).unwrap();
        let y = QuadInt::new(1, ya, yb).unwrap();
        prop_assume!(!y.is_zero());
        let x = near_root(&t, &y, j, (0, 0));
        let f = eval_form(&t, &x, &y).unwrap();
        prop_assume!(!x.is_zero() && common::above_swap_threshold(&t, &x, &y, &f));
        let k = classify_type(&t, &x, &y).unwrap();
        prop_assert_eq!(k as usize, j);
        prop_assert_eq!(classify_type(&t, &y.neg(), &x).unwrap(), (k + 2) % 4);
        prop_assert_eq!(classify_type(&t, &y, &x.neg()).unwrap(), (k + 2) % 4);
        prop_assert_eq!(eval_form(&t, &y.neg(), &x).unwrap(), f);
    }
}

/// The Gaussian integer nearest to `alpha^(j) y`, offset by `delta`.
fn near_root(t: &QuadInt, y: &QuadInt, j: usize, delta: (i64, i64)) -> QuadInt {
    let discs = isolate_roots(&GaussRat::int(t.a, t.b), &rat(0, 1), 64).unwrap();
    let (re, im) = (to_f64(&discs[j].center.re), to_f64(&discs[j].center.im));
    let (ya, yb) = (y.a as f64, y.b as f64);
    QuadInt::new(1, (re * ya - im * yb).round() as i64 + delta.0, (re * yb + im * ya).round() as i64 + delta.1).unwrap()
}
