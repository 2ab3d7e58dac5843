mod common;

use num_traits::Zero;
use proptest::prelude::*;

use thueq::error::Error;
use thueq::exactnum::{int, Rat};
use thueq::series::{alpha3_series, newton_alpha_series, pade, shipped_series, tail_bound, GaussRat, Poly, RootType, Series};

fn gauss(p: &Poly<Rat>) -> Poly<GaussRat> {
    p.map(|c| GaussRat::real(c.clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pade_contract(which in 0usize..3, m in 0usize..9, n in 0usize..9) {
        let (b, b3) = shipped_series().unwrap();
        let series = [b, b3, newton_alpha_series(20)][which].clone();
        prop_assume!(m + n < series.order());
        match pade(&series, m, n) {
            Err(Error::DegeneratePade { .. }) => {}
            Err(e) => prop_assert!(false, "[{m}/{n}]: {e}"),
            Ok(pair) => {
                prop_assert!(!pair.v.coeff(0).is_zero(), "[{m}/{n}]: V(0) = 0");
                common::pade_contact(&series, m, n).map_err(TestCaseError::fail)?;
            }
        }
    }

    /// `x -> -(x + 1)/(x - 1)` squares to `x -> -1/x` and has order 4, cycling the roots
    /// `alpha, alpha^(3), alpha^(2), alpha^(1)`.
    #[test]
    fn mobius_map_has_order_four(c0 in -50i64..50, coeffs in proptest::collection::vec(-20i64..20, 1..12)) {
        prop_assume!(![-1, 0, 1].contains(&c0));
        let n = coeffs.len() + 1;
        let x = Series::new(std::iter::once(int(c0)).chain(coeffs.iter().map(|&c| int(c))).collect(), n);
        let twice = alpha3_series(&alpha3_series(&x).unwrap()).unwrap();
        prop_assert_eq!(twice.clone(), -x.inv().unwrap());
        prop_assert_eq!(alpha3_series(&alpha3_series(&twice).unwrap()).unwrap(), x);
    }

    #[test]
    fn tail_bound_is_sound(
        lead in 0usize..6,
        coeffs in proptest::collection::vec(-1000i64..1000, 1..10),
        re in -400i64..400,
        im in -400i64..400,
    ) {
        let (re, im) = if re * re + im * im < 100 * 100 { (re + 100, im) } else { (re, im) };
        prop_assume!(re * re + im * im >= 100 * 100);
        let expr = Poly::new(coeffs.iter().map(|&c| int(c)).collect()).shift(lead);
        let bound = tail_bound(&expr, lead, &int(100)).unwrap();
        let t = GaussRat::int(re, im);
        let v = gauss(&expr).eval(&t.inv().unwrap());
        // |expr(1/t)| |t|^lead <= bound, on squares
        let lhs = v.norm() * t.norm().pow(lead as i32);
        prop_assert!(lhs <= &bound * &bound);
    }
}

#[test]
fn newton_series_solve_the_defining_equation() {
    for order in [2, 5, 16, 31, 40] {
        common::defining_residual(order).unwrap();
    }
}

#[test]
fn approximants_are_integral_with_nonzero_cross_products() {
    for which in [RootType::Type0, RootType::Type3] {
        for r in 1..=5 {
            common::approximants_integral(which, r).unwrap();
            common::cross_product_nonzero(which, r).unwrap();
        }
    }
}
