use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use thueq::exactnum::rat::powi;
use thueq::exactnum::{int, rat, Rat};
use thueq::hyperchi::{chi, chi_star, content, denom_data};
use thueq::series::Poly;

/// `X(1 - X) y'' + (c - (a + b + 1) X) y' - a b y` for `a = -r`, `b = -r - 1/4`, `c = 3/4`.
fn ode_residual(r: u32) -> Poly<Rat> {
    let a = -int(r as i64);
    let b = -int(r as i64) - rat(1, 4);
    let c = rat(3, 4);
    let y = chi(r);
    let (y1, y2) = (y.derivative(), y.derivative().derivative());
    let x = Poly::x();
    let one = Poly::constant(Rat::one());
    let first = Poly::new(vec![c, -(&a + &b + Rat::one())]);
    x.clone() * (one - x) * y2 + first * y1 - y.scale(&(&a * &b))
}

#[test]
fn chi_solves_its_hypergeometric_equation() {
    for r in 0..=10 {
        assert!(ode_residual(r).is_zero(), "r = {r}");
        assert_eq!(chi(r).degree(), Some(r as usize));
        assert!(chi(r).coeff(0).is_one());
    }
}

#[test]
fn denominators_and_numerators_divide() {
    for r in 1..=10 {
        let dd = denom_data(r).unwrap();
        assert!(dd.delta > BigInt::zero() && dd.n > BigInt::zero());
        for c in chi(r).coeffs() {
            assert!(dd.delta.is_multiple_of(c.denom()), "r = {r}: {c}");
        }
        let shifted = chi(r).compose(&Poly::new(vec![int(1), int(-8)]));
        for c in shifted.coeffs() {
            assert!(c.numer().is_multiple_of(&dd.n), "r = {r}: {c}");
        }
        assert_eq!(content(&dd.cleared), BigInt::one(), "r = {r}");
    }
}

proptest! {
    #[test]
    fn homogenization(r in 0u32..=10, xn in -50i64..50, yn in -50i64..50, den in 1i64..20) {
        prop_assume!(yn != 0);
        let (x, y) = (rat(xn, den), rat(yn, den));
        prop_assert_eq!(chi_star(r, &x, &y), powi(&y, r) * chi(r).eval(&(&x / &y)));
    }

    #[test]
    fn ode_holds_at_sample_points(r in 0u32..=10, n in -30i64..30, d in 1i64..30) {
        prop_assert!(ode_residual(r).eval(&rat(n, d)).is_zero());
    }
}
