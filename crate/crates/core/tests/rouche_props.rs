use num_traits::Signed;
use proptest::prelude::*;

use thueq::exactnum::rat::{powi, sqrt_upper};
use thueq::exactnum::{int, Rat};
use thueq::rouche::{certify_high_order, certify_low_order, isolate_roots, low_order_specs, root_separation};
use thueq::series::{GaussRat, RootType};

/// A Gaussian integer with `100 <= |t| <= 10^4`, by polar-ish sampling.
fn ring_point() -> impl Strategy<Value = (i64, i64)> {
    (100i64..=10_000, 0u32..3600).prop_map(|(r, deg)| {
        let th = (deg as f64 / 10.0).to_radians();
        let (mut a, mut b) = ((r as f64 * th.cos()).round() as i64, (r as f64 * th.sin()).round() as i64);
        while a * a + b * b < 100 * 100 {
            if a >= 0 { a += 1 } else { a -= 1 }
        }
        if a * a + b * b > 10_000 * 10_000 {
            b -= b.signum();
        }
        (a, b)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// Roots isolated numerically at a concrete `t` lie inside the certified low-order discs.
    #[test]
    fn isolated_roots_lie_in_certified_discs((a, b) in ring_point()) {
        let t = GaussRat::int(a, b);
        let discs = isolate_roots(&t, &Rat::from_integer(0.into()), 128).unwrap();
        let t_abs_hi = sqrt_upper(&t.norm(), 64);
        for (disc, (center, radius_c, exp)) in discs.iter().zip(low_order_specs().unwrap()) {
            let c = center.eval_at_t(&t);
            let radius = radius_c / powi(&t_abs_hi, exp as u32);
            let dist = sqrt_upper(&(disc.center.clone() - c).norm(), 256) + &disc.radius;
            prop_assert!(dist <= radius, "t = {t}: root at distance {dist} > {radius}");
        }
    }

    #[test]
    fn separation_holds_above_hundred(n in 100i64..100_000, d in 1i64..4) {
        let tmin = Rat::new(n.into(), d.into()).max(int(100));
        let s = root_separation(&tmin).unwrap();
        prop_assert!(s.min_pairwise.is_positive() && s.min_to_alpha2.is_positive() && s.alpha0_lower.is_positive());
    }
}

#[test]
fn majorants_are_nonnegative_and_decreasing() {
    let mut certs = certify_low_order(&int(100)).unwrap();
    certs.push(certify_high_order(RootType::Type0).unwrap());
    certs.push(certify_high_order(RootType::Type3).unwrap());
    for c in certs {
        assert!(c.verified, "{}: {:?}", c.center, c.diagnostic);
        for m in &c.terms {
            assert!(m.s_power >= 0 && !m.coeff.is_negative(), "{}: z^{} s^{}", c.center, m.z_power, m.s_power);
        }
    }
}

#[test]
fn separation_at_hundred_supports_the_beta_constant() {
    let s = root_separation(&int(100)).unwrap();
    assert!(s.min_pairwise >= thueq::exactnum::parse_rat("0.96").unwrap(), "{}", s.min_pairwise);
    assert!(s.min_to_alpha2 >= thueq::exactnum::parse_rat("0.98").unwrap(), "{}", s.min_to_alpha2);
}
