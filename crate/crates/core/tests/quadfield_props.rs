use std::collections::BTreeSet;

use proptest::prelude::*;

use thueq::exactnum::{int, rat, Rat};
use thueq::quadfield::{enumerate_bounded, is_squarefree, roots_of_unity, QuadInt};

fn squarefree_upto(n: u64) -> Vec<u64> {
    (1..=n).filter(|&d| is_squarefree(d)).collect()
}

fn element() -> impl Strategy<Value = (u64, i64, i64, i64, i64)> {
    (proptest::sample::select(squarefree_upto(50)), -500i64..500, -500i64..500, -500i64..500, -500i64..500)
}

proptest! {
    #[test]
    fn abs_sq_is_multiplicative((d, a, b, c, e) in element()) {
        let x = QuadInt::new(d, a, b).unwrap();
        let y = QuadInt::new(d, c, e).unwrap();
        let xy = x.mul(&y).unwrap();
        prop_assert_eq!(xy.abs_sq(), x.abs_sq() * y.abs_sq());
        prop_assert_eq!(x.abs_sq(), Rat::from_integer(x.norm().into()));
        prop_assert_eq!(x.abs_sq() == Rat::from_integer(0.into()), x.is_zero());
    }
}

/// Every element of every field with `0 < |x| <= m`, by a double loop over wide coordinate
/// ranges. Rational integers are reported once, under `d = 1`.
fn brute_force(m: &Rat) -> BTreeSet<QuadInt> {
    let m2 = m * m;
    let bound = 4 * m.ceil().to_integer().try_into().unwrap_or(0i64) + 2;
    let mut out = BTreeSet::new();
    // a non-rational element has |x|^2 >= (1 + d)/4
    let dmax = (&m2 * int(4)).floor().to_integer().try_into().unwrap_or(0u64) + 1;
    for d in squarefree_upto(dmax) {
        for b in -bound..=bound {
            for a in -bound..=bound {
                let x = QuadInt::new(d, a, b).unwrap();
                if x.is_zero() || x.abs_sq() > m2 {
                    continue;
                }
                out.insert(if b == 0 { QuadInt::embed(a, 1) } else { x });
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    for k in 1..=20 {
        let m = rat(k, 4);
        let listed: Vec<QuadInt> = enumerate_bounded(&m, false);
        let set: BTreeSet<QuadInt> = listed.iter().copied().collect();
        assert_eq!(set.len(), listed.len(), "m = {m}: duplicates");
        assert_eq!(set, brute_force(&m), "m = {m}");
    }
}

#[test]
fn moduli_are_one_exactly_on_units() {
    for x in enumerate_bounded(&int(5), false) {
        let n = x.abs_sq();
        assert!(n >= Rat::from_integer(1.into()), "{}", x.render());
        assert_eq!(n == Rat::from_integer(1.into()), roots_of_unity(x.d).contains(&x), "{}", x.render());
    }
}

#[test]
fn unit_groups_are_closed() {
    for d in squarefree_upto(50) {
        let units = roots_of_unity(d);
        for u in &units {
            assert!(units.iter().any(|v| u.mul(v).unwrap() == QuadInt::one(d)), "d = {d}: {} has no inverse", u.render());
            for v in &units {
                assert!(units.contains(&u.mul(v).unwrap()), "d = {d}");
            }
        }
    }
}
