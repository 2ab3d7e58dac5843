use proptest::prelude::*;

use thueq::exactnum::rat::{sqrt_lower, sqrt_upper, to_f64};
use thueq::exactnum::{int, parse_rat, Rat};
use thueq::measure::{
    exact_measure_values, irrationality_lower, theorem_assembly, AssemblyConfig, MeasureValues, Verdict, MEASURE_NAMES,
};
use thueq::rouche::isolate_roots;
use thueq::series::{GaussRat, RootType};

#[test]
fn published_constants_dominate_the_exact_chain() {
    for which in [RootType::Type0, RootType::Type3] {
        let published = MeasureValues::published(which);
        for t in [100, 101, 150, 200, 500, 10_000] {
            let exact = exact_measure_values(which, &int(t));
            for ((name, p), e) in MEASURE_NAMES.iter().zip(published.as_array()).zip(exact.as_array()) {
                assert!(e <= p, "type {} |t| = {t}: {name} exact {} above {}", which.index(), to_f64(e), to_f64(p));
            }
        }
    }
}

#[test]
fn assembly_is_monotone_in_tmin() {
    let reports: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = [100, 150, 200, 500]
            .into_iter()
            .map(|t| s.spawn(move || (t, theorem_assembly(&AssemblyConfig { tmin: int(t), ..AssemblyConfig::default() }))))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    for (t, r) in &reports {
        assert_eq!(r.verdict, Verdict::Proven, "tmin = {t}: {:?}", r.failed_gates());
    }
    for w in reports.windows(2) {
        let (a, b) = (&w[0].1, &w[1].1);
        assert!(b.kappa_hi <= a.kappa_hi, "kappa at tmin {} vs {}", w[0].0, w[1].0);
    }
}

#[test]
fn final_exponent_bookkeeping() {
    let r = theorem_assembly(&AssemblyConfig::default());
    let g = r.gate("coefficient_product").expect("gate present");
    assert!(g.ok, "{}", g.detail);
    let lit = |s: &str| parse_rat(s).unwrap();
    for which in [RootType::Type0, RootType::Type3] {
        assert!(lit("8.86") * MeasureValues::published(which).c_coeff < lit("137.16"));
    }
}

fn root_at_hundred_i(which: RootType) -> (GaussRat, Rat) {
    let discs = isolate_roots(&GaussRat::int(0, 100), &Rat::from_integer(0.into()), 128).unwrap();
    let d = &discs[which.index() as usize];
    (d.center.clone(), d.radius.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    /// `|alpha^(j) - p/q|` at `t = 100i`, enclosed exactly, exceeds the certified lower bound.
    #[test]
    fn measure_holds_at_hundred_i(
        which in proptest::sample::select(vec![RootType::Type0, RootType::Type3]),
        (qa, qb) in (-1_000_000i64..1_000_000, -1_000_000i64..1_000_000),
        (da, db) in (-1i64..=1, -1i64..=1),
    ) {
        let q = GaussRat::int(qa, qb);
        prop_assume!(q.norm() >= int(28 * 28));
        let (alpha, radius) = root_at_hundred_i(which);
        let aq = alpha.clone() * q.clone();
        let p = GaussRat::int(aq.re.round().to_integer().try_into().unwrap(), aq.im.round().to_integer().try_into().unwrap())
            + GaussRat::int(da, db);
        let gap = sqrt_lower(&(alpha - p / q.clone()).norm(), 256) - radius;
        let bound = irrationality_lower(&int(100), &sqrt_upper(&q.norm(), 64), which).unwrap();
        prop_assert!(gap > bound, "q = {q}: gap {} vs {}", to_f64(&gap), to_f64(&bound));
    }
}
