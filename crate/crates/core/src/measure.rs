//! Irrationality measure constants for `alpha^(0)` and `alpha^(3)`, the final contradiction for
//! `|t| >= tmin`, and the calculators for `|F_t| <= C|t|` and `|F_t| <= |t|^(2 - eps)`.
//!
//! Lines that depend on `|t|` have left sides that decrease (and right sides that increase) with
//! `|t|`, so checking them at `tmin` covers every `|t| >= tmin`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::descent::{run_descent, StepRecord, BETA_COEFF};
use crate::dioph::{irreducibility_exceptions, small_solution_search};
use crate::error::{Error, Result};
use crate::exactnum::interval::{pow_product_cmp, rpow_upper};
use crate::exactnum::rat::{decimal_hint, powi, round_up_dec, sqrt_upper};
use crate::exactnum::{int, kappa, ln_enclosure, parse_rat, rat, Rat};
use crate::hyperchi::{verify_lettl, LettlRow};
use crate::rouche::{certify_low_order, root_separation, EnclosureCert};
use crate::series::thue::quotient_root_check;
use crate::series::RootType;

fn lit(s: &str) -> Rat {
    parse_rat(s).expect("decimal literal")
}

/// Width used for every `kappa` enclosure in this module.
fn kappa_width() -> Rat {
    rat(1, 100_000_000)
}

/// `lhs <= rhs`, or `lhs < rhs` when `strict`, decided exactly.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainLine {
    pub name: String,
    pub lhs: Rat,
    pub rhs: Rat,
    pub strict: bool,
    pub holds: bool,
}

impl ChainLine {
    pub fn le(name: impl Into<String>, lhs: Rat, rhs: Rat) -> Self {
        let holds = lhs <= rhs;
        ChainLine { name: name.into(), lhs, rhs, strict: false, holds }
    }

    pub fn lt(name: impl Into<String>, lhs: Rat, rhs: Rat) -> Self {
        let holds = lhs < rhs;
        ChainLine { name: name.into(), lhs, rhs, strict: true, holds }
    }
}

impl fmt::Display for ChainLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.strict { "<" } else { "<=" };
        write!(f, "{}: {} {op} {}", self.name, decimal_hint(&self.lhs, 6), decimal_hint(&self.rhs, 6))
    }
}

fn first_failure(lines: &[ChainLine]) -> Option<&ChainLine> {
    lines.iter().find(|l| !l.holds)
}

/// `|q_r| < k0 Q^r`, `|q_r alpha - p_r| <= l0 E^-r` with `Q = q_coeff |t|`, `l0 = l0_coeff/|t|`,
/// `E = |t|/e_div`, and the resulting `|alpha - p/q| > 1/(c_coeff |t| |q|^(kappa+1))` for
/// `|q| >= qmin_coeff |t|`.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureValues {
    pub k0: Rat,
    pub q_coeff: Rat,
    pub l0_coeff: Rat,
    pub e_div: Rat,
    pub qmin_coeff: Rat,
    pub c_coeff: Rat,
}

impl MeasureValues {
    /// The published constants for each root.
    pub fn published(which: RootType) -> Self {
        let v = match which {
            RootType::Type0 => ["3.32", "2.94", "1.83", "13.27", "0.28", "5.47"],
            RootType::Type3 => ["4.7", "2.94", "3.66", "13.27", "0.14", "15.48"],
        };
        MeasureValues {
            k0: lit(v[0]),
            q_coeff: lit(v[1]),
            l0_coeff: lit(v[2]),
            e_div: lit(v[3]),
            qmin_coeff: lit(v[4]),
            c_coeff: lit(v[5]),
        }
    }

    pub fn as_array(&self) -> [&Rat; 6] {
        [&self.k0, &self.q_coeff, &self.l0_coeff, &self.e_div, &self.qmin_coeff, &self.c_coeff]
    }
}

pub const MEASURE_NAMES: [&str; 6] = ["k0", "Q/|t|", "l0·|t|", "|t|/E", "qmin/|t|", "c/|t|"];

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureConstants {
    pub type_index: u8,
    pub tmin: Rat,
    pub rmax: u32,
    pub published: MeasureValues,
    /// the same quantities computed without intermediate rounding (fractional powers bounded
    /// from above by 12-digit decimals)
    pub exact: MeasureValues,
    pub lines: Vec<ChainLine>,
}

/// Lines shared by both roots: the bounds on `w = (it - 4)/(it + 4)` and the rounded chain to
/// `k0 = 3.32`, `Q = 2.94|t|`, `l0 = 1.83/|t|`, `E = |t|/13.27`.
fn shared_lines(t: &Rat) -> Vec<ChainLine> {
    let one = Rat::one();
    let w_dev = int(8) / (t - int(4));
    vec![
        ChainLine::lt("|alpha^(0)| <= 1/|t| + 5.01/|t|^3 < 0.02", one.clone() / t + lit("5.01") / powi(t, 3), lit("0.02")),
        ChainLine::le("|t| + 4 <= 1.04|t|", &one + int(4) / t, lit("1.04")),
        ChainLine::lt("|1 - w| <= 8/(|t| - 4) < 1", w_dev.clone(), one.clone()),
        ChainLine::lt("|w|, |1/w| <= 1 + 8/(|t| - 4) < 1.09", &one + &w_dev, lit("1.09")),
        ChainLine::le("|t| - 4 >= 0.96|t|", lit("0.96"), &one - int(4) / t),
        ChainLine::le("|t| - 12 >= 0.88|t|", lit("0.88"), &one - int(12) / t),
        ChainLine::lt("1.35 · 1.04 · 2.09 < 2.94", lit("1.35") * lit("1.04") * lit("2.09"), lit("2.94")),
        ChainLine::lt(
            "1.02 · 0.96^(-1/4) · 0.88^(-3/4) < 1.14 (fourth powers)",
            powi(&lit("1.02"), 4),
            powi(&lit("1.14"), 4) * lit("0.96") * powi(&lit("0.88"), 3),
        ),
        ChainLine::lt("1.04 / (0.96 · 0.88) < 1.24", lit("1.04") / (lit("0.96") * lit("0.88")), lit("1.24")),
        ChainLine::lt("1.6 · 1.14 < 1.83", lit("1.6") * lit("1.14"), lit("1.83")),
        ChainLine::lt("10.7 · 1.24 < 13.27", lit("10.7") * lit("1.24"), lit("13.27")),
    ]
}

fn type_lines(which: RootType, t: &Rat) -> Vec<ChainLine> {
    match which {
        RootType::Type0 => vec![
            ChainLine::lt("2 · 3.32 · 2.94 < 19.53", int(2) * lit("3.32") * lit("2.94"), lit("19.53")),
            ChainLine::lt("2 · 1.83 / 13.27 < 0.28", int(2) * lit("1.83") / lit("13.27"), lit("0.28")),
            ChainLine::lt("19.53 · 0.28 < 5.47", lit("19.53") * lit("0.28"), lit("5.47")),
            ChainLine::lt("1 / (2 · 1.83) < 0.28", Rat::one() / (int(2) * lit("1.83")), lit("0.28")),
        ],
        RootType::Type3 => vec![
            ChainLine::lt("sqrt(2) · 3.32 < 4.7 (squares)", int(2) * powi(&lit("3.32"), 2), powi(&lit("4.7"), 2)),
            ChainLine::lt("2.16/|t| < 1.44", lit("2.16") / t, lit("1.44")),
            ChainLine::le(
                "|alpha^(3) - i| <= sqrt(2) + 2.16/|t| <= 1.44 (squares)",
                int(2),
                powi(&(lit("1.44") - lit("2.16") / t), 2),
            ),
            ChainLine::le(
                "1.83 · sqrt(2) · 1.44 / 1.02 <= 3.66 (squares)",
                int(2) * powi(&(lit("1.83") * lit("1.44")), 2),
                powi(&(lit("3.66") * lit("1.02")), 2),
            ),
            ChainLine::le("2 · 4.7 · 2.94 <= 27.64", int(2) * lit("4.7") * lit("2.94"), lit("27.64")),
            ChainLine::le("2 · 3.66 / 13.27 <= 0.56", int(2) * lit("3.66") / lit("13.27"), lit("0.56")),
            ChainLine::le("27.64 · 0.56 <= 15.48", lit("27.64") * lit("0.56"), lit("15.48")),
            ChainLine::le("1 / (2 · 3.66) <= 0.14", Rat::one() / (int(2) * lit("3.66")), lit("0.14")),
        ],
    }
}

/// The constants without intermediate rounding at `|t| = t`.
pub fn exact_measure_values(which: RootType, t: &Rat) -> MeasureValues {
    let one = Rat::one();
    let sqrt2 = sqrt_upper(&int(2), 96);
    let lower4 = &one - int(4) / t;
    let lower12 = &one - int(12) / t;
    // (1 - 4/|t|)^(-1/4) (1 - 12/|t|)^(-3/4), to the fourth power
    let tail4 = one.clone() / (&lower4 * powi(&lower12, 3));
    let (k0, lead) = match which {
        RootType::Type0 => (lit("3.32"), &one + one.clone() / t + lit("5.01") / powi(t, 3)),
        RootType::Type3 => (
            sqrt_upper(&(int(2) * powi(&lit("3.32"), 2)), 96),
            &sqrt2 * (&sqrt2 + lit("2.16") / t),
        ),
    };
    let q_coeff = lit("1.35") * (&one + int(4) / t) * (int(2) + int(8) / (t - int(4)));
    let l0_coeff = lit("1.6") * rpow_upper(&(powi(&lead, 4) * tail4), &rat(1, 4), 12);
    let e_div = lit("10.7") * (&one + int(4) / t) / (&lower4 * &lower12);
    // the lemma is applied with the published l0, whose gate is 1/(2 l0)
    let qmin_coeff = one.clone() / (int(2) * MeasureValues::published(which).l0_coeff);
    let c_coeff = int(2) * &k0 * &q_coeff * (int(2) * &l0_coeff / &e_div);
    MeasureValues { k0, q_coeff, l0_coeff, e_div, qmin_coeff, c_coeff }
}

/// Replay the derivation of the measure constants at `tmin`, with the Lettl bounds checked for
/// `r <= rmax`. Fails naming the first line that does not hold.
pub fn measure_constants(which: RootType, tmin: &Rat, rmax: u32) -> Result<MeasureConstants> {
    let lettl = verify_lettl(rmax)?;
    measure_constants_with(which, tmin, rmax, &lettl)
}

pub fn measure_constants_with(which: RootType, tmin: &Rat, rmax: u32, lettl: &[LettlRow]) -> Result<MeasureConstants> {
    if !quotient_root_check(which) {
        return Err(Error::Certification(format!("the quotient is not the root alpha^({})", which.index())));
    }
    if let Some(c) = certify_low_order(tmin)?.into_iter().find(|c| !c.verified) {
        return Err(Error::Certification(format!("root enclosure around {} fails at tmin = {tmin}", c.center)));
    }
    let published = MeasureValues::published(which);
    let exact = exact_measure_values(which, tmin);
    let mut lines = shared_lines(tmin);
    lines.extend(type_lines(which, tmin));

    let worst = lettl.iter().map(|r| (&r.lhs1 / &r.rhs1).max(&r.lhs2 / &r.rhs2)).max().unwrap_or_else(Rat::zero);
    lines.push(ChainLine::lt(format!("Lettl bounds for r <= {rmax} (largest lhs/rhs)"), worst, Rat::one()));
    let w = rat(1, 1_000_000);
    lines.push(ChainLine::le("log 2.94 <= 1.08", ln_enclosure(&lit("2.94"), &w)?.hi, lit("1.08")));
    lines.push(ChainLine::le("log 13.27 <= 2.59", ln_enclosure(&lit("13.27"), &w)?.hi, lit("2.59")));
    lines.push(ChainLine::lt(
        "2 l0 E < 1, so (2 l0 E)^kappa <= 2 l0 E for kappa >= 1",
        int(2) * &published.l0_coeff / &published.e_div,
        Rat::one(),
    ));
    for ((name, e), p) in MEASURE_NAMES.iter().zip(exact.as_array()).zip(published.as_array()) {
        lines.push(ChainLine::le(format!("exact {name} <= published"), e.clone(), p.clone()));
    }
    if let Some(l) = first_failure(&lines) {
        return Err(Error::Certification(format!("type {} measure derivation fails at tmin = {tmin}: {l}", which.index())));
    }
    Ok(MeasureConstants { type_index: which.index(), tmin: tmin.clone(), rmax, published, exact, lines })
}

/// Smallest decimal with at least `min_places` places that is `>= x` and still `< below`.
pub fn decimal_cap(x: &Rat, below: &Rat, min_places: u32) -> Option<Rat> {
    (min_places..=12).map(|p| round_up_dec(x, p)).find(|c| c < below)
}

/// Certified upper end of `kappa(t)`.
pub fn kappa_hi(t_abs: &Rat) -> Result<Rat> {
    Ok(kappa(t_abs, &kappa_width())?.hi)
}

/// Lower bound for `|alpha^(j) - p/q|` from the published measure, for `|t| >= 100`.
///
/// `q_abs` must bound `|q|` from above and itself satisfy the gate `q_abs >= qmin |t|`.
pub fn irrationality_lower(t_abs: &Rat, q_abs: &Rat, which: RootType) -> Result<Rat> {
    if t_abs < &int(100) {
        return Err(Error::Precondition("the measure is certified for |t| >= 100".into()));
    }
    let m = MeasureValues::published(which);
    if q_abs < &(&m.qmin_coeff * t_abs) {
        return Err(Error::Precondition(format!("|q| = {} is below {} |t|", decimal_hint(q_abs, 6), decimal_hint(&m.qmin_coeff, 3))));
    }
    let k = decimal_cap(&kappa_hi(t_abs)?, &int(3), 3).unwrap_or_else(|| round_up_dec(&kappa_hi(t_abs).unwrap(), 3));
    let qp = rpow_upper(q_abs, &(k + Rat::one()), 10);
    Ok(Rat::one() / (m.c_coeff * t_abs * qp))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proven,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Proven => "proven",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

impl Gate {
    fn new(name: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Gate { name, ok, detail: detail.into() }
    }

    fn from_lines(name: &'static str, lines: &[ChainLine]) -> Self {
        match first_failure(lines) {
            Some(l) => Gate::new(name, false, l.to_string()),
            None => Gate::new(name, true, format!("{} lines hold", lines.len())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblyConfig {
    pub tmin: Rat,
    pub kmax: u32,
    pub rmax: u32,
}

impl Default for AssemblyConfig {
    fn default() -> Self {
        AssemblyConfig { tmin: int(100), kmax: 11, rmax: 60 }
    }
}

#[derive(Clone, Debug)]
pub struct ProofReport {
    pub config: AssemblyConfig,
    pub kappa_hi: Option<Rat>,
    /// decimal cap on `kappa_hi` used in the exponent `3 - kappa`
    pub kappa_cap: Option<Rat>,
    /// every `|y|` with `|y|^(3 - kappa) < 137.16` is below this
    pub contradiction_upper: Option<Rat>,
    pub descent_lower_0: Option<Rat>,
    pub descent_lower_3: Option<Rat>,
    pub gates: Vec<Gate>,
    pub verdict: Verdict,
    pub enclosures: Vec<EnclosureCert>,
    pub descent_0: Vec<StepRecord>,
    pub descent_3: Vec<StepRecord>,
    pub measure: Vec<MeasureConstants>,
    pub lettl_rows: usize,
}

impl ProofReport {
    pub fn gate(&self, name: &str) -> Option<&Gate> {
        self.gates.iter().find(|g| g.name == name)
    }

    pub fn failed_gates(&self) -> Vec<&Gate> {
        self.gates.iter().filter(|g| !g.ok).collect()
    }

    /// Whether a gate that does not depend on `tmin` failed, which means the engine is broken
    /// rather than the parameters too weak.
    pub fn internal_failure(&self) -> bool {
        self.failed_gates().iter().any(|g| INTERNAL_GATES.contains(&g.name))
    }
}

pub const INTERNAL_GATES: [&str; 2] = ["lettl", "coefficient_product"];

/// Gate names in report order.
pub const GATE_NAMES: [&str; 12] = [
    "irreducibility",
    "small_solutions",
    "type_reduction",
    "descent_type0",
    "descent_type3",
    "lettl",
    "measure_type0",
    "measure_type3",
    "kappa",
    "y_gate",
    "coefficient_product",
    "contradiction",
];

fn irreducibility_gate(tmin: &Rat) -> Gate {
    let ex = irreducibility_exceptions();
    let t2 = tmin * tmin;
    let inside = ex.ts.iter().filter(|t| Rat::from_integer(t.norm().into()) >= t2).count();
    Gate::new(
        "irreducibility",
        inside == 0,
        format!("{} reducible t, {inside} with |t| >= tmin; F_t = 0 has only (0, 0) otherwise", ex.ts.len()),
    )
}

fn small_solutions_gate(tmin: &Rat) -> Gate {
    match small_solution_search(tmin) {
        Ok(s) if s.is_empty() => Gate::new("small_solutions", true, "no non-trivial solution with min(|x|, |y|) < 3"),
        Ok(s) => Gate::new("small_solutions", false, format!("{} small solutions with |t| >= tmin", s.len())),
        Err(e) => Gate::new("small_solutions", false, e.to_string()),
    }
}

/// Solutions with `min(|x|, |y|) >= 3` may be taken of type 0 or 3.
fn type_reduction_gate(tmin: &Rat) -> Gate {
    let sep = match root_separation(tmin) {
        Ok(s) => s,
        Err(e) => return Gate::new("type_reduction", false, e.to_string()),
    };
    let beta = lit(BETA_COEFF);
    let lines = [
        ChainLine::le("distinct roots at distance >= 0.96", lit("0.96"), sep.min_pairwise),
        ChainLine::le("|alpha^(2) - alpha^(i)| >= 0.98|t|", lit("0.98"), sep.min_to_alpha2),
        ChainLine::le("|alpha^(0)| >= 0.94/|t|", lit("0.94"), sep.alpha0_lower),
        ChainLine::lt("8/(0.96^2 · 0.98) < 8.86", int(8) / (lit("0.96") * lit("0.96") * lit("0.98")), beta.clone()),
        ChainLine::lt("8.86/(|t| 3^4) < 0.09", &beta / (tmin * int(81)), lit("0.09")),
        ChainLine::le("0.09 < 0.48 = 0.96/2", lit("0.09"), lit("0.48")),
        ChainLine::le("8.86/0.94 <= 9.43", &beta / lit("0.94"), lit("9.43")),
        ChainLine::lt("9.43/3^4 < 0.48", lit("9.43") / int(81), lit("0.48")),
    ];
    Gate::from_lines("type_reduction", &lines)
}

fn descent_gate(name: &'static str, chain: &Result<Vec<StepRecord>>) -> Gate {
    match chain {
        Ok(v) if !v.is_empty() => {
            let last = v.last().unwrap();
            Gate::new(name, true, format!("k = {}: |y| > {}", last.k, decimal_hint(&last.y_lower, 4)))
        }
        Ok(_) => Gate::new(name, false, "empty chain"),
        Err(e) => Gate::new(name, false, e.to_string()),
    }
}

/// Combine every certificate into the statement that `F_t(x, y) = mu` has only trivial solutions
/// for `|t| >= tmin`.
pub fn theorem_assembly(cfg: &AssemblyConfig) -> ProofReport {
    let tmin = &cfg.tmin;
    let ((irr, small), ((d0, d3), (lettl, encl))) = rayon::join(
        || rayon::join(|| irreducibility_gate(tmin), || small_solutions_gate(tmin)),
        || {
            rayon::join(
                || {
                    rayon::join(
                        || run_descent(RootType::Type0, cfg.kmax, tmin, true),
                        || run_descent(RootType::Type3, cfg.kmax, tmin, true),
                    )
                },
                || rayon::join(|| verify_lettl(cfg.rmax), || certify_low_order(tmin)),
            )
        },
    );
    let mut gates = vec![irr, small, type_reduction_gate(tmin), descent_gate("descent_type0", &d0), descent_gate("descent_type3", &d3)];

    let mut measure = Vec::new();
    match &lettl {
        Ok(rows) => {
            gates.push(Gate::new("lettl", true, format!("r <= {}", cfg.rmax)));
            for (which, name) in [(RootType::Type0, "measure_type0"), (RootType::Type3, "measure_type3")] {
                match measure_constants_with(which, tmin, cfg.rmax, rows) {
                    Ok(m) => {
                        gates.push(Gate::new(name, true, format!("{} lines hold", m.lines.len())));
                        measure.push(m);
                    }
                    Err(e) => gates.push(Gate::new(name, false, e.to_string())),
                }
            }
        }
        Err(e) => {
            gates.push(Gate::new("lettl", false, e.to_string()));
            gates.push(Gate::new("measure_type0", false, "needs the Lettl bounds"));
            gates.push(Gate::new("measure_type3", false, "needs the Lettl bounds"));
        }
    }

    let k_hi = kappa_hi(tmin).ok();
    let k_cap = k_hi.as_ref().and_then(|k| decimal_cap(k, &int(3), 2));
    gates.push(match (&k_hi, &k_cap) {
        (Some(k), Some(c)) => Gate::new("kappa", true, format!("kappa({}) <= {} <= {} < 3", decimal_hint(tmin, 6), decimal_hint(k, 8), decimal_hint(c, 4))),
        (Some(k), None) => Gate::new("kappa", false, format!("kappa({}) <= {} is not certified below 3", decimal_hint(tmin, 6), decimal_hint(k, 8))),
        (None, _) => Gate::new("kappa", false, format!("kappa undefined at {}", decimal_hint(tmin, 6))),
    });

    let lower = |c: &Result<Vec<StepRecord>>| c.as_ref().ok().and_then(|v| v.last()).map(|r| r.y_lower.clone());
    let (low0, low3) = (lower(&d0), lower(&d3));
    let min_low = match (&low0, &low3) {
        (Some(a), Some(b)) => Some(a.clone().min(b.clone())),
        _ => None,
    };
    gates.push(match &min_low {
        Some(m) => Gate::from_lines("y_gate", &[ChainLine::le("|y| >= 0.28|t|", lit("0.28") * tmin, m.clone())]),
        None => Gate::new("y_gate", false, "no descent bound"),
    });
    let beta = lit(BETA_COEFF);
    let bound = lit("137.16");
    gates.push(Gate::from_lines(
        "coefficient_product",
        &[ChainLine::lt("8.86 · 15.48 < 137.16", &beta * lit("15.48"), bound.clone())],
    ));
    let upper = k_cap.as_ref().map(|c| rpow_upper(&bound, &(Rat::one() / (int(3) - c)), 4));
    gates.push(match (&upper, &min_low) {
        (Some(u), Some(m)) => Gate::from_lines(
            "contradiction",
            &[ChainLine::lt("137.16^(1/(3 - kappa)) < descent lower bound", u.clone(), m.clone())],
        ),
        (None, _) => Gate::new("contradiction", false, "needs kappa < 3"),
        (_, None) => Gate::new("contradiction", false, "needs both descent bounds"),
    });

    let verdict = if gates.iter().all(|g| g.ok) { Verdict::Proven } else { Verdict::Inconclusive };
    ProofReport {
        config: cfg.clone(),
        kappa_hi: k_hi,
        kappa_cap: k_cap,
        contradiction_upper: upper,
        descent_lower_0: low0,
        descent_lower_3: low3,
        gates,
        verdict,
        enclosures: encl.unwrap_or_default(),
        descent_0: d0.unwrap_or_default(),
        descent_3: d3.unwrap_or_default(),
        measure,
        lettl_rows: lettl.map(|r| r.len()).unwrap_or(0),
    }
}

/// Lines shared by both corollaries: from `1 < 2.16|y|/|t| + 0.33` to `|y| > 0.31|t| >= 0.28|t|`,
/// and the type-swap threshold `20.14`.
fn corollary_lines() -> Vec<ChainLine> {
    let beta = lit(BETA_COEFF);
    vec![
        ChainLine::le("0.31 <= 0.67/2.16", lit("0.31"), lit("0.67") / lit("2.16")),
        ChainLine::le("0.28 <= 0.31", lit("0.28"), lit("0.31")),
        ChainLine::le("8.86/0.44 <= 20.14", &beta / lit("0.44"), lit("20.14")),
        // both distances are strict, so the sum is below 0.5
        ChainLine::le("0.44 + 0.06 <= 0.5", lit("0.44") + lit("0.06"), lit("0.5")),
        ChainLine::lt("8.86 · 15.48 < 137.16", &beta * lit("15.48"), lit("137.16")),
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryLin {
    pub c: Rat,
    pub t0: Rat,
    pub kappa_hi_t0: Rat,
    pub kappa_cap: Rat,
    /// upper bounds for `(20.14 C)^(1/4)`, `3 C^(1/3)` and `(443 C)^(1/(2 - kappa(t0)))`
    pub c0_terms: [Rat; 3],
    pub c0: Rat,
    /// solutions `(x, ±x)` satisfy `|x|^4 <= family_pow4 · |t|`
    pub family_pow4: Rat,
    pub lines: Vec<ChainLine>,
}

pub const LIN_T0_MIN: i64 = 524;

/// Searches for `t0` stop at `10^SEARCH_CAP_DIGITS`.
pub const SEARCH_CAP_DIGITS: u32 = 60;

/// Smallest integer `>= start` where the monotone predicate `good` holds, by doubling and bisection.
fn least_good(start: BigInt, mut good: impl FnMut(&BigInt) -> Result<bool>) -> Result<BigInt> {
    let cap = BigInt::from(10).pow(SEARCH_CAP_DIGITS);
    if good(&start)? {
        return Ok(start);
    }
    let mut lo = start.clone();
    let mut hi = start.max(BigInt::one()) * 2;
    while !good(&hi)? {
        lo = hi.clone();
        hi *= 2;
        if hi > cap {
            return Err(Error::SearchCap(format!("no witness below 10^{SEARCH_CAP_DIGITS}")));
        }
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = &lo + (&hi - &lo) / 2;
        if good(&mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

fn kappa_below(t: &BigInt, bound: &Rat) -> Result<bool> {
    match kappa_hi(&Rat::from_integer(t.clone())) {
        Ok(k) => Ok(&k < bound),
        Err(Error::UndefinedKappa(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

/// `t0` and `C0` such that `|F_t(x, y)| <= C|t|` with `|t| >= t0` has no solution with
/// `min(|x|, |y|) >= C0` apart from `(x, ±x)` with `|x| <= (C|t|/4)^(1/4)`.
pub fn corollary_lin(c: &Rat, t0: Option<&Rat>) -> Result<CorollaryLin> {
    if !c.is_positive() {
        return Err(Error::Domain("C must be positive".into()));
    }
    let two = int(2);
    let t0 = match t0 {
        Some(t) if t < &int(LIN_T0_MIN) => {
            return Err(Error::Precondition(format!("t0 must be at least {LIN_T0_MIN}")));
        }
        Some(t) => t.clone(),
        None => Rat::from_integer(least_good(BigInt::from(LIN_T0_MIN), |t| kappa_below(t, &two))?),
    };
    let k_hi = kappa_hi(&t0)?;
    let k_cap = decimal_cap(&k_hi, &two, 4)
        .ok_or_else(|| Error::Certification(format!("kappa({t0}) is not certified below 2")))?;
    let beta = lit(BETA_COEFF);
    let c443 = lit("443") * c;
    let terms = [
        rpow_upper(&(lit("20.14") * c), &rat(1, 4), 6),
        int(3) * rpow_upper(c, &rat(1, 3), 6),
        rpow_upper(&c443, &(Rat::one() / (&two - &k_cap)), 6),
    ];
    let c0 = terms.iter().max().unwrap().clone();
    let mut lines = corollary_lines();
    lines.push(ChainLine::lt("443 > 8.86 · 15.48 / 0.31", &beta * lit("15.48") / lit("0.31"), lit("443")));
    lines.push(ChainLine::le("8.86 C / (3 C^(1/3))^3 <= 0.33", &beta / int(27), lit("0.33")));
    lines.push(ChainLine::lt("kappa(t0) < 2", k_hi.clone(), two.clone()));
    if let Some(l) = first_failure(&lines) {
        return Err(Error::Certification(l.to_string()));
    }
    Ok(CorollaryLin {
        c: c.clone(),
        t0,
        kappa_hi_t0: k_hi,
        kappa_cap: k_cap,
        c0_terms: terms,
        c0,
        family_pow4: c / int(4),
        lines,
    })
}

/// The three gates of the `|t|^(2 - eps)` argument at one `|t|`.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsGates {
    pub t: Rat,
    pub kappa_hi: Option<Rat>,
    pub kappa_cap: Option<Rat>,
    /// `20.14^((1-eps)/4) |t|^((1-eps)/4) <= (|t|^(2-eps)/4)^(1/4)`
    pub type_threshold: bool,
    /// `8.86 · 4^(3/4) / |t|^(1/2 + eps/4) <= 0.33`
    pub tail: bool,
    /// the same without the factor `4^(3/4)`, which assumes `min(|x|, |y|) > |t|^(1/2 - eps/4)`;
    /// informational only
    pub tail_without_factor: bool,
    /// `1 + eps - kappa > 0` and `(137.16/0.31^(2-eps))^(1/(1+eps-kappa)) < (|t|^(2-eps)/4)^(1/4)`
    pub final_cmp: bool,
}

impl EpsGates {
    pub fn all(&self) -> bool {
        self.type_threshold && self.tail && self.final_cmp
    }
}

pub fn eps_gates(eps: &Rat, t: &Rat) -> Result<EpsGates> {
    let one = Rat::one();
    let e2 = int(2) - eps;
    // 4 · 20.14^(1-eps) <= |t|
    let type_threshold = int(4) * rpow_upper(&lit("20.14"), &(&one - eps), 12) <= *t;
    // min(|x|, |y|) > (|t|^(2-eps)/4)^(1/4) gives |y|^3 > |t|^(3/2 - 3eps/4) / 4^(3/4)
    let tail_cmp = |factor: Rat| {
        pow_product_cmp(&[
            (lit(BETA_COEFF), one.clone()),
            (int(4), factor),
            (t.clone(), -(rat(1, 2) + eps / int(4))),
            (lit("0.33"), -one.clone()),
        ]) != Ordering::Greater
    };
    let tail = tail_cmp(rat(3, 4));
    let tail_without_factor = tail_cmp(Rat::zero());
    let (k_hi, k_cap, final_cmp) = match kappa_hi(t) {
        Ok(k) => {
            let cap = decimal_cap(&k, &(&one + eps), 3);
            let ok = cap.as_ref().is_some_and(|c| {
                let g = &one + eps - c;
                pow_product_cmp(&[
                    (lit("137.16"), &one / &g),
                    (lit("0.31"), -(&e2 / &g)),
                    (t.clone(), -(&e2 / int(4))),
                    (int(4), rat(1, 4)),
                ]) == Ordering::Less
            });
            (Some(k), cap, ok)
        }
        Err(Error::UndefinedKappa(_)) => (None, None, false),
        Err(e) => return Err(e),
    };
    Ok(EpsGates { t: t.clone(), kappa_hi: k_hi, kappa_cap: k_cap, type_threshold, tail, tail_without_factor, final_cmp })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorollaryEps {
    pub eps: Rat,
    pub t0: Rat,
    pub at_t0: EpsGates,
    pub at_2t0: EpsGates,
    pub lines: Vec<ChainLine>,
}

/// Least integer `t0 >= 100` at which all three gates hold, re-verified at `2 t0`.
pub fn corollary_eps(eps: &Rat) -> Result<CorollaryEps> {
    if !eps.is_positive() || eps >= &Rat::one() {
        return Err(Error::Domain("eps must lie in (0, 1)".into()));
    }
    let lines = corollary_lines();
    if let Some(l) = first_failure(&lines) {
        return Err(Error::Certification(l.to_string()));
    }
    let t0 = Rat::from_integer(least_good(BigInt::from(100), |t| Ok(eps_gates(eps, &Rat::from_integer(t.clone()))?.all()))?);
    let at_t0 = eps_gates(eps, &t0)?;
    let at_2t0 = eps_gates(eps, &(&t0 * int(2)))?;
    if !at_2t0.all() {
        return Err(Error::Certification(format!("gates fail again at 2 t0 = {}", &t0 * int(2))));
    }
    Ok(CorollaryEps { eps: eps.clone(), t0, at_t0, at_2t0, lines })
}
