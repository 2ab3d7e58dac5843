use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use thueq::descent::run_descent;
use thueq::dioph::{irreducibility_exceptions, small_solution_search, t_set};
use thueq::exactnum::rat::decimal_hint;
use thueq::exactnum::{int, parse_rat, Rat};
use thueq::measure::{
    corollary_eps, corollary_lin, measure_constants, theorem_assembly, AssemblyConfig, ChainLine, Verdict,
    MEASURE_NAMES,
};
use thueq::quadfield::enumerate_bounded;
use thueq::report::{self, num};
use thueq::rouche::{certify_enclosure, high_order_spec, low_order_specs, EnclosureCert};
use thueq::series::RootType;
use thueq::Error;

const EXIT_INCONCLUSIVE: u8 = 1;
const EXIT_INTERNAL: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "thueq", version, about = "Exact verification of the simplest quartic Thue inequality over imaginary quadratic integers")]
struct Cli {
    /// Add wall-clock timing to JSON reports (makes output non-reproducible)
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every certificate and the final assembly; prints the JSON report
    VerifyAll {
        #[arg(long, default_value = "100", value_parser = rational)]
        tmin: Rat,
        #[arg(long, default_value_t = 60)]
        rmax: u32,
        #[arg(long, default_value_t = 11)]
        kmax: u32,
        /// Write the report here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Every t for which F_t is reducible
    IrreducibleList {
        #[arg(long)]
        json: bool,
    },
    /// Non-trivial solutions with min(|x|, |y|) < 3 and |t| >= tmin
    SmallSolutions {
        #[arg(long, value_parser = rational)]
        tmin: Rat,
        #[arg(long)]
        json: bool,
    },
    /// Normalized imaginary quadratic integers with |x| <= max-abs
    Enumerate {
        #[arg(long, value_parser = rational)]
        max_abs: Rat,
        #[arg(long)]
        json: bool,
    },
    /// The descent chain for one root
    Descent {
        #[arg(long = "type", value_parser = root_type)]
        which: RootType,
        #[arg(long, default_value = "100", value_parser = rational)]
        tmin: Rat,
        #[arg(long, default_value_t = 11)]
        kmax: u32,
        /// Round c up to 40 significant digits instead of 4
        #[arg(long)]
        unrounded: bool,
        #[arg(long)]
        json: bool,
    },
    /// Irrationality measure constants for one root
    Constants {
        #[arg(long = "type", value_parser = root_type)]
        which: RootType,
        #[arg(long, default_value = "100", value_parser = rational)]
        tmin: Rat,
        #[arg(long, default_value_t = 60)]
        rmax: u32,
        #[arg(long)]
        json: bool,
    },
    /// t0 and C0 for |F_t(x, y)| <= C|t|
    CorollaryLin {
        #[arg(long = "C", value_parser = rational)]
        c: Rat,
        /// Use this t0 (at least 524) instead of the least certified one
        #[arg(long, value_parser = rational)]
        t0: Option<Rat>,
        #[arg(long)]
        json: bool,
    },
    /// t0 for |F_t(x, y)| <= |t|^(2 - eps)
    CorollaryEps {
        #[arg(long, value_parser = rational)]
        eps: Rat,
        #[arg(long)]
        json: bool,
    },
    /// The root enclosures used by the proof
    RoucheCerts {
        #[arg(long, default_value = "100", value_parser = rational)]
        tmin: Rat,
        #[arg(long)]
        json: bool,
    },
}

fn rational(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn root_type(s: &str) -> Result<RootType, String> {
    match s {
        "0" => Ok(RootType::Type0),
        "3" => Ok(RootType::Type3),
        _ => Err("expected 0 or 3".into()),
    }
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_usage() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

struct Output {
    text: String,
    doc: Value,
    code: u8,
}

fn hint(q: &Rat) -> String {
    decimal_hint(q, 4)
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (i, c) in r.iter().enumerate() {
            w[i] = w[i].max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&w).map(|(c, n)| format!("{c:<n$}", n = *n)).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut s = line(header.to_vec());
    for r in rows {
        s += &line(r.iter().map(String::as_str).collect());
    }
    s
}

fn lines_text(lines: &[ChainLine]) -> String {
    lines.iter().map(|l| format!("  [{}] {l}\n", if l.holds { "ok" } else { "FAIL" })).collect()
}

/// Short names for the enclosure centers, in `rouche_certs` order.
const CERT_LABELS: [&str; 6] = ["-1/t", "-1", "t", "1", "B(1/t)", "B3(1/t)"];

fn cert_rows(certs: &[EnclosureCert]) -> Vec<Vec<String>> {
    certs
        .iter()
        .zip(CERT_LABELS)
        .map(|(c, label)| {
            vec![
                label.to_string(),
                format!("{}/|t|^{}", hint(&c.radius_c), c.radius_exp),
                c.verified.to_string(),
                decimal_hint(&c.margin, 6),
            ]
        })
        .collect()
}

fn rouche_certs(tmin: &Rat) -> Result<Vec<EnclosureCert>, Error> {
    let mut specs: Vec<_> = low_order_specs()?.into_iter().collect();
    specs.push(high_order_spec(RootType::Type0)?);
    specs.push(high_order_spec(RootType::Type3)?);
    specs.iter().map(|(c, r, e)| certify_enclosure(c, r, *e, tmin)).collect()
}

fn run(cmd: Cmd) -> Result<Output, Failure> {
    let doc = |name: &str, config: Value, body: Value| report::document(name, config, body, None);
    Ok(match cmd {
        Cmd::VerifyAll { tmin, rmax, kmax, .. } => {
            if tmin < int(1) {
                return Err(Failure::Usage("tmin must be at least 1".into()));
            }
            let cfg = AssemblyConfig { tmin, kmax, rmax };
            let r = theorem_assembly(&cfg);
            let irr = irreducibility_exceptions();
            let mut text = String::new();
            for g in &r.gates {
                text += &format!("[{}] {}: {}\n", if g.ok { "ok" } else { "FAIL" }, g.name, g.detail);
            }
            text += &format!("verdict: {}\n", r.verdict.as_str());
            let code = match r.verdict {
                Verdict::Proven => 0,
                _ if r.internal_failure() => EXIT_INTERNAL,
                _ => EXIT_INCONCLUSIVE,
            };
            Output { text, doc: report::verify_all_document(&r, &irr), code }
        }
        Cmd::IrreducibleList { .. } => {
            let ex = irreducibility_exceptions();
            let rows: Vec<Vec<String>> = ex
                .ts
                .iter()
                .map(|t| vec![t.d.to_string(), t.render(), ex.root_in_field.contains(t).to_string()])
                .collect();
            let text = table(&["d", "t", "root in field"], &rows);
            Output { text, doc: report::irreducible_list_document(&ex), code: 0 }
        }
        Cmd::SmallSolutions { tmin, .. } => {
            let sols = small_solution_search(&tmin)?;
            let rows: Vec<Vec<String>> = sols
                .iter()
                .map(|s| {
                    let ty = s.type_index.map(|i| i.to_string()).unwrap_or_else(|| "-".into());
                    vec![s.d.to_string(), s.t.render(), s.x.render(), s.y.render(), s.mu.render(), ty]
                })
                .collect();
            let ts: Vec<String> = t_set(&sols).iter().map(|t| t.render()).collect();
            let text = table(&["d", "t", "x", "y", "mu", "type"], &rows) + &format!("t-set: {{{}}}\n", ts.join(", "));
            Output { text, doc: report::small_solutions_document(&tmin, &sols), code: 0 }
        }
        Cmd::Enumerate { max_abs, .. } => {
            if max_abs < int(0) {
                return Err(Failure::Usage("max-abs must be nonnegative".into()));
            }
            let xs = enumerate_bounded(&max_abs, true);
            let rows: Vec<Vec<String>> = xs.iter().map(|x| vec![x.d.to_string(), x.render(), x.norm().to_string()]).collect();
            let text = table(&["d", "x", "|x|^2"], &rows) + &format!("{} elements\n", xs.len());
            Output { text, doc: doc("enumerate", json!({ "max_abs": num(&max_abs) }), report::enumeration(&max_abs, &xs)), code: 0 }
        }
        Cmd::Descent { which, tmin, kmax, unrounded, .. } => {
            let steps = run_descent(which, kmax, &tmin, !unrounded)?;
            let rows: Vec<Vec<String>> = steps
                .iter()
                .map(|s| {
                    vec![
                        s.k.to_string(),
                        hint(&s.c1),
                        hint(&s.c2),
                        hint(&s.c3),
                        hint(&s.c_out),
                        hint(&s.y_lower),
                        s.nonvanish_ok.to_string(),
                    ]
                })
                .collect();
            let text = table(&["k", "c1", "c2", "c3", "c", "|y| >", "nonvanishing"], &rows);
            let config = json!({ "type": which.index(), "tmin": num(&tmin), "kmax": kmax, "rounded": !unrounded });
            let body = json!({ "steps": steps.iter().map(report::step).collect::<Vec<_>>() });
            Output { text, doc: doc("descent", config, body), code: 0 }
        }
        Cmd::Constants { which, tmin, rmax, .. } => {
            let m = measure_constants(which, &tmin, rmax)?;
            let rows: Vec<Vec<String>> = MEASURE_NAMES
                .iter()
                .zip(m.published.as_array().iter().zip(m.exact.as_array()))
                .map(|(n, (p, e))| vec![n.to_string(), hint(p), decimal_hint(e, 8)])
                .collect();
            let text = table(&["constant", "published", "exact chain"], &rows) + "lines:\n" + &lines_text(&m.lines);
            let config = json!({ "type": which.index(), "tmin": num(&tmin), "rmax": rmax });
            Output { text, doc: doc("constants", config, report::measure(&m)), code: 0 }
        }
        Cmd::CorollaryLin { c, t0, .. } => {
            let r = corollary_lin(&c, t0.as_ref())?;
            let terms: Vec<String> = r.c0_terms.iter().map(hint).collect();
            let text = format!(
                "t0 = {}\nkappa(t0) <= {} (cap {})\nC0 = max({}) = {}\n(x, ±x) family: |x|^4 <= {} |t|\nlines:\n{}",
                r.t0,
                decimal_hint(&r.kappa_hi_t0, 8),
                r.kappa_cap,
                terms.join(", "),
                hint(&r.c0),
                r.family_pow4,
                lines_text(&r.lines)
            );
            Output { text, doc: report::corollary_lin_document(t0.as_ref(), &r), code: 0 }
        }
        Cmd::CorollaryEps { eps, .. } => {
            let r = corollary_eps(&eps)?;
            let g = |name: &str, v: &thueq::measure::EpsGates| {
                format!("{name} = {}: threshold {}, tail {}, final {}\n", hint(&v.t), v.type_threshold, v.tail, v.final_cmp)
            };
            let text = format!("t0 = {} ({})\n", r.t0, hint(&r.t0)) + &g("t0", &r.at_t0) + &g("2 t0", &r.at_2t0) + "lines:\n" + &lines_text(&r.lines);
            Output { text, doc: report::corollary_eps_document(&r), code: 0 }
        }
        Cmd::RoucheCerts { tmin, .. } => {
            if tmin <= int(0) {
                return Err(Failure::Usage("tmin must be positive".into()));
            }
            let certs = rouche_certs(&tmin)?;
            let text = table(&["center", "radius", "verified", "margin"], &cert_rows(&certs));
            let code = if certs.iter().all(|c| c.verified) { 0 } else { EXIT_INCONCLUSIVE };
            let body = json!({ "enclosures": certs.iter().map(report::enclosure).collect::<Vec<_>>() });
            Output { text, doc: doc("rouche-certs", json!({ "tmin": num(&tmin) }), body), code }
        }
    })
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("THUEQ_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| Failure::Usage(format!("THUEQ_THREADS must be a positive integer, got {v:?}")))?;
    if n == 0 {
        return Err(Failure::Usage("THUEQ_THREADS must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Internal(e.to_string()))
}

fn emit(s: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    out.write_all(s.as_bytes()).and_then(|_| out.flush()).map_err(|e| Failure::Internal(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let start = Instant::now();
    let json_mode = match &cli.cmd {
        Cmd::VerifyAll { .. } => true,
        Cmd::IrreducibleList { json }
        | Cmd::SmallSolutions { json, .. }
        | Cmd::Enumerate { json, .. }
        | Cmd::Descent { json, .. }
        | Cmd::Constants { json, .. }
        | Cmd::CorollaryLin { json, .. }
        | Cmd::CorollaryEps { json, .. }
        | Cmd::RoucheCerts { json, .. } => *json,
    };
    let out_path = match &cli.cmd {
        Cmd::VerifyAll { out, .. } => out.clone(),
        _ => None,
    };
    let result = configure_threads().and_then(|_| run(cli.cmd)).and_then(|o| {
        let doc = if cli.timing { report::with_timing(o.doc, start.elapsed().as_millis()) } else { o.doc };
        let rendered = report::render(&doc);
        match (&out_path, json_mode) {
            (Some(p), _) => {
                fs::write(p, &rendered).map_err(|e| Failure::Internal(format!("{}: {e}", p.display())))?;
                emit(&o.text)?;
            }
            (None, true) => {
                if o.code != 0 {
                    eprint!("{}", o.text);
                }
                emit(&rendered)?;
            }
            (None, false) => emit(&o.text)?,
        }
        Ok(o.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("thueq: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("thueq: internal failure: {m}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
