//! JSON report documents.
//!
//! Every rational is rendered as `{"exact": "num/den", "approx": "<4 significant digits>"}`.
//! Object keys are sorted and arrays keep computation order, so equal inputs serialize to
//! byte-identical text.

use serde_json::{json, Value};

use crate::descent::StepRecord;
use crate::dioph::{t_set, IrreducibilityExceptions, Solution};
use crate::exactnum::rat::{decimal_hint, exact_string};
use crate::exactnum::ball::GRID_BITS;
use crate::exactnum::Rat;
use crate::hyperchi::LettlRow;
use crate::measure::{
    ChainLine, CorollaryEps, CorollaryLin, EpsGates, Gate, MeasureConstants, ProofReport, MEASURE_NAMES,
};
use crate::quadfield::QuadInt;
use crate::rouche::EnclosureCert;

pub const SCHEMA: &str = "thueq-report";
pub const SCHEMA_VERSION: u32 = 1;

pub fn num(q: &Rat) -> Value {
    json!({ "exact": exact_string(q), "approx": decimal_hint(q, 4) })
}

pub fn opt_num(q: Option<&Rat>) -> Value {
    q.map(num).unwrap_or(Value::Null)
}

pub fn quad(x: &QuadInt) -> Value {
    json!({ "d": x.d, "a": x.a, "b": x.b, "text": x.render() })
}

pub fn solution(s: &Solution) -> Value {
    json!({
        "d": s.d,
        "t": quad(&s.t),
        "x": quad(&s.x),
        "y": quad(&s.y),
        "mu": quad(&s.mu),
        "type": s.type_index,
    })
}

pub fn irreducibility(ex: &IrreducibilityExceptions) -> Value {
    json!({
        "count": ex.ts.len(),
        "t": ex.ts.iter().map(quad).collect::<Vec<_>>(),
        "root_in_field": ex.root_in_field.iter().map(quad).collect::<Vec<_>>(),
    })
}

pub fn small_solutions(tmin: &Rat, sols: &[Solution]) -> Value {
    json!({
        "tmin": num(tmin),
        "count": sols.len(),
        "t_set": t_set(sols).iter().map(quad).collect::<Vec<_>>(),
        "solutions": sols.iter().map(solution).collect::<Vec<_>>(),
    })
}

pub fn enumeration(max_abs: &Rat, xs: &[QuadInt]) -> Value {
    let mut fields: Vec<u64> = xs.iter().map(|x| x.d).collect();
    fields.dedup();
    json!({
        "max_abs": num(max_abs),
        "count": xs.len(),
        "fields": fields,
        "elements": xs.iter().map(|x| json!({ "value": quad(x), "norm": x.norm().to_string() })).collect::<Vec<_>>(),
    })
}

pub fn enclosure(c: &EnclosureCert) -> Value {
    json!({
        "center": c.center.to_string(),
        "radius_c": num(&c.radius_c),
        "radius_exp": c.radius_exp,
        "tmin": num(&c.tmin),
        "verified": c.verified,
        "margin": num(&c.margin),
        "majorant_terms": c.terms.len(),
        "diagnostic": c.diagnostic,
    })
}

pub fn chain_line(l: &ChainLine) -> Value {
    json!({
        "name": l.name,
        "lhs": num(&l.lhs),
        "rhs": num(&l.rhs),
        "relation": if l.strict { "<" } else { "<=" },
        "holds": l.holds,
    })
}

pub fn step(s: &StepRecord) -> Value {
    json!({
        "type": s.type_index,
        "k": s.k,
        "c0_in": num(&s.c0_in),
        "c1": num(&s.c1),
        "c2": num(&s.c2),
        "c3": num(&s.c3),
        "c_exact": num(&s.c_exact),
        "c": num(&s.c_out),
        "tmin": num(&s.tmin),
        "y_lower": num(&s.y_lower),
        "nonvanish_margin": num(&s.nonvanish_margin),
        "nonvanish_ok": s.nonvanish_ok,
        "p_degree": s.p_degree,
        "pade": {
            "deg_u": s.pade.u.degree(),
            "deg_v": s.pade.v.degree(),
            "contact_order": s.pade.contact_order,
            "scale": s.scale.to_string(),
        },
    })
}

pub fn lettl(rmax: u32, rows: &[LettlRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            let (m1, m2) = r.margins();
            json!({
                "r": r.r,
                "lhs1": num(&r.lhs1),
                "rhs1": num(&r.rhs1),
                "lhs2": num(&r.lhs2),
                "rhs2": num(&r.rhs2),
                "margin1": num(&m1),
                "margin2": num(&m2),
                "ok": r.ok(),
            })
        })
        .collect();
    json!({ "rmax": rmax, "rows": rows })
}

pub fn measure(m: &MeasureConstants) -> Value {
    let constants: Vec<Value> = MEASURE_NAMES
        .iter()
        .zip(m.published.as_array().iter().zip(m.exact.as_array()))
        .map(|(name, (p, e))| json!({ "name": name, "published": num(p), "exact": num(e) }))
        .collect();
    json!({
        "type": m.type_index,
        "tmin": num(&m.tmin),
        "rmax": m.rmax,
        "constants": constants,
        "lines": m.lines.iter().map(chain_line).collect::<Vec<_>>(),
    })
}

pub fn gate(g: &Gate) -> Value {
    json!({ "name": g.name, "ok": g.ok, "detail": g.detail })
}

pub fn proof(r: &ProofReport, irr: &IrreducibilityExceptions) -> Value {
    json!({
        "irreducibility": irreducibility(irr),
        "rouche": r.enclosures.iter().map(enclosure).collect::<Vec<_>>(),
        "descent": {
            "type0": r.descent_0.iter().map(step).collect::<Vec<_>>(),
            "type3": r.descent_3.iter().map(step).collect::<Vec<_>>(),
        },
        "lettl_rows": r.lettl_rows,
        "measure": r.measure.iter().map(measure).collect::<Vec<_>>(),
        "assembly": {
            "kappa_hi": opt_num(r.kappa_hi.as_ref()),
            "kappa_cap": opt_num(r.kappa_cap.as_ref()),
            "contradiction_upper": opt_num(r.contradiction_upper.as_ref()),
            "descent_lower_0": opt_num(r.descent_lower_0.as_ref()),
            "descent_lower_3": opt_num(r.descent_lower_3.as_ref()),
            "gates": r.gates.iter().map(gate).collect::<Vec<_>>(),
        },
    })
}

pub fn proof_config(r: &ProofReport) -> Value {
    json!({
        "tmin": num(&r.config.tmin),
        "kmax": r.config.kmax,
        "rmax": r.config.rmax,
        "precision": { "ball_grid_bits": GRID_BITS, "kappa_width": "1/100000000" },
    })
}

pub fn corollary_lin(c: &CorollaryLin) -> Value {
    json!({
        "C": num(&c.c),
        "t0": num(&c.t0),
        "kappa_hi_t0": num(&c.kappa_hi_t0),
        "kappa_cap": num(&c.kappa_cap),
        "c0_terms": c.c0_terms.iter().map(num).collect::<Vec<_>>(),
        "C0": num(&c.c0),
        "family_pow4": num(&c.family_pow4),
        "lines": c.lines.iter().map(chain_line).collect::<Vec<_>>(),
    })
}

pub fn eps_gates(g: &EpsGates) -> Value {
    json!({
        "t": num(&g.t),
        "kappa_hi": opt_num(g.kappa_hi.as_ref()),
        "kappa_cap": opt_num(g.kappa_cap.as_ref()),
        "type_threshold": g.type_threshold,
        "tail": g.tail,
        "tail_without_factor": g.tail_without_factor,
        "final": g.final_cmp,
    })
}

pub fn corollary_eps(c: &CorollaryEps) -> Value {
    json!({
        "eps": num(&c.eps),
        "t0": num(&c.t0),
        "at_t0": eps_gates(&c.at_t0),
        "at_2t0": eps_gates(&c.at_2t0),
        "lines": c.lines.iter().map(chain_line).collect::<Vec<_>>(),
    })
}

/// The versioned envelope shared by every command.
pub fn document(command: &str, config: Value, body: Value, verdict: Option<&str>) -> Value {
    json!({
        "schema": SCHEMA,
        "schema_version": SCHEMA_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "config": config,
        "result": body,
        "verdict": verdict,
    })
}

pub fn verify_all_document(r: &ProofReport, irr: &IrreducibilityExceptions) -> Value {
    document("verify-all", proof_config(r), proof(r, irr), Some(r.verdict.as_str()))
}

pub fn irreducible_list_document(ex: &IrreducibilityExceptions) -> Value {
    document("irreducible-list", json!({}), irreducibility(ex), None)
}

pub fn small_solutions_document(tmin: &Rat, sols: &[Solution]) -> Value {
    document("small-solutions", json!({ "tmin": num(tmin) }), small_solutions(tmin, sols), None)
}

pub fn corollary_lin_document(t0: Option<&Rat>, c: &CorollaryLin) -> Value {
    document("corollary-lin", json!({ "C": num(&c.c), "t0": opt_num(t0) }), corollary_lin(c), None)
}

pub fn corollary_eps_document(c: &CorollaryEps) -> Value {
    document("corollary-eps", json!({ "eps": num(&c.eps) }), corollary_eps(c), None)
}

/// Adds wall-clock timing. Kept out of the default output so reports stay reproducible.
pub fn with_timing(mut doc: Value, wall_ms: u128) -> Value {
    if let Value::Object(m) = &mut doc {
        m.insert("timing".into(), json!({ "wall_ms": wall_ms as u64 }));
    }
    doc
}

pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("json values always serialize");
    s.push('\n');
    s
}
