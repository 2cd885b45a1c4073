//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every export takes plain strings and numbers and returns a JSON string, so
//! the page needs nothing beyond `JSON.parse`. The same functions run natively,
//! which is how the tests exercise them.

use std::collections::BTreeSet;

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use azw_core::arith::{is_prime, DomainKind};
use azw_core::fit::{verify_ceiling, verify_floor, SourceSpec};
use azw_core::zeta::soule_zeta;
use azw_core::{FormalProduct, MonoidScheme, PuiseuxPoly, Rational};

/// Largest scan limit the page may request; keeps the tab responsive.
pub const MAX_DEMO_LIMIT: u64 = 100_000;

fn parse_excluded(s: &str) -> Result<BTreeSet<u64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let p: u64 = t.parse().map_err(|_| format!("'{t}' is not a number"))?;
            if is_prime(p) {
                Ok(p)
            } else {
                Err(format!("{p} is not a prime"))
            }
        })
        .collect()
}

fn poly(s: &str) -> Result<PuiseuxPoly, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn product(s: &str) -> Result<FormalProduct, String> {
    s.parse().map_err(|e| format!("{e}"))
}

/// Suggested ceiling and floor for a source, as `{"ceiling": .., "floor": .., "puiseux": ..}`.
#[wasm_bindgen]
pub fn suggested_envelopes(source: &str, exclude: &str) -> Result<String, String> {
    let excluded = parse_excluded(exclude)?;
    let spec: SourceSpec = source.parse().map_err(|e| format!("{e}"))?;
    let (ceiling, floor, puiseux) = match &spec {
        SourceSpec::Family(f) => {
            let (c, fl) = f.envelopes(&excluded).map_err(|e| format!("{e}"))?;
            (c, fl, false)
        }
        SourceSpec::Monoid(x) => (x.ceiling_poly(), x.floor_poly(&excluded), false),
        SourceSpec::Curve(_) => (poly("t + 2t^{1/2} + 1")?, poly("t - 2t^{1/2} + 1")?, true),
    };
    Ok(json!({"ceiling": ceiling.to_string(), "floor": floor.to_string(), "puiseux": puiseux}).to_string())
}

/// Samples `source` on prime powers up to `limit` outside `exclude` and checks both
/// candidates. Returns the rows `{q, count, ceiling, floor}` (envelope values as floats,
/// for plotting only) and the two exact verdicts.
#[wasm_bindgen]
pub fn envelope_table(
    source: &str,
    exclude: &str,
    limit: u32,
    ceiling: &str,
    floor: &str,
    puiseux: bool,
    witnesses: u32,
) -> Result<String, String> {
    let limit = limit as u64;
    if !(2..=MAX_DEMO_LIMIT).contains(&limit) {
        return Err(format!("limit must lie in 2..={MAX_DEMO_LIMIT}"));
    }
    let excluded = parse_excluded(exclude)?;
    let spec: SourceSpec = source.parse().map_err(|e| format!("{e}"))?;
    let (c, f) = (poly(ceiling)?, poly(floor)?);
    let seq = spec
        .build(DomainKind::PrimePowers, &excluded, limit)
        .map_err(|e| format!("{e}"))?
        .sample();
    let rows: Vec<Value> = seq
        .values
        .iter()
        .map(|(n, a)| {
            json!({
                "q": n.q,
                "count": a.to_string(),
                "ceiling": c.eval_f64(n.q as f64),
                "floor": f.eval_f64(n.q as f64),
            })
        })
        .collect();
    let threshold = witnesses.max(1) as usize;
    let up = verify_ceiling(&c, &seq, threshold, puiseux);
    let down = verify_floor(&f, &seq, threshold, puiseux);
    let verdict = |v: &azw_core::fit::Verdict| {
        json!({
            "status": v.status.to_string(),
            "witnesses": v.witnesses.iter().take(50).collect::<Vec<_>>(),
            "witness_count": v.witnesses.len(),
            "violation": v.violation.as_ref().map(|x| json!({"q": x.n, "count": x.value.to_string(), "floor": x.f_floor, "ceil": x.f_ceil})),
            "excluded": v.excluded,
        })
    };
    Ok(json!({
        "source": seq.label,
        "rows": rows,
        "ceiling": verdict(&up),
        "floor": verdict(&down),
    })
    .to_string())
}

/// Zeta algebra: `op` is `soule` (argument: Puiseux polynomial in `t`), `tensor`
/// (two formal products in `s`) or `funceq` (one product and the centre `d`).
#[wasm_bindgen]
pub fn zeta_op(op: &str, first: &str, second: &str) -> Result<String, String> {
    let out = match op {
        "soule" => {
            let f = poly(first)?;
            let z = soule_zeta(&f);
            json!({"poly": f.to_string(), "zeta": z.to_string()})
        }
        "tensor" => {
            let z = product(first)?.tensor(&product(second)?);
            json!({"zeta": z.to_string()})
        }
        "funceq" => {
            let d: Rational = second.trim().parse().map_err(|_| format!("'{second}' is not a rational number"))?;
            let z = product(first)?;
            let fe = z.check_functional_equation(d);
            let (_, reflected) = z.reflect(d);
            json!({"symmetric": fe.symmetric, "sign": fe.sign, "reflected": reflected.to_string()})
        }
        _ => return Err(format!("unknown operation '{op}'")),
    };
    Ok(out.to_string())
}

/// Envelopes, zeta products and the first counts of a monoid scheme given as JSON.
#[wasm_bindgen]
pub fn monoid_summary(scheme_json: &str, exclude: &str) -> Result<String, String> {
    let x = MonoidScheme::from_json(scheme_json).map_err(|e| format!("{e}"))?;
    let excluded = parse_excluded(exclude)?;
    let counts: Vec<Value> = [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16]
        .iter()
        .filter(|q| !excluded.iter().any(|p| *q % p == 0))
        .map(|&q| json!({"q": q, "count": x.count_f1n(q - 1).to_string()}))
        .collect();
    Ok(json!({
        "label": x.label,
        "points": x.points.len(),
        "ceiling": x.ceiling_poly().to_string(),
        "floor": x.floor_poly(&excluded).to_string(),
        "ceiling_zeta": x.zeta_product().to_string(),
        "floor_zeta": x.zeta_floor_product(&excluded).to_string(),
        "counts": counts,
    })
    .to_string())
}
