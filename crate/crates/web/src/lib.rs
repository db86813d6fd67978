//! wasm-bindgen exports for the static page in `www/`. Each export returns a
//! JSON string; the `*_json` functions behind them are plain Rust so they
//! can be tested natively.

use heckoid_core::heckoid::{epimorphism_exists, is_null_homotopic, make_context};
use heckoid_core::words::{cs_of_slope, relator_word, s_decomposition, s_of_slope, t_sequence};
use heckoid_core::{cf_from_slope, Slope};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_DEMO_DENOMINATOR: u64 = 5000;

fn parse_slope(text: &str) -> Result<Slope, String> {
    text.trim().parse().map_err(|e: heckoid_core::Error| e.to_string())
}

fn guard_size(s: &Slope) -> Result<(), String> {
    match s.to_i64_pair() {
        Some((_, p)) if p.unsigned_abs() <= MAX_DEMO_DENOMINATOR => Ok(()),
        _ if s.is_infinite() => Ok(()),
        _ => Err(format!("denominator of {s} is larger than the demo allows ({MAX_DEMO_DENOMINATOR})")),
    }
}

pub fn relator_json(r: &str) -> Result<String, String> {
    let r = parse_slope(r)?;
    guard_size(&r)?;
    let err = |e: heckoid_core::Error| e.to_string();
    let cf = cf_from_slope(&r).map_err(err)?;
    let t = if cf.len() >= 2 { Some(t_sequence(&r).map_err(err)?.to_string()) } else { None };
    let d = if r.is_integer() { None } else { Some(s_decomposition(&r).map_err(err)?) };
    Ok(json!({
        "r": r.to_string(),
        "continued_fraction": cf.to_string(),
        "word": relator_word(&r).map_err(err)?.to_string(),
        "s": s_of_slope(&r).map_err(err)?.to_string(),
        "cs": cs_of_slope(&r).map_err(err)?.to_string(),
        "t": t,
        "s1": d.as_ref().map(|d| d.s1.to_string()),
        "s2": d.as_ref().map(|d| d.s2.to_string()),
    })
    .to_string())
}

fn approx(s: &Slope) -> Value {
    match s.to_i64_pair() {
        Some((q, p)) if p != 0 => json!(q as f64 / p as f64),
        _ => Value::Null,
    }
}

pub fn intervals_json(r: &str, n: u32) -> Result<String, String> {
    let ctx = make_context(&parse_slope(r)?, n).map_err(|e| e.to_string())?;
    let iv = ctx.intervals();
    Ok(json!({
        "r": ctx.r().to_string(),
        "r_value": approx(ctx.r()),
        "n": n,
        "r1": iv.r1.to_string(),
        "r1_value": approx(&iv.r1),
        "r2": iv.r2.to_string(),
        "r2_value": approx(&iv.r2),
        "i1_closed_at_r1": iv.i1_closed_at_r1,
        "i2_closed_at_r2": iv.i2_closed_at_r2,
        "parabolic": ctx.reducer().parabolic().to_string(),
    })
    .to_string())
}

/// Decision for `s` against `(r, n)`, with the canonical slope placed in the
/// normalized frame so the page can draw it on `[0, 1]`.
pub fn decide_json(s: &str, r: &str, n: u32) -> Result<String, String> {
    let err = |e: heckoid_core::Error| e.to_string();
    let s = parse_slope(s)?;
    guard_size(&s)?;
    let ctx = make_context(&parse_slope(r)?, n).map_err(err)?;
    let report = is_null_homotopic(&ctx, &s).map_err(err)?;
    let epi = epimorphism_exists(&ctx, &s).map_err(err)?;
    let framed = report.canonical.add_integer(ctx.translation());
    Ok(json!({
        "report": serde_json::to_value(&report).map_err(|e| e.to_string())?,
        "epimorphism": serde_json::to_value(&epi).map_err(|e| e.to_string())?,
        "canonical_value": approx(&framed),
    })
    .to_string())
}

#[wasm_bindgen]
pub fn relator(r: &str) -> Result<String, JsError> {
    relator_json(r).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn intervals(r: &str, n: u32) -> Result<String, JsError> {
    intervals_json(r, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn decide(s: &str, r: &str, n: u32) -> Result<String, JsError> {
    decide_json(s, r, n).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn relator_payload() {
        let v = parse(&relator_json("2/5").unwrap());
        assert_eq!(v["word"], "abaBAbabAB");
        assert_eq!(v["s"], "[3,2,3,2]");
        assert_eq!(v["s1"], "[3]");
        let v = parse(&relator_json("1/3").unwrap());
        assert!(v["t"].is_null());
        assert!(relator_json("3/2").is_err());
        assert!(relator_json("1/100000").is_err());
    }

    #[test]
    fn interval_payload() {
        let v = parse(&intervals_json("3/10", 2).unwrap());
        assert_eq!(v["r1"], "5/17");
        assert_eq!(v["r2"], "7/23");
        assert!(intervals_json("1", 2).is_err());
    }

    #[test]
    fn decide_payload() {
        let v = parse(&decide_json("41/100", "2/5", 2).unwrap());
        assert_eq!(v["report"]["verdict"], true);
        assert!(v["canonical_value"].is_null());
        let v = parse(&decide_json("30/23", "13/10", 2).unwrap());
        assert_eq!(v["report"]["canonical"], "22/17");
        assert_eq!(v["canonical_value"], json!(5.0 / 17.0));
    }
}
