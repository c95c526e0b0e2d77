//! Browser bindings for the explorer page in `www/`.
//!
//! Every export returns a JSON string; the page parses it. The `*_report`
//! functions hold the logic and are what the native tests call.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use etacong::congruence::{self, alpha_table_regenerate, AlphaCellDiff, CongruenceStatement};
use etacong::{eta_quotient, EtaQuotientSpec, ModPow11, Ring, Valuation};

/// Largest coefficient index the page may ask for.
pub const MAX_INDEX: u128 = 2_000_000;

#[derive(Debug, Serialize)]
pub struct Curve {
    pub c: i64,
    pub d: i64,
    pub alpha: u8,
    /// A_0 ..= A_{r_max}
    pub exponents: Vec<u32>,
    /// α r / 2 for the same r.
    pub slope_line: Vec<f64>,
    /// Allowed deviation from the slope line, absent when c + 11d = 0.
    pub bound: Option<f64>,
}

pub fn curve_report(c: i64, d: i64, r_max: u32) -> etacong::Result<Curve> {
    let r_max = r_max.min(200);
    let mut seq = congruence::Sequences::new(c, d);
    let exponents = seq.exponents(r_max).to_vec();
    let alpha = congruence::alpha(c, d);
    let bound = if c + 11 * d == 0 {
        None
    } else {
        Some(congruence::corollary_bound(c, d, 1)?.bound)
    };
    Ok(Curve {
        c,
        d,
        alpha,
        slope_line: (0..=r_max).map(|r| f64::from(alpha) * f64::from(r) / 2.0).collect(),
        exponents,
        bound,
    })
}

#[derive(Debug, Serialize)]
pub struct Progression {
    pub statement: CongruenceStatement,
    pub text: String,
    pub k: u32,
    /// Valuation of p_[1^c 11^d](11^r m + n) for m = 0, 1, ...
    pub valuations: Vec<Valuation>,
}

pub fn progression_report(c: i64, d: i64, r: u32, terms: u32) -> etacong::Result<Progression> {
    let statement = congruence::statement(c, d, r)?;
    let step = statement.modulus();
    let last = step
        .checked_mul(u128::from(terms))
        .and_then(|x| x.checked_add(statement.n))
        .filter(|&x| x <= MAX_INDEX)
        .ok_or(etacong::Error::Resource {
            needed: step.saturating_mul(u128::from(terms)),
            budget: MAX_INDEX,
        })?;
    let k = (statement.exponent + 4).min(ModPow11::MAX_K);
    let ring = ModPow11::new(k)?;
    let spec = EtaQuotientSpec::new([(1, -c), (11, -d)], false)?;
    let series = eta_quotient(&spec, last as i64 + 1, ring)?;
    let valuations = (0..=u128::from(terms))
        .map(|m| series.coeff((step * m + statement.n) as i64).map(|a| ring.valuation_11(&a)))
        .collect::<etacong::Result<_>>()?;
    Ok(Progression {
        text: statement.render(),
        statement,
        k,
        valuations,
    })
}

#[derive(Debug, Serialize)]
pub struct AlphaDiff {
    pub matched: usize,
    pub cells: Vec<AlphaCellDiff>,
}

pub fn alpha_diff_report() -> AlphaDiff {
    let regen = alpha_table_regenerate();
    AlphaDiff {
        matched: regen.cells.iter().filter(|c| c.matches()).count(),
        cells: regen.cells,
    }
}

fn to_js<T: Serialize>(r: etacong::Result<T>) -> Result<String, JsError> {
    let value = r.map_err(|e| JsError::new(&e.to_string()))?;
    serde_json::to_string(&value).map_err(|e| JsError::new(&e.to_string()))
}

/// A_r for r = 0..=r_max with the α slope and its error band.
#[wasm_bindgen]
pub fn exponent_curve(c: i64, d: i64, r_max: u32) -> Result<String, JsError> {
    to_js(curve_report(c, d, r_max))
}

/// The congruence for (c, d, r) and the observed valuations along it.
#[wasm_bindgen]
pub fn progression(c: i64, d: i64, r: u32, terms: u32) -> Result<String, JsError> {
    to_js(progression_report(c, d, r, terms))
}

/// All 125 α cells, printed value against the recomputed one.
#[wasm_bindgen]
pub fn alpha_diff() -> Result<String, JsError> {
    to_js(Ok(alpha_diff_report()))
}
