//! Structured-text result documents.
//!
//! A result is a JSON object with keys in the fixed order `order`, `n`,
//! `coding`, `amplitudes`, `probabilities` and, when sampled, `shots`,
//! `seed`, `counts`. Floats are written with 17 significant digits, so
//! re-parsing restores every value bit for bit.

use std::collections::BTreeMap;
use std::fmt::Write;

use qlight::{Coding, C64};
use serde_json::Value;

use crate::NetlistError;

pub const ORDER: &str = "msb-first";

#[derive(Clone, Debug, PartialEq)]
pub struct Histogram {
    pub shots: u64,
    pub seed: u64,
    pub counts: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub n: usize,
    pub coding: Vec<Coding>,
    pub amplitudes: Vec<C64>,
    pub probabilities: Vec<f64>,
    pub histogram: Option<Histogram>,
}

fn float(v: f64) -> String {
    format!("{v:.16e}")
}

fn json_string(s: &str) -> String {
    Value::String(s.to_string()).to_string()
}

pub fn emit_result(r: &RunResult) -> String {
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"order\": {},", json_string(ORDER));
    let _ = writeln!(out, "  \"n\": {},", r.n);
    let coding: Vec<String> = r.coding.iter().map(|c| json_string(c.name())).collect();
    let _ = writeln!(out, "  \"coding\": [{}],", coding.join(", "));
    out.push_str("  \"amplitudes\": [");
    for (i, a) in r.amplitudes.iter().enumerate() {
        let sep = if i == 0 { "\n" } else { ",\n" };
        let _ = write!(
            out,
            "{sep}    {{\"re\": {}, \"im\": {}}}",
            float(a.re),
            float(a.im)
        );
    }
    out.push_str("\n  ],\n  \"probabilities\": [");
    let probs: Vec<String> = r.probabilities.iter().map(|p| float(*p)).collect();
    out.push_str(&probs.join(", "));
    out.push(']');
    if let Some(h) = &r.histogram {
        let _ = write!(
            out,
            ",\n  \"shots\": {},\n  \"seed\": {},\n  \"counts\": {{",
            h.shots, h.seed
        );
        let counts: Vec<String> = h
            .counts
            .iter()
            .map(|(k, v)| format!("{}: {v}", json_string(k)))
            .collect();
        out.push_str(&counts.join(", "));
        out.push('}');
    }
    out.push_str("\n}\n");
    out
}

fn bad(msg: impl Into<String>) -> NetlistError {
    NetlistError::Result(msg.into())
}

fn get<'a>(obj: &'a serde_json::Map<String, Value>, key: &str) -> Result<&'a Value, NetlistError> {
    obj.get(key)
        .ok_or_else(|| bad(format!("missing key `{key}`")))
}

fn as_f64(v: &Value, what: &str) -> Result<f64, NetlistError> {
    v.as_f64()
        .ok_or_else(|| bad(format!("{what} is not a number")))
}

fn as_u64(v: &Value, what: &str) -> Result<u64, NetlistError> {
    v.as_u64()
        .ok_or_else(|| bad(format!("{what} is not a non-negative integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, NetlistError> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} is not an array")))
}

/// Inverse of [`emit_result`].
pub fn parse_result(text: &str) -> Result<RunResult, NetlistError> {
    let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let obj = v
        .as_object()
        .ok_or_else(|| bad("result is not an object"))?;
    if get(obj, "order")?.as_str() != Some(ORDER) {
        return Err(bad(format!("`order` must be {ORDER:?}")));
    }
    let n = as_u64(get(obj, "n")?, "`n`")? as usize;
    let coding = as_array(get(obj, "coding")?, "`coding`")?
        .iter()
        .map(|c| {
            c.as_str()
                .and_then(Coding::from_name)
                .ok_or_else(|| bad(format!("unknown coding {c}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let amplitudes = as_array(get(obj, "amplitudes")?, "`amplitudes`")?
        .iter()
        .map(|a| {
            let re = as_f64(
                a.get("re").ok_or_else(|| bad("amplitude without `re`"))?,
                "re",
            )?;
            let im = as_f64(
                a.get("im").ok_or_else(|| bad("amplitude without `im`"))?,
                "im",
            )?;
            Ok(C64::new(re, im))
        })
        .collect::<Result<Vec<_>, NetlistError>>()?;
    let probabilities = as_array(get(obj, "probabilities")?, "`probabilities`")?
        .iter()
        .map(|p| as_f64(p, "probability"))
        .collect::<Result<Vec<_>, _>>()?;
    if amplitudes.len() != 1 << n || probabilities.len() != amplitudes.len() {
        return Err(bad(format!(
            "expected {} amplitudes and probabilities for n = {n}",
            1usize << n
        )));
    }
    let histogram = match obj.get("counts") {
        None => None,
        Some(c) => {
            let counts = c
                .as_object()
                .ok_or_else(|| bad("`counts` is not an object"))?
                .iter()
                .map(|(k, v)| Ok((k.clone(), as_u64(v, "count")?)))
                .collect::<Result<BTreeMap<_, _>, NetlistError>>()?;
            Some(Histogram {
                shots: as_u64(get(obj, "shots")?, "`shots`")?,
                seed: as_u64(get(obj, "seed")?, "`seed`")?,
                counts,
            })
        }
    };
    Ok(RunResult {
        n,
        coding,
        amplitudes,
        probabilities,
        histogram,
    })
}
