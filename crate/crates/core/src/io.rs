//! JSON input formats and CSV output.
//!
//! * multiaffine polynomial: `{"n": 2, "coeffs": {"0": [1, 0], "3": [0.5, 0]}}`,
//!   keys are subset bitmasks with bit `i − 1` standing for `z_i`;
//! * temperature model: `{"n": 3, "W": {"0": [1, 3], "7": [1, -3], "5": "-inf"}}`;
//! * block polynomial: `{"m": [2, 1], "coeffs": {"1,0": [1, 0]}}`;
//! * univariate polynomial: `{"degree": 2, "C": [[1, 0], [0, 0], [1, 0]]}`;
//! * spin energies: `{"m": [2, 2], "W": {"1,1": -2.0}}`.
//!
//! Absent entries are zero throughout.

use std::fmt::Write as _;

use num_complex::Complex;
use serde_json::{json, Map, Value};

use crate::error::{LyError, Result};
use crate::leeyang::{Status, Sweep, TemperatureModel};
use crate::poly::MultiAffinePoly;
use crate::scalar::{czero, from_c64, lit, to_c64, Scalar};
use crate::spins::{BlockPoly, UnivariatePoly};

/// Any of the accepted input documents.
#[derive(Debug, Clone, PartialEq)]
pub enum Input<T: Scalar> {
    Poly(MultiAffinePoly<T>),
    Model(TemperatureModel<T>),
    Block(BlockPoly<T>),
    Univariate(UnivariatePoly<T>),
    Spins { m: Vec<usize>, w: Vec<T> },
}

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(LyError::Parse(msg.into()))
}

fn complex<T: Scalar>(v: &Value, what: &str) -> Result<Complex<T>> {
    match v.as_array().map(|a| a.as_slice()) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) => Ok(from_c64(Complex::new(re, im))),
            _ => parse_err(format!("{what}: expected two numbers")),
        },
        _ => parse_err(format!("{what}: expected [re, im]")),
    }
}

fn complex_json<T: Scalar>(z: Complex<T>) -> Value {
    let z = to_c64(z);
    json!([z.re, z.im])
}

fn object<'a>(v: &'a Value, key: &str) -> Result<&'a Map<String, Value>> {
    v.get(key).and_then(Value::as_object).map_or_else(|| parse_err(format!("\"{key}\" must be an object")), Ok)
}

fn count(v: &Value, key: &str) -> Result<usize> {
    v.get(key).and_then(Value::as_u64).map_or_else(|| parse_err(format!("\"{key}\" must be a non-negative integer")), |n| Ok(n as usize))
}

fn mask(key: &str, n: usize) -> Result<usize> {
    match key.trim().parse::<usize>() {
        Ok(x) if n < usize::BITS as usize && x >> n == 0 => Ok(x),
        _ => parse_err(format!("bad subset bitmask \"{key}\" for {n} variables")),
    }
}

fn degrees(v: &Value) -> Result<Vec<usize>> {
    v.get("m")
        .and_then(Value::as_array)
        .and_then(|a| a.iter().map(|d| d.as_u64().map(|d| d as usize)).collect::<Option<Vec<_>>>())
        .map_or_else(|| parse_err("\"m\" must be a list of integers"), Ok)
}

/// Mixed-radix position of the key `"k1,k2,…"`, variable 0 fastest.
fn block_index(key: &str, m: &[usize]) -> Result<usize> {
    let k: Vec<usize> = key.split(',').map(|s| s.trim().parse::<usize>()).collect::<std::result::Result<_, _>>().or_else(|_| parse_err(format!("bad index \"{key}\"")))?;
    if k.len() != m.len() || k.iter().zip(m).any(|(a, b)| a > b) {
        return parse_err(format!("index \"{key}\" out of range for m = {m:?}"));
    }
    Ok(m.iter().zip(&k).rev().fold(0, |acc, (d, ki)| acc * (d + 1) + ki))
}

fn block_key(mut idx: usize, m: &[usize]) -> String {
    m.iter()
        .map(|d| {
            let k = idx % (d + 1);
            idx /= d + 1;
            k.to_string()
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses any supported document, deciding the kind from its keys.
pub fn parse_input<T: Scalar>(text: &str) -> Result<Input<T>> {
    let v: Value = serde_json::from_str(text).map_err(|e| LyError::Parse(e.to_string()))?;
    let has = |k: &str| v.get(k).is_some();
    if has("degree") && has("C") {
        let degree = count(&v, "degree")?;
        let cs = v.get("C").and_then(Value::as_array).map_or_else(|| parse_err("\"C\" must be a list"), Ok)?;
        if cs.len() > degree + 1 {
            return parse_err(format!("{} coefficients for degree {degree}", cs.len()));
        }
        let mut coeffs = vec![czero(); degree + 1];
        for (i, c) in cs.iter().enumerate() {
            coeffs[i] = complex(c, &format!("C[{i}]"))?;
        }
        return Ok(Input::Univariate(UnivariatePoly::new(coeffs)?));
    }
    if has("m") {
        let m = degrees(&v)?;
        let len = m.iter().map(|d| d + 1).product::<usize>();
        if has("W") {
            let mut w = vec![T::zero(); len];
            for (key, val) in object(&v, "W")? {
                let x = val.as_f64().map_or_else(|| parse_err(format!("W[\"{key}\"] must be a real number")), Ok)?;
                w[block_index(key, &m)?] = lit(x);
            }
            return Ok(Input::Spins { m, w });
        }
        let mut coeffs = vec![czero(); len];
        for (key, val) in object(&v, "coeffs")? {
            coeffs[block_index(key, &m)?] = complex(val, key)?;
        }
        return Ok(Input::Block(BlockPoly::new(m, coeffs)?));
    }
    let n = count(&v, "n")?;
    if has("W") {
        let mut entries = Vec::new();
        for (key, val) in object(&v, "W")? {
            let w = if val.as_str() == Some("-inf") { None } else { Some(complex(val, key)?) };
            entries.push((mask(key, n)?, w));
        }
        return Ok(Input::Model(TemperatureModel::new(n, entries)?));
    }
    if n > crate::poly::DEFAULT_MAX_VARS {
        return parse_err(format!("too many variables: {n}"));
    }
    let mut coeffs = vec![czero(); 1 << n];
    for (key, val) in object(&v, "coeffs")? {
        coeffs[mask(key, n)?] = complex(val, key)?;
    }
    Ok(Input::Poly(MultiAffinePoly::from_coeffs(n, coeffs)?))
}

pub fn poly_to_json<T: Scalar>(p: &MultiAffinePoly<T>) -> Value {
    let coeffs: Map<String, Value> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() != T::zero())
        .map(|(x, c)| (x.to_string(), complex_json(*c)))
        .collect();
    json!({ "n": p.n(), "coeffs": coeffs })
}

pub fn model_to_json<T: Scalar>(model: &TemperatureModel<T>) -> Value {
    let w: Map<String, Value> = model
        .energies()
        .iter()
        .enumerate()
        .filter(|(_, w)| w.is_none_or(|w| w.norm() != T::zero()))
        .map(|(x, w)| (x.to_string(), w.map_or(json!("-inf"), complex_json)))
        .collect();
    json!({ "n": model.n(), "W": w })
}

pub fn block_to_json<T: Scalar>(p: &BlockPoly<T>) -> Value {
    let coeffs: Map<String, Value> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() != T::zero())
        .map(|(i, c)| (block_key(i, p.m()), complex_json(*c)))
        .collect();
    json!({ "m": p.m(), "coeffs": coeffs })
}

pub fn univariate_to_json<T: Scalar>(p: &UnivariatePoly<T>) -> Value {
    json!({ "degree": p.degree(), "C": p.coeffs().iter().map(|c| complex_json(*c)).collect::<Vec<_>>() })
}

pub fn spins_to_json<T: Scalar>(m: &[usize], w: &[T]) -> Value {
    let map: Map<String, Value> = w
        .iter()
        .enumerate()
        .filter(|(_, v)| **v != T::zero())
        .map(|(i, v)| (block_key(i, m), json!(v.to_f64())))
        .collect();
    json!({ "m": m, "W": map })
}

/// One row per grid point, then one per refined transition, ordered by β.
/// Columns: `beta,status,r_lo,r_hi,transition`; transition rows carry
/// `FROM->TO` as status and the bracket `[β_lo, β_hi]` in the radius columns.
pub fn sweep_to_csv<T: Scalar>(sweep: &Sweep<T>) -> String {
    let f = |x: T| {
        let v = x.to_f64().unwrap_or(f64::NAN);
        if v.is_infinite() {
            "inf".to_string()
        } else {
            format!("{v:.12e}")
        }
    };
    let mut rows: Vec<(f64, String)> = Vec::new();
    for p in &sweep.points {
        let (lo, hi) = p.radius.as_ref().map_or((String::new(), String::new()), |r| {
            if r.infinite {
                ("inf".into(), "inf".into())
            } else {
                (f(r.r_lo), f(r.r_hi))
            }
        });
        rows.push((p.beta.to_f64().unwrap_or(0.0), format!("{},{},{lo},{hi},0", f(p.beta), p.status.as_str())));
    }
    for t in &sweep.transitions {
        let status = format!("{}->{}", t.from.as_str(), t.to.as_str());
        rows.push((t.beta.to_f64().unwrap_or(0.0), format!("{},{status},{},{},1", f(t.beta), f(t.beta_lo), f(t.beta_hi))));
    }
    rows.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = String::from("beta,status,r_lo,r_hi,transition\n");
    for (_, row) in rows {
        let _ = writeln!(out, "{row}");
    }
    out
}

pub fn sweep_to_json<T: Scalar>(sweep: &Sweep<T>) -> Value {
    let num = |x: T| json!(x.to_f64());
    json!({
        "points": sweep.points.iter().map(|p| json!({
            "beta": num(p.beta),
            "status": p.status.as_str(),
            "radius": p.radius.as_ref().map(|r| r.to_json()),
        })).collect::<Vec<_>>(),
        "transitions": sweep.transitions.iter().map(|t| json!({
            "beta": num(t.beta),
            "beta_lo": num(t.beta_lo),
            "beta_hi": num(t.beta_hi),
            "from": t.from.as_str(),
            "to": t.to.as_str(),
        })).collect::<Vec<_>>(),
    })
}

/// Counts `OUT ↔ IN` changes, ignoring undecided points in between.
pub fn count_in_out_changes<T: Scalar>(sweep: &Sweep<T>) -> usize {
    let decided: Vec<Status> = sweep.points.iter().map(|p| p.status).filter(|s| *s != Status::BoundaryUndecided).collect();
    decided.windows(2).filter(|w| w[0] != w[1]).count()
}
