use std::fs;

use quandlekit::quandle::QuandleJson;
use quandlekit::{Error, FiniteQuandle, FiniteSpace, Result};
use serde_json::Value;

pub(crate) fn read_json(path: &str) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("{path}: {e}")))
}

/// Rows of a table file: `{"n": .., "table": [[..]]}` or a bare array.
pub(crate) fn read_rows(path: &str) -> Result<Vec<Vec<usize>>> {
    let v = read_json(path)?;
    let rows = match &v {
        Value::Object(m) => m.get("table").cloned().ok_or_else(|| Error::Malformed(format!("{path}: missing \"table\"")))?,
        _ => v,
    };
    serde_json::from_value(rows).map_err(|e| Error::Malformed(format!("{path}: {e}")))
}

/// Built-in tables are `N × N`; larger orders are refused.
pub const MAX_BUILTIN_ORDER: u64 = 4096;

/// `dihedral:N`, `alexander:N:T`, `trivial:N`, `pointed-swap`, or a path
/// to a table file.
pub fn parse_quandle_spec(spec: &str) -> Result<FiniteQuandle> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> Result<u64> { s.parse().map_err(|_| Error::Malformed(format!("bad number {s:?} in {spec:?}"))) };
    let positive = |s: &str| -> Result<usize> {
        match num(s)? {
            0 => Err(Error::InvalidArgument(format!("{spec:?} needs a positive order"))),
            v if v > MAX_BUILTIN_ORDER => {
                Err(Error::GuardExceeded { what: "built-in quandle order", requested: v.into(), limit: MAX_BUILTIN_ORDER.into() })
            }
            v => Ok(v as usize),
        }
    };
    match parts.as_slice() {
        ["dihedral", n] => Ok(FiniteQuandle::dihedral(positive(n)?)),
        ["trivial", n] => Ok(FiniteQuandle::trivial(positive(n)?)),
        ["alexander", n, t] => FiniteQuandle::alexander_mod(positive(n)? as u64, num(t)?),
        ["pointed-swap"] => Ok(FiniteQuandle::pointed_swap()),
        _ => {
            let rows = read_rows(spec)?;
            let raw = QuandleJson { n: rows.len(), table: rows };
            FiniteQuandle::try_from(raw)
        }
    }
}

/// The discrete topology lists all `2^N` subsets.
const MAX_DISCRETE: usize = 20;

/// `chain:N`, `discrete:N`, `indiscrete:N`, or a path to
/// `{"n": .., "opens": [[..], ..]}`.
pub fn parse_topology_spec(spec: &str) -> Result<FiniteSpace> {
    let parts: Vec<&str> = spec.split(':').collect();
    let size = |s: &str| -> Result<usize> {
        let n: usize = s.parse().map_err(|_| Error::Malformed(format!("bad size {s:?} in {spec:?}")))?;
        if n == 0 || n > quandlekit::topology::MAX_POINTS {
            return Err(Error::InvalidArgument(format!("space size {n} outside 1..={}", quandlekit::topology::MAX_POINTS)));
        }
        Ok(n)
    };
    match parts.as_slice() {
        ["chain", n] => Ok(FiniteSpace::chain(size(n)?)),
        ["discrete", n] => match size(n)? {
            n if n > MAX_DISCRETE => {
                Err(Error::GuardExceeded { what: "discrete space size", requested: n as u128, limit: MAX_DISCRETE as u128 })
            }
            n => Ok(FiniteSpace::discrete(n)),
        },
        ["indiscrete", n] => Ok(FiniteSpace::indiscrete(size(n)?)),
        _ => serde_json::from_value(read_json(spec)?).map_err(|e| Error::Malformed(format!("{spec}: {e}"))),
    }
}
