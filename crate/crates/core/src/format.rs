//! The subspace-set file format and serde helpers for exact numbers.
//!
//! A subspace-set file is a JSON document
//!
//! ```text
//! {
//!   "q": 2,
//!   "v": 4,
//!   "k": 2,
//!   "subspaces": [
//!     [[1,0,0,0],[0,1,0,0]],
//!     [[0,0,1,0],[0,0,0,1]]
//!   ]
//! }
//! ```
//!
//! holding one k x v generator matrix per member. Over a prime field entries
//! are integers `0..q`. Over GF(p^e), e > 1, each entry is a string of e
//! base-p digits (0-9 then a-z), most significant first, spelling the
//! coefficient vector of the element in the polynomial basis.
//! [`write_set`] always emits generators in reduced row echelon form with the
//! layout above, so reading and rewriting a file it produced is byte-exact.

use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::algebra::{FieldContext, GfMatrix};
use crate::subspace::SubspaceSet;
use crate::{Error, Limits, Result};

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

fn encode_entry(x: u32, f: &FieldContext, out: &mut String) {
    if f.is_prime() {
        write!(out, "{x}").unwrap();
        return;
    }
    out.push('"');
    for &c in f.coefficients(x).iter().rev() {
        out.push(DIGITS[c as usize] as char);
    }
    out.push('"');
}

fn decode_entry(value: &Value, f: &FieldContext) -> Result<u32> {
    if f.is_prime() {
        let x = value
            .as_u64()
            .ok_or_else(|| Error::Format(format!("expected an integer entry, found {value}")))?;
        if x >= f.order() {
            return Err(Error::Format(format!("entry {x} is not below q = {}", f.order())));
        }
        return Ok(x as u32);
    }
    let s = value
        .as_str()
        .ok_or_else(|| Error::Format(format!("expected a digit-string entry, found {value}")))?;
    let mut coeffs = s
        .bytes()
        .map(|b| {
            DIGITS
                .iter()
                .position(|&d| d == b.to_ascii_lowercase())
                .map(|d| d as u32)
                .ok_or_else(|| Error::Format(format!("bad digit in entry {s:?}")))
        })
        .collect::<Result<Vec<u32>>>()?;
    coeffs.reverse();
    f.from_coefficients(&coeffs)
        .ok_or_else(|| Error::Format(format!("entry {s:?} is not an element of GF({})", f.order())))
}

/// Serializes a set in the canonical layout.
pub fn write_set(s: &SubspaceSet) -> String {
    let f = s.field();
    let mut out = String::new();
    writeln!(out, "{{").unwrap();
    writeln!(out, "  \"q\": {},", s.q()).unwrap();
    writeln!(out, "  \"v\": {},", s.ambient_dim()).unwrap();
    writeln!(out, "  \"k\": {},", s.member_dim()).unwrap();
    if s.is_empty() {
        writeln!(out, "  \"subspaces\": []").unwrap();
    } else {
        writeln!(out, "  \"subspaces\": [").unwrap();
        for (idx, m) in s.members().iter().enumerate() {
            out.push_str("    [");
            for (r, row) in m.generator().row_iter().enumerate() {
                if r > 0 {
                    out.push(',');
                }
                out.push('[');
                for (c, &x) in row.iter().enumerate() {
                    if c > 0 {
                        out.push(',');
                    }
                    encode_entry(x, f, &mut out);
                }
                out.push(']');
            }
            out.push(']');
            if idx + 1 < s.len() {
                out.push(',');
            }
            out.push('\n');
        }
        writeln!(out, "  ]").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

fn field_usize(doc: &Value, key: &str) -> Result<usize> {
    doc.get(key)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| Error::Format(format!("missing or non-integer field {key:?}")))
}

/// Parses a subspace-set document; generators are brought into RREF.
pub fn read_set(text: &str, limits: &Limits) -> Result<SubspaceSet> {
    let doc: Value = serde_json::from_str(text)?;
    let q = field_usize(&doc, "q")? as u64;
    let v = field_usize(&doc, "v")?;
    let k = field_usize(&doc, "k")?;
    let f = Arc::new(FieldContext::new(q, limits)?);
    let list = doc
        .get("subspaces")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("missing array \"subspaces\"".into()))?;
    let mut gens = Vec::with_capacity(list.len());
    for (idx, g) in list.iter().enumerate() {
        let rows = g
            .as_array()
            .ok_or_else(|| Error::Format(format!("subspace {idx} is not a matrix")))?;
        if rows.len() != k {
            return Err(Error::Format(format!(
                "subspace {idx} has {} rows, expected {k}",
                rows.len()
            )));
        }
        let mut data = Vec::with_capacity(k * v);
        for row in rows {
            let row = row
                .as_array()
                .filter(|r| r.len() == v)
                .ok_or_else(|| Error::Format(format!("subspace {idx} has a row of length other than {v}")))?;
            for x in row {
                data.push(decode_entry(x, &f)?);
            }
        }
        gens.push(GfMatrix::new(k, v, data));
    }
    SubspaceSet::from_generators(f, v, k, &gens)
}

pub fn read_file(path: &std::path::Path, limits: &Limits) -> Result<SubspaceSet> {
    read_set(&std::fs::read_to_string(path)?, limits)
}

pub fn write_file(path: &std::path::Path, s: &SubspaceSet) -> Result<()> {
    std::fs::write(path, write_set(s))?;
    Ok(())
}

/// Emits an exact integer as a bare JSON number.
pub fn ser_int<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde_json::Number::from_str(&x.to_string())
        .expect("decimal integers are valid JSON numbers")
        .serialize(s)
}

pub fn ser_opt_int<S: Serializer>(x: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => ser_int(x, s),
        None => s.serialize_none(),
    }
}

/// Emits an exact rational as a `"p/q"` string (`"p"` when integral).
pub fn ser_rat<S: Serializer>(x: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn ser_rats<S: Serializer>(xs: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}
