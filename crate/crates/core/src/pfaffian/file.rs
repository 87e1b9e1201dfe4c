//! Array files: `{"two_n": 4, "mode": "symmetric", "entries": {"1,2": "1", ...}}`.
//!
//! Each entry is a rational string (`"3"`, `"-1/2"`), a JSON number (float),
//! a polynomial in text form (`"(x1-x2)^2"`), or a polynomial in JSON term
//! form. The array takes the narrowest domain holding every entry:
//! rational, else float, else polynomial. Floats and polynomials cannot mix.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use super::{determinant, pfaffian_direct_with, Mode, Settings, TriangularArray};
use crate::error::{Error, Result};
use crate::poly::{parse_poly, parse_rational, rational_to_f64, Poly};

/// A triangular array whose scalar domain was chosen by its file contents.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyArray {
    Rational(TriangularArray<BigRational>),
    Float(TriangularArray<f64>),
    Symbolic(TriangularArray<Poly>),
}

/// Result of evaluating an [`AnyArray`], in its own domain.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyScalar {
    Rational(BigRational),
    Float(f64),
    Symbolic(Poly),
}

impl AnyScalar {
    pub fn to_json(&self) -> Value {
        match self {
            AnyScalar::Rational(c) => Value::String(c.to_string()),
            AnyScalar::Float(v) => json!(v),
            AnyScalar::Symbolic(p) => serde_json::to_value(p).expect("poly serializes"),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            AnyScalar::Rational(c) => c.to_string(),
            AnyScalar::Float(v) => format!("{v:e}"),
            AnyScalar::Symbolic(p) => p.pretty(),
        }
    }
}

/// Namespace for reading and writing array files.
pub struct ArrayFile;

enum Cell {
    Rational(BigRational),
    Float(f64),
    Symbolic(Poly),
}

fn schema(key: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        key: key.into(),
        message: message.into(),
    }
}

fn parse_key(key: &str) -> Option<(usize, usize)> {
    let (i, j) = key.split_once(',')?;
    Some((i.trim().parse().ok()?, j.trim().parse().ok()?))
}

fn parse_cell(key: &str, value: &Value) -> Result<Cell> {
    let at = format!("entries.{key}");
    match value {
        Value::Number(n) => n
            .as_f64()
            .map(Cell::Float)
            .ok_or_else(|| schema(at, "number out of range")),
        Value::String(s) => match parse_rational(s) {
            Ok(c) => Ok(Cell::Rational(c)),
            Err(_) => parse_poly(s)
                .map(Cell::Symbolic)
                .map_err(|e| schema(at, format!("neither a rational nor a polynomial: {e}"))),
        },
        Value::Array(_) => serde_json::from_value::<Poly>(value.clone())
            .map(Cell::Symbolic)
            .map_err(|e| schema(at, format!("bad polynomial JSON: {e}"))),
        _ => Err(schema(at, "expected a string, number, or polynomial term list")),
    }
}

impl ArrayFile {
    pub fn parse(text: &str) -> Result<AnyArray> {
        let value: Value = serde_json::from_str(text)?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<AnyArray> {
        let obj = value
            .as_object()
            .ok_or_else(|| schema("$", "expected a JSON object"))?;
        if let Some(key) = obj
            .keys()
            .find(|k| !matches!(k.as_str(), "two_n" | "order" | "mode" | "entries"))
        {
            return Err(schema(key.clone(), "unknown key"));
        }
        let order_key = if obj.contains_key("two_n") { "two_n" } else { "order" };
        let order = obj
            .get(order_key)
            .ok_or_else(|| schema("two_n", "missing"))?
            .as_u64()
            .ok_or_else(|| schema(order_key, "expected a non-negative integer"))?
            as usize;
        let mode: Mode = match obj.get("mode") {
            None => Mode::Symmetric,
            Some(m) => serde_json::from_value(m.clone())
                .map_err(|_| schema("mode", "expected \"symmetric\", \"skew\", or \"plain\""))?,
        };
        let entries = obj
            .get("entries")
            .ok_or_else(|| schema("entries", "missing"))?
            .as_object()
            .ok_or_else(|| schema("entries", "expected an object keyed by \"i,j\""))?;

        let mut cells = BTreeMap::new();
        for (key, value) in entries {
            let (i, j) = parse_key(key)
                .ok_or_else(|| schema(format!("entries.{key}"), "key must look like \"i,j\""))?;
            if !(1 <= i && i < j && j <= order) {
                return Err(schema(
                    format!("entries.{key}"),
                    format!("need 1 <= i < j <= {order}"),
                ));
            }
            if cells.insert((i, j), parse_cell(key, value)?).is_some() {
                return Err(schema(format!("entries.{key}"), "duplicate entry"));
            }
        }

        let has_float = cells.values().any(|c| matches!(c, Cell::Float(_)));
        let has_poly = cells.values().any(|c| matches!(c, Cell::Symbolic(_)));
        if has_float && has_poly {
            return Err(schema("entries", "cannot mix float and polynomial entries"));
        }
        if has_poly {
            let map = cells
                .into_iter()
                .map(|(k, c)| {
                    let p = match c {
                        Cell::Rational(r) => Poly::constant(r),
                        Cell::Symbolic(p) => p,
                        Cell::Float(_) => unreachable!(),
                    };
                    (k, p)
                })
                .collect();
            Ok(AnyArray::Symbolic(TriangularArray::from_entries(order, mode, map)?))
        } else if has_float {
            let map = cells
                .into_iter()
                .map(|(k, c)| {
                    let v = match c {
                        Cell::Rational(r) => rational_to_f64(&r),
                        Cell::Float(v) => v,
                        Cell::Symbolic(_) => unreachable!(),
                    };
                    (k, v)
                })
                .collect();
            Ok(AnyArray::Float(TriangularArray::from_entries(order, mode, map)?))
        } else {
            let map = cells
                .into_iter()
                .map(|(k, c)| match c {
                    Cell::Rational(r) => (k, r),
                    _ => unreachable!(),
                })
                .collect();
            Ok(AnyArray::Rational(TriangularArray::from_entries(order, mode, map)?))
        }
    }

    pub fn to_value(arr: &AnyArray) -> Value {
        fn build<S: crate::scalar::Scalar>(
            arr: &TriangularArray<S>,
            cell: impl Fn(&S) -> Value,
        ) -> Value {
            let entries: Map<String, Value> = arr
                .iter_upper()
                .map(|((i, j), v)| (format!("{i},{j}"), cell(v)))
                .collect();
            json!({"two_n": arr.order(), "mode": arr.mode(), "entries": entries})
        }
        match arr {
            AnyArray::Rational(a) => build(a, |c| Value::String(c.to_string())),
            AnyArray::Float(a) => build(a, |v| json!(v)),
            AnyArray::Symbolic(a) => build(a, |p| serde_json::to_value(p).expect("poly serializes")),
        }
    }

    pub fn to_string(arr: &AnyArray) -> String {
        serde_json::to_string_pretty(&Self::to_value(arr)).expect("value serializes")
    }
}

impl AnyArray {
    pub fn order(&self) -> usize {
        match self {
            AnyArray::Rational(a) => a.order(),
            AnyArray::Float(a) => a.order(),
            AnyArray::Symbolic(a) => a.order(),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            AnyArray::Rational(a) => a.mode(),
            AnyArray::Float(a) => a.mode(),
            AnyArray::Symbolic(a) => a.mode(),
        }
    }

    pub fn pfaffian(&self, settings: &Settings) -> Result<AnyScalar> {
        Ok(match self {
            AnyArray::Rational(a) => AnyScalar::Rational(pfaffian_direct_with(a, settings)?),
            AnyArray::Float(a) => AnyScalar::Float(pfaffian_direct_with(a, settings)?),
            AnyArray::Symbolic(a) => AnyScalar::Symbolic(pfaffian_direct_with(a, settings)?),
        })
    }

    pub fn determinant(&self) -> Result<AnyScalar> {
        Ok(match self {
            AnyArray::Rational(a) => AnyScalar::Rational(determinant(a)?),
            AnyArray::Float(a) => AnyScalar::Float(determinant(a)?),
            AnyArray::Symbolic(a) => AnyScalar::Symbolic(determinant(a)?),
        })
    }
}
