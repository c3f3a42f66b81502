//! JSON model files.
//!
//! ```json
//! { "name": "quartic_Y4", "rank": 3,
//!   "gram": [[4,1,1],[1,-2,1],[1,1,-2]],
//!   "curves": [{"name": "l1", "coords": [0,1,0]}, ...],
//!   "ample": [1,0,0],
//!   "metadata": {"curve_list_complete": true, "notes": "..."} }
//! ```
//!
//! Integers are JSON numbers inside the 53-bit safe range and decimal
//! strings outside it. Floating-point numbers are rejected.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::lattice::{IntersectionForm, LatticeError, LatticeVector};
use crate::surface::{CurveClass, ModelError, ModelMetadata, SurfaceModel};

const SAFE_INTEGER: i64 = (1 << 53) - 1;

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> ModelFileError {
    ModelFileError::Field {
        field: field.into(),
        message: message.into(),
    }
}

pub fn encode_integer(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() <= SAFE_INTEGER => json!(v),
        _ => Value::String(x.to_string()),
    }
}

pub fn decode_integer(v: &Value, field: &str) -> Result<BigInt, ModelFileError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(field_err(
                    field,
                    format!("`{n}` is not an exact integer (floats are rejected; encode large integers as decimal strings)"),
                ))
            }
        }
        Value::String(s) => {
            let t = s.trim();
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(field_err(field, format!("`{s}` is not a decimal integer")));
            }
            Ok(t.parse().expect("validated digits"))
        }
        other => Err(field_err(field, format!("expected integer, found {other}"))),
    }
}

fn encode_vector(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(encode_integer).collect())
}

fn decode_vector(v: &Value, field: &str, len: usize) -> Result<Vec<BigInt>, ModelFileError> {
    let arr = v
        .as_array()
        .ok_or_else(|| field_err(field, "expected an array of integers"))?;
    if arr.len() != len {
        return Err(field_err(
            field,
            format!("expected {len} entries, found {}", arr.len()),
        ));
    }
    arr.iter()
        .enumerate()
        .map(|(i, x)| decode_integer(x, &format!("{field}[{i}]")))
        .collect()
}

pub fn model_to_json(model: &SurfaceModel) -> Value {
    json!({
        "name": model.name(),
        "rank": model.rank(),
        "gram": model.form().gram().iter().map(|r| encode_vector(r)).collect::<Vec<_>>(),
        "curves": model.curves().iter().map(|c| json!({
            "name": c.name(),
            "coords": encode_vector(c.coords().coords()),
        })).collect::<Vec<_>>(),
        "ample": encode_vector(model.ample().coords()),
        "metadata": {
            "curve_list_complete": model.metadata().curve_list_complete,
            "notes": model.metadata().notes,
        },
    })
}

fn get<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, ModelFileError> {
    obj.get(key).ok_or_else(|| field_err(key, "missing"))
}

pub fn model_from_json(v: &Value) -> Result<SurfaceModel, ModelFileError> {
    let obj = v
        .as_object()
        .ok_or_else(|| field_err("<root>", "expected an object"))?;
    let name = get(obj, "name")?
        .as_str()
        .ok_or_else(|| field_err("name", "expected a string"))?;
    let rank = get(obj, "rank")?
        .as_u64()
        .filter(|&r| r >= 1)
        .ok_or_else(|| field_err("rank", "expected a positive integer"))? as usize;

    let rows = get(obj, "gram")?
        .as_array()
        .ok_or_else(|| field_err("gram", "expected an array of rows"))?;
    if rows.len() != rank {
        return Err(field_err(
            "gram",
            format!("expected {rank} rows, found {}", rows.len()),
        ));
    }
    let gram = rows
        .iter()
        .enumerate()
        .map(|(i, r)| decode_vector(r, &format!("gram[{i}]"), rank))
        .collect::<Result<Vec<_>, _>>()?;
    let form = IntersectionForm::new(gram).map_err(|e| match e {
        LatticeError::NotSymmetric { row, col } => field_err(
            "gram",
            format!("not symmetric: gram[{row}][{col}] != gram[{col}][{row}]"),
        ),
        other => field_err("gram", other.to_string()),
    })?;

    let curves_json = get(obj, "curves")?
        .as_array()
        .ok_or_else(|| field_err("curves", "expected an array"))?;
    let mut curves = Vec::with_capacity(curves_json.len());
    for (i, c) in curves_json.iter().enumerate() {
        let field = format!("curves[{i}]");
        let c = c
            .as_object()
            .ok_or_else(|| field_err(&field, "expected an object"))?;
        let cname = c
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| field_err(format!("{field}.name"), "expected a string"))?;
        let coords = decode_vector(
            c.get("coords")
                .ok_or_else(|| field_err(format!("{field}.coords"), "missing"))?,
            &format!("{field}.coords"),
            rank,
        )?;
        curves.push(CurveClass::new(cname, LatticeVector::new(coords)));
    }

    let ample = LatticeVector::new(decode_vector(get(obj, "ample")?, "ample", rank)?);
    let metadata = match obj.get("metadata") {
        None => ModelMetadata::default(),
        Some(m) => {
            serde_json::from_value(m.clone()).map_err(|e| field_err("metadata", e.to_string()))?
        }
    };
    SurfaceModel::new(name, form, curves, ample, metadata).map_err(|e| match e {
        ModelError::CurveDimension { name, source } => {
            field_err(format!("curves.{name}"), source.to_string())
        }
        other => field_err("<model>", other.to_string()),
    })
}

pub fn parse_model(text: &str) -> Result<SurfaceModel, ModelFileError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ModelFileError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    model_from_json(&v)
}

pub fn load_model(path: impl AsRef<Path>) -> Result<SurfaceModel, ModelFileError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| ModelFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_model(&text)
}

pub fn save_model(model: &SurfaceModel, path: impl AsRef<Path>) -> Result<(), ModelFileError> {
    let path = path.as_ref();
    let text = serde_json::to_string_pretty(&model_to_json(model)).expect("json encoding");
    fs::write(path, text + "\n").map_err(|source| ModelFileError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// True when `x` must be written as a string in model files.
pub fn needs_string_encoding(x: &BigInt) -> bool {
    x.abs() > BigInt::from(SAFE_INTEGER)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{catalog, cubic_surface, quartic_y4};

    #[test]
    fn catalog_round_trips_through_files() {
        let dir = std::env::temp_dir().join(format!("zariski-io-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        for m in catalog() {
            let p = dir.join(format!("{}.json", m.name().replace(':', "_")));
            save_model(&m, &p).unwrap();
            assert_eq!(load_model(&p).unwrap(), m);
        }
        fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn non_symmetric_gram_names_the_field() {
        let mut v = model_to_json(&quartic_y4());
        v["gram"][0][1] = json!(7);
        match model_from_json(&v) {
            Err(ModelFileError::Field { field, message }) => {
                assert_eq!(field, "gram");
                assert!(message.contains("not symmetric"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn floats_are_rejected() {
        let mut v = model_to_json(&quartic_y4());
        v["curves"][0]["coords"][1] = json!(0.5);
        match model_from_json(&v) {
            Err(ModelFileError::Field { field, .. }) => assert_eq!(field, "curves[0].coords[1]"),
            other => panic!("unexpected {other:?}"),
        }
        let text = serde_json::to_string(&model_to_json(&quartic_y4()))
            .unwrap()
            .replacen("[1,0,0]", "[1.0,0,0]", 1);
        assert!(parse_model(&text).is_err());
        let mut v = model_to_json(&quartic_y4());
        v["ample"][0] = json!("1/2");
        assert!(matches!(
            model_from_json(&v),
            Err(ModelFileError::Field { .. })
        ));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_model("{\n  \"name\": \"x\",\n  oops\n}") {
            Err(ModelFileError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn big_integers_use_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert!(needs_string_encoding(&big));
        let enc = encode_integer(&big);
        assert!(enc.is_string());
        assert_eq!(decode_integer(&enc, "x").unwrap(), big);
        assert_eq!(encode_integer(&BigInt::from(-5)), json!(-5));
    }

    #[test]
    fn wrong_arity_is_reported() {
        let mut v = model_to_json(&cubic_surface());
        v["ample"] = json!([3, -1]);
        match model_from_json(&v) {
            Err(ModelFileError::Field { field, message }) => {
                assert_eq!(field, "ample");
                assert!(message.contains("expected 7"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
