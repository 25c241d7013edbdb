//! JSON operator files.
//!
//! ```json
//! {
//!   "name": "rank-one",
//!   "b": [{ "n": 1, "re": 3.0, "im": 0.0 }]
//! }
//! ```
//!
//! Keys `a`, `b`, `c` are optional lists of `{n, re, im}` records with
//! `n ≥ 1`. Unknown keys are rejected.

use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::error::{Diagonal, Error as OperatorError};
use crate::operator::ComplexJacobiOperator;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema error at `{key}`: {message}")]
    Schema { key: String, message: String },
    #[error("invalid operator: {0}")]
    Operator(#[from] OperatorError),
}

impl SpecError {
    fn schema(key: impl Into<String>, message: impl Into<String>) -> Self {
        SpecError::Schema {
            key: key.into(),
            message: message.into(),
        }
    }
}

/// A named operator as read from or written to a spec file.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec {
    pub name: Option<String>,
    pub operator: ComplexJacobiOperator,
}

impl OperatorSpec {
    pub fn load(path: &Path) -> Result<Self, SpecError> {
        let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let value: Value = serde_json::from_str(text)?;
        Self::from_value(&value)
    }

    pub fn from_value(value: &Value) -> Result<Self, SpecError> {
        let obj = value
            .as_object()
            .ok_or_else(|| SpecError::schema("$", "top level must be an object"))?;
        for key in obj.keys() {
            if !matches!(key.as_str(), "a" | "b" | "c" | "name") {
                return Err(SpecError::schema(key, "unknown key"));
            }
        }
        let name = match obj.get("name") {
            None => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(SpecError::schema("name", "expected a string")),
        };
        let a = read_entries(obj, Diagonal::A)?;
        let b = read_entries(obj, Diagonal::B)?;
        let c = read_entries(obj, Diagonal::C)?;
        let operator = ComplexJacobiOperator::new(&a, &b, &c)?;
        Ok(Self { name, operator })
    }

    /// Normalized JSON form: background entries dropped, indices ascending.
    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        if let Some(name) = &self.name {
            obj.insert("name".into(), Value::String(name.clone()));
        }
        for key in [Diagonal::A, Diagonal::B, Diagonal::C] {
            let records: Vec<Value> = self
                .operator
                .entries(key)
                .map(|(n, v)| json!({ "n": n, "re": v.re, "im": v.im }))
                .collect();
            if !records.is_empty() {
                obj.insert(key.key().into(), Value::Array(records));
            }
        }
        Value::Object(obj)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("spec values are always serializable")
    }
}

fn read_entries(
    obj: &Map<String, Value>,
    key: Diagonal,
) -> Result<Vec<(usize, Complex64)>, SpecError> {
    let name = key.key();
    let Some(value) = obj.get(name) else {
        return Ok(Vec::new());
    };
    let list = value
        .as_array()
        .ok_or_else(|| SpecError::schema(name, "expected a list of {n, re, im} records"))?;
    let mut out = Vec::with_capacity(list.len());
    for (i, record) in list.iter().enumerate() {
        let path = format!("{name}[{i}]");
        let rec = record
            .as_object()
            .ok_or_else(|| SpecError::schema(&path, "expected an object"))?;
        for k in rec.keys() {
            if !matches!(k.as_str(), "n" | "re" | "im") {
                return Err(SpecError::schema(format!("{path}.{k}"), "unknown key"));
            }
        }
        let n = rec
            .get("n")
            .ok_or_else(|| SpecError::schema(format!("{path}.n"), "missing"))?
            .as_u64()
            .filter(|&n| n >= 1)
            .ok_or_else(|| SpecError::schema(format!("{path}.n"), "expected an integer >= 1"))?;
        let number = |k: &str| -> Result<f64, SpecError> {
            rec.get(k)
                .ok_or_else(|| SpecError::schema(format!("{path}.{k}"), "missing"))?
                .as_f64()
                .ok_or_else(|| SpecError::schema(format!("{path}.{k}"), "expected a number"))
        };
        let value = Complex64::new(number("re")?, number("im")?);
        if key != Diagonal::B && value == Complex64::new(0.0, 0.0) {
            return Err(SpecError::schema(&path, "zero off-diagonal entry"));
        }
        if out.iter().any(|&(m, _)| m == n as usize) {
            return Err(SpecError::schema(&path, format!("duplicate index n = {n}")));
        }
        out.push((n as usize, value));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_rank_one() {
        let spec = OperatorSpec::parse(r#"{"name": "r1", "b": [{"n": 1, "re": 3, "im": 0}]}"#).unwrap();
        assert_eq!(spec.name.as_deref(), Some("r1"));
        assert_eq!(spec.operator.b(1), Complex64::new(3.0, 0.0));
        assert!(OperatorSpec::parse("{}").unwrap().operator.is_free());
    }

    #[test]
    fn schema_errors_name_the_key() {
        let cases = [
            (r#"{"d": []}"#, "d"),
            (r#"{"b": [{"n": 0, "re": 1, "im": 0}]}"#, "b[0].n"),
            (r#"{"b": [{"n": 1, "re": "x", "im": 0}]}"#, "b[0].re"),
            (r#"{"a": [{"n": 1, "re": 0, "im": 0}]}"#, "a[0]"),
            (r#"{"c": [{"n": 2, "re": 1, "im": 0}, {"n": 2, "re": 3, "im": 0}]}"#, "c[1]"),
            (r#"{"b": [{"n": 1, "re": 1}]}"#, "b[0].im"),
            (r#"{"b": {"n": 1}}"#, "b"),
            (r#"{"b": [{"n": 1, "re": 1, "im": 0, "x": 2}]}"#, "b[0].x"),
        ];
        for (text, key) in cases {
            match OperatorSpec::parse(text) {
                Err(SpecError::Schema { key: k, .. }) => assert_eq!(k, key, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
        assert!(matches!(OperatorSpec::parse("{"), Err(SpecError::Json(_))));
    }

    fn entry() -> impl Strategy<Value = (usize, f64, f64)> {
        (1usize..12, -3.0f64..3.0, -3.0f64..3.0)
    }

    proptest! {
        #[test]
        fn round_trip_is_identity(
            a in proptest::collection::btree_map(1usize..12, (0.1f64..3.0, -3.0f64..3.0), 0..5),
            b in proptest::collection::vec(entry(), 0..5),
        ) {
            let a: Vec<_> = a.into_iter().map(|(n, (re, im))| (n, Complex64::new(re, im))).collect();
            let mut b: Vec<_> = b.into_iter().map(|(n, re, im)| (n, Complex64::new(re, im))).collect();
            b.sort_by_key(|e| e.0);
            b.dedup_by_key(|e| e.0);
            let op = ComplexJacobiOperator::new(&a, &b, &[]).unwrap();
            let spec = OperatorSpec { name: Some("p".into()), operator: op };
            let text = spec.to_json_string();
            let back = OperatorSpec::parse(&text).unwrap();
            prop_assert_eq!(&back, &spec);
            prop_assert_eq!(back.to_json_string(), text);
        }
    }
}
