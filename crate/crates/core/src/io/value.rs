//! Strict traversal helpers over [`serde_json::Value`] that report the path
//! of the offending field.

use serde_json::{Map, Value};
use thiserror::Error;

/// A schema violation in a structured document, located by field path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid document at '{path}': {message}")]
pub struct DocumentError {
    pub path: String,
    pub message: String,
}

impl DocumentError {
    pub(crate) fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        DocumentError {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub(crate) fn parse_root(text: &str) -> Result<Value, DocumentError> {
    serde_json::from_str(text).map_err(|e| DocumentError::new("$", e.to_string()))
}

pub(crate) fn as_object<'a>(
    v: &'a Value,
    path: &str,
) -> Result<&'a Map<String, Value>, DocumentError> {
    v.as_object()
        .ok_or_else(|| DocumentError::new(path, "expected an object"))
}

/// Fetches a required field.
pub(crate) fn field<'a>(
    obj: &'a Map<String, Value>,
    path: &str,
    key: &str,
) -> Result<&'a Value, DocumentError> {
    obj.get(key)
        .ok_or_else(|| DocumentError::new(join(path, key), "missing required field"))
}

pub(crate) fn as_str<'a>(v: &'a Value, path: &str) -> Result<&'a str, DocumentError> {
    v.as_str()
        .ok_or_else(|| DocumentError::new(path, "expected a string"))
}

pub(crate) fn as_bool(v: &Value, path: &str) -> Result<bool, DocumentError> {
    v.as_bool()
        .ok_or_else(|| DocumentError::new(path, "expected a boolean"))
}

pub(crate) fn as_u64(v: &Value, path: &str) -> Result<u64, DocumentError> {
    v.as_u64()
        .ok_or_else(|| DocumentError::new(path, "expected a non-negative integer"))
}

pub(crate) fn as_u32(v: &Value, path: &str) -> Result<u32, DocumentError> {
    as_u64(v, path)?
        .try_into()
        .map_err(|_| DocumentError::new(path, "integer out of range"))
}

pub(crate) fn as_i64(v: &Value, path: &str) -> Result<i64, DocumentError> {
    v.as_i64()
        .ok_or_else(|| DocumentError::new(path, "expected an integer"))
}

pub(crate) fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, DocumentError> {
    v.as_array()
        .ok_or_else(|| DocumentError::new(path, "expected an array"))
}

/// Rejects fields outside the schema.
pub(crate) fn reject_unknown(
    obj: &Map<String, Value>,
    path: &str,
    allowed: &[&str],
) -> Result<(), DocumentError> {
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(DocumentError::new(join(path, key), "unknown field"));
        }
    }
    Ok(())
}

pub(crate) fn join(path: &str, key: &str) -> String {
    if path == "$" {
        format!("$.{key}")
    } else {
        format!("{path}.{key}")
    }
}

pub(crate) fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}
