//! Serialization helpers shared by machine-readable reports.
//!
//! Rationals are written as strings in the `p/q` grammar so that no value
//! passes through a floating-point type.

use serde::Serializer;

use crate::exact::Rational;

/// Version of every machine-readable record emitted by the engine.
pub const SCHEMA_VERSION: u32 = 1;

pub fn ser_rational<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

pub fn ser_opt_rational<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

pub fn ser_rationals<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(|v| v.to_string()))
}

pub fn ser_display<T: std::fmt::Display, S: Serializer>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&value.to_string())
}

/// A machine-readable record: the fields of `body` plus `schema_version`
/// and the name of the producing command.
///
/// `body` must serialize to a JSON object.
pub fn versioned<T: serde::Serialize>(command: &str, body: &T) -> serde_json::Value {
    let mut value = serde_json::to_value(body).expect("report types serialize");
    let map = value.as_object_mut().expect("reports are JSON objects");
    map.insert("schema_version".into(), SCHEMA_VERSION.into());
    map.insert("command".into(), command.into());
    value
}
