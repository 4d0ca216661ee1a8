//! Output helpers: every float is written with 17 significant digits.

use serde::Serialize;
use serde_json::{Number, Value};

/// `x` in scientific notation with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn num17(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    fmt17(x)
        .parse::<Number>()
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

fn rewrite(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n.as_f64().map(num17).unwrap_or(Value::Null),
        Value::Array(items) => Value::Array(items.into_iter().map(rewrite).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, rewrite(v))).collect()),
        other => other,
    }
}

/// Serializes to a JSON value whose floats carry 17 significant digits.
/// Integers are left as they are.
pub fn to_value17<T: Serialize>(value: &T) -> serde_json::Result<Value> {
    serde_json::to_value(value).map(rewrite)
}

pub fn to_string17<T: Serialize>(value: &T) -> serde_json::Result<String> {
    to_value17(value).and_then(|v| serde_json::to_string_pretty(&v))
}
