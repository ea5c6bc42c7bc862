//! Serialization helpers shared by the report types.

use num_complex::Complex64;
use serde::Serializer;
use serde_json::{Number, Value};

use crate::poly::Rational;

pub const SCHEMA: u32 = 1;

/// A float as a JSON number with 17 significant digits, stable across runs.
/// Non-finite values become `null`.
pub fn float(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{:.16e}", x);
    text.parse::<Number>().map(Value::Number).unwrap_or(Value::Null)
}

pub fn complex(z: Complex64) -> Value {
    serde_json::json!({ "re": float(z.re), "im": float(z.im) })
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn ser_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&float(*x), s)
}

pub fn ser_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn ser_complex_pair<S: Serializer>(p: &[Complex64; 2], s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&[complex(p[0]), complex(p[1])], s)
}

/// Pretty JSON with a trailing newline.
pub fn to_string(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_seventeen_digits() {
        assert_eq!(float(0.1).to_string(), "1.0000000000000001e-1");
        assert_eq!(float(-2.0).to_string(), "-2.0000000000000000e+0");
        assert_eq!(float(f64::NAN), Value::Null);
    }
}
