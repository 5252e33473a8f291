//! Curve files: `{"field": "rationals" | {"prime": "<decimal>"}, "f": ["f0", ..., "f6"]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::curve::HyperellipticCurve;
use crate::error::{Error, Result};
use crate::field::FieldContext;
use crate::univariate::UniPoly;

/// A curve file as written on disk, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub field: Value,
    pub f: Vec<String>,
}

pub fn field_to_json(ctx: FieldContext) -> Value {
    match ctx {
        FieldContext::Rationals => Value::String("rationals".into()),
        FieldContext::Prime(p) => serde_json::json!({ "prime": p.to_string() }),
    }
}

pub fn field_from_json(v: &Value) -> Result<FieldContext> {
    match v {
        Value::String(s) if s == "rationals" => Ok(FieldContext::rationals()),
        Value::Object(m) if m.len() == 1 => {
            let p = match m.get("prime") {
                Some(Value::String(s)) => s.trim().to_string(),
                Some(Value::Number(n)) => n.to_string(),
                _ => return Err(Error::InvalidInput("field object must be {\"prime\": \"<decimal>\"}".into())),
            };
            let p: u64 = p.parse().map_err(|_| Error::NotPrime(p.clone()))?;
            FieldContext::prime(p)
        }
        _ => Err(Error::InvalidInput(format!("unrecognized field {v}"))),
    }
}

/// Parses a field given on the command line: `rationals`, `Q`, or a prime.
pub fn field_from_arg(text: &str) -> Result<FieldContext> {
    match text.trim() {
        "rationals" | "Q" | "q" => Ok(FieldContext::rationals()),
        t => {
            let p: u64 = t.parse().map_err(|_| Error::NotPrime(t.to_string()))?;
            FieldContext::prime(p)
        }
    }
}

impl CurveSpec {
    pub fn new(ctx: FieldContext, f: &[&str]) -> Self {
        CurveSpec { field: field_to_json(ctx), f: f.iter().map(|s| s.to_string()).collect() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("curve file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn ctx(&self) -> Result<FieldContext> {
        field_from_json(&self.field)
    }

    /// Validated curve, optionally reinterpreting the coefficients in another field.
    pub fn curve(&self, field_override: Option<FieldContext>) -> Result<HyperellipticCurve> {
        let ctx = match field_override {
            Some(c) => c,
            None => self.ctx()?,
        };
        if self.f.len() != 7 {
            return Err(Error::WrongDegree(self.f.len() as i64 - 1));
        }
        let coeffs = self.f.iter().map(|c| ctx.parse_scalar(c)).collect::<Result<Vec<_>>>()?;
        HyperellipticCurve::new(UniPoly::new(ctx, coeffs)?)
    }

    /// The same curve with the field replaced and coefficients in canonical form.
    pub fn canonical(curve: &HyperellipticCurve) -> Self {
        let f = (0..=6).map(|i| curve.coeff(i).to_string()).collect();
        CurveSpec { field: field_to_json(curve.ctx()), f }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"field": {"prime": "10009"}, "f": ["-1","0","0","0","0","0","1"]}"#;
        let spec = CurveSpec::from_json(text).unwrap();
        let c = spec.curve(None).unwrap();
        assert_eq!(c.ctx(), FieldContext::prime(10009).unwrap());
        assert_eq!(CurveSpec::canonical(&c).f[0], "10008");
        let q = spec.curve(Some(FieldContext::rationals())).unwrap();
        assert_eq!(CurveSpec::canonical(&q).f[0], "-1");
    }

    #[test]
    fn rejects_bad_input() {
        let bad_field = r#"{"field": {"prime": "10000"}, "f": ["-1","0","0","0","0","0","1"]}"#;
        assert!(matches!(CurveSpec::from_json(bad_field).unwrap().curve(None), Err(Error::NotPrime(_))));
        let short = r#"{"field": "rationals", "f": ["-1","0","1"]}"#;
        assert!(matches!(CurveSpec::from_json(short).unwrap().curve(None), Err(Error::WrongDegree(2))));
        let squared = r#"{"field": "rationals", "f": ["1","0","-2","0","1","0","0"]}"#;
        assert!(CurveSpec::from_json(squared).unwrap().curve(None).is_err());
        assert!(CurveSpec::from_json("{").is_err());
        assert_eq!(field_from_arg("Q").unwrap(), FieldContext::rationals());
        assert_eq!(field_from_arg("20011").unwrap(), FieldContext::prime(20011).unwrap());
    }
}
