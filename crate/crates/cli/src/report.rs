//! JSON run reports.
//!
//! Numbers are rounded to 12 significant digits on output so golden files
//! stay stable across platforms. Undefined quantities are written as `null`
//! with the reason recorded under `undefined`.

use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const SIGNIFICANT_DIGITS: usize = 12;

pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 {
        // avoid "-0.0" in reports
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// Rounds every number in `value`, recursively.
pub fn round_value(value: Value) -> Value {
    match value {
        Value::Number(n) => match n.as_f64() {
            Some(x) if !n.is_i64() && !n.is_u64() => serde_json::Number::from_f64(round_sig(x))
                .map_or(Value::Null, Value::Number),
            _ => Value::Number(n),
        },
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// Results section being assembled. Insertion order is preserved.
#[derive(Debug, Default)]
pub struct Results {
    fields: Map<String, Value>,
    undefined: Map<String, Value>,
}

impl Results {
    pub fn put<T: Serialize>(&mut self, key: &str, v: T) {
        self.fields.insert(key.to_owned(), to_value(&v));
    }

    /// Stores `Ok` values; a library "undefined" error becomes `null` plus a
    /// reason, any other error aborts the run.
    pub fn put_metric<T: Serialize>(&mut self, key: &str, r: ccp_core::Result<T>) -> Result<(), CliError> {
        match r {
            Ok(v) => self.put(key, v),
            Err(e @ (ccp_core::Error::Undefined { .. } | ccp_core::Error::EmptySample(_))) => {
                self.fields.insert(key.to_owned(), Value::Null);
                self.undefined.insert(key.to_owned(), Value::String(e.to_string()));
            }
            Err(e) => return Err(e.into()),
        }
        Ok(())
    }

    fn into_value(mut self) -> Value {
        if !self.undefined.is_empty() {
            self.fields.insert("undefined".to_owned(), Value::Object(self.undefined));
        }
        Value::Object(self.fields)
    }
}

pub struct RunReport {
    pub command: &'static str,
    pub mode: Option<&'static str>,
    pub input_digest: String,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub warnings: Vec<String>,
    pub results: Results,
}

impl RunReport {
    pub fn into_json(self, with_timestamp: bool) -> Value {
        let mut root = Map::new();
        root.insert("tool".into(), "ccp".into());
        root.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        root.insert("command".into(), self.command.into());
        root.insert("mode".into(), self.mode.map_or(Value::Null, Value::from));
        root.insert("input_sha256".into(), self.input_digest.into());
        root.insert("parameters".into(), self.parameters);
        root.insert("seed".into(), self.seed.map_or(Value::Null, Value::from));
        if with_timestamp {
            let secs = SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs());
            root.insert("timestamp".into(), secs.into());
        }
        root.insert("warnings".into(), to_value(&self.warnings));
        root.insert("results".into(), self.results.into_value());
        round_value(Value::Object(root))
    }
}
