//! Report assembly and serialization.
//!
//! Fixed JSON schema: {command, inputs, value_decimal?, error_bound_decimal?,
//! exact_rational?, quotients?, convergents?, checks?, metadata}. Key order
//! is struct order for the top level and sorted within maps, so identical
//! invocations are byte-identical; no timestamps are emitted anywhere.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Serialize, Default)]
pub struct Metadata {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<u64>,
    pub precision_bits: u32,
    pub digits: u32,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_decimal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_bound_decimal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_rational: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotients: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergents: Option<Vec<[String; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<Value>>,
    pub metadata: Metadata,
}

impl Report {
    pub fn new(command: &str, digits: u32, precision_bits: u32) -> Self {
        Report {
            command: command.to_string(),
            inputs: Map::new(),
            value_decimal: None,
            error_bound_decimal: None,
            exact_rational: None,
            quotients: None,
            convergents: None,
            checks: None,
            metadata: Metadata {
                precision_bits,
                digits,
                ..Metadata::default()
            },
        }
    }

    pub fn input(&mut self, key: &str, value: Value) -> &mut Self {
        self.inputs.insert(key.to_string(), value);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// CSV projection: one row per check when checks exist, a single summary
    /// row otherwise. Columns are the sorted union of check keys, so the
    /// layout is deterministic for a given command.
    pub fn to_csv(&self) -> String {
        fn esc(s: &str) -> String {
            if s.contains(',') || s.contains('"') || s.contains('\n') {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        }
        fn val_str(v: &Value) -> String {
            match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            }
        }
        let mut out = String::new();
        if let Some(checks) = &self.checks {
            let mut cols: Vec<String> = Vec::new();
            for c in checks {
                if let Value::Object(m) = c {
                    for k in m.keys() {
                        if !cols.contains(k) {
                            cols.push(k.clone());
                        }
                    }
                }
            }
            cols.sort();
            out.push_str("command,");
            out.push_str(&cols.join(","));
            out.push('\n');
            for c in checks {
                out.push_str(&esc(&self.command));
                for k in &cols {
                    out.push(',');
                    if let Some(v) = c.get(k) {
                        out.push_str(&esc(&val_str(v)));
                    }
                }
                out.push('\n');
            }
        } else {
            out.push_str("command,value_decimal,error_bound_decimal,exact_rational\n");
            out.push_str(&format!(
                "{},{},{},{}\n",
                esc(&self.command),
                esc(self.value_decimal.as_deref().unwrap_or("")),
                esc(self.error_bound_decimal.as_deref().unwrap_or("")),
                esc(self.exact_rational.as_deref().unwrap_or("")),
            ));
        }
        out
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.inputs {
            out.push_str(&format!("input {k}: {v}\n"));
        }
        if let Some(v) = &self.exact_rational {
            out.push_str(&format!("exact: {v}\n"));
        }
        if let Some(v) = &self.value_decimal {
            out.push_str(&format!("value: {v}\n"));
        }
        if let Some(v) = &self.error_bound_decimal {
            out.push_str(&format!("error_bound: {v}\n"));
        }
        if let Some(qs) = &self.quotients {
            out.push_str(&format!("quotients: [{}]\n", qs.join(", ")));
        }
        if let Some(cs) = &self.convergents {
            for (n, [p, q]) in cs.iter().enumerate() {
                out.push_str(&format!("convergent {n}: {p}/{q}\n"));
            }
        }
        if let Some(checks) = &self.checks {
            for c in checks {
                out.push_str(&format!("check: {c}\n"));
            }
        }
        if let Some(m) = &self.metadata.method {
            out.push_str(&format!("method: {m}\n"));
        }
        if let Some(t) = &self.metadata.truncation {
            out.push_str(&format!("truncation: {t}\n"));
        }
        out.push_str(&format!(
            "precision_bits: {}\ndigits: {}\n",
            self.metadata.precision_bits, self.metadata.digits
        ));
        for n in &self.metadata.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}
