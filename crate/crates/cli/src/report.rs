use std::str::FromStr;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Map, Number, Value};

use crate::error::{CliError, EXIT_CHECK_FAILED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, pass: bool) -> Self {
        Check { name: name.to_string(), pass, detail: None }
    }

    pub fn with_detail(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.to_string(), pass, detail: Some(detail.into()) }
    }
}

/// The output of one command.
pub struct Report {
    pub config: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    /// Rows for `--format csv`.
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
    /// Text for `--format dot`.
    pub dot: Option<String>,
    pub wall_time: Option<f64>,
}

impl Report {
    pub fn new(config: Value, results: Value) -> Self {
        Report { config, results, checks: Vec::new(), warnings: Vec::new(), table: None, dot: None, wall_time: None }
    }

    pub fn exit_code(&self) -> u8 {
        if self.checks.iter().all(|c| c.pass) {
            0
        } else {
            EXIT_CHECK_FAILED
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "config": self.config,
            "results": self.results,
            "checks": self.checks,
            "warnings": self.warnings,
            "versions": {"nctorus": env!("CARGO_PKG_VERSION")},
        });
        if let Some(t) = self.wall_time {
            v["wall_time_s"] = json!(t);
        }
        normalize_floats(v)
    }

    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Json => Ok(format!("{}\n", serde_json::to_string_pretty(&self.to_json()).expect("plain JSON"))),
            Format::Csv => {
                let (header, rows) =
                    self.table.as_ref().ok_or_else(|| CliError::input("this command has no tabular output"))?;
                let mut s = header.join(",");
                s.push('\n');
                for r in rows {
                    s.push_str(&r.iter().map(|c| csv_field(c)).collect::<Vec<_>>().join(","));
                    s.push('\n');
                }
                Ok(s)
            }
            Format::Dot => self.dot.clone().ok_or_else(|| CliError::input("only `tower` has DOT output")),
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Print every non-integer number as `d.ddddddddddddddddde±x` (17 significant
/// digits) so identical runs give byte-identical reports.
pub fn normalize_floats(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("checked f64");
            if x.is_finite() {
                Value::Number(Number::from_str(&format!("{x:.16e}")).expect("scientific literal"))
            } else {
                Value::Null
            }
        }
        Value::Array(a) => Value::Array(a.into_iter().map(normalize_floats).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, normalize_floats(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_get_fixed_digits_and_keys_sort() {
        let v = normalize_floats(json!({"b": 0.5, "a": [1, 0.25]}));
        assert_eq!(
            serde_json::to_string(&v).unwrap(),
            r#"{"a":[1,2.5000000000000000e-1],"b":5.0000000000000000e-1}"#
        );
    }
}
