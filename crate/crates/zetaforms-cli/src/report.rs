//! Report assembly and serialization. JSON output is deterministic: object
//! keys are sorted by serde_json's default map, numbers only appear as
//! strings, and the summation order underneath is fixed.

use serde::Serialize;

use zetaforms::value::PrecisionValue;

pub const SCHEMA: &str = "zetaforms/1";

#[derive(Debug, Serialize)]
pub struct ConfigEcho {
    pub d: u32,
    pub s: u32,
    pub n: u32,
    pub j: String,
    pub digits: u32,
    pub weights: Option<String>,
    pub allow_odd_n: bool,
    pub allow_degenerate_n: bool,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
}

impl Check {
    pub fn exact(name: impl Into<String>, pass: bool) -> Self {
        Self {
            name: name.into(),
            pass,
            residual: None,
            bound: None,
        }
    }

    pub fn bounded(name: impl Into<String>, pass: bool, residual: f64, bound: f64) -> Self {
        Self {
            name: name.into(),
            pass,
            residual: Some(format!("{residual:.3e}")),
            bound: Some(format!("{bound:.3e}")),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ValueJson {
    pub value: String,
    pub err: String,
}

impl ValueJson {
    pub fn new(v: &PrecisionValue, digits: u32) -> Self {
        Self {
            value: v.to_decimal_string(digits.min(v.scale())),
            err: v.err_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    pub config: ConfigEcho,
    pub results: serde_json::Value,
    pub checks: Vec<Check>,
    pub pass: bool,
    /// Tabular view for CSV output; not part of the JSON schema.
    #[serde(skip)]
    pub csv_rows: Option<Vec<Vec<String>>>,
}

impl Report {
    pub fn new(
        command: &str,
        config: ConfigEcho,
        results: serde_json::Value,
        checks: Vec<Check>,
    ) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        Self {
            schema: SCHEMA,
            command: command.to_string(),
            config,
            results,
            checks,
            pass,
            csv_rows: None,
        }
    }

    pub fn with_csv(mut self, rows: Vec<Vec<String>>) -> Self {
        self.csv_rows = Some(rows);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} (D={}, s={}, n={}, j={}, digits={})\n",
            self.command,
            self.config.d,
            self.config.s,
            self.config.n,
            self.config.j,
            self.config.digits
        ));
        if let Some(w) = &self.config.weights {
            out.push_str(&format!("weights: {w}\n"));
        }
        if let Some(obj) = self.results.as_object() {
            for (k, v) in obj {
                out.push_str(&format!("{k}: {}\n", compact(v)));
            }
        }
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {}{}\n",
                if c.pass { "pass" } else { "FAIL" },
                c.name,
                match (&c.residual, &c.bound) {
                    (Some(r), Some(b)) => format!(" (residual {r}, bound {b})"),
                    _ => String::new(),
                }
            ));
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.pass { "pass" } else { "FAIL" }
        ));
        out
    }

    /// One CSV table: the payload rows when the command produced a table,
    /// otherwise the checks.
    pub fn to_csv(&self) -> String {
        if let Some(rows) = &self.csv_rows {
            let mut out = String::new();
            for row in rows {
                let line: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                out.push_str(&line.join(","));
                out.push('\n');
            }
            return out;
        }
        let mut out = String::from("check,pass,residual,bound\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_cell(&c.name),
                c.pass,
                c.residual.as_deref().unwrap_or(""),
                c.bound.as_deref().unwrap_or("")
            ));
        }
        out
    }
}

fn compact(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        other => serde_json::to_string(other).expect("value serializes"),
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
