//! Deterministic text output: `%.9g` numbers, CSV tables, key=value reports
//! and their JSON equivalents.

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// Format like C's `printf("%.9g", x)`: nine significant digits, trailing
/// zeros removed, exponent form outside 1e-4 ≤ |x| < 1e9.
pub fn fmt_g9(x: f64) -> String {
    const PRECISION: i32 = 9;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // the exponent after rounding to PRECISION digits decides the style
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    } else {
        let decimals = (PRECISION - 1 - exp) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// The JSON number that prints like [`fmt_g9`], or null when not finite.
pub fn json_number(x: f64) -> Value {
    fmt_g9(x)
        .parse::<f64>()
        .ok()
        .and_then(Number::from_f64)
        .map_or(Value::Null, Value::Number)
}

/// Named numeric columns of equal length.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<(&'static str, Vec<f64>)>,
}

impl Table {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn column(mut self, name: &'static str, values: Vec<f64>) -> Self {
        self.columns.push((name, values));
        self
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.1.len())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let names: Vec<&str> = self.columns.iter().map(|c| c.0).collect();
        out.push_str(&names.join(","));
        out.push('\n');
        for i in 0..self.rows() {
            let cells: Vec<String> = self.columns.iter().map(|c| fmt_g9(c.1[i])).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (name, values) in &self.columns {
            map.insert((*name).to_string(), Value::Array(values.iter().map(|v| json_number(*v)).collect()));
        }
        Value::Object(map)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ReportValue {
    Number(f64),
    Integer(u64),
    Text(String),
}

/// Ordered key=value scalar report.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub entries: Vec<(&'static str, ReportValue)>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num(mut self, key: &'static str, value: f64) -> Self {
        self.entries.push((key, ReportValue::Number(value)));
        self
    }

    pub fn int(mut self, key: &'static str, value: u64) -> Self {
        self.entries.push((key, ReportValue::Integer(value)));
        self
    }

    pub fn text(mut self, key: &'static str, value: impl Into<String>) -> Self {
        self.entries.push((key, ReportValue::Text(value.into())));
        self
    }

    pub fn get(&self, key: &str) -> Option<&ReportValue> {
        self.entries.iter().find(|e| e.0 == key).map(|e| &e.1)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.entries {
            let v = match value {
                ReportValue::Number(x) => fmt_g9(*x),
                ReportValue::Integer(n) => n.to_string(),
                ReportValue::Text(s) => s.clone(),
            };
            out.push_str(&format!("{key}={v}\n"));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let mut map = Map::new();
        for (key, value) in &self.entries {
            let v = match value {
                ReportValue::Number(x) => json_number(*x),
                ReportValue::Integer(n) => Value::from(*n),
                ReportValue::Text(s) => Value::from(s.clone()),
            };
            map.insert((*key).to_string(), v);
        }
        Value::Object(map)
    }
}
