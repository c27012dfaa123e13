//! Numeric tables rendered as CSV or JSON with a fixed number format.

use std::f64::consts::PI;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    /// Column name already carries its unit.
    Named,
    Rad,
    Rad2,
    PerRad,
    Sr,
}

#[derive(Debug, Clone)]
pub struct Column {
    base: &'static str,
    unit: Unit,
}

impl Column {
    pub fn named(base: &'static str) -> Self {
        Column { base, unit: Unit::Named }
    }
    pub fn rad(base: &'static str) -> Self {
        Column { base, unit: Unit::Rad }
    }
    pub fn rad2(base: &'static str) -> Self {
        Column { base, unit: Unit::Rad2 }
    }
    pub fn per_rad(base: &'static str) -> Self {
        Column { base, unit: Unit::PerRad }
    }
    pub fn sr(base: &'static str) -> Self {
        Column { base, unit: Unit::Sr }
    }

    fn header(&self, degrees: bool) -> String {
        let suffix = match (self.unit, degrees) {
            (Unit::Named, _) => return self.base.to_string(),
            (Unit::Rad, false) => "rad",
            (Unit::Rad, true) => "deg",
            (Unit::Rad2, false) => "rad2",
            (Unit::Rad2, true) => "deg2",
            (Unit::PerRad, false) => "per_rad",
            (Unit::PerRad, true) => "per_deg",
            (Unit::Sr, _) => "sr",
        };
        format!("{}_{}", self.base, suffix)
    }

    fn display(&self, v: f64, degrees: bool) -> f64 {
        let d = 180.0 / PI;
        match (self.unit, degrees) {
            (Unit::Rad, true) => v * d,
            (Unit::Rad2, true) => v * d * d,
            (Unit::PerRad, true) => v / d,
            _ => v,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub params: Map<String, Value>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Style {
    pub json: bool,
    pub precision: usize,
    pub degrees: bool,
}

/// `v` to `precision` significant digits: positional notation for
/// moderate exponents, otherwise scientific; trailing zeros trimmed.
pub fn format_number(v: f64, precision: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", precision - 1, v);
    let (mantissa, exp) = sci.split_once('e').unwrap_or((&sci, "0"));
    let exp: i32 = exp.parse().unwrap_or(0);
    if (-5..precision as i32).contains(&exp) {
        let decimals = (precision as i32 - 1 - exp) as usize;
        trim(format!("{v:.decimals$}"))
    } else {
        format!("{}e{}", trim(mantissa.to_string()), exp)
    }
}

fn trim(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl Table {
    pub fn new(columns: Vec<Column>) -> Self {
        Table {
            columns,
            ..Default::default()
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn cells(&self, style: Style) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.columns)
                    .map(|(&v, c)| format_number(c.display(v, style.degrees), style.precision))
                    .collect()
            })
            .collect()
    }

    pub fn render(&self, style: Style) -> String {
        let headers: Vec<String> = self.columns.iter().map(|c| c.header(style.degrees)).collect();
        let cells = self.cells(style);
        if style.json {
            let rows: Vec<Value> = cells
                .iter()
                .map(|r| {
                    Value::Array(
                        r.iter()
                            .map(|s| serde_json::from_str::<Value>(s).unwrap_or(Value::Null))
                            .collect(),
                    )
                })
                .collect();
            let doc = json!({
                "params": Value::Object(self.params.clone()),
                "columns": headers,
                "rows": rows,
            });
            let mut s = serde_json::to_string_pretty(&doc).unwrap_or_default();
            s.push('\n');
            s
        } else {
            let mut s = headers.join(",");
            s.push('\n');
            for r in cells {
                s.push_str(&r.join(","));
                s.push('\n');
            }
            s
        }
    }
}
