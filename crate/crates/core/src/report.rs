//! Self-contained run reports rendered as JSON or CSV.
//!
//! JSON objects are emitted with sorted keys, so parsing a report and
//! re-emitting it reproduces the same bytes. High-precision values are
//! decimal strings; everything else is a plain JSON number.

use std::fmt;
use std::io::Write;

use rug::Float;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::mc::McEstimate;
use crate::precision::to_decimal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// One pass/fail check. `passed` is `value <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            value,
            tolerance,
            passed: value <= tolerance,
            detail: detail.into(),
        }
    }

    /// |z| ≤ n_sigma for an estimate against an exact value; when the
    /// estimate is exact to rounding (stderr ≈ 0) an absolute floor is used.
    pub fn z_score(name: impl Into<String>, est: &McEstimate, exact: f64, n_sigma: f64) -> Self {
        let z = est.z_score(exact).abs();
        Check::at_most(
            name,
            z,
            n_sigma,
            format!("mean {} ± {} vs exact {}", sig15(est.mean), sig15(est.stderr), sig15(exact)),
        )
    }
}

/// A table cell. Big values keep both their decimal string and an f64.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Big(String, f64),
    Text(String),
}

impl Cell {
    pub fn big(x: &Float, digits: u32) -> Self {
        Cell::Big(to_decimal(x, digits), x.to_f64())
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(i) => Value::from(*i),
            Cell::Num(v) => num(*v),
            Cell::Big(s, _) => Value::from(s.clone()),
            Cell::Text(s) => Value::from(s.clone()),
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            Cell::Num(v) | Cell::Big(_, v) => sig15(*v),
            Cell::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width differs from header");
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    /// The command's main result; this is what CSV output contains.
    pub table: Table,
    pub checks: Vec<Check>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: Map::new(),
            outputs: Map::new(),
            table: Table::default(),
            checks: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn output(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.outputs.insert(key.to_string(), value.into());
        self
    }

    pub fn check(&mut self, check: Check) -> &mut Self {
        self.checks.push(check);
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn to_json_value(&self) -> Value {
        let rows: Vec<Value> = self
            .table
            .rows
            .iter()
            .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
            .collect();
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut m = Map::new();
                m.insert("name".into(), c.name.clone().into());
                m.insert("value".into(), num(c.value));
                m.insert("tolerance".into(), num(c.tolerance));
                m.insert("passed".into(), c.passed.into());
                m.insert("detail".into(), c.detail.clone().into());
                Value::Object(m)
            })
            .collect();
        let mut table = Map::new();
        table.insert("columns".into(), self.table.columns.clone().into());
        table.insert("rows".into(), Value::Array(rows));

        let mut root = Map::new();
        root.insert("command".into(), self.command.clone().into());
        root.insert("inputs".into(), Value::Object(self.inputs.clone()));
        root.insert("outputs".into(), Value::Object(self.outputs.clone()));
        root.insert("table".into(), Value::Object(table));
        root.insert("checks".into(), Value::Array(checks));
        root.insert("all_passed".into(), self.all_passed().into());
        root.insert("versions".into(), versions());
        Value::Object(root)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("report serializes");
        s.push('\n');
        s
    }

    /// Header row plus one row per table entry, 15 significant digits.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.table.columns).expect("in-memory write");
        for row in &self.table.rows {
            w.write_record(row.iter().map(Cell::csv)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }

    pub fn write_to(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        out.write_all(self.render(format).as_bytes())
    }
}

impl fmt::Display for RunReport {
    /// Human-readable check table.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "{} {:<34} {:>12} <= {:<10} {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                sig_short(c.value),
                sig_short(c.tolerance),
                c.detail
            )?;
        }
        Ok(())
    }
}

/// JSON number, or a string for values JSON cannot represent.
pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or_else(|| Value::from(v.to_string()), Value::Number)
}

pub fn estimate_json(e: &McEstimate) -> Value {
    serde_json::to_value(e).expect("estimate serializes")
}

/// v rounded to 15 significant digits, shortest form.
pub fn sig15(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.14e}").parse().expect("formatted float parses");
    let a = rounded.abs();
    if a != 0.0 && !(1e-5..1e15).contains(&a) {
        format!("{rounded:e}")
    } else {
        rounded.to_string()
    }
}

fn sig_short(v: f64) -> String {
    if v != 0.0 && (v.abs() < 1e-3 || v.abs() >= 1e6) {
        format!("{v:.3e}")
    } else {
        format!("{v:.6}")
    }
}

fn versions() -> Value {
    let mut m = Map::new();
    m.insert("lyapunov".into(), env!("CARGO_PKG_VERSION").into());
    m.insert("mpfr".into(), mpfr_version().into());
    m.insert("rng".into(), "chacha8/box-muller".into());
    Value::Object(m)
}

fn mpfr_version() -> String {
    // SAFETY: mpfr_get_version returns a pointer to a static NUL-terminated string.
    unsafe { std::ffi::CStr::from_ptr(gmp_mpfr_sys::mpfr::get_version()) }
        .to_string_lossy()
        .into_owned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(sig15(0.6355884082958272), "0.635588408295827");
        assert_eq!(sig15(-1.0), "-1");
        assert_eq!(sig15(1.234e-9), "1.234e-9");
        assert_eq!(sig15(0.0), "0");
    }

    #[test]
    fn json_round_trips_byte_identically() {
        let mut r = RunReport::new("demo");
        r.input("zeta", 1.5).input("alpha", vec![1, 2]);
        r.output("mu", vec!["0.25".to_string()]);
        r.table = Table::new(&["k", "mu"]);
        r.table.push(vec![Cell::Int(1), Cell::Num(0.1)]);
        r.check(Check::at_most("residual", 1e-30, 1e-28, ""));
        let text = r.to_json();
        let parsed: Value = serde_json::from_str(&text).unwrap();
        let mut again = serde_json::to_string_pretty(&parsed).unwrap();
        again.push('\n');
        assert_eq!(text, again);
        assert!(text.find("\"alpha\"").unwrap() < text.find("\"zeta\"").unwrap());
    }

    #[test]
    fn csv_has_header() {
        let mut r = RunReport::new("demo");
        r.table = Table::new(&["d", "mu1"]);
        r.table.push(vec![Cell::Int(10), Cell::Num(-0.25)]);
        assert_eq!(r.to_csv(), "d,mu1\n10,-0.25\n");
    }
}
