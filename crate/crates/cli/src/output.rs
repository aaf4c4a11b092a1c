//! Deterministic JSON/CSV emission: floats rounded to 12 significant
//! digits, JSON keys in sorted order, fixed column layouts.

use std::io::Write;

use num_complex::Complex64;
use serde_json::{json, Value};
use weylgauge::SectorShift;

/// Round to 12 significant digits so identical inputs always print
/// identical bytes. Negative zero is normalized.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}")
        .parse()
        .expect("formatted float reparses")
}

pub fn fmt_f64(x: f64) -> String {
    format!("{}", sig12(x))
}

pub fn json_f64(x: f64) -> Value {
    json!(sig12(x))
}

pub fn json_complex(z: Complex64) -> Value {
    json!({ "re": sig12(z.re), "im": sig12(z.im) })
}

pub fn json_shift(s: &SectorShift) -> Value {
    Value::String(s.to_string())
}

/// Write one line to stdout; a closed pipe (downstream `head`, plotting
/// script) ends the process quietly instead of panicking.
pub fn out_line(line: &str) {
    let mut out = std::io::stdout().lock();
    if writeln!(out, "{line}").is_err() {
        std::process::exit(0);
    }
}

pub fn print_json(value: &Value) {
    out_line(&serde_json::to_string_pretty(value).expect("report serializes"));
}

/// `key,value` rows for scalar reports.
pub fn print_csv_pairs(rows: &[(&str, String)]) {
    out_line("key,value");
    for (key, value) in rows {
        out_line(&format!("{key},{value}"));
    }
}
