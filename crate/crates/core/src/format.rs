//! Display formatting shared by every text output.

use std::env;

use crate::eigenkit::Matrix;

pub const DEFAULT_PRECISION: usize = 4;
pub const PRECISION_VAR: &str = "FOCKRANK_PRECISION";

/// Decimals to print, from `FOCKRANK_PRECISION` when it holds a valid integer.
pub fn precision() -> usize {
    env::var(PRECISION_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&p: &usize| p <= 17)
        .unwrap_or(DEFAULT_PRECISION)
}

/// Fixed-point text with ties rounded to even; negative zero prints without a sign.
pub fn fmt_fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

pub fn fmt_score(x: f64) -> String {
    fmt_fixed(x, precision())
}

/// Headerless row-major CSV.
pub fn matrix_csv(m: &Matrix, decimals: usize) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|&x| fmt_fixed(x, decimals)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
