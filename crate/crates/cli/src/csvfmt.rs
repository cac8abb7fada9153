// Copyright 2026 cntring Contributors
// SPDX-License-Identifier: Apache-2.0

//! Deterministic CSV output: 12 significant digits, '.' decimal separator,
//! '\n' line terminators, written in one shot so repeated runs produce
//! byte-identical files.

use std::path::Path;

use crate::error::Result;

/// 12-significant-digit scientific form, stable across runs.
pub fn fmt_float(x: f64) -> String {
    // normalize -0.0 so the sign bit cannot leak into the output
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

pub fn fmt_int(x: i64) -> String {
    x.to_string()
}

/// Assemble header + rows into a single CSV byte string.
pub fn render(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    std::fs::write(path, render(header, rows))?;
    Ok(())
}
