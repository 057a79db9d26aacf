//! CSV formatting and parsing helpers.
//!
//! All emitted CSV uses a header row, comma separators, LF line endings and
//! 12 significant digits, so output files are byte-stable across platforms.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::fit::Dataset;

/// Format a value with 12 significant digits; plain decimal notation in the
/// human range, scientific outside it. `0` stays `0`.
pub fn format_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        format!("{:.*e}", 11, x)
    } else {
        let decimals = (11 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    }
}

/// Write a per-bin density table with header `x,p_hat,epsilon,w`.
pub fn write_density_table<W: Write>(
    out: &mut W,
    x: &[f64],
    p_hat: &[f64],
    epsilon: &[f64],
    w: &[f64],
) -> std::io::Result<()> {
    writeln!(out, "x,p_hat,epsilon,w")?;
    for i in 0..x.len() {
        writeln!(
            out,
            "{},{},{},{}",
            format_sig12(x[i]),
            format_sig12(p_hat[i]),
            format_sig12(epsilon[i]),
            format_sig12(w[i]),
        )?;
    }
    Ok(())
}

/// Write per-trajectory log growth with header `trajectory,log_growth`.
pub fn write_trajectory_table<W: Write>(out: &mut W, log_growth: &[f64]) -> std::io::Result<()> {
    writeln!(out, "trajectory,log_growth")?;
    for (i, g) in log_growth.iter().enumerate() {
        writeln!(out, "{},{}", i, format_sig12(*g))?;
    }
    Ok(())
}

/// Read a `fp,fw` CSV into a fit dataset. Errors name the offending line.
pub fn read_dataset<R: BufRead>(reader: R, label: impl Into<String>) -> Result<Dataset> {
    let mut points = Vec::new();
    let mut saw_header = false;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|e| Error::Parse(format!("line {line_no}: {e}")))?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if !saw_header {
            let header: Vec<&str> = trimmed.split(',').map(str::trim).collect();
            if header != ["fp", "fw"] {
                return Err(Error::Parse(format!(
                    "line {line_no}: expected header 'fp,fw', got '{trimmed}'"
                )));
            }
            saw_header = true;
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(Error::Parse(format!(
                "line {line_no}: expected two comma-separated fields, got {}",
                fields.len()
            )));
        }
        let fp: f64 = fields[0]
            .parse()
            .map_err(|_| Error::Parse(format!("line {line_no}: invalid number '{}'", fields[0])))?;
        let fw: f64 = fields[1]
            .parse()
            .map_err(|_| Error::Parse(format!("line {line_no}: invalid number '{}'", fields[1])))?;
        points.push((fp, fw));
    }
    if !saw_header {
        return Err(Error::Parse("empty file: missing 'fp,fw' header".into()));
    }
    Dataset::new(points, label)
}


#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn sig12_parses_back_accurately(x in -1e12_f64..1e12) {
            let s = format_sig12(x);
            let back: f64 = s.parse().unwrap();
            if x == 0.0 {
                prop_assert_eq!(back, 0.0);
            } else {
                prop_assert!(((back - x) / x).abs() < 1e-11, "{} -> {}", x, s);
            }
        }
    }
}
