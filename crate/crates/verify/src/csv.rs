//! Result rows and their CSV form.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Result, VerifyError};

pub const HEADER: &str = "suite,case,level,metric,value,tolerance,pass";

/// How a row's value is compared with its tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    /// Residual-like metrics: pass when `value <= tolerance`.
    Upper,
    /// Rates and ratios that must be large enough: pass when `value >= tolerance`.
    Lower,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    pub suite: String,
    pub case: String,
    pub level: usize,
    pub metric: String,
    pub value: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Rounds to the 15 significant digits written to the CSV, so the file
/// parses back to exactly the stored value.
pub fn quantize(v: f64) -> f64 {
    format_value(v).parse().expect("formatted float parses")
}

pub fn format_value(v: f64) -> String {
    format!("{v:.14e}")
}

impl ResultRow {
    pub fn new(suite: &str, case: &str, level: usize, metric: &str, value: f64, tolerance: f64, bound: Bound) -> Self {
        let value = quantize(value);
        let tolerance = quantize(tolerance);
        let pass = value.is_finite()
            && match bound {
                Bound::Upper => value <= tolerance,
                Bound::Lower => value >= tolerance,
            };
        ResultRow { suite: suite.into(), case: case.into(), level, metric: metric.into(), value, tolerance, pass }
    }

    pub fn upper(suite: &str, case: &str, level: usize, metric: &str, value: f64, tolerance: f64) -> Self {
        Self::new(suite, case, level, metric, value, tolerance, Bound::Upper)
    }

    pub fn lower(suite: &str, case: &str, level: usize, metric: &str, value: f64, tolerance: f64) -> Self {
        Self::new(suite, case, level, metric, value, tolerance, Bound::Lower)
    }
}

pub fn to_csv(rows: &[ResultRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.suite,
            r.case,
            r.level,
            r.metric,
            format_value(r.value),
            format_value(r.tolerance),
            r.pass
        )
        .expect("writing to a String");
    }
    out
}

pub fn emit_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    std::fs::write(path, to_csv(rows))
        .map_err(|source| VerifyError::Io { context: format!("writing {}", path.display()), source })
}

/// Parses text produced by [`to_csv`].
pub fn parse_csv(text: &str) -> Option<Vec<ResultRow>> {
    let mut lines = text.split('\n');
    if lines.next()? != HEADER {
        return None;
    }
    let mut rows = Vec::new();
    for line in lines.filter(|l| !l.is_empty()) {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return None;
        }
        rows.push(ResultRow {
            suite: f[0].into(),
            case: f[1].into(),
            level: f[2].parse().ok()?,
            metric: f[3].into(),
            value: f[4].parse().ok()?,
            tolerance: f[5].parse().ok()?,
            pass: f[6].parse().ok()?,
        });
    }
    Some(rows)
}
