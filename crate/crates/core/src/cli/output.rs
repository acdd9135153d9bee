// Copyright 2026 The dyncp Authors
//
// Licensed under the Apache license, version 2.0 (the "license");
// you may not use this file except in compliance with the license.
// You may obtain a copy of the license at
//
//     http://www.apache.org/licenses/license-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the license is distributed on an "as is" basis,
// without warranties or conditions of any kind, either express or implied.
// See the license for the specific language governing permissions and
// limitations under the license.

//! CSV and JSON-lines rendering.
//!
//! Numbers use Rust's shortest round-trip formatting, plain for lengths and
//! times and in exponent form for energies, so identical runs produce identical
//! bytes apart from the header line.

use std::io::Write;
use std::path::Path;

use super::config::OutputFormat;
use super::run::Row;
use super::CliError;

pub const CSV_COLUMNS: [&str; 10] = [
    "ct",
    "alpha",
    "beta",
    "gamma",
    "region_label",
    "quantity",
    "value",
    "error_estimate",
    "converged",
    "warnings",
];

fn opt_exp(v: Option<f64>) -> String {
    v.map(|x| format!("{x:e}")).unwrap_or_default()
}

pub fn csv_line(r: &Row) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        r.ct,
        r.alpha,
        r.beta,
        r.gamma,
        r.region_label,
        r.quantity,
        opt_exp(r.value),
        opt_exp(r.error_estimate),
        r.converged.map(|c| c.to_string()).unwrap_or_default(),
        r.warnings.join(";"),
    )
}

/// The whole document. The first line is a `#` comment (CSV) or a header object
/// (JSON lines) carrying `header`.
pub fn render_rows(rows: &[Row], format: OutputFormat, header: &str) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str("# ");
            out.push_str(header);
            out.push('\n');
            out.push_str(&CSV_COLUMNS.join(","));
            out.push('\n');
            for r in rows {
                out.push_str(&csv_line(r));
                out.push('\n');
            }
        }
        OutputFormat::JsonLines => {
            out.push_str(&serde_json::json!({ "header": header }).to_string());
            out.push('\n');
            for r in rows {
                out.push_str(&serde_json::to_string(r).expect("rows serialize"));
                out.push('\n');
            }
        }
    }
    out
}

/// Parses a CSV body produced by [`render_rows`] back into its fields, skipping
/// the comment and column lines.
pub fn csv_records(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

/// Writes to `path`, or to standard output when `path` is `None`.
pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Output {
            path: p.display().to_string(),
            source: e,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Output {
                    path: "<stdout>".into(),
                    source: e,
                })
        }
    }
}
