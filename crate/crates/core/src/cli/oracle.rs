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

//! The `oracle` subcommand: shell-by-shell mode-sum comparison.

use serde::Serialize;

use crate::modesum::{
    box_free_correlation, box_isotropic_check, box_projector_check, box_reduced_integrand_check,
    continuum_free_correlation, max_deviation, relative_frobenius_deviation, ModeSumError, ShellRow,
};

use super::config::{OutputFormat, RunConfig};
use super::run::unix_time;
use super::{output, CliError, OutputTarget, Status};

/// One line of the comparison table. The `free_correlation` line compares
/// Frobenius norms and carries no mode count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleRecord {
    pub term: String,
    pub k_lo: f64,
    pub k_hi: f64,
    pub modes: Option<usize>,
    pub discrete_re: f64,
    pub discrete_im: f64,
    pub analytic_re: f64,
    pub analytic_im: f64,
    pub abs_sum: f64,
    pub deviation: f64,
}

pub const ORACLE_COLUMNS: &str =
    "term,k_lo,k_hi,modes,discrete_re,discrete_im,analytic_re,analytic_im,abs_sum,deviation";

impl From<&ShellRow<f64>> for OracleRecord {
    fn from(r: &ShellRow<f64>) -> Self {
        OracleRecord {
            term: r.term.code().to_string(),
            k_lo: r.k_lo,
            k_hi: r.k_hi,
            modes: Some(r.modes),
            discrete_re: r.discrete.re,
            discrete_im: r.discrete.im,
            analytic_re: r.analytic.re,
            analytic_im: r.analytic.im,
            abs_sum: r.abs_sum,
            deviation: r.deviation,
        }
    }
}

impl OracleRecord {
    fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{:e},{:e},{:e},{:e},{:e},{:e}",
            self.term,
            self.k_lo,
            self.k_hi,
            self.modes.map(|m| m.to_string()).unwrap_or_default(),
            self.discrete_re,
            self.discrete_im,
            self.analytic_re,
            self.analytic_im,
            self.abs_sum,
            self.deviation
        )
    }
}

/// All comparisons for the configured geometry, plus the largest shell deviation.
pub fn compare(config: &RunConfig) -> Result<(Vec<OracleRecord>, f64), ModeSumError> {
    let atoms = config.atom_config();
    let tri = atoms.triangle()?;
    let o = &config.oracle;
    let b = o.box_spec(tri.max_distance());
    let [ra, rb, _] = atoms.positions;
    let mut shells: Vec<ShellRow<f64>> = box_reduced_integrand_check(&b, &atoms, o.shells, o.window)?;
    shells.extend(box_isotropic_check(&b, &(ra - rb), o.shells, o.window)?);
    shells.extend(box_projector_check(&b, o.shells, o.window)?);
    let worst = max_deviation(&shells);
    let mut records: Vec<OracleRecord> = shells.iter().map(OracleRecord::from).collect();

    let discrete = box_free_correlation(&b, &ra, &rb)?;
    let continuum = continuum_free_correlation(&(ra - rb), b.soft_cutoff.unwrap_or(0.0), b.k_max(), &config.quadrature);
    records.push(OracleRecord {
        term: "free_correlation".into(),
        k_lo: 0.0,
        k_hi: b.k_max(),
        modes: None,
        discrete_re: discrete.frobenius_dot(&discrete).sqrt(),
        discrete_im: 0.0,
        analytic_re: continuum.frobenius_dot(&continuum).sqrt(),
        analytic_im: 0.0,
        abs_sum: 0.0,
        deviation: relative_frobenius_deviation(&discrete, &continuum),
    });
    Ok((records, worst))
}

pub fn render(records: &[OracleRecord], format: OutputFormat, header: &str) -> String {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str(&format!("# {header}\n{ORACLE_COLUMNS}\n"));
            for r in records {
                out.push_str(&r.csv_line());
                out.push('\n');
            }
        }
        OutputFormat::JsonLines => {
            out.push_str(&serde_json::json!({ "header": header }).to_string());
            out.push('\n');
            for r in records {
                out.push_str(&serde_json::to_string(r).expect("records serialize"));
                out.push('\n');
            }
        }
    }
    out
}

pub fn oracle(config: &RunConfig, target: &OutputTarget, pool: &rayon::ThreadPool, quiet: bool) -> Result<Status, CliError> {
    let (records, worst) = pool.install(|| compare(config)).map_err(|e| CliError::ConfigInvalid {
        field: "oracle".into(),
        message: e.to_string(),
    })?;
    let threshold = config.oracle.threshold;
    let header = format!(
        "dyncp {} oracle generated_unix={} threshold={}",
        env!("CARGO_PKG_VERSION"),
        unix_time(),
        threshold
    );
    output::write_text(target.path.as_deref(), &render(&records, target.format, &header))?;
    if !quiet {
        eprintln!("largest shell deviation {worst:e} (threshold {threshold})");
    }
    Ok(if worst < threshold { Status::Ok } else { Status::Failed })
}
