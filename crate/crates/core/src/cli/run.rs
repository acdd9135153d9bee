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

//! Sweep evaluation.

use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::AtomConfig;
use crate::potentials::{self, PotentialError, PotentialResult, WARN_REGION_MISMATCH};
use crate::quadrature::{QuadratureError, QuadratureSpec};

use super::config::{Quantity, RunConfig, SweepKind, SweepPoint};
use super::{output, plot, CliError, OutputTarget, Status};

/// One output record. `value`, `error_estimate` and `converged` are empty when
/// the quantity is undefined in the row's causal region.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub ct: f64,
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub region_label: String,
    pub quantity: Quantity,
    /// Factor applied to every position; not part of the CSV columns.
    #[serde(skip)]
    pub scale: f64,
    pub value: Option<f64>,
    pub error_estimate: Option<f64>,
    pub converged: Option<bool>,
    pub warnings: Vec<String>,
    /// Error text for failed points, reported on standard error.
    #[serde(skip)]
    pub message: Option<String>,
}

/// Short code for an error recorded in a row's warnings column.
fn error_code(e: &PotentialError) -> &'static str {
    match e {
        PotentialError::Geometry(_) => "geometry",
        PotentialError::Tensor(_) => "tensor",
        PotentialError::Quadrature(QuadratureError::ExtrapolationUnstable { .. }) => "extrapolation_unstable",
        PotentialError::Quadrature(QuadratureError::Divergent) => "divergent",
        PotentialError::Quadrature(QuadratureError::InvalidSpec(_)) => "invalid_quadrature",
        PotentialError::InvalidTime(_) => "invalid_time",
        PotentialError::RegionMismatch { .. } => WARN_REGION_MISMATCH,
        PotentialError::ImaginaryResidue { .. } => "imaginary_residue",
        PotentialError::Divergent { .. } => "divergent",
    }
}

fn compute(
    quantity: Quantity,
    config: &AtomConfig<f64>,
    ct: f64,
    spec: &QuadratureSpec<f64>,
) -> Result<PotentialResult<f64>, PotentialError> {
    match quantity {
        Quantity::DeltaEC => potentials::delta_e_c(config, ct, spec),
        Quantity::DeltaE3 => potentials::delta_e3_symmetrized(config, ct, spec),
        Quantity::DeltaE3SpacelikeAB => potentials::delta_e3_spacelike_ab(config, ct, spec),
        Quantity::DeltaECPair => potentials::delta_e_c_pair(config, ct, spec),
        Quantity::Static => potentials::static_three_body(config, spec),
        Quantity::All => unreachable!("`all` is expanded before evaluation"),
    }
}

/// Evaluates every requested quantity at one sweep point.
pub fn evaluate_point(
    base: &AtomConfig<f64>,
    point: SweepPoint,
    quantities: &[Quantity],
    spec: &QuadratureSpec<f64>,
) -> Result<Vec<Row>, CliError> {
    let config = if point.scale == 1.0 {
        base.clone()
    } else {
        base.with_scaled_positions(point.scale)
    };
    let tri = config.triangle().map_err(|e| CliError::ConfigInvalid {
        field: "atoms".into(),
        message: e.to_string(),
    })?;
    let region_label = tri.classify(point.ct).label();
    let rows = quantities
        .iter()
        .map(|&quantity| {
            let mut row = Row {
                ct: point.ct,
                alpha: tri.alpha,
                beta: tri.beta,
                gamma: tri.gamma,
                region_label: region_label.clone(),
                quantity,
                scale: point.scale,
                value: None,
                error_estimate: None,
                converged: None,
                warnings: Vec::new(),
                message: None,
            };
            match compute(quantity, &config, point.ct, spec) {
                Ok(r) => {
                    row.value = Some(r.value);
                    row.error_estimate = Some(r.error_estimate);
                    row.converged = Some(r.converged);
                    row.warnings = r.warnings;
                }
                Err(PotentialError::RegionMismatch { .. }) => {
                    row.warnings.push(WARN_REGION_MISMATCH.to_string());
                }
                Err(e) => {
                    row.converged = Some(false);
                    row.warnings.push(error_code(&e).to_string());
                    row.message = Some(e.to_string());
                }
            }
            row
        })
        .collect();
    Ok(rows)
}

/// Evaluates the whole sweep on `pool`. Rows come back in sweep order, with
/// the quantities of one point in their canonical order.
pub fn evaluate(config: &RunConfig, pool: &rayon::ThreadPool) -> Result<Vec<Row>, CliError> {
    let base = config.atom_config();
    let quantities = config.quantity.unwrap_or(Quantity::All).expand();
    let points = config.points();
    let per_point: Vec<Result<Vec<Row>, CliError>> = pool.install(|| {
        points
            .par_iter()
            .map(|&p| evaluate_point(&base, p, &quantities, &config.quadrature))
            .collect()
    });
    let mut rows = Vec::new();
    for r in per_point {
        rows.extend(r?);
    }
    Ok(rows)
}

pub fn unix_time() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

pub fn run(config: &RunConfig, target: &OutputTarget, pool: &rayon::ThreadPool, quiet: bool) -> Result<Status, CliError> {
    if target.plot && target.path.is_none() {
        return Err(CliError::ConfigInvalid {
            field: "output.plot".into(),
            message: "a plot needs an output path".into(),
        });
    }
    let rows = evaluate(config, pool)?;
    let header = format!("dyncp {} run generated_unix={}", env!("CARGO_PKG_VERSION"), unix_time());
    let text = output::render_rows(&rows, target.format, &header);
    output::write_text(target.path.as_deref(), &text)?;
    if target.plot {
        if let Some(path) = &target.path {
            let kind = config.sweep.as_ref().map(|s| s.kind).unwrap_or(SweepKind::Time);
            let svg = plot::render(&rows, kind, &config.atom_config());
            let svg_path = path.with_extension("svg");
            output::write_text(Some(&svg_path), &svg)?;
        }
    }
    let failed = rows.iter().filter(|r| r.converged == Some(false)).count();
    if !quiet {
        for r in rows.iter().filter(|r| r.message.is_some()) {
            eprintln!(
                "ct={} {}: {}",
                r.ct,
                r.quantity,
                r.message.as_deref().unwrap_or_default()
            );
        }
        eprintln!("{} rows, {} not converged", rows.len(), failed);
    }
    Ok(if failed == 0 { Status::Ok } else { Status::Failed })
}
