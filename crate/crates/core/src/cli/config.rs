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

//! The run configuration file.
//!
//! A configuration is a TOML document. Unknown keys are rejected at every level
//! so that a misspelled tolerance name cannot silently fall back to a default.
//! The grammar is documented in the repository README.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::geometry::AtomConfig;
use crate::linalg::Vec3;
use crate::modesum::{BoxSpec, ShellWindow};
use crate::polarizability::PolarizabilityModel;
use crate::quadrature::QuadratureSpec;

use super::CliError;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub atoms: Vec<AtomEntry>,
    #[serde(default)]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub quantity: Option<Quantity>,
    #[serde(default)]
    pub quadrature: QuadratureSpec<f64>,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub oracle: OracleConfig,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomEntry {
    pub position: [f64; 3],
    pub model: PolarizabilityModel<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// `values` are times `ct` at the configured geometry.
    Time,
    /// `values` are scale factors applied to every position at fixed `ct`.
    SideScaling,
    /// Every pair of `values` (times) and `scales`.
    CustomGrid,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub kind: SweepKind,
    pub values: Vec<f64>,
    /// Scale factors of a custom grid.
    #[serde(default)]
    pub scales: Option<Vec<f64>>,
    /// Fixed time of a side-scaling sweep.
    #[serde(default)]
    pub ct: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize, Serialize)]
pub enum Quantity {
    #[serde(rename = "delta_E_C")]
    DeltaEC,
    #[serde(rename = "delta_E3")]
    DeltaE3,
    #[serde(rename = "delta_E3_spacelike_AB")]
    DeltaE3SpacelikeAB,
    #[serde(rename = "delta_E_C_pair")]
    DeltaECPair,
    #[serde(rename = "static")]
    Static,
    #[serde(rename = "all")]
    All,
}

impl Quantity {
    pub const EACH: [Quantity; 5] = [
        Quantity::DeltaEC,
        Quantity::DeltaE3,
        Quantity::DeltaE3SpacelikeAB,
        Quantity::DeltaECPair,
        Quantity::Static,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Quantity::DeltaEC => "delta_E_C",
            Quantity::DeltaE3 => "delta_E3",
            Quantity::DeltaE3SpacelikeAB => "delta_E3_spacelike_AB",
            Quantity::DeltaECPair => "delta_E_C_pair",
            Quantity::Static => "static",
            Quantity::All => "all",
        }
    }

    /// The concrete quantities this request expands to.
    pub fn expand(&self) -> Vec<Quantity> {
        match self {
            Quantity::All => Quantity::EACH.to_vec(),
            q => vec![*q],
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
pub enum OutputFormat {
    #[default]
    #[serde(rename = "csv")]
    Csv,
    #[serde(rename = "json-lines")]
    JsonLines,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json-lines" => Ok(OutputFormat::JsonLines),
            other => Err(format!("unknown format `{other}`, expected csv or json-lines")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub path: Option<String>,
    #[serde(default)]
    pub format: OutputFormat,
    #[serde(default)]
    pub plot: bool,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OracleConfig {
    /// Box side; 40 times the largest distance when absent.
    #[serde(rename = "L")]
    pub l: Option<f64>,
    pub n_max: usize,
    pub eta: Option<f64>,
    pub shells: usize,
    pub threshold: f64,
    pub window: ShellWindow,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            l: None,
            n_max: 60,
            eta: None,
            shells: 8,
            threshold: 0.02,
            window: ShellWindow::Tapered,
        }
    }
}

impl OracleConfig {
    pub fn box_spec(&self, max_distance: f64) -> BoxSpec<f64> {
        BoxSpec {
            l: self.l.unwrap_or(40.0 * max_distance),
            n_max: self.n_max,
            soft_cutoff: self.eta,
        }
    }
}

/// One evaluation point: a time and a factor applied to every position.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub ct: f64,
    pub scale: f64,
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::ConfigInvalid {
        field: field.into(),
        message: message.into(),
    }
}

fn check_values(field: &str, values: &[f64], positive: bool) -> Result<(), CliError> {
    if values.is_empty() {
        return Err(invalid(field, "must not be empty"));
    }
    for (i, &v) in values.iter().enumerate() {
        let ok = v.is_finite() && if positive { v > 0.0 } else { v >= 0.0 };
        if !ok {
            let bound = if positive { "> 0" } else { ">= 0" };
            return Err(invalid(format!("{field}[{i}]"), format!("{v} must be finite and {bound}")));
        }
        if i > 0 && v <= values[i - 1] {
            return Err(invalid(format!("{field}[{i}]"), "values must be strictly increasing"));
        }
    }
    Ok(())
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let config: RunConfig = toml::from_str(text).map_err(|e| CliError::ConfigParse(e.to_string()))?;
        config.validate_common()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::ConfigRead {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::from_toml(&text)
    }

    /// Checks shared by both subcommands.
    fn validate_common(&self) -> Result<(), CliError> {
        if self.atoms.len() != 3 {
            return Err(invalid("atoms", format!("expected 3 entries, found {}", self.atoms.len())));
        }
        for (i, a) in self.atoms.iter().enumerate() {
            a.model
                .validate()
                .map_err(|e| invalid(format!("atoms[{i}].model"), e.to_string()))?;
        }
        self.atom_config()
            .triangle()
            .map_err(|e| invalid("atoms", e.to_string()))?;
        self.quadrature
            .validate()
            .map_err(|e| invalid("quadrature", e.to_string()))?;
        Ok(())
    }

    /// Checks that only matter for `run`.
    pub fn validate_run(&self) -> Result<(), CliError> {
        let sweep = self.sweep.as_ref().ok_or_else(|| invalid("sweep", "missing section"))?;
        self.quantity.ok_or_else(|| invalid("quantity", "missing key"))?;
        match sweep.kind {
            SweepKind::Time => {
                check_values("sweep.values", &sweep.values, false)?;
                if sweep.scales.is_some() || sweep.ct.is_some() {
                    return Err(invalid("sweep", "a time sweep takes only `values`"));
                }
            }
            SweepKind::SideScaling => {
                check_values("sweep.values", &sweep.values, true)?;
                let ct = sweep.ct.ok_or_else(|| invalid("sweep.ct", "required for side_scaling"))?;
                if !(ct.is_finite() && ct >= 0.0) {
                    return Err(invalid("sweep.ct", format!("{ct} must be finite and >= 0")));
                }
                if sweep.scales.is_some() {
                    return Err(invalid("sweep.scales", "only allowed for custom_grid"));
                }
            }
            SweepKind::CustomGrid => {
                check_values("sweep.values", &sweep.values, false)?;
                let scales = sweep
                    .scales
                    .as_ref()
                    .ok_or_else(|| invalid("sweep.scales", "required for custom_grid"))?;
                check_values("sweep.scales", scales, true)?;
                if sweep.ct.is_some() {
                    return Err(invalid("sweep.ct", "only allowed for side_scaling"));
                }
            }
        }
        Ok(())
    }

    pub fn validate_oracle(&self) -> Result<(), CliError> {
        let o = &self.oracle;
        if o.shells == 0 || o.shells >= crate::modesum::MAX_SHELLS {
            return Err(invalid(
                "oracle.shells",
                format!("must be between 1 and {}", crate::modesum::MAX_SHELLS - 1),
            ));
        }
        if !(o.threshold.is_finite() && o.threshold > 0.0) {
            return Err(invalid("oracle.threshold", "must be finite and > 0"));
        }
        let max_distance = self.atom_config().triangle().map_err(|e| invalid("atoms", e.to_string()))?.max_distance();
        o.box_spec(max_distance)
            .validate()
            .map_err(|e| invalid("oracle", e.to_string()))
    }

    pub fn atom_config(&self) -> AtomConfig<f64> {
        let p = |i: usize| {
            let [x, y, z] = self.atoms[i].position;
            Vec3::new(x, y, z)
        };
        AtomConfig::new(
            [p(0), p(1), p(2)],
            [self.atoms[0].model, self.atoms[1].model, self.atoms[2].model],
        )
    }

    /// Sweep points in output order. Call after [`RunConfig::validate_run`].
    pub fn points(&self) -> Vec<SweepPoint> {
        let Some(sweep) = &self.sweep else {
            return Vec::new();
        };
        match sweep.kind {
            SweepKind::Time => sweep.values.iter().map(|&ct| SweepPoint { ct, scale: 1.0 }).collect(),
            SweepKind::SideScaling => {
                let ct = sweep.ct.unwrap_or(0.0);
                sweep.values.iter().map(|&scale| SweepPoint { ct, scale }).collect()
            }
            SweepKind::CustomGrid => {
                let scales = sweep.scales.as_deref().unwrap_or(&[]);
                scales
                    .iter()
                    .flat_map(|&scale| sweep.values.iter().map(move |&ct| SweepPoint { ct, scale }))
                    .collect()
            }
        }
    }
}
