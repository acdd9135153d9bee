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

//! Dynamical polarizability models on the real and imaginary frequency axes.
//!
//! Frequencies are wavenumbers (ω/c) in inverse length units; polarizabilities
//! are volumes. Both models are isotropic.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

/// Relative distance from the resonance, in units of `k0`, below which an
/// undamped model refuses real-axis evaluation.
pub const DEFAULT_POLE_EPS: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolarizabilityError {
    #[error("invalid polarizability parameter {name} = {value} ({reason})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("undamped resonance at k0 = {k0} evaluated on the real axis at k = {k}")]
    PoleOnAxis { k0: f64, k: f64 },
    #[error("negative wavenumber {0}")]
    NegativeWavenumber(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PolarizabilityModel<T> {
    /// Frequency independent response `α(k) = α0`.
    Static { alpha0: T },
    /// Damped single oscillator `α(k) = α0 k0² / (k0² − k² − i Γ k)`.
    SingleResonance { alpha0: T, k0: T, gamma_damp: T },
}

fn check_positive<T: Scalar>(name: &'static str, v: T) -> Result<(), PolarizabilityError> {
    if v.is_finite() && v > T::zero() {
        Ok(())
    } else {
        Err(PolarizabilityError::InvalidParameter {
            name,
            value: v.to_f64().unwrap_or(f64::NAN),
            reason: "must be finite and > 0",
        })
    }
}

impl<T: Scalar> PolarizabilityModel<T> {
    pub fn new_static(alpha0: T) -> Result<Self, PolarizabilityError> {
        let m = PolarizabilityModel::Static { alpha0 };
        m.validate()?;
        Ok(m)
    }

    pub fn single_resonance(alpha0: T, k0: T, gamma_damp: T) -> Result<Self, PolarizabilityError> {
        let m = PolarizabilityModel::SingleResonance {
            alpha0,
            k0,
            gamma_damp,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), PolarizabilityError> {
        match *self {
            PolarizabilityModel::Static { alpha0 } => check_positive("alpha0", alpha0),
            PolarizabilityModel::SingleResonance {
                alpha0,
                k0,
                gamma_damp,
            } => {
                check_positive("alpha0", alpha0)?;
                check_positive("k0", k0)?;
                if !(gamma_damp.is_finite() && gamma_damp >= T::zero()) {
                    return Err(PolarizabilityError::InvalidParameter {
                        name: "gamma_damp",
                        value: gamma_damp.to_f64().unwrap_or(f64::NAN),
                        reason: "must be finite and >= 0",
                    });
                }
                Ok(())
            }
        }
    }

    pub fn alpha0(&self) -> T {
        match *self {
            PolarizabilityModel::Static { alpha0 } => alpha0,
            PolarizabilityModel::SingleResonance { alpha0, .. } => alpha0,
        }
    }

    /// Same model with `alpha0` multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        match *self {
            PolarizabilityModel::Static { alpha0 } => PolarizabilityModel::Static {
                alpha0: alpha0 * factor,
            },
            PolarizabilityModel::SingleResonance {
                alpha0,
                k0,
                gamma_damp,
            } => PolarizabilityModel::SingleResonance {
                alpha0: alpha0 * factor,
                k0,
                gamma_damp,
            },
        }
    }

    /// `α(k)/α0` continued to complex `k`. Analytic in the closed upper half
    /// plane for `Γ > 0` and in the open upper half plane for `Γ = 0`.
    #[inline]
    pub fn shape(&self, k: Complex<T>) -> Complex<T> {
        match *self {
            PolarizabilityModel::Static { .. } => Complex::new(T::one(), T::zero()),
            PolarizabilityModel::SingleResonance { k0, gamma_damp, .. } => {
                let k0sq = k0 * k0;
                let denom = Complex::new(k0sq, T::zero())
                    - k * k
                    - Complex::new(T::zero(), gamma_damp) * k;
                Complex::new(k0sq, T::zero()) / denom
            }
        }
    }

    /// `α(iu)/α0`, real and positive.
    #[inline]
    pub fn shape_imag(&self, u: T) -> T {
        match *self {
            PolarizabilityModel::Static { .. } => T::one(),
            PolarizabilityModel::SingleResonance { k0, gamma_damp, .. } => {
                let k0sq = k0 * k0;
                k0sq / (k0sq + u * u + gamma_damp * u)
            }
        }
    }

    /// Polarizability on the real frequency axis.
    pub fn alpha_real(&self, k: T) -> Result<Complex<T>, PolarizabilityError> {
        if k < T::zero() {
            return Err(PolarizabilityError::NegativeWavenumber(
                k.to_f64().unwrap_or(f64::NAN),
            ));
        }
        if let PolarizabilityModel::SingleResonance { k0, gamma_damp, .. } = *self {
            if gamma_damp == T::zero() && (k - k0).abs() < T::lit(DEFAULT_POLE_EPS) * k0 {
                return Err(PolarizabilityError::PoleOnAxis {
                    k0: k0.to_f64().unwrap_or(f64::NAN),
                    k: k.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(self.shape(Complex::new(k, T::zero())) * self.alpha0())
    }

    /// Polarizability at imaginary frequency `iu`.
    pub fn alpha_imag(&self, u: T) -> T {
        self.alpha0() * self.shape_imag(u)
    }

    /// Largest real part of any singularity of `shape`; zero for the static model.
    pub fn pole_real_bound(&self) -> T {
        match *self {
            PolarizabilityModel::Static { .. } => T::zero(),
            PolarizabilityModel::SingleResonance { k0, .. } => k0,
        }
    }

    /// Wavenumber scale over which `shape` varies, if any.
    pub fn frequency_scale(&self) -> Option<T> {
        match *self {
            PolarizabilityModel::Static { .. } => None,
            PolarizabilityModel::SingleResonance { k0, .. } => Some(k0),
        }
    }

    /// Power of `1/k` with which `shape` decays at large `|k|`.
    pub fn decay_order(&self) -> i32 {
        match self {
            PolarizabilityModel::Static { .. } => 0,
            PolarizabilityModel::SingleResonance { .. } => 2,
        }
    }
}
