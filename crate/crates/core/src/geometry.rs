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

//! Three-atom configurations, triangle distances and light-cone classification.
//!
//! Notation follows the usual one for the three-body problem: `alpha = |r_B − r_C|`,
//! `beta = |r_A − r_C|`, `gamma = |r_A − r_B|`. Times enter as `ct` in length units.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::Vec3;
use crate::polarizability::PolarizabilityModel;
use crate::scalar::Scalar;

pub const DEFAULT_EPS_GEOM: f64 = 1e-9;
pub const DEFAULT_EPS_EDGE: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("atoms {first} and {second} are closer than {eps} (separation {separation})")]
    DegenerateGeometry {
        first: Atom,
        second: Atom,
        separation: f64,
        eps: f64,
    },
    #[error("distances ({alpha}, {beta}, {gamma}) violate the triangle inequality")]
    NotATriangle { alpha: f64, beta: f64, gamma: f64 },
    #[error("non-finite coordinate for atom {0}")]
    NonFinite(Atom),
    #[error("ct must be finite and >= 0, got {0}")]
    InvalidTime(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Atom {
    A,
    B,
    C,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Atom::A => "A",
            Atom::B => "B",
            Atom::C => "C",
        };
        f.write_str(s)
    }
}

/// Positions and polarizability models of atoms A, B and C, in that order.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomConfig<T> {
    pub positions: [Vec3<T>; 3],
    pub models: [PolarizabilityModel<T>; 3],
}

impl<T: Scalar> AtomConfig<T> {
    pub fn new(positions: [Vec3<T>; 3], models: [PolarizabilityModel<T>; 3]) -> Self {
        AtomConfig { positions, models }
    }

    /// Three atoms sharing one model.
    pub fn identical(positions: [Vec3<T>; 3], model: PolarizabilityModel<T>) -> Self {
        AtomConfig {
            positions,
            models: [model; 3],
        }
    }

    pub fn position(&self, atom: Atom) -> Vec3<T> {
        self.positions[atom as usize]
    }

    pub fn model(&self, atom: Atom) -> &PolarizabilityModel<T> {
        &self.models[atom as usize]
    }

    /// Relabels atoms so that `responder` plays the role of C, keeping the
    /// cyclic order: C → (A, B, C), A → (B, C, A), B → (C, A, B).
    pub fn with_responder(&self, responder: Atom) -> Self {
        let order = match responder {
            Atom::C => [0, 1, 2],
            Atom::A => [1, 2, 0],
            Atom::B => [2, 0, 1],
        };
        AtomConfig {
            positions: order.map(|i| self.positions[i]),
            models: order.map(|i| self.models[i]),
        }
    }

    /// Relabeling by an arbitrary permutation: new atom `i` is old atom `perm[i]`.
    pub fn permuted(&self, perm: [usize; 3]) -> Self {
        AtomConfig {
            positions: perm.map(|i| self.positions[i]),
            models: perm.map(|i| self.models[i]),
        }
    }

    pub fn with_scaled_polarizabilities(&self, factor: T) -> Self {
        AtomConfig {
            positions: self.positions,
            models: self.models.map(|m| m.scaled(factor)),
        }
    }

    pub fn with_scaled_positions(&self, factor: T) -> Self {
        AtomConfig {
            positions: self.positions.map(|p| p.scale(factor)),
            models: self.models,
        }
    }

    pub fn identical_models(&self) -> bool {
        self.models[0] == self.models[1] && self.models[1] == self.models[2]
    }

    pub fn alpha0_product(&self) -> T {
        self.models.iter().map(|m| m.alpha0()).fold(T::one(), |a, b| a * b)
    }

    pub fn triangle(&self) -> Result<TriangleGeometry<T>, GeometryError> {
        triangle_from_positions(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleGeometry<T> {
    /// |r_B − r_C|
    pub alpha: T,
    /// |r_A − r_C|
    pub beta: T,
    /// |r_A − r_B|
    pub gamma: T,
    /// (r_B − r_C)/alpha
    pub n_bc: Vec3<T>,
    /// (r_A − r_C)/beta
    pub n_ac: Vec3<T>,
    /// (r_A − r_B)/gamma
    pub n_ab: Vec3<T>,
    /// Largest distance equals the sum of the other two within `eps_edge`.
    pub collinear: bool,
}

impl<T: Scalar> TriangleGeometry<T> {
    pub fn from_positions(positions: &[Vec3<T>; 3], eps_geom: T) -> Result<Self, GeometryError> {
        for (i, p) in positions.iter().enumerate() {
            if p.0.iter().any(|x| !x.is_finite()) {
                return Err(GeometryError::NonFinite([Atom::A, Atom::B, Atom::C][i]));
            }
        }
        let [ra, rb, rc] = *positions;
        let pair = |x: Vec3<T>, y: Vec3<T>, a1: Atom, a2: Atom| {
            let d = x - y;
            let n = d.norm();
            if n <= eps_geom {
                Err(GeometryError::DegenerateGeometry {
                    first: a1,
                    second: a2,
                    separation: n.to_f64().unwrap_or(f64::NAN),
                    eps: eps_geom.to_f64().unwrap_or(f64::NAN),
                })
            } else {
                Ok((d.scale(T::one() / n), n))
            }
        };
        let (n_ab, gamma) = pair(ra, rb, Atom::A, Atom::B)?;
        let (n_bc, alpha) = pair(rb, rc, Atom::B, Atom::C)?;
        let (n_ac, beta) = pair(ra, rc, Atom::A, Atom::C)?;
        let longest = alpha.max(beta).max(gamma);
        let excess = alpha + beta + gamma - longest - longest;
        Ok(TriangleGeometry {
            alpha,
            beta,
            gamma,
            n_bc,
            n_ac,
            n_ab,
            collinear: excess <= T::lit(DEFAULT_EPS_EDGE) * longest.max(T::one()),
        })
    }

    pub fn max_distance(&self) -> T {
        self.alpha.max(self.beta).max(self.gamma)
    }

    pub fn min_distance(&self) -> T {
        self.alpha.min(self.beta).min(self.gamma)
    }

    pub fn classify(&self, ct: T) -> CausalRegion<T> {
        CausalRegion::from_distances(self.alpha, self.beta, self.gamma, ct, T::lit(DEFAULT_EPS_EDGE))
    }
}

/// Distances and directions of the configured triangle.
pub fn triangle_from_positions<T: Scalar>(
    config: &AtomConfig<T>,
) -> Result<TriangleGeometry<T>, GeometryError> {
    TriangleGeometry::from_positions(&config.positions, T::lit(DEFAULT_EPS_GEOM))
}

/// Checks the triangle inequality for raw distances; collinear is accepted.
pub fn check_triangle<T: Scalar>(alpha: T, beta: T, gamma: T) -> Result<(), GeometryError> {
    let slack = T::lit(DEFAULT_EPS_EDGE) * (alpha + beta + gamma);
    let ok = alpha > T::zero()
        && beta > T::zero()
        && gamma > T::zero()
        && alpha <= beta + gamma + slack
        && beta <= alpha + gamma + slack
        && gamma <= alpha + beta + slack;
    if ok {
        Ok(())
    } else {
        Err(GeometryError::NotATriangle {
            alpha: alpha.to_f64().unwrap_or(f64::NAN),
            beta: beta.to_f64().unwrap_or(f64::NAN),
            gamma: gamma.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Outcome of comparing a quantity against a threshold, with a tolerance band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Below,
    At,
    Above,
}

impl Side {
    /// Classifies `margin` against zero with a tolerance band of half-width `eps`.
    pub fn of<T: Scalar>(margin: T, eps: T) -> Self {
        if margin.abs() <= eps {
            Side::At
        } else if margin > T::zero() {
            Side::Above
        } else {
            Side::Below
        }
    }

    /// The sign function with the band mapped to zero.
    pub fn signum<T: Scalar>(&self) -> T {
        match self {
            Side::Below => -T::one(),
            Side::At => T::zero(),
            Side::Above => T::one(),
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            Side::Below => "below",
            Side::At => "at",
            Side::Above => "above",
        }
    }
}

/// Signed comparisons between `ct` and the thresholds that gate the
/// time-dependent energies. All margins are in length units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Margins<T> {
    pub ct_minus_alpha: T,
    pub ct_minus_beta: T,
    pub ct_minus_gamma: T,
    /// γ + ct − α
    pub gamma_ct_minus_alpha: T,
    /// γ + ct − β
    pub gamma_ct_minus_beta: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CausalRegion<T> {
    pub ct: T,
    /// ct > β: A's light cone has reached C.
    pub c_sees_a: bool,
    /// ct > α
    pub c_sees_b: bool,
    /// ct > γ
    pub a_sees_b: bool,
    /// α compared with γ + ct.
    pub window_alpha: Side,
    /// β compared with γ + ct.
    pub window_beta: Side,
    pub margins: Margins<T>,
    /// Some comparison fell inside the edge tolerance.
    pub on_edge: bool,
}

impl<T: Scalar> CausalRegion<T> {
    /// Classification from raw distances; no triangle check is made.
    pub fn from_distances(alpha: T, beta: T, gamma: T, ct: T, eps_edge: T) -> Self {
        let margins = Margins {
            ct_minus_alpha: ct - alpha,
            ct_minus_beta: ct - beta,
            ct_minus_gamma: ct - gamma,
            gamma_ct_minus_alpha: gamma + ct - alpha,
            gamma_ct_minus_beta: gamma + ct - beta,
        };
        let sees = |m: T| Side::of(m, eps_edge) == Side::Above;
        let window_alpha = Side::of(-margins.gamma_ct_minus_alpha, eps_edge);
        let window_beta = Side::of(-margins.gamma_ct_minus_beta, eps_edge);
        let on_edge = [
            margins.ct_minus_alpha,
            margins.ct_minus_beta,
            margins.ct_minus_gamma,
            margins.gamma_ct_minus_alpha,
            margins.gamma_ct_minus_beta,
        ]
        .iter()
        .any(|m| m.abs() <= eps_edge);
        CausalRegion {
            ct,
            c_sees_a: sees(margins.ct_minus_beta),
            c_sees_b: sees(margins.ct_minus_alpha),
            a_sees_b: sees(margins.ct_minus_gamma),
            window_alpha,
            window_beta,
            margins,
            on_edge,
        }
    }

    /// α, β < ct < γ: C inside both light cones, A and B space-like.
    pub fn is_spacelike_ab(&self) -> bool {
        self.c_sees_a && self.c_sees_b && !self.a_sees_b && !self.edge_on_light_cones()
    }

    /// α, β > ct > γ: A and B connected, both outside C's light cone.
    pub fn is_outside_c_connected_ab(&self) -> bool {
        !self.c_sees_a && !self.c_sees_b && self.a_sees_b && !self.edge_on_light_cones()
    }

    /// All three pairs space-like.
    pub fn is_fully_spacelike(&self) -> bool {
        !self.c_sees_a && !self.c_sees_b && !self.a_sees_b
    }

    fn edge_on_light_cones(&self) -> bool {
        let eps = T::lit(DEFAULT_EPS_EDGE);
        self.margins.ct_minus_alpha.abs() <= eps
            || self.margins.ct_minus_beta.abs() <= eps
            || self.margins.ct_minus_gamma.abs() <= eps
    }

    /// Compact text label, free of commas: e.g. `CA:in CB:in AB:out wa:below wb:below`.
    pub fn label(&self) -> String {
        let eps = T::lit(DEFAULT_EPS_EDGE);
        let cone = |m: T| match Side::of(m, eps) {
            Side::Above => "in",
            Side::At => "edge",
            Side::Below => "out",
        };
        format!(
            "CA:{} CB:{} AB:{} wa:{} wb:{}",
            cone(self.margins.ct_minus_beta),
            cone(self.margins.ct_minus_alpha),
            cone(self.margins.ct_minus_gamma),
            self.window_alpha.code(),
            self.window_beta.code()
        )
    }
}
