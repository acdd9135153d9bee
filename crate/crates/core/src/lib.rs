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

//! Dynamical three-body Casimir-Polder energies.
//!
//! Three polarizable atoms are switched on at `t = 0` and dress themselves with
//! virtual photons. The crate evaluates the resulting time-dependent three-body
//! energies, the stationary energy they relax to, and brute-force mode sums that
//! validate the analytic reductions.
//!
//! The numerical core is generic over the scalar type (`f32` or `f64`, see
//! [`scalar::Scalar`]); the aliases at the crate root fix it to `f64`.
//!
//! ```
//! use dyncp::{potentials, AtomConfig, PolarizabilityModel, QuadratureSpec, Vec3};
//!
//! let model = PolarizabilityModel::new_static(1.0).unwrap();
//! let config = AtomConfig::identical(
//!     [
//!         Vec3::new(0.0, 0.0, 0.0),
//!         Vec3::new(1.0, 0.0, 0.0),
//!         Vec3::new(0.5, 3f64.sqrt() / 2.0, 0.0),
//!     ],
//!     model,
//! );
//! let spec = QuadratureSpec::default();
//! let early = potentials::delta_e3_symmetrized(&config, 0.5, &spec).unwrap();
//! assert_eq!(early.value, 0.0);
//! let late = potentials::delta_e3_symmetrized(&config, 100.0, &spec).unwrap();
//! let stationary = potentials::static_three_body(&config, &spec).unwrap();
//! assert!((late.value - stationary.value).abs() < 1e-9 * stationary.value.abs());
//! ```

pub mod cli;
pub mod geometry;
pub mod linalg;
pub mod modesum;
pub mod polarizability;
pub mod potentials;
pub mod quadrature;
pub mod scalar;
pub mod tensors;

pub type Vec3 = linalg::Vec3<f64>;
pub type Mat3 = linalg::Mat3<f64>;
pub type AtomConfig = geometry::AtomConfig<f64>;
pub type TriangleGeometry = geometry::TriangleGeometry<f64>;
pub type CausalRegion = geometry::CausalRegion<f64>;
pub type PolarizabilityModel = polarizability::PolarizabilityModel<f64>;
pub type DipoleTensor = tensors::DipoleTensor<f64>;
pub type QuadratureSpec = quadrature::QuadratureSpec<f64>;
pub type PotentialResult = potentials::PotentialResult<f64>;
pub type BoxSpec = modesum::BoxSpec<f64>;
