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

//! Time-dependent three-body Casimir-Polder energies.
//!
//! Units: ħ = c = 1, lengths in the user's unit `L0`, polarizabilities in `L0³`,
//! energies in `ħc/L0`.
//!
//! # Response energy of one atom
//!
//! After the mode sum is converted to a continuum integral, the polarization sum
//! is applied and the angular integral is done analytically, the energy of atom C
//! becomes a single wavenumber integral
//!
//! ```text
//! ΔE_C = −(1/π) αA0 αB0 αC0 Re ∫₀^∞ dk s(k) { θβ θα X(G^β(k), G^α(−k), S^γ(k))
//!                                         + θβ X(G^β(k), S^α(k), H^γ_β(k))
//!                                         + θα X(G^α(k), S^β(k), H^γ_α(k)) }
//! ```
//!
//! with `s(k)` the product of the three normalized polarizabilities,
//! `X(T1, T2, T3) = Σ T1_ℓm T2_ℓn T3_mn`, `G^R(k) = F[e^{ikR}/R]` along the
//! corresponding side, `S = F[sin(kR)/R]` and
//! `H^γ_β = ½(1 − sgn(γ−β+ct)) G^γ(−k) + ½(1 − sgn(γ+β−ct)) G^γ(k)`.
//!
//! Every tensor is `e^{±ikR}` times a quadratic matrix polynomial in `k`, so the
//! integrand is a finite sum of `s(k)·p(k)·e^{ika}` groups. Each group is integrated
//! along a deformed path (see [`crate::quadrature::integrate_fourier_contour`]),
//! which reproduces the exponentially damped limit exactly.
//!
//! The relative sign between the first term and the other two is `+`. With that
//! sign every `ΔE_i` tends to the stationary three-body energy at large times.

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::geometry::{AtomConfig, CausalRegion, GeometryError, Side, TriangleGeometry, DEFAULT_EPS_EDGE};
use crate::linalg::{Mat3, Vec3};
use crate::polarizability::PolarizabilityModel;
use crate::quadrature::{
    integrate_fourier_contour, integrate_interval, integrate_oscillatory_regularized, integrate_semi_infinite, IntegralResult, QuadratureError, QuadratureSpec,
};
use crate::scalar::{i_unit, re, Scalar};
use crate::tensors::{
    angular_projector_integral, contract_polynomials, pair_product, radiative_amplitude, PhaseAmplitude, Projectors,
    TensorError,
};

/// Upper limit used on imaginary-axis integrals whose exponent vanishes
/// (collinear atoms with a non-decaying polarizability product).
pub const COLLINEAR_U_CAP: f64 = 1e3;

/// Relative size of an imaginary part that is tolerated in a quantity that is
/// real by construction.
pub const IMAGINARY_RESIDUE_TOL: f64 = 1e-8;

pub const WARN_REGION_MISMATCH: &str = "region_mismatch";
pub const WARN_NON_IDENTICAL: &str = "non_identical_atoms";
pub const WARN_U_CAP: &str = "collinear_u_cap";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PotentialError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("ct must be finite and >= 0, got {0}")]
    InvalidTime(f64),
    #[error("region {label} does not satisfy {required}")]
    RegionMismatch { required: &'static str, label: String },
    #[error("imaginary residue {residue:e} exceeds tolerance relative to {value:e}")]
    ImaginaryResidue { value: f64, residue: f64 },
    #[error("integrand group with phase {phase:e} does not decay along any path")]
    Divergent { phase: f64 },
}

/// Per-atom response energies; the symmetrized energy is their mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Breakdown<T> {
    pub delta_e_a: T,
    pub delta_e_b: T,
    pub delta_e_c: T,
}

impl<T: Scalar> Breakdown<T> {
    pub fn mean(&self) -> T {
        (self.delta_e_a + self.delta_e_b + self.delta_e_c) / T::lit(3.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialResult<T> {
    pub value: T,
    pub error_estimate: T,
    pub region: CausalRegion<T>,
    pub breakdown: Option<Breakdown<T>>,
    /// The time argument, `ct` in `L0`. Infinite for the stationary energy.
    pub ct: T,
    pub converged: bool,
    pub warnings: Vec<String>,
}

impl<T: Scalar> PotentialResult<T> {
    fn exact_zero(region: CausalRegion<T>, ct: T) -> Self {
        PotentialResult {
            value: T::zero(),
            error_estimate: T::zero(),
            region,
            breakdown: None,
            ct,
            converged: true,
            warnings: Vec::new(),
        }
    }
}

fn checked_time<T: Scalar>(ct: T) -> Result<T, PotentialError> {
    if ct.is_finite() && ct >= T::zero() {
        Ok(ct)
    } else {
        Err(PotentialError::InvalidTime(ct.to_f64().unwrap_or(f64::NAN)))
    }
}

fn edge_sgn<T: Scalar>(x: T) -> T {
    Side::of(x, T::lit(DEFAULT_EPS_EDGE)).signum()
}

/// A side of the triangle with both phase orientations precomputed.
struct Leg<T> {
    plus: PhaseAmplitude<T>,
    minus: PhaseAmplitude<T>,
}

impl<T: Scalar> Leg<T> {
    fn new(r: &Vec3<T>) -> Result<Self, TensorError> {
        Ok(Leg {
            plus: PhaseAmplitude::new(r, 1)?,
            minus: PhaseAmplitude::new(r, -1)?,
        })
    }

    fn get(&self, sign: i8) -> &PhaseAmplitude<T> {
        if sign > 0 {
            &self.plus
        } else {
            &self.minus
        }
    }
}

/// A kernel as a combination `Σ w·F[e^{iskR}/R]`.
type Kernel<T> = Vec<(i8, Complex<T>)>;

fn kernel_out<T: Scalar>() -> Kernel<T> {
    vec![(1, re(T::one()))]
}

fn kernel_in<T: Scalar>() -> Kernel<T> {
    vec![(-1, re(T::one()))]
}

/// F[sin(kR)/R] = (G(k) − G(−k)) / 2i
fn kernel_sine<T: Scalar>() -> Kernel<T> {
    let w = Complex::new(T::zero(), -T::lit(0.5));
    vec![(1, w), (-1, -w)]
}

fn kernel_gated<T: Scalar>(c_in: T, c_out: T) -> Kernel<T> {
    vec![(-1, re(c_in)), (1, re(c_out))]
}

/// `p(k)·e^{ika}` with `p` of degree six.
#[derive(Debug, Clone, Copy)]
struct Group<T> {
    phase: T,
    coeffs: [Complex<T>; 7],
}

impl<T: Scalar> Group<T> {
    fn eval_poly(&self, k: Complex<T>) -> Complex<T> {
        self.coeffs.iter().rev().fold(Complex::zero(), |acc, &c| acc * k + c)
    }

    /// Size of the polynomial at wavenumber `1/length`.
    fn weight(&self, length: T) -> T {
        let inv = T::one() / length;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.norm() * inv.powi(n as i32))
            .fold(T::zero(), |a, b| a + b)
    }
}

fn push_products<T: Scalar>(
    out: &mut Vec<Group<T>>,
    weight: Complex<T>,
    terms: [(&Kernel<T>, &Leg<T>); 3],
) {
    let [(k1, l1), (k2, l2), (k3, l3)] = terms;
    for &(s1, w1) in k1 {
        for &(s2, w2) in k2 {
            for &(s3, w3) in k3 {
                let w = weight * w1 * w2 * w3;
                if w.is_zero() {
                    continue;
                }
                let (a1, a2, a3) = (l1.get(s1), l2.get(s2), l3.get(s3));
                let mut coeffs = contract_polynomials(&a1.coeffs, &a2.coeffs, &a3.coeffs);
                for c in coeffs.iter_mut() {
                    *c = *c * w;
                }
                out.push(Group {
                    phase: a1.phase() + a2.phase() + a3.phase(),
                    coeffs,
                });
            }
        }
    }
}

/// Sums groups whose phases agree to rounding.
fn merge_groups<T: Scalar>(mut groups: Vec<Group<T>>, length: T) -> Vec<Group<T>> {
    groups.sort_by(|a, b| a.phase.partial_cmp(&b.phase).unwrap_or(std::cmp::Ordering::Equal));
    let tol = T::lit(1e-12) * length;
    let mut merged: Vec<Group<T>> = Vec::with_capacity(groups.len());
    for g in groups {
        match merged.last_mut() {
            Some(last) if (g.phase - last.phase).abs() <= tol => {
                for (c, d) in last.coeffs.iter_mut().zip(g.coeffs.iter()) {
                    *c = *c + *d;
                }
            }
            _ => merged.push(g),
        }
    }
    merged
}

fn product_shape<T: Scalar>(models: &[PolarizabilityModel<T>; 3], k: Complex<T>) -> Complex<T> {
    models[0].shape(k) * models[1].shape(k) * models[2].shape(k)
}

fn product_shape_imag<T: Scalar>(models: &[PolarizabilityModel<T>; 3], u: T) -> T {
    models[0].shape_imag(u) * models[1].shape_imag(u) * models[2].shape_imag(u)
}

/// Right edge of the region that may hold polarizability poles off the real axis.
///
/// Only damped resonances count. Undamped poles sit on the real axis, and the
/// integral there is defined by rotating each group straight onto its imaginary
/// half-axis, which passes above the poles for positive phases and below them for
/// negative ones. That is the prescription whose large-time limit is the
/// stationary imaginary-frequency energy; the causal detour used for damped
/// models would add oscillating resonance terms in the limit of vanishing damping.
fn pole_bound<T: Scalar>(models: &[PolarizabilityModel<T>; 3]) -> T {
    let k0 = models
        .iter()
        .map(|m| match *m {
            PolarizabilityModel::SingleResonance { k0, gamma_damp, .. } if gamma_damp > T::zero() => k0,
            _ => T::zero(),
        })
        .fold(T::zero(), |a, b| a.max(b));
    T::lit(2.0) * k0
}

/// ∫₀^∞ s(k) Σ_g p_g(k) e^{i k a_g} dk over all groups.
fn integrate_groups<T: Scalar>(
    groups: &[Group<T>],
    models: &[PolarizabilityModel<T>; 3],
    length: T,
    spec: &QuadratureSpec<T>,
) -> Result<IntegralResult<Complex<T>, T>, PotentialError> {
    let scale = groups.iter().map(|g| g.weight(length)).fold(T::zero(), |a, b| a.max(b));
    let negligible = T::lit(1e-12) * scale;
    let phase_tol = T::lit(1e-12) * length;
    let bound = pole_bound(models);
    let mut total = IntegralResult::zero();
    for g in groups {
        if g.weight(length) <= negligible {
            continue;
        }
        if g.phase.abs() <= phase_tol {
            return Err(PotentialError::Divergent {
                phase: g.phase.to_f64().unwrap_or(f64::NAN),
            });
        }
        let integrand = |k: Complex<T>| product_shape(models, k) * g.eval_poly(k);
        let r = integrate_fourier_contour(integrand, g.phase, T::zero(), bound, spec)?;
        total = total.combine(r);
    }
    Ok(total)
}

/// Legs for the responder C: along r_AC (β), r_BC (α) and r_AB (γ).
fn legs<T: Scalar>(config: &AtomConfig<T>) -> Result<[Leg<T>; 3], PotentialError> {
    let [ra, rb, rc] = config.positions;
    Ok([Leg::new(&(ra - rc))?, Leg::new(&(rb - rc))?, Leg::new(&(ra - rb))?])
}

fn response_groups<T: Scalar>(
    config: &AtomConfig<T>,
    geom: &TriangleGeometry<T>,
    ct: T,
) -> Result<Vec<Group<T>>, PotentialError> {
    let [leg_b, leg_a, leg_g] = legs(config)?;
    let (alpha, beta, gamma) = (geom.alpha, geom.beta, geom.gamma);
    let half = T::lit(0.5);
    let mut groups = Vec::with_capacity(12);
    let one = re(T::one());
    push_products(
        &mut groups,
        one,
        [(&kernel_out(), &leg_b), (&kernel_in(), &leg_a), (&kernel_sine(), &leg_g)],
    );
    let h_beta = kernel_gated(
        half * (T::one() - edge_sgn(gamma - beta + ct)),
        half * (T::one() - edge_sgn(gamma + beta - ct)),
    );
    push_products(
        &mut groups,
        one,
        [(&kernel_out(), &leg_b), (&kernel_sine(), &leg_a), (&h_beta, &leg_g)],
    );
    let h_alpha = kernel_gated(
        half * (T::one() - edge_sgn(gamma - alpha + ct)),
        half * (T::one() - edge_sgn(gamma + alpha - ct)),
    );
    push_products(
        &mut groups,
        one,
        [(&kernel_out(), &leg_a), (&kernel_sine(), &leg_b), (&h_alpha, &leg_g)],
    );
    Ok(merge_groups(groups, geom.max_distance()))
}

/// Energy of atom C responding to the fields of A and B at time `ct`.
///
/// Exactly zero, without any quadrature, until C lies inside both light cones.
pub fn delta_e_c<T: Scalar>(config: &AtomConfig<T>, ct: T, spec: &QuadratureSpec<T>) -> Result<PotentialResult<T>, PotentialError> {
    let ct = checked_time(ct)?;
    let geom = config.triangle()?;
    let region = geom.classify(ct);
    if !(region.c_sees_a && region.c_sees_b) {
        return Ok(PotentialResult::exact_zero(region, ct));
    }
    spec.validate()?;
    let groups = response_groups(config, &geom, ct)?;
    let integral = integrate_groups(&groups, &config.models, geom.max_distance(), spec)?;
    let prefactor = -config.alpha0_product() / T::PI();
    Ok(PotentialResult {
        value: prefactor * integral.value.re,
        error_estimate: prefactor.abs() * integral.error_estimate,
        region,
        breakdown: None,
        ct,
        converged: integral.converged,
        warnings: Vec::new(),
    })
}

/// [`delta_e_c`] evaluated on the real wavenumber axis with exponential damping
/// `e^{−ηk}` extrapolated to `η → 0`.
///
/// Only usable when the integrand stays bounded, i.e. every atom has a damped
/// resonance; for static polarizabilities it grows like `k⁶` and the
/// extrapolation loses all precision. Serves as an independent check of the
/// deformed-path evaluation.
pub fn delta_e_c_regularized<T: Scalar>(
    config: &AtomConfig<T>,
    ct: T,
    spec: &QuadratureSpec<T>,
) -> Result<PotentialResult<T>, PotentialError> {
    let ct = checked_time(ct)?;
    let geom = config.triangle()?;
    let region = geom.classify(ct);
    if !(region.c_sees_a && region.c_sees_b) {
        return Ok(PotentialResult::exact_zero(region, ct));
    }
    let groups = response_groups(config, &geom, ct)?;
    let models = &config.models;
    let integrand = |k: T| -> T {
        let kc = re(k);
        let sum = groups
            .iter()
            .fold(Complex::zero(), |acc, g| acc + g.eval_poly(kc) * Complex::new(T::zero(), k * g.phase).exp());
        (product_shape(models, kc) * sum).re
    };
    let integral = integrate_oscillatory_regularized(integrand, spec)?;
    let prefactor = -config.alpha0_product() / T::PI();
    Ok(PotentialResult {
        value: prefactor * integral.value,
        error_estimate: prefactor.abs() * integral.error_estimate,
        region,
        breakdown: None,
        ct,
        converged: integral.converged,
        warnings: Vec::new(),
    })
}

/// Mean of the three role-permuted response energies.
pub fn delta_e3_symmetrized<T: Scalar>(
    config: &AtomConfig<T>,
    ct: T,
    spec: &QuadratureSpec<T>,
) -> Result<PotentialResult<T>, PotentialError> {
    use crate::geometry::Atom;
    let ct = checked_time(ct)?;
    let region = config.triangle()?.classify(ct);
    let ea = delta_e_c(&config.with_responder(Atom::A), ct, spec)?;
    let eb = delta_e_c(&config.with_responder(Atom::B), ct, spec)?;
    let ec = delta_e_c(config, ct, spec)?;
    let breakdown = Breakdown {
        delta_e_a: ea.value,
        delta_e_b: eb.value,
        delta_e_c: ec.value,
    };
    let mut warnings = Vec::new();
    if !config.identical_models() {
        warnings.push(WARN_NON_IDENTICAL.to_string());
    }
    Ok(PotentialResult {
        value: breakdown.mean(),
        error_estimate: (ea.error_estimate + eb.error_estimate + ec.error_estimate) / T::lit(3.0),
        region,
        breakdown: Some(breakdown),
        ct,
        converged: ea.converged && eb.converged && ec.converged,
        warnings,
    })
}

/// Symmetrized energy in the window where A and B are mutually space-like but C
/// sees both (α, β < ct < γ), computed along a path independent of
/// [`delta_e_c`].
///
/// The polarization sum is kept as the explicit angular integral
/// `P(k) = ∫dΩ (δ − k̂k̂) e^{ik·r_AB}` in its spherical-Bessel form, and the
/// tensors are evaluated pointwise. Near `k = 0` the integral runs along the real
/// axis; beyond a small `k_s` the two exponentials hidden in `P` are separated
/// and each is sent along its own deformed path.
pub fn delta_e3_spacelike_ab<T: Scalar>(
    config: &AtomConfig<T>,
    ct: T,
    spec: &QuadratureSpec<T>,
) -> Result<PotentialResult<T>, PotentialError> {
    let ct = checked_time(ct)?;
    let geom = config.triangle()?;
    let region = geom.classify(ct);
    if !region.is_spacelike_ab() {
        return Err(PotentialError::RegionMismatch {
            required: "alpha < ct, beta < ct, gamma > ct",
            label: region.label(),
        });
    }
    spec.validate()?;
    let [ra, rb, rc] = config.positions;
    let (rhat_b, beta) = (ra - rc).normalized().ok_or(TensorError::DegenerateGeometry(0.0))?;
    let (rhat_a, alpha) = (rb - rc).normalized().ok_or(TensorError::DegenerateGeometry(0.0))?;
    let r_ab = ra - rb;
    let (rhat_g, gamma) = r_ab.normalized().ok_or(TensorError::DegenerateGeometry(0.0))?;
    let (proj_b, proj_a, proj_g) = (Projectors::new(&rhat_b), Projectors::new(&rhat_a), Projectors::new(&rhat_g));
    let models = &config.models;

    // G^β(k)ᵀ G^α(−k) without its phase e^{ik(β−α)}
    let pair_amp = |k: Complex<T>| pair_product(&radiative_amplitude(&proj_b, beta, k), &radiative_amplitude(&proj_a, alpha, -k));
    let base_phase = beta - alpha;

    let k_scale = models
        .iter()
        .filter_map(|m| m.frequency_scale())
        .fold(T::one() / gamma, |a, b| a.min(b));
    let k_s = T::lit(0.5) * k_scale;

    let head = integrate_interval(
        |k: T| {
            let kc = re(k);
            let p = angular_projector_integral(k, &r_ab).to_complex();
            let phase = Complex::new(T::zero(), k * base_phase).exp();
            product_shape(models, kc) * re(k * k * k) * phase * pair_amp(kc).frobenius_dot(&p)
        },
        T::zero(),
        k_s,
        spec,
    );

    // k³P(k) = 4π Σ_σ e^{iσkγ} [ (δ−r̂r̂) σk²/(2iγ) + (δ−3r̂r̂)(k/(2γ²) − σ/(2iγ³)) ]
    let four_pi = re(T::lit(4.0) * T::PI());
    let half_over_i = Complex::new(T::zero(), -T::lit(0.5));
    let mut tail = IntegralResult::zero();
    for sigma in [T::one(), -T::one()] {
        let piece = |k: Complex<T>| -> Complex<T> {
            let a = half_over_i * k * k * (sigma / gamma);
            let b = k * (T::lit(0.5) / (gamma * gamma)) - half_over_i * (sigma / (gamma * gamma * gamma));
            let p: Mat3<Complex<T>> = proj_g.combine(a, b);
            product_shape(models, k) * four_pi * pair_amp(k).frobenius_dot(&p)
        };
        let r = integrate_fourier_contour(piece, base_phase + sigma * gamma, k_s, pole_bound(models), spec)?;
        tail = tail.combine(r);
    }
    let total = head.combine(tail);
    let prefactor = -config.alpha0_product() / (T::lit(12.0) * T::PI() * T::PI());
    let value = prefactor * total.value.re;
    Ok(PotentialResult {
        value,
        error_estimate: prefactor.abs() * total.error_estimate,
        region,
        breakdown: Some(Breakdown {
            delta_e_a: T::zero(),
            delta_e_b: T::zero(),
            delta_e_c: T::lit(3.0) * value,
        }),
        ct,
        converged: total.converged,
        warnings: Vec::new(),
    })
}

/// Quadratic polynomial in `u` equal to the amplitude of `F[e^{∓uR}/R]`:
/// the outgoing amplitude evaluated at `k = iu` (decay, `sign = 1`) or the
/// incoming one at `k = iu` (growth, `sign = −1`).
fn imaginary_axis_coeffs<T: Scalar>(amp: &PhaseAmplitude<T>) -> [Mat3<Complex<T>>; 3] {
    let i = i_unit::<T>();
    [amp.coeffs[0], amp.coeffs[1].map(|x| x * i), amp.coeffs[2].map(|x| -x)]
}

/// Real polynomial in `u` times `e^{−ua}`.
#[derive(Debug, Clone, Copy)]
struct DecayTerm<T> {
    exponent: T,
    coeffs: [T; 7],
}

fn real_coefficients<T: Scalar>(c: [Complex<T>; 7]) -> Result<[T; 7], PotentialError> {
    let scale = c.iter().map(|x| x.re.abs()).fold(T::zero(), |a, b| a.max(b));
    let residue = c.iter().map(|x| x.im.abs()).fold(T::zero(), |a, b| a.max(b));
    if residue > T::lit(IMAGINARY_RESIDUE_TOL) * scale {
        return Err(PotentialError::ImaginaryResidue {
            value: scale.to_f64().unwrap_or(f64::NAN),
            residue: residue.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(c.map(|x| x.re))
}

fn decay_term<T: Scalar>(
    weight: T,
    exponent: T,
    legs: [&PhaseAmplitude<T>; 3],
) -> Result<DecayTerm<T>, PotentialError> {
    let [a, b, c] = legs.map(imaginary_axis_coeffs);
    let coeffs = real_coefficients(contract_polynomials(&a, &b, &c))?;
    Ok(DecayTerm {
        exponent,
        coeffs: coeffs.map(|x| x * weight),
    })
}

/// `∫₀^∞ du s(iu) Σ_t p_t(u) e^{−u a_t}`.
fn integrate_decay_terms<T: Scalar>(
    terms: &[DecayTerm<T>],
    models: &[PolarizabilityModel<T>; 3],
    length: T,
    spec: &QuadratureSpec<T>,
) -> (IntegralResult<T, T>, Vec<String>) {
    let active: Vec<&DecayTerm<T>> = terms.iter().filter(|t| t.coeffs.iter().any(|c| *c != T::zero())).collect();
    if active.is_empty() {
        return (IntegralResult::zero(), Vec::new());
    }
    let zero_tol = T::lit(1e-12) * length;
    let min_exp = active.iter().map(|t| t.exponent).fold(T::infinity(), |a, b| a.min(b));
    let f = |u: T| -> T {
        let s = product_shape_imag(models, u);
        let mut acc = T::zero();
        for t in &active {
            let p = t.coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * u + c);
            acc = acc + p * (-u * t.exponent).exp();
        }
        s * acc
    };
    if min_exp <= zero_tol {
        let cap = T::lit(COLLINEAR_U_CAP);
        return (integrate_interval(f, T::zero(), cap, spec), vec![WARN_U_CAP.to_string()]);
    }
    let mut decay = T::one() / min_exp;
    for m in models.iter().filter_map(|m| m.frequency_scale()) {
        decay = decay.min(T::lit(4.0) / m);
    }
    (integrate_semi_infinite(f, decay, spec), Vec::new())
}

fn pair_terms<T: Scalar>(
    config: &AtomConfig<T>,
    geom: &TriangleGeometry<T>,
    gate_alpha: T,
    gate_beta: T,
) -> Result<Vec<DecayTerm<T>>, PotentialError> {
    let [ra, rb, rc] = config.positions;
    let leg_b = Leg::new(&(ra - rc))?;
    let leg_a = Leg::new(&(rb - rc))?;
    let leg_g = Leg::new(&(ra - rb))?;
    let (alpha, beta, gamma) = (geom.alpha, geom.beta, geom.gamma);
    let mut out = Vec::with_capacity(4);
    // (x, y) = (β, α) with the α gate, then the partner with roles exchanged.
    // The incoming orientation evaluated at k = iu is the growing kernel.
    for (gate, leg_x, x, leg_y, y) in [(gate_alpha, &leg_b, beta, &leg_a, alpha), (gate_beta, &leg_a, alpha, &leg_b, beta)] {
        if gate == T::zero() {
            continue;
        }
        out.push(decay_term(gate, x - y + gamma, [&leg_x.plus, &leg_y.minus, &leg_g.plus])?);
        out.push(decay_term(gate, x + y - gamma, [&leg_x.plus, &leg_y.plus, &leg_g.minus])?);
    }
    Ok(out)
}

/// Interaction energy of A and B as modified by C while both are still outside
/// C's light cone (α, β > ct > γ), on the imaginary frequency axis.
pub fn delta_e_c_pair<T: Scalar>(
    config: &AtomConfig<T>,
    ct: T,
    spec: &QuadratureSpec<T>,
) -> Result<PotentialResult<T>, PotentialError> {
    let ct = checked_time(ct)?;
    let geom = config.triangle()?;
    let region = geom.classify(ct);
    if !region.is_outside_c_connected_ab() {
        return Err(PotentialError::RegionMismatch {
            required: "alpha > ct, beta > ct, gamma < ct",
            label: region.label(),
        });
    }
    let gate_alpha = T::one() - edge_sgn(geom.alpha - geom.gamma - ct);
    let gate_beta = T::one() - edge_sgn(geom.beta - geom.gamma - ct);
    if gate_alpha == T::zero() && gate_beta == T::zero() {
        return Ok(PotentialResult::exact_zero(region, ct));
    }
    spec.validate()?;
    let terms = pair_terms(config, &geom, gate_alpha, gate_beta)?;
    let (integral, warnings) = integrate_decay_terms(&terms, &config.models, geom.max_distance(), spec);
    let prefactor = -config.alpha0_product() / (T::lit(16.0) * T::PI());
    Ok(PotentialResult {
        value: prefactor * integral.value,
        error_estimate: prefactor.abs() * integral.error_estimate,
        region,
        breakdown: None,
        ct,
        converged: integral.converged,
        warnings,
    })
}

/// The imaginary-axis pair formula with both gates fully open, symmetrized over
/// the three roles. Not a physical energy on its own; reported next to
/// [`static_three_body`] for comparison.
pub fn pair_formula_open_gates<T: Scalar>(config: &AtomConfig<T>, spec: &QuadratureSpec<T>) -> Result<T, PotentialError> {
    use crate::geometry::Atom;
    spec.validate()?;
    let two = T::lit(2.0);
    let mut sum = T::zero();
    for responder in [Atom::A, Atom::B, Atom::C] {
        let cfg = config.with_responder(responder);
        let geom = cfg.triangle()?;
        let terms = pair_terms(&cfg, &geom, two, two)?;
        let (r, _) = integrate_decay_terms(&terms, &cfg.models, geom.max_distance(), spec);
        sum = sum + r.value;
    }
    Ok(-config.alpha0_product() / (T::lit(16.0) * T::PI()) * sum / T::lit(3.0))
}

/// Stationary (t → ∞) three-body energy
/// `−(1/π) ∫du αA(iu)αB(iu)αC(iu) Tr[V^AB V^BC V^CA]`, `V^R = F[e^{−uR}/R]`.
pub fn static_three_body<T: Scalar>(config: &AtomConfig<T>, spec: &QuadratureSpec<T>) -> Result<PotentialResult<T>, PotentialError> {
    spec.validate()?;
    let geom = config.triangle()?;
    let [ra, rb, rc] = config.positions;
    let ab = PhaseAmplitude::new(&(ra - rb), 1)?;
    let bc = PhaseAmplitude::new(&(rb - rc), 1)?;
    let ca = PhaseAmplitude::new(&(rc - ra), 1)?;
    // Tr[XYZ] = Σ X_ℓm Z_ℓn Y_mn for symmetric tensors
    let term = decay_term(T::one(), geom.alpha + geom.beta + geom.gamma, [&ab, &ca, &bc])?;
    let (integral, warnings) = integrate_decay_terms(&[term], &config.models, geom.max_distance(), spec);
    let prefactor = -config.alpha0_product() / T::PI();
    let value = prefactor * integral.value;
    let mut warnings = warnings;
    if !config.identical_models() {
        warnings.push(WARN_NON_IDENTICAL.to_string());
    }
    Ok(PotentialResult {
        value,
        error_estimate: prefactor.abs() * integral.error_estimate,
        region: geom.classify(T::infinity()),
        breakdown: Some(Breakdown {
            delta_e_a: value,
            delta_e_b: value,
            delta_e_c: value,
        }),
        ct: T::infinity(),
        converged: integral.converged,
        warnings,
    })
}
