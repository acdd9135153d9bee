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

//! Dipole tensors generated by the operator `F_ij = (−∇²δ_ij + ∇_i∇_j)` acting on
//! radial kernels, plus the contraction patterns used by the energy integrals.
//!
//! For a radial kernel `f(R)` the operator gives
//!
//! ```text
//! F_ij f = −(f'' + f'/R) δ_ij + R̂_i R̂_j (f'' − f'/R)
//! ```
//!
//! and for `f = e^{ikR}/R` this collapses to
//!
//! ```text
//! F_ij f = e^{ikR} [ (δ_ij − R̂_iR̂_j) k²/R + (δ_ij − 3R̂_iR̂_j)(ik/R² − 1/R³) ]
//! ```
//!
//! which holds for complex `k`. Every other kernel is a substitution
//! (`k → iu`, `k → −iu`, `k → 0`) or a linear combination of this one.

use num_complex::Complex;
use num_traits::Zero;
use thiserror::Error;

use crate::geometry::DEFAULT_EPS_GEOM;
use crate::linalg::{contract3, Mat3, Vec3};
use crate::scalar::{i_unit, re, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("separation {0} too small for a dipole tensor")]
    DegenerateGeometry(f64),
    #[error("kernel parameter must be >= 0, got {0}")]
    NegativeParameter(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KernelKind<T> {
    /// e^{ikR}/R
    OscillatoryOut(T),
    /// e^{−uR}/R
    ExponentialDecay(T),
    /// e^{+uR}/R
    ExponentialGrow(T),
    /// 1/R
    StaticCoulomb,
    /// cos(kR)/R
    CosineStanding(T),
}

impl<T: Scalar> KernelKind<T> {
    fn parameter(&self) -> T {
        match *self {
            KernelKind::OscillatoryOut(k) | KernelKind::CosineStanding(k) => k,
            KernelKind::ExponentialDecay(u) | KernelKind::ExponentialGrow(u) => u,
            KernelKind::StaticCoulomb => T::zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        !matches!(self, KernelKind::OscillatoryOut(k) if *k != T::zero())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleTensor<T> {
    pub entries: Mat3<Complex<T>>,
    pub kernel: KernelKind<T>,
    pub r: Vec3<T>,
}

impl<T: Scalar> DipoleTensor<T> {
    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.entries[(i, j)] == self.entries[(j, i)]))
    }

    pub fn real_part(&self) -> Mat3<T> {
        self.entries.re()
    }
}

/// The two angular structures every dipole tensor is built from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projectors<T> {
    /// δ − R̂R̂
    pub transverse: Mat3<T>,
    /// δ − 3R̂R̂
    pub longitudinal: Mat3<T>,
}

impl<T: Scalar> Projectors<T> {
    pub fn new(rhat: &Vec3<T>) -> Self {
        let id = Mat3::<T>::identity();
        let rr = Mat3::outer(rhat, rhat);
        Projectors {
            transverse: id - rr,
            longitudinal: id - rr.scale(T::lit(3.0)),
        }
    }

    /// `a·(δ − R̂R̂) + b·(δ − 3R̂R̂)`.
    #[inline]
    pub fn combine(&self, a: Complex<T>, b: Complex<T>) -> Mat3<Complex<T>> {
        Mat3::from_fn(|i, j| a * self.transverse.0[i][j] + b * self.longitudinal.0[i][j])
    }
}

fn unit_and_length<T: Scalar>(r_vec: &Vec3<T>) -> Result<(Vec3<T>, T), TensorError> {
    match r_vec.normalized() {
        Some((u, n)) if n > T::lit(DEFAULT_EPS_GEOM) => Ok((u, n)),
        _ => Err(TensorError::DegenerateGeometry(r_vec.norm().to_f64().unwrap_or(0.0))),
    }
}

/// `F[e^{ikR}/R]` without the phase factor, for complex `k`:
/// `(δ − R̂R̂)k²/R + (δ − 3R̂R̂)(ik/R² − 1/R³)`.
#[inline]
pub fn radiative_amplitude<T: Scalar>(proj: &Projectors<T>, r: T, k: Complex<T>) -> Mat3<Complex<T>> {
    let a = k * k / r;
    let b = i_unit::<T>() * k / (r * r) - re(T::one() / (r * r * r));
    proj.combine(a, b)
}

/// `F[e^{ikR}/R]` for complex `k`.
pub fn outgoing_tensor<T: Scalar>(proj: &Projectors<T>, r: T, k: Complex<T>) -> Mat3<Complex<T>> {
    let phase = (i_unit::<T>() * k * r).exp();
    radiative_amplitude(proj, r, k).map(|x| x * phase)
}

/// Analytic `F_ij` applied to the chosen kernel along `r_vec`.
pub fn f_tensor<T: Scalar>(kernel: KernelKind<T>, r_vec: Vec3<T>) -> Result<DipoleTensor<T>, TensorError> {
    let p = kernel.parameter();
    if p < T::zero() {
        return Err(TensorError::NegativeParameter(p.to_f64().unwrap_or(f64::NAN)));
    }
    let (rhat, r) = unit_and_length(&r_vec)?;
    let proj = Projectors::new(&rhat);
    let entries = match kernel {
        KernelKind::OscillatoryOut(k) => outgoing_tensor(&proj, r, re(k)),
        KernelKind::ExponentialDecay(u) => real_only(outgoing_tensor(&proj, r, Complex::new(T::zero(), u))),
        KernelKind::ExponentialGrow(u) => real_only(outgoing_tensor(&proj, r, Complex::new(T::zero(), -u))),
        KernelKind::StaticCoulomb => real_only(outgoing_tensor(&proj, r, Complex::zero())),
        KernelKind::CosineStanding(k) => {
            let half = T::lit(0.5);
            let plus = outgoing_tensor(&proj, r, re(k));
            let minus = outgoing_tensor(&proj, r, re(-k));
            real_only((plus + minus).map(|x| x * half))
        }
    };
    Ok(DipoleTensor {
        entries,
        kernel,
        r: r_vec,
    })
}

// drops rounding residue in the imaginary part of kernels that are real by construction
fn real_only<T: Scalar>(m: Mat3<Complex<T>>) -> Mat3<Complex<T>> {
    m.map(|x| Complex::new(x.re, T::zero()))
}

/// Real oscillating-dipole coupling tensor `F[cos(kR)/R]`, used as the concrete
/// two-point dipole potential.
pub fn classical_dipole_tensor<T: Scalar>(k: T, r_vec: Vec3<T>) -> Result<DipoleTensor<T>, TensorError> {
    f_tensor(KernelKind::CosineStanding(k), r_vec)
}

/// `Σ_{ℓmn} T1[ℓ][m]·T2[ℓ][n]·T3[m][n]`
pub fn triple_contract<T: Scalar>(t1: &DipoleTensor<T>, t2: &DipoleTensor<T>, t3: &DipoleTensor<T>) -> Complex<T> {
    contract3(&t1.entries.0, &t2.entries.0, &t3.entries.0)
}

/// Σ_j ê_j ⊗ ê_j = δ − k̂k̂ for a unit vector.
pub fn transverse_projector<T: Scalar>(k_hat: &Vec3<T>) -> Mat3<T> {
    Mat3::<T>::identity() - Mat3::outer(k_hat, k_hat)
}

/// Σ_mn M_mn (δ_mn − k̂_m k̂_n).
pub fn double_contract_with_projector<T: Scalar>(m: &Mat3<Complex<T>>, k_hat: &Vec3<T>) -> Complex<T> {
    m.frobenius_dot(&transverse_projector(k_hat).to_complex())
}

/// `Σ_ℓ T1[ℓ][m]·T2[ℓ][n]`, the polarization-facing pair of a two-tensor term.
pub fn pair_product<T: Scalar>(t1: &Mat3<Complex<T>>, t2: &Mat3<Complex<T>>) -> Mat3<Complex<T>> {
    t1.transpose().matmul(t2)
}

/// `sin(x)/x` and `cos(x)/x² − sin(x)/x³`, with series near the origin.
pub fn angular_radial_functions<T: Scalar>(x: T) -> (T, T) {
    if x.abs() < T::lit(0.02) {
        let x2 = x * x;
        let j0 = T::one() - x2 / T::lit(6.0) + x2 * x2 / T::lit(120.0) - x2 * x2 * x2 / T::lit(5040.0);
        let l = -T::one() / T::lit(3.0) + x2 / T::lit(30.0) - x2 * x2 / T::lit(840.0)
            + x2 * x2 * x2 / T::lit(45360.0);
        (j0, l)
    } else {
        let (s, c) = x.sin_cos();
        (s / x, c / (x * x) - s / (x * x * x))
    }
}

/// Angular integral of the polarization sum against a plane wave:
/// ∫dΩ_k (δ − k̂k̂) e^{ik·r} = 4π[(δ − r̂r̂) sin(kr)/(kr) + (δ − 3r̂r̂)(cos(kr)/(kr)² − sin(kr)/(kr)³)].
pub fn angular_projector_integral<T: Scalar>(k: T, r_vec: &Vec3<T>) -> Mat3<T> {
    let four_pi = T::lit(4.0) * T::PI();
    match r_vec.normalized() {
        None => Mat3::<T>::identity().scale(four_pi * T::lit(2.0) / T::lit(3.0)),
        Some((rhat, r)) => {
            let proj = Projectors::new(&rhat);
            let (j0, l) = angular_radial_functions(k * r);
            Mat3::from_fn(|i, j| four_pi * (proj.transverse.0[i][j] * j0 + proj.longitudinal.0[i][j] * l))
        }
    }
}

/// Matrix polynomial `C0 + C1 k + C2 k²` equal to the amplitude of
/// `F[e^{iskR}/R] = e^{iskR}·(…)` for phase sign `s = ±1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseAmplitude<T> {
    pub sign: i8,
    pub r: T,
    pub coeffs: [Mat3<Complex<T>>; 3],
}

impl<T: Scalar> PhaseAmplitude<T> {
    pub fn new(r_vec: &Vec3<T>, sign: i8) -> Result<Self, TensorError> {
        let (rhat, r) = unit_and_length(r_vec)?;
        let proj = Projectors::new(&rhat);
        let s = if sign >= 0 { T::one() } else { -T::one() };
        let zero = Complex::zero();
        Ok(PhaseAmplitude {
            sign: if sign >= 0 { 1 } else { -1 },
            r,
            coeffs: [
                proj.combine(zero, re(-T::one() / (r * r * r))),
                proj.combine(zero, Complex::new(T::zero(), s / (r * r))),
                proj.combine(re(T::one() / r), zero),
            ],
        })
    }

    /// Signed phase length `s·R`.
    pub fn phase(&self) -> T {
        if self.sign > 0 {
            self.r
        } else {
            -self.r
        }
    }

    pub fn eval(&self, k: Complex<T>) -> Mat3<Complex<T>> {
        let [c0, c1, c2] = &self.coeffs;
        Mat3::from_fn(|i, j| c0.0[i][j] + k * (c1.0[i][j] + k * c2.0[i][j]))
    }
}

/// Coefficients (ascending powers of `k`) of `Σ A[ℓ][m]·B[ℓ][n]·C[m][n]` for three
/// quadratic matrix polynomials.
pub fn contract_polynomials<T: Scalar>(
    a: &[Mat3<Complex<T>>; 3],
    b: &[Mat3<Complex<T>>; 3],
    c: &[Mat3<Complex<T>>; 3],
) -> [Complex<T>; 7] {
    let mut out = [Complex::zero(); 7];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            for (l, cl) in c.iter().enumerate() {
                out[i + j + l] = out[i + j + l] + contract3(&ai.0, &bj.0, &cl.0);
            }
        }
    }
    out
}
