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

//! Finite-box mode sums.
//!
//! A periodic cube of side `L` carries modes `k = 2πn/L`. The sums here are the
//! discrete versions of the wavenumber integrals that the energy code does
//! analytically: the polarization sum, the angular integral over `k̂`, and the
//! free-field correlation. Comparing them with their continuum counterparts
//! checks the reductions without trusting any of them.
//!
//! Modes are restricted to the sphere `|k| ≤ 2π n_max / L`, so a continuum
//! integral cut at the same `k_max` is a like-for-like comparison. Sums run in a
//! fixed order: slabs of constant `n_x` are reduced in parallel, then combined
//! in ascending `n_x`, so results do not depend on the thread count.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{AtomConfig, GeometryError};
use crate::linalg::{Mat3, Vec3};
use crate::quadrature::{integrate_interval, QuadratureSpec};
use crate::scalar::{re, Scalar};
use crate::tensors::{angular_projector_integral, outgoing_tensor, pair_product, Projectors};

/// Smallest allowed separation of the two correlation points, as a fraction of `L`.
pub const MIN_SEPARATION_FRACTION: f64 = 0.01;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModeSumError {
    #[error("invalid box: {0}")]
    InvalidBox(String),
    #[error("points {separation} apart, closer than the minimum {minimum}")]
    CoincidentPoints { separation: f64, minimum: f64 },
    #[error("largest distance {max_distance} must stay below L/4 = {limit}")]
    GeometryTooLarge { max_distance: f64, limit: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxSpec<T> {
    /// Box side.
    pub l: T,
    /// Largest mode index per axis.
    pub n_max: usize,
    /// Optional per-mode damping `e^{−η|k|}`.
    #[serde(default)]
    pub soft_cutoff: Option<T>,
}

impl<T: Scalar> BoxSpec<T> {
    pub fn new(l: T, n_max: usize, soft_cutoff: Option<T>) -> Result<Self, ModeSumError> {
        let b = BoxSpec { l, n_max, soft_cutoff };
        b.validate()?;
        Ok(b)
    }

    /// `L = 40 × largest distance`, `n_max = 60`, no damping.
    pub fn for_distance(max_distance: T) -> Self {
        BoxSpec {
            l: T::lit(40.0) * max_distance,
            n_max: 60,
            soft_cutoff: None,
        }
    }

    // negated comparisons also reject NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<(), ModeSumError> {
        if !(self.l > T::zero()) || !self.l.is_finite() {
            return Err(ModeSumError::InvalidBox("L must be positive".into()));
        }
        if self.n_max == 0 {
            return Err(ModeSumError::InvalidBox("n_max must be at least 1".into()));
        }
        if let Some(eta) = self.soft_cutoff {
            if !(eta >= T::zero()) || !eta.is_finite() {
                return Err(ModeSumError::InvalidBox("soft_cutoff must be >= 0".into()));
            }
        }
        Ok(())
    }

    /// Size of the full lattice `[−n_max, n_max]³ \ {0}` before the spherical cut.
    pub fn lattice_mode_count(&self) -> usize {
        let side = 2 * self.n_max + 1;
        side * side * side - 1
    }

    pub fn dk(&self) -> T {
        T::lit(2.0) * T::PI() / self.l
    }

    pub fn k_max(&self) -> T {
        self.dk() * T::from_usize_lossy(self.n_max)
    }

    fn damping(&self, k: T) -> T {
        match self.soft_cutoff {
            Some(eta) => (-eta * k).exp(),
            None => T::one(),
        }
    }

    /// Reciprocal-space volume element `(2π/L)³`.
    fn cell(&self) -> T {
        let dk = self.dk();
        dk * dk * dk
    }
}

/// Σ_j ê_j ⊗ ê_j built from two explicit polarization vectors transverse to `k_hat`.
pub fn polarization_sum<T: Scalar>(k_hat: &Vec3<T>) -> Mat3<T> {
    let (e1, e2) = polarization_vectors(k_hat);
    Mat3::outer(&e1, &e1) + Mat3::outer(&e2, &e2)
}

/// An orthonormal pair completing `k_hat` to a right-handed triad.
pub fn polarization_vectors<T: Scalar>(k_hat: &Vec3<T>) -> (Vec3<T>, Vec3<T>) {
    // cross with the coordinate axis least aligned with k̂
    let a = k_hat.0.map(|x| x.abs());
    let axis = if a[0] <= a[1] && a[0] <= a[2] {
        Vec3::new(T::one(), T::zero(), T::zero())
    } else if a[1] <= a[2] {
        Vec3::new(T::zero(), T::one(), T::zero())
    } else {
        Vec3::new(T::zero(), T::zero(), T::one())
    };
    let (e1, _) = k_hat.cross(&axis).normalized().expect("axis chosen away from k");
    let e2 = k_hat.cross(&e1);
    (e1, e2)
}

/// Visits every mode inside the sphere, slab by slab, and reduces with `f`.
/// `f(n, n², k_vec)` returns a per-mode contribution.
fn sum_modes<T, V, F>(b: &BoxSpec<T>, f: F) -> V
where
    T: Scalar,
    V: Copy + Send + Zero + std::ops::Add<Output = V>,
    F: Fn([i64; 3], usize, Vec3<T>) -> V + Sync,
{
    let n = b.n_max as i64;
    let n2_max = (n * n) as usize;
    let dk = b.dk();
    let slabs: Vec<V> = (-n..=n)
        .into_par_iter()
        .map(|nx| {
            let mut acc = V::zero();
            for ny in -n..=n {
                for nz in -n..=n {
                    let n2 = (nx * nx + ny * ny + nz * nz) as usize;
                    if n2 == 0 || n2 > n2_max {
                        continue;
                    }
                    let k = Vec3::new(
                        dk * T::lit(nx as f64),
                        dk * T::lit(ny as f64),
                        dk * T::lit(nz as f64),
                    );
                    acc = acc + f([nx, ny, nz], n2, k);
                }
            }
            acc
        })
        .collect();
    slabs.into_iter().fold(V::zero(), |a, b| a + b)
}

/// Equal-time free-field correlation on the lattice:
/// `(2π/V) Σ_k |k| (δ − k̂k̂) cos(k·(r1 − r2)) e^{−η|k|}`.
pub fn box_free_correlation<T: Scalar>(b: &BoxSpec<T>, r1: &Vec3<T>, r2: &Vec3<T>) -> Result<Mat3<T>, ModeSumError> {
    b.validate()?;
    let r = *r1 - *r2;
    let sep = r.norm();
    let minimum = T::lit(MIN_SEPARATION_FRACTION) * b.l;
    if sep < minimum {
        return Err(ModeSumError::CoincidentPoints {
            separation: sep.to_f64().unwrap_or(f64::NAN),
            minimum: minimum.to_f64().unwrap_or(f64::NAN),
        });
    }
    let pref = T::lit(2.0) * T::PI() / (b.l * b.l * b.l);
    let sum = sum_modes(b, |_, _, k| {
        let (k_hat, kn) = k.normalized().expect("zero mode excluded");
        let w = kn * k.dot(&r).cos() * b.damping(kn);
        polarization_sum(&k_hat).scale(w)
    });
    Ok(sum.scale(pref))
}

/// Continuum counterpart of [`box_free_correlation`] cut at `k_max`:
/// `(1/π) ∫₀^{k_max} dk k³ [(δ − r̂r̂) j₀(kr) + (δ − 3r̂r̂)(cos x/x² − sin x/x³)] e^{−ηk}`.
pub fn continuum_free_correlation<T: Scalar>(
    r: &Vec3<T>,
    eta: T,
    k_max: T,
    spec: &QuadratureSpec<T>,
) -> Mat3<T> {
    let mut out = Mat3::zero();
    for i in 0..3 {
        for j in i..3 {
            let v = integrate_interval(
                |k: T| {
                    let p = angular_projector_integral(k, r);
                    k * k * k * p.0[i][j] * (-eta * k).exp() / (T::lit(4.0) * T::PI())
                },
                T::zero(),
                k_max,
                spec,
            )
            .value;
            let v = v / T::PI();
            out.0[i][j] = v;
            out.0[j][i] = v;
        }
    }
    out
}

/// `‖A − B‖_F / ‖B‖_F`
pub fn relative_frobenius_deviation<T: Scalar>(a: &Mat3<T>, b: &Mat3<T>) -> T {
    let d = *a - *b;
    (d.frobenius_dot(&d) / b.frobenius_dot(b)).sqrt()
}

/// Which angular structure a shell row compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShellTerm {
    /// Both sources seen by the responder, phase along r_AB.
    Direct,
    /// Field of A scattered by B into C, phase along r_BC.
    ViaB,
    /// Field of B scattered by A into C, phase along r_AC.
    ViaA,
    /// All tensors replaced by δ: samples 4π j₀(kr).
    Isotropic,
    /// Projector alone at zero separation: samples 4π·(2/3)δ.
    Projector,
}

impl ShellTerm {
    pub fn code(&self) -> &'static str {
        match self {
            ShellTerm::Direct => "direct",
            ShellTerm::ViaB => "via_b",
            ShellTerm::ViaA => "via_a",
            ShellTerm::Isotropic => "isotropic",
            ShellTerm::Projector => "projector",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShellRow<T> {
    pub term: ShellTerm,
    pub k_lo: T,
    pub k_hi: T,
    pub modes: usize,
    pub discrete: Complex<T>,
    pub analytic: Complex<T>,
    /// Σ |per-mode contribution|, the scale the discrete sum is judged against.
    pub abs_sum: T,
    /// `|discrete − analytic| / max(abs_sum, |analytic|)`
    pub deviation: T,
}

impl<T: Scalar> ShellRow<T> {
    pub fn k_center(&self) -> T {
        T::lit(0.5) * (self.k_lo + self.k_hi)
    }
}

const GL_NODES: usize = 24;

/// Gauss-Legendre nodes and weights on [−1, 1] by Newton iteration on P_n.
fn gauss_legendre<T: Scalar>(n: usize) -> Vec<(T, T)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((T::lit(x), T::lit(2.0 / ((1.0 - x * x) * dp * dp))));
    }
    out
}

#[derive(Clone, Copy)]
struct ShellAcc<T> {
    value: [Complex<T>; 64],
    abs: [T; 64],
    count: [usize; 64],
}

impl<T: Scalar> Zero for ShellAcc<T> {
    fn zero() -> Self {
        ShellAcc {
            value: [Complex::zero(); 64],
            abs: [T::zero(); 64],
            count: [0; 64],
        }
    }
    fn is_zero(&self) -> bool {
        self.count.iter().all(|&c| c == 0)
    }
}

impl<T: Scalar> std::ops::Add for ShellAcc<T> {
    type Output = Self;
    fn add(mut self, o: Self) -> Self {
        for i in 0..64 {
            self.value[i] = self.value[i] + o.value[i];
            self.abs[i] = self.abs[i] + o.abs[i];
            self.count[i] += o.count[i];
        }
        self
    }
}

/// Largest number of shells a single comparison can use.
pub const MAX_SHELLS: usize = 64;

/// How modes are assigned to shells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ShellWindow {
    /// Hard bins `(k_lo, k_hi]`.
    Sharp,
    /// Overlapping cos² windows centred on the nodes `jΔ`, `j = 0..n`, that sum to
    /// one. Each mode is shared between its two nearest nodes, so no shell has a
    /// hard edge inside the sphere and the lattice counting error at shell
    /// boundaries disappears. The window on the last node would touch the mode
    /// cutoff and is not reported.
    #[default]
    Tapered,
}

impl ShellWindow {
    /// Shell indices and weights for a mode at `|k| = kn`.
    fn weights<T: Scalar>(&self, kn: T, width: T, n_shells: usize) -> [(usize, T); 2] {
        match self {
            ShellWindow::Sharp => {
                let idx = (kn / width).ceil().to_usize().unwrap_or(1).max(1) - 1;
                [(idx.min(n_shells - 1), T::one()), (0, T::zero())]
            }
            ShellWindow::Tapered => {
                let x = kn / width;
                let j = x.floor();
                let frac = x - j;
                let j = j.to_usize().unwrap_or(0);
                let c = (T::FRAC_PI_2() * frac).cos();
                let lower = c * c;
                [(j, lower), (j + 1, T::one() - lower)]
            }
        }
    }

    /// Window of shell `s` at `k`.
    fn window<T: Scalar>(&self, s: usize, k: T, width: T) -> T {
        match self {
            ShellWindow::Sharp => T::one(),
            ShellWindow::Tapered => {
                let c = (T::FRAC_PI_2() * (k / width - T::from_usize_lossy(s))).cos();
                c * c
            }
        }
    }

    /// Support of shell `s` as one or two smooth pieces.
    fn pieces<T: Scalar>(&self, s: usize, width: T) -> Vec<(T, T)> {
        let node = width * T::from_usize_lossy(s);
        match self {
            ShellWindow::Sharp => vec![(node, node + width)],
            ShellWindow::Tapered if s == 0 => vec![(T::zero(), width)],
            ShellWindow::Tapered => vec![(node - width, node), (node, node + width)],
        }
    }
}

/// Bins `Σ_modes (2π/L)³ g(|k|):(δ − k̂k̂) e^{ik·r}` into `n_shells` shells over
/// `[0, k_max]` and compares each with `∫ dk k² g(k):P(k, r)` over the same
/// shell, where `P` is the analytic angular integral. `g` is evaluated once per
/// distinct lattice |k|.
pub fn shell_comparison<T, G>(
    b: &BoxSpec<T>,
    n_shells: usize,
    window: ShellWindow,
    r: &Vec3<T>,
    term: ShellTerm,
    g: G,
) -> Result<Vec<ShellRow<T>>, ModeSumError>
where
    T: Scalar,
    G: Fn(T) -> Mat3<Complex<T>> + Sync,
{
    b.validate()?;
    if n_shells == 0 || n_shells >= MAX_SHELLS {
        return Err(ModeSumError::InvalidBox(format!("shell count must be in 1..{MAX_SHELLS}")));
    }
    let n2_max = b.n_max * b.n_max;
    let dk = b.dk();
    let k_max = b.k_max();
    let width = k_max / T::from_usize_lossy(n_shells);
    // g depends only on |k|, which on the lattice is fixed by the integer n²
    let table: Vec<Mat3<Complex<T>>> = (0..=n2_max)
        .into_par_iter()
        .map(|n2| if n2 == 0 { Mat3::zero() } else { g(dk * T::lit((n2 as f64).sqrt())) })
        .collect();
    let cell = b.cell();
    let acc = sum_modes(b, |_, n2, k| {
        let (k_hat, kn) = k.normalized().expect("zero mode excluded");
        let m = &table[n2];
        // M:(δ − k̂k̂) = tr M − k̂ᵀ M k̂
        let mut kmk = Complex::zero();
        for i in 0..3 {
            for j in 0..3 {
                kmk = kmk + m.0[i][j] * k_hat.0[i] * k_hat.0[j];
            }
        }
        let w = (m.trace() - kmk) * Complex::new(T::zero(), k.dot(r)).exp() * (cell * b.damping(kn));
        let mut out = ShellAcc::zero();
        for (s, weight) in window.weights(kn, width, n_shells) {
            if weight > T::zero() && s < MAX_SHELLS {
                out.value[s] = out.value[s] + w * weight;
                out.abs[s] = out.abs[s] + w.norm() * weight;
                out.count[s] += 1;
            }
        }
        out
    });
    let gl = gauss_legendre::<T>(GL_NODES);
    let rows = (0..n_shells)
        .map(|s| {
            let pieces = window.pieces(s, width);
            let analytic = pieces.iter().fold(Complex::zero(), |acc, &(lo, hi)| {
                let (mid, half) = (T::lit(0.5) * (lo + hi), T::lit(0.5) * (hi - lo));
                gl.iter().fold(acc, |acc, &(x, w)| {
                    let k = mid + half * x;
                    let p = angular_projector_integral(k, r).to_complex();
                    let weight = w * half * k * k * b.damping(k) * window.window(s, k, width);
                    acc + g(k).frobenius_dot(&p) * re(weight)
                })
            });
            let discrete = acc.value[s];
            ShellRow {
                term,
                k_lo: pieces[0].0,
                k_hi: pieces[pieces.len() - 1].1,
                modes: acc.count[s],
                discrete,
                analytic,
                abs_sum: acc.abs[s],
                deviation: (discrete - analytic).norm() / acc.abs[s].max(analytic.norm()),
            }
        })
        .collect();
    Ok(rows)
}

/// Shell-by-shell check of the angular reduction behind the response energy:
/// the three pair structures at large time, each with its plane-wave phase.
pub fn box_reduced_integrand_check<T: Scalar>(
    b: &BoxSpec<T>,
    config: &AtomConfig<T>,
    n_shells: usize,
    window: ShellWindow,
) -> Result<Vec<ShellRow<T>>, ModeSumError> {
    b.validate()?;
    let geom = config.triangle()?;
    let limit = b.l / T::lit(4.0);
    if geom.max_distance() >= limit {
        return Err(ModeSumError::GeometryTooLarge {
            max_distance: geom.max_distance().to_f64().unwrap_or(f64::NAN),
            limit: limit.to_f64().unwrap_or(f64::NAN),
        });
    }
    let [ra, rb, rc] = config.positions;
    let (proj_b, proj_a, proj_g) = (
        Projectors::new(&geom.n_ac),
        Projectors::new(&geom.n_bc),
        Projectors::new(&geom.n_ab),
    );
    let (alpha, beta, gamma) = (geom.alpha, geom.beta, geom.gamma);
    let g_b = move |k: T| outgoing_tensor(&proj_b, beta, re(k));
    let g_a = move |k: T| outgoing_tensor(&proj_a, alpha, re(k));
    let g_g = move |k: T| outgoing_tensor(&proj_g, gamma, re(k));

    // Σ_ℓ G^β_ℓm conj(G^α_ℓn) against the phase e^{ik·r_AB}
    let direct = shell_comparison(b, n_shells, window, &(ra - rb), ShellTerm::Direct, |k| {
        pair_product(&g_b(k), &g_a(k).conj())
    })?;
    // (G^β G^γ)_ℓn against e^{−ik·r_CB} = e^{ik·r_BC}
    let via_b = shell_comparison(b, n_shells, window, &(rb - rc), ShellTerm::ViaB, |k| g_b(k).matmul(&g_g(k)))?;
    let via_a = shell_comparison(b, n_shells, window, &(ra - rc), ShellTerm::ViaA, |k| g_a(k).matmul(&g_g(k)))?;
    Ok(direct.into_iter().chain(via_b).chain(via_a).collect())
}

/// Shells of the bare plane wave, which sample `4π sin(kr)/(kr)` when all
/// tensors are replaced by δ (the trace of the projector is 2, hence the ½).
pub fn box_isotropic_check<T: Scalar>(b: &BoxSpec<T>, r: &Vec3<T>, n_shells: usize, window: ShellWindow) -> Result<Vec<ShellRow<T>>, ModeSumError> {
    let half = re(T::lit(0.5));
    shell_comparison(b, n_shells, window, r, ShellTerm::Isotropic, |_| Mat3::<Complex<T>>::identity().map(|x| x * half))
}

/// Shells of the projector alone at zero separation (direction-independent limit).
pub fn box_projector_check<T: Scalar>(b: &BoxSpec<T>, n_shells: usize, window: ShellWindow) -> Result<Vec<ShellRow<T>>, ModeSumError> {
    shell_comparison(b, n_shells, window, &Vec3::zero(), ShellTerm::Projector, |_| Mat3::identity())
}

pub fn max_deviation<T: Scalar>(rows: &[ShellRow<T>]) -> T {
    rows.iter().map(|r| r.deviation).fold(T::zero(), |a, b| a.max(b))
}
