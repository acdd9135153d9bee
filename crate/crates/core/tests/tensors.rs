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

//! Dipole tensors against finite differences, rotations and explicit sums.

mod common;

use common::{fd_tensor, kernel_value, KERNEL_NAMES};
use dyncp::linalg::{Mat3, Vec3};
use dyncp::modesum::{polarization_sum, polarization_vectors};
use dyncp::tensors::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn kernel(name: &str, p: f64) -> KernelKind<f64> {
    match name {
        "oscillatory_out" => KernelKind::OscillatoryOut(p),
        "exponential_decay" => KernelKind::ExponentialDecay(p),
        "exponential_grow" => KernelKind::ExponentialGrow(p),
        "static_coulomb" => KernelKind::StaticCoulomb,
        _ => KernelKind::CosineStanding(p),
    }
}

fn direction() -> impl Strategy<Value = [f64; 3]> {
    (0.0..std::f64::consts::PI, 0.0..2.0 * std::f64::consts::PI)
        .prop_map(|(th, ph): (f64, f64)| [th.sin() * ph.cos(), th.sin() * ph.sin(), th.cos()])
}

/// Rotation matrix from Euler angles z-y-z.
fn rotation(a: f64, b: f64, c: f64) -> Mat3<f64> {
    let rz = |t: f64| Mat3([[t.cos(), -t.sin(), 0.0], [t.sin(), t.cos(), 0.0], [0.0, 0.0, 1.0]]);
    let ry = |t: f64| Mat3([[t.cos(), 0.0, t.sin()], [0.0, 1.0, 0.0], [-t.sin(), 0.0, t.cos()]]);
    rz(a).matmul(&ry(b)).matmul(&rz(c))
}

fn max_rel(a: &Mat3<Complex64>, b: &Mat3<Complex64>) -> f64 {
    let scale = a.max_abs().max(b.max_abs());
    (*a - *b).max_abs() / scale
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn matches_finite_differences(which in 0usize..5, len in 0.3f64..3.0, dir in direction(), kr in 0.0f64..5.0) {
        let name = KERNEL_NAMES[which];
        let x = dir.map(|d| d * len);
        let p = kr / len;
        let analytic = f_tensor(kernel(name, p), Vec3::from_f64(x)).unwrap().entries;
        let fd = Mat3(fd_tensor(|y| kernel_value(name, p, y), x, 1e-4 * len));
        prop_assert!(max_rel(&analytic, &fd) < 1e-6, "{} {}", name, max_rel(&analytic, &fd));
    }

    #[test]
    fn rotation_covariance(which in 0usize..5, len in 0.3f64..3.0, dir in direction(), kr in 0.0f64..5.0,
                           a in 0.0f64..6.3, b in 0.0f64..3.2, c in 0.0f64..6.3) {
        let k = kernel(KERNEL_NAMES[which], kr / len);
        let r = Vec3::from_f64(dir.map(|d| d * len));
        let rot = rotation(a, b, c);
        let rotated = f_tensor(k, rot.apply(&r)).unwrap().entries;
        let rc = rot.to_complex();
        let expected = rc.matmul(&f_tensor(k, r).unwrap().entries).matmul(&rc.transpose());
        prop_assert!(max_rel(&rotated, &expected) < 1e-10);
    }

    #[test]
    fn triad_builds_transverse_projector(dir in direction()) {
        let k = Vec3::<f64>::from_f64(dir);
        let (e1, e2) = polarization_vectors(&k);
        prop_assert!(e1.dot(&k).abs() < 1e-14 && e2.dot(&k).abs() < 1e-14 && e1.dot(&e2).abs() < 1e-14);
        prop_assert!((e1.norm() - 1.0).abs() < 1e-14 && (e2.norm() - 1.0).abs() < 1e-14);
        let p = transverse_projector(&k);
        let explicit = Mat3::outer(&e1, &e1) + Mat3::outer(&e2, &e2);
        prop_assert!((p - explicit).max_abs() < 1e-14);
        prop_assert!((polarization_sum(&k) - p).max_abs() < 1e-14);
        // idempotent, trace two, annihilates k
        prop_assert!((p.matmul(&p) - p).max_abs() < 1e-14);
        prop_assert!((p.trace() - 2.0).abs() < 1e-14);
        prop_assert!(p.apply(&k).norm() < 1e-14);
    }
}

#[test]
fn triple_contraction_is_the_explicit_sum() {
    let r = [Vec3::new(1.0, 0.2, -0.3), Vec3::new(-0.4, 1.1, 0.5), Vec3::new(0.3, -0.7, 0.9)];
    let t: Vec<DipoleTensor<f64>> = [KernelKind::OscillatoryOut(1.3), KernelKind::ExponentialDecay(0.7), KernelKind::CosineStanding(2.1)]
        .iter()
        .zip(r)
        .map(|(&k, r)| f_tensor(k, r).unwrap())
        .collect();
    let mut explicit = Complex64::new(0.0, 0.0);
    for l in 0..3 {
        for m in 0..3 {
            for n in 0..3 {
                explicit += t[0].entries.0[l][m] * t[1].entries.0[l][n] * t[2].entries.0[m][n];
            }
        }
    }
    let lib = triple_contract(&t[0], &t[1], &t[2]);
    assert!((lib - explicit).norm() <= 1e-14 * explicit.norm());
}

#[test]
fn kernel_families_are_related() {
    let r = Vec3::new(0.4, -0.9, 1.3);
    for k in [0.3, 1.0, 4.0] {
        // cos(kR)/R is the real part of e^{ikR}/R
        let out = f_tensor(KernelKind::OscillatoryOut(k), r).unwrap();
        let cos = f_tensor(KernelKind::CosineStanding(k), r).unwrap();
        assert!((out.real_part() - cos.real_part()).max_abs() < 1e-14);
        assert!(cos.is_symmetric() && out.is_symmetric());
        // e^{−uR}/R is e^{ikR}/R at k = iu
        let proj = Projectors::new(&r.normalized().unwrap().0);
        let rotated = outgoing_tensor(&proj, r.norm(), Complex64::new(0.0, k));
        let decay = f_tensor(KernelKind::ExponentialDecay(k), r).unwrap();
        assert!(max_rel(&rotated, &decay.entries) < 1e-14);
    }
}

#[test]
fn near_and_far_zone_limits() {
    let r = Vec3::new(0.0, 0.0, 2.0);
    let coulomb = f_tensor(KernelKind::StaticCoulomb, r).unwrap().real_part();
    let near = f_tensor(KernelKind::CosineStanding(1e-6), r).unwrap().real_part();
    assert!((near - coulomb).max_abs() < 1e-12);
    // far zone: transverse k²/R part dominates
    let k = 1e4;
    let far = f_tensor(KernelKind::OscillatoryOut(k), r).unwrap().entries;
    let phase = Complex64::new(0.0, k * 2.0).exp();
    assert!((far.0[0][0] / (phase * k * k / 2.0) - 1.0).norm() < 1e-3);
    assert!((far.0[2][2] / (phase * k * k / 2.0)).norm() < 1e-3);
}
