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

//! Energies checked against closed forms computed here from scratch.

mod common;

use common::*;
use dyncp::geometry::{Atom, AtomConfig};
use dyncp::linalg::Vec3;
use dyncp::polarizability::PolarizabilityModel;
use dyncp::potentials::*;
use dyncp::quadrature::QuadratureSpec;
use rand::{rngs::StdRng, Rng, SeedableRng};
use std::f64::consts::PI;

#[test]
fn response_energy_matches_abel_moments() {
    for p in geometries() {
        let cfg = config(p, stat(1.0));
        let g = cfg.triangle().unwrap();
        // before, between and after the switching times of all three terms
        for ct in [g.alpha.max(g.beta) + 0.01, g.alpha + g.beta + g.gamma, 50.0] {
            let lib = delta_e_c(&cfg, ct, &spec()).unwrap();
            let exact = oracle_response(p, ct);
            assert!(
                (lib.value - exact).abs() <= 1e-9 * exact.abs().max(1e-300),
                "{p:?} ct={ct}: {} vs {exact}",
                lib.value
            );
            assert!(lib.converged);
        }
    }
}

#[test]
fn stationary_energy_matches_moments_and_large_time_limit() {
    for p in geometries() {
        let cfg = config(p, stat(1.0));
        let s = static_three_body(&cfg, &spec()).unwrap();
        let exact = oracle_stationary(p);
        assert!((s.value - exact).abs() < 1e-10 * exact.abs(), "{} vs {exact}", s.value);
        let late = delta_e3_symmetrized(&cfg, 1e3 * cfg.triangle().unwrap().max_distance(), &spec()).unwrap();
        assert!((late.value - s.value).abs() < 1e-9 * s.value.abs());
        let b = late.breakdown.unwrap();
        for part in [b.delta_e_a, b.delta_e_b, b.delta_e_c] {
            assert!((part - s.value).abs() < 1e-9 * s.value.abs());
        }
    }
}

#[test]
fn undamped_resonance_large_time_limit() {
    let m = PolarizabilityModel::single_resonance(1.3, 0.7, 0.0).unwrap();
    for p in geometries().into_iter().take(3) {
        let cfg = config(p, m);
        let s = static_three_body(&cfg, &spec()).unwrap();
        let late = delta_e3_symmetrized(&cfg, 1e4, &spec()).unwrap();
        assert!((late.value - s.value).abs() < 1e-8 * s.value.abs(), "{} {}", late.value, s.value);
    }
}

#[test]
fn damped_resonance_agrees_with_damped_real_axis_integral() {
    let m = PolarizabilityModel::single_resonance(1.0, 1.5, 0.6).unwrap();
    for p in geometries().into_iter().take(3) {
        let cfg = config(p, m);
        for ct in [2.0, 20.0] {
            let a = delta_e_c(&cfg, ct, &spec()).unwrap();
            let b = delta_e_c_regularized(&cfg, ct, &spec()).unwrap();
            let tol = 2.0 * (a.error_estimate + b.error_estimate) + 1e-12;
            assert!((a.value - b.value).abs() <= tol, "{} vs {} (tol {tol})", a.value, b.value);
        }
    }
}

#[test]
fn near_zone_is_axilrod_teller() {
    // three identical undamped oscillators: E = (9/16) k0 α0³ (1 + 3 cos cos cos) / r⁹
    let (k0, a0) = (1.0, 0.8);
    let m = PolarizabilityModel::single_resonance(a0, k0, 0.0).unwrap();
    for p in [geometries()[0], geometries()[1], geometries()[2]] {
        let scale = 1e-4;
        let cfg = config(p, m).with_scaled_positions(scale);
        let g = cfg.triangle().unwrap();
        let (a, b, c) = (g.alpha, g.beta, g.gamma);
        let cos_a = (b * b + c * c - a * a) / (2.0 * b * c);
        let cos_b = (a * a + c * c - b * b) / (2.0 * a * c);
        let cos_c = (a * a + b * b - c * c) / (2.0 * a * b);
        let atm = 9.0 / 16.0 * k0 * a0.powi(3) * (1.0 + 3.0 * cos_a * cos_b * cos_c) / (a * b * c).powi(3);
        let e = static_three_body(&cfg, &spec()).unwrap().value;
        assert!((e - atm).abs() < 1e-3 * atm.abs(), "{e} vs {atm}");
    }
}

#[test]
fn power_laws() {
    let eq = geometries()[0];
    let slope = |m: PolarizabilityModel<f64>, r1: f64, r2: f64| {
        let e = |r: f64| static_three_body(&config(eq, m).with_scaled_positions(r), &spec()).unwrap().value.abs();
        (e(r2).ln() - e(r1).ln()) / (r2 / r1).ln()
    };
    let near = slope(PolarizabilityModel::single_resonance(1.0, 1.0, 0.0).unwrap(), 1e-3, 1e-2);
    assert!((near + 9.0).abs() < 0.05, "{near}");
    let far = slope(stat(1.0), 1.0, 10.0);
    assert!((far + 10.0).abs() < 1e-6, "{far}");
}

#[test]
fn causality_zeros_are_exact() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 100 {
        let p: [[f64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-2.0..2.0)));
        let cfg = config(p, stat(1.0));
        let Ok(g) = cfg.triangle() else { continue };
        if g.min_distance() < 0.05 {
            continue;
        }
        let ct = rng.gen_range(0.0..g.alpha.min(g.beta));
        assert_eq!(delta_e_c(&cfg, ct, &spec()).unwrap().value, 0.0);
        let ct = rng.gen_range(0.0..g.min_distance());
        let r = delta_e3_symmetrized(&cfg, ct, &spec()).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.error_estimate, 0.0);
        checked += 1;
    }
}

#[test]
fn exactly_on_light_cone_is_zero() {
    let p = geometries()[1];
    let cfg = config(p, stat(1.0));
    let g = cfg.triangle().unwrap();
    assert_eq!(delta_e_c(&cfg, g.alpha.max(g.beta), &spec()).unwrap().value, 0.0);
    assert!(delta_e_c(&cfg, g.alpha.max(g.beta) + 1e-6, &spec()).unwrap().value != 0.0);
}

#[test]
fn response_energy_is_piecewise_constant_in_time() {
    let p = geometries()[2];
    let cfg = config(p, stat(1.0));
    let g = cfg.triangle().unwrap();
    let t0 = g.alpha.max(g.beta) + 0.05;
    let a = delta_e_c(&cfg, t0, &spec()).unwrap().value;
    let b = delta_e_c(&cfg, t0 + 0.01, &spec()).unwrap().value;
    assert_eq!(a, b);
}

#[test]
fn spacelike_window_two_paths_agree() {
    let cfg = spacelike_config();
    for ct in [1.05, 1.3, 1.5, 1.85] {
        let a = delta_e3_spacelike_ab(&cfg, ct, &spec()).unwrap();
        let b = delta_e3_symmetrized(&cfg, ct, &spec()).unwrap();
        assert!(a.value.abs() > 10.0 * a.error_estimate);
        assert!((a.value - b.value).abs() <= a.error_estimate + b.error_estimate);
        let bd = b.breakdown.unwrap();
        assert_eq!((bd.delta_e_a, bd.delta_e_b), (0.0, 0.0));
        let c = delta_e_c(&cfg, ct, &spec()).unwrap();
        assert!((c.value / 3.0 - a.value).abs() <= a.error_estimate + c.error_estimate);
    }
    for ct in [0.5, 1.9, 3.0] {
        assert!(matches!(
            delta_e3_spacelike_ab(&cfg, ct, &spec()),
            Err(PotentialError::RegionMismatch { .. })
        ));
    }
}

#[test]
fn spacelike_window_with_resonances() {
    let x = 0.95;
    let y = (1.0f64 - x * x).sqrt();
    let p = [[-x, 0., 0.], [x, 0., 0.], [0., y, 0.]];
    for m in [
        PolarizabilityModel::single_resonance(1.0, 2.0, 0.0).unwrap(),
        PolarizabilityModel::single_resonance(1.0, 2.0, 0.5).unwrap(),
    ] {
        let cfg = config(p, m);
        let a = delta_e3_spacelike_ab(&cfg, 1.5, &spec()).unwrap();
        let b = delta_e3_symmetrized(&cfg, 1.5, &spec()).unwrap();
        assert!((a.value - b.value).abs() <= a.error_estimate + b.error_estimate, "{} {}", a.value, b.value);
    }
}

#[test]
fn pair_energy_matches_exact_rational_value() {
    // γ = 5, α = 12, β = 13; α gate opens at ct = 7, β gate at ct = 8
    for (s, ct, ga, gb) in [(1, 9.0, 2, 2), (1, 7.5, 2, 0), (1, 7.0, 1, 0), (1, 8.0, 2, 1), (2, 18.0, 2, 2)] {
        let lib = delta_e_c_pair(&pair_config(s as f64), ct, &spec()).unwrap();
        let exact = pair_exact(s, ga, gb) / (16.0 * PI);
        assert!((lib.value - exact).abs() < 1e-10 * exact.abs(), "s={s} ct={ct}: {} vs {exact}", lib.value);
    }
}

#[test]
fn pair_energy_gate_and_region() {
    let cfg = pair_config(1.0);
    assert_eq!(delta_e_c_pair(&cfg, 6.0, &spec()).unwrap().value, 0.0);
    // the first nonzero point of a sweep sits at α − γ = 7
    let step = 0.05;
    let first = (0..120)
        .map(|i| 5.05 + step * i as f64)
        .find(|&ct| delta_e_c_pair(&cfg, ct, &spec()).unwrap().value != 0.0)
        .unwrap();
    assert!((first - 7.0).abs() <= step, "{first}");
    for ct in [4.0, 12.5, 20.0] {
        assert!(matches!(delta_e_c_pair(&cfg, ct, &spec()), Err(PotentialError::RegionMismatch { .. })));
    }
}

#[test]
fn every_operation_is_trilinear() {
    let lambda = 1.7;
    type Op = Box<dyn Fn(&AtomConfig<f64>) -> f64>;
    let ops: Vec<(AtomConfig<f64>, Op)> = vec![
        (config(geometries()[2], stat(0.9)), Box::new(|c| delta_e_c(c, 5.0, &spec()).unwrap().value)),
        (config(geometries()[2], stat(0.9)), Box::new(|c| delta_e3_symmetrized(c, 5.0, &spec()).unwrap().value)),
        (spacelike_config(), Box::new(|c| delta_e3_spacelike_ab(c, 1.5, &spec()).unwrap().value)),
        (pair_config(1.0), Box::new(|c| delta_e_c_pair(c, 9.0, &spec()).unwrap().value)),
        (
            config(geometries()[1], PolarizabilityModel::single_resonance(1.0, 0.5, 0.1).unwrap()),
            Box::new(|c| static_three_body(c, &spec()).unwrap().value),
        ),
    ];
    for (cfg, op) in ops {
        let base = op(&cfg);
        let scaled = op(&cfg.with_scaled_polarizabilities(lambda));
        assert!((scaled - lambda.powi(3) * base).abs() <= 1e-10 * base.abs());
        for i in 0..3 {
            let mut one = cfg.clone();
            one.models[i] = one.models[i].scaled(lambda);
            let v = op(&one);
            assert!((v - lambda * base).abs() <= 1e-10 * base.abs());
        }
    }
}

#[test]
fn symmetrized_energy_ignores_labels() {
    let p = geometries()[4];
    let cfg = config(p, stat(1.0));
    let base = delta_e3_symmetrized(&cfg, 3.0, &spec()).unwrap().value;
    assert!(base != 0.0);
    for perm in [[1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]] {
        let v = delta_e3_symmetrized(&cfg.permuted(perm), 3.0, &spec()).unwrap().value;
        assert!((v - base).abs() < 1e-10 * base.abs());
    }
    let mixed = AtomConfig::new(cfg.positions, [stat(1.0), stat(2.0), stat(1.0)]);
    let r = delta_e3_symmetrized(&mixed, 3.0, &spec()).unwrap();
    assert!(r.warnings.iter().any(|w| w == WARN_NON_IDENTICAL));
}

#[test]
fn responder_roles_follow_relabeling() {
    let cfg = config(geometries()[3], stat(1.0));
    let a = delta_e_c(&cfg.with_responder(Atom::A), 10.0, &spec()).unwrap().value;
    // A as responder equals C as responder after moving A into C's slot
    let moved = cfg.permuted([1, 2, 0]);
    let b = delta_e_c(&moved, 10.0, &spec()).unwrap().value;
    assert!((a - b).abs() < 1e-12 * a.abs());
}

#[test]
fn invalid_inputs() {
    let cfg = config(geometries()[0], stat(1.0));
    assert!(matches!(delta_e_c(&cfg, -1.0, &spec()), Err(PotentialError::InvalidTime(_))));
    let coincident = config([[0.; 3], [0.; 3], [1., 0., 0.]], stat(1.0));
    assert!(matches!(static_three_body(&coincident, &spec()), Err(PotentialError::Geometry(_))));
}

#[test]
fn single_precision_pipeline() {
    let p = geometries()[0].map(Vec3::<f32>::from_f64);
    let cfg = AtomConfig::identical(p, PolarizabilityModel::new_static(1.0f32).unwrap());
    let s32 = QuadratureSpec::<f32> {
        rel_tol: 1e-5,
        abs_tol: 1e-8,
        ..Default::default()
    };
    let v = static_three_body(&cfg, &s32).unwrap().value as f64;
    let r = oracle_stationary(geometries()[0]);
    assert!((v - r).abs() < 1e-4 * r.abs());
    let late = delta_e3_symmetrized(&cfg, 1e3f32, &s32).unwrap().value as f64;
    assert!((late - r).abs() < 1e-3 * r.abs(), "{late} {r}");
}
