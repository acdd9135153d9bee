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

//! Closed-form oracles shared by the integration tests and the acceptance run.
//! Nothing here calls into the library's integrators.

#![allow(dead_code, clippy::needless_range_loop)]

use dyncp::geometry::AtomConfig;
use dyncp::linalg::Vec3;
use dyncp::polarizability::PolarizabilityModel;
use dyncp::quadrature::QuadratureSpec;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::f64::consts::PI;

pub type M = [[Complex64; 3]; 3];

pub fn spec() -> QuadratureSpec<f64> {
    QuadratureSpec::default()
}

pub fn stat(a: f64) -> PolarizabilityModel<f64> {
    PolarizabilityModel::new_static(a).unwrap()
}

pub fn config(p: [[f64; 3]; 3], m: PolarizabilityModel<f64>) -> AtomConfig<f64> {
    AtomConfig::identical(p.map(Vec3::from_f64), m)
}

pub fn geometries() -> Vec<[[f64; 3]; 3]> {
    vec![
        [[0., 0., 0.], [1., 0., 0.], [0.5, 3f64.sqrt() / 2., 0.]],
        [[0., 0., 0.], [3., 0., 0.], [3., 4., 0.]],
        [[0.1, 0.2, -0.3], [1.3, 0.1, 0.4], [0.2, 1.7, 0.5]],
        [[0., 0., 0.], [2., 0., 0.], [1.8, 0.3, 0.2]],
        [[-1., 0.5, 0.], [0.7, -0.2, 1.1], [0.3, 2.2, -0.4]],
    ]
}

// ---- independent Abel-moment evaluation of the response energy (static atoms) ----

pub fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Coefficients (in k) of the amplitude of F[e^{iskR}/R] built directly from its
/// closed form.
pub fn amp_poly(r: [f64; 3], s: f64) -> [M; 3] {
    let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    let n = r.map(|x| x / len);
    let mut out = [[[Complex64::zero(); 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let d = if i == j { 1.0 } else { 0.0 };
            let t = d - n[i] * n[j];
            let l = d - 3.0 * n[i] * n[j];
            out[0][i][j] = Complex64::new(-l / len.powi(3), 0.0);
            out[1][i][j] = Complex64::new(0.0, s * l / len.powi(2));
            out[2][i][j] = Complex64::new(t / len, 0.0);
        }
    }
    out
}

pub fn x_poly(a: &[M; 3], b: &[M; 3], c: &[M; 3]) -> [Complex64; 7] {
    let mut out = [Complex64::zero(); 7];
    for (p, ap) in a.iter().enumerate() {
        for (q, bq) in b.iter().enumerate() {
            for (r, cr) in c.iter().enumerate() {
                let mut sum = Complex64::zero();
                for l in 0..3 {
                    for m in 0..3 {
                        for n in 0..3 {
                            sum += ap[l][m] * bq[l][n] * cr[m][n];
                        }
                    }
                }
                out[p + q + r] += sum;
            }
        }
    }
    out
}

/// ∫₀^∞ Σ c_n kⁿ e^{ika} dk = Σ c_n n! (i/a)^{n+1}
pub fn abel(c: &[Complex64; 7], a: f64) -> Complex64 {
    let mut fact = 1.0;
    let mut total = Complex64::zero();
    for (n, cn) in c.iter().enumerate() {
        if n > 0 {
            fact *= n as f64;
        }
        total += cn * fact * (Complex64::i() / a).powi(n as i32 + 1);
    }
    total
}

pub type K = Vec<(f64, Complex64)>;

pub fn x_int(k1: &K, r1: [f64; 3], k2: &K, r2: [f64; 3], k3: &K, r3: [f64; 3]) -> Complex64 {
    let norm = |r: [f64; 3]| (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    let mut tot = Complex64::zero();
    for &(s1, w1) in k1 {
        for &(s2, w2) in k2 {
            for &(s3, w3) in k3 {
                let c = x_poly(&amp_poly(r1, s1), &amp_poly(r2, s2), &amp_poly(r3, s3));
                let a = s1 * norm(r1) + s2 * norm(r2) + s3 * norm(r3);
                tot += w1 * w2 * w3 * abel(&c, a);
            }
        }
    }
    tot
}

pub fn sg(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

pub fn oracle_response(p: [[f64; 3]; 3], ct: f64) -> f64 {
    let [ra, rb, rc] = p;
    let (rbc, rac, rab) = (sub(rb, rc), sub(ra, rc), sub(ra, rb));
    let n = |r: [f64; 3]| (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    let (al, be, ga) = (n(rbc), n(rac), n(rab));
    if !(ct > al && ct > be) {
        return 0.0;
    }
    let one = Complex64::new(1.0, 0.0);
    let g: K = vec![(1.0, one)];
    let gm: K = vec![(-1.0, one)];
    let s: K = vec![(1.0, Complex64::new(0.0, -0.5)), (-1.0, Complex64::new(0.0, 0.5))];
    let h = |x: f64| -> K {
        vec![
            (-1.0, one * ((1.0 - sg(ga - x + ct)) / 2.0)),
            (1.0, one * ((1.0 - sg(ga + x - ct)) / 2.0)),
        ]
    };
    let t = x_int(&g, rac, &gm, rbc, &s, rab) + x_int(&g, rac, &s, rbc, &h(be), rab) + x_int(&g, rbc, &s, rac, &h(al), rab);
    -(t.re) / PI
}

/// −(1/π)∫du Tr[V V V] for static unit polarizabilities, using exact moments.
pub fn oracle_stationary(p: [[f64; 3]; 3]) -> f64 {
    let [ra, rb, rc] = p;
    let decay = |r: [f64; 3]| {
        // k = iu in the outgoing amplitude
        let [c0, c1, c2] = amp_poly(r, 1.0);
        let i = Complex64::i();
        [c0, c1.map(|row| row.map(|x| x * i)), c2.map(|row| row.map(|x| -x))]
    };
    let (ab, bc, ca) = (sub(ra, rb), sub(rb, rc), sub(rc, ra));
    let c = x_poly(&decay(ab), &decay(ca), &decay(bc));
    let n = |r: [f64; 3]| (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    let a = n(ab) + n(bc) + n(ca);
    let mut fact = 1.0;
    let mut tot = 0.0;
    for (k, ck) in c.iter().enumerate() {
        if k > 0 {
            fact *= k as f64;
        }
        tot += ck.re * fact / a.powi(k as i32 + 1);
    }
    -tot / PI
}

pub fn spacelike_config() -> AtomConfig<f64> {
    // α = β = 1, γ = 1.9: for 1 < ct < 1.9 C sees A and B, A and B are space-like
    let x = 0.95;
    let y = (1.0f64 - x * x).sqrt();
    config([[-x, 0., 0.], [x, 0., 0.], [0., y, 0.]], stat(1.0))
}

// ---- exact rational evaluation of the imaginary-axis pair energy (static atoms) ----

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub type QM = [[Q; 3]; 3];

/// Amplitude polynomial in u of F[e^{∓uR}/R] for an integer vector with integer length.
pub fn q_amp(r: [i64; 3], len: i64, grow: bool) -> [QM; 3] {
    let s = if grow { 1 } else { -1 };
    let mk = |f: &dyn Fn(usize, usize) -> Q| -> QM { std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) };
    let nn = |i: usize, j: usize| q(r[i] * r[j], len * len);
    let d = |i: usize, j: usize| if i == j { Q::one() } else { Q::zero() };
    let t = |i, j| d(i, j) - nn(i, j);
    let l = |i, j| d(i, j) - nn(i, j) * q(3, 1);
    [
        mk(&|i, j| -l(i, j) * q(1, len.pow(3))),
        mk(&|i, j| l(i, j) * q(s, len.pow(2))),
        mk(&|i, j| -t(i, j) * q(1, len)),
    ]
}

pub fn q_contract(a: &[QM; 3], b: &[QM; 3], c: &[QM; 3]) -> Vec<Q> {
    let mut out = vec![Q::zero(); 7];
    for p in 0..3 {
        for r in 0..3 {
            for s in 0..3 {
                let mut sum = Q::zero();
                for l in 0..3 {
                    for m in 0..3 {
                        for n in 0..3 {
                            sum += &a[p][l][m] * &b[r][l][n] * &c[s][m][n];
                        }
                    }
                }
                out[p + r + s] += sum;
            }
        }
    }
    out
}

pub fn q_moments(c: &[Q], a: i64) -> Q {
    let mut fact = Q::one();
    let mut tot = Q::zero();
    for (n, cn) in c.iter().enumerate() {
        if n > 0 {
            fact *= q(n as i64, 1);
        }
        tot += cn * &fact / q(a.pow(n as u32 + 1), 1);
    }
    tot
}

/// 16π·E for A=(0,0,0), B=(5,0,0), C=(5,12,0) scaled by `s` (gates in {0,1,2}).
pub fn pair_exact(s: i64, gate_alpha: i64, gate_beta: i64) -> f64 {
    let (ra, rb, rc) = ([0, 0, 0], [5 * s, 0, 0], [5 * s, 12 * s, 0]);
    let d = |x: [i64; 3], y: [i64; 3]| [x[0] - y[0], x[1] - y[1], x[2] - y[2]];
    let (rac, rbc, rab) = (d(ra, rc), d(rb, rc), d(ra, rb));
    let (alpha, beta, gamma) = (12 * s, 13 * s, 5 * s);
    let mut tot = Q::zero();
    for (gate, vx, x, vy, y) in [(gate_alpha, rac, beta, rbc, alpha), (gate_beta, rbc, alpha, rac, beta)] {
        let t1 = q_contract(&q_amp(vx, x, false), &q_amp(vy, y, true), &q_amp(rab, gamma, false));
        let t2 = q_contract(&q_amp(vx, x, false), &q_amp(vy, y, false), &q_amp(rab, gamma, true));
        tot += q(gate, 1) * (q_moments(&t1, x - y + gamma) + q_moments(&t2, x + y - gamma));
    }
    -tot.to_f64().unwrap()
}

pub fn pair_config(s: f64) -> AtomConfig<f64> {
    config([[0., 0., 0.], [5. * s, 0., 0.], [5. * s, 12. * s, 0.]], stat(1.0))
}

// ---- finite-difference evaluation of F[f] = ∇∇f − δ∇²f ----

/// Scalar kernel `f(R)` of each tensor family, evaluated at a point.
pub fn kernel_value(kind: &str, p: f64, x: [f64; 3]) -> Complex64 {
    let r = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
    match kind {
        "oscillatory_out" => Complex64::new(0.0, p * r).exp() / r,
        "exponential_decay" => Complex64::new((-p * r).exp() / r, 0.0),
        "exponential_grow" => Complex64::new((p * r).exp() / r, 0.0),
        "static_coulomb" => Complex64::new(1.0 / r, 0.0),
        "cosine_standing" => Complex64::new((p * r).cos() / r, 0.0),
        other => panic!("unknown kernel {other}"),
    }
}

pub const KERNEL_NAMES: [&str; 5] = [
    "oscillatory_out",
    "exponential_decay",
    "exponential_grow",
    "static_coulomb",
    "cosine_standing",
];

/// Central second differences of `f` at `x` with step `h`, assembled into
/// `∂i∂j f − δij ∇²f`.
pub fn fd_tensor(f: impl Fn([f64; 3]) -> Complex64, x: [f64; 3], h: f64) -> M {
    let at = |d: [f64; 3]| f([x[0] + d[0], x[1] + d[1], x[2] + d[2]]);
    let e = |i: usize, s: f64| {
        let mut d = [0.0; 3];
        d[i] = s;
        d
    };
    let add = |a: [f64; 3], b: [f64; 3]| [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
    let f0 = at([0.0; 3]);
    let mut hess = [[Complex64::zero(); 3]; 3];
    for i in 0..3 {
        hess[i][i] = (at(e(i, h)) - f0 * 2.0 + at(e(i, -h))) / (h * h);
        for j in 0..i {
            let v = (at(add(e(i, h), e(j, h))) - at(add(e(i, h), e(j, -h))) - at(add(e(i, -h), e(j, h)))
                + at(add(e(i, -h), e(j, -h))))
                / (4.0 * h * h);
            hess[i][j] = v;
            hess[j][i] = v;
        }
    }
    let lap = hess[0][0] + hess[1][1] + hess[2][2];
    let mut out = hess;
    for (i, row) in out.iter_mut().enumerate() {
        row[i] -= lap;
    }
    out
}
