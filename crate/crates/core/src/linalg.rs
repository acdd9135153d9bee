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

//! Three-vectors and 3×3 matrices over a generic field.

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3<T>(pub [T; 3]);

impl<T: Scalar> Vec3<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Vec3([x, y, z])
    }

    pub fn zero() -> Self {
        Vec3([T::zero(); 3])
    }

    pub fn from_f64(v: [f64; 3]) -> Self {
        Vec3([T::lit(v[0]), T::lit(v[1]), T::lit(v[2])])
    }

    pub fn dot(&self, other: &Self) -> T {
        self.0[0] * other.0[0] + self.0[1] * other.0[1] + self.0[2] * other.0[2]
    }

    pub fn cross(&self, o: &Self) -> Self {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = o.0;
        Vec3([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn norm(&self) -> T {
        // hypot-style scaling keeps tiny separations from underflowing in f32
        let m = self.0.iter().fold(T::zero(), |m, x| m.max(x.abs()));
        if m == T::zero() {
            return T::zero();
        }
        let s = Vec3([self.0[0] / m, self.0[1] / m, self.0[2] / m]);
        m * s.dot(&s).sqrt()
    }

    pub fn scale(&self, s: T) -> Self {
        Vec3([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    /// Returns `(unit vector, length)`; `None` for the zero vector.
    pub fn normalized(&self) -> Option<(Self, T)> {
        let n = self.norm();
        if n > T::zero() {
            Some((self.scale(T::one() / n), n))
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [
            self.0[0].to_f64().unwrap_or(f64::NAN),
            self.0[1].to_f64().unwrap_or(f64::NAN),
            self.0[2].to_f64().unwrap_or(f64::NAN),
        ]
    }
}

impl<T: Scalar> Add for Vec3<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Vec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl<T: Scalar> Sub for Vec3<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Vec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl<T: Scalar> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl<T> Index<usize> for Vec3<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

/// Dense 3×3 matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat3<E>(pub [[E; 3]; 3]);

impl<E: Copy + Zero + One + Add<Output = E> + Mul<Output = E> + Sub<Output = E>> Mat3<E> {
    pub fn zero() -> Self {
        Mat3([[E::zero(); 3]; 3])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = E::one();
        }
        m
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> E) -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn matmul(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| {
            self.0[i][0] * o.0[0][j] + self.0[i][1] * o.0[1][j] + self.0[i][2] * o.0[2][j]
        })
    }

    pub fn map<F: Copy + Zero + One + Add<Output = F> + Mul<Output = F> + Sub<Output = F>>(
        &self,
        f: impl Fn(E) -> F,
    ) -> Mat3<F> {
        Mat3::from_fn(|i, j| f(self.0[i][j]))
    }

    pub fn scale(&self, s: E) -> Self {
        self.map(|x| x * s)
    }

    pub fn trace(&self) -> E {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    /// `Σ_mn self[m][n]·o[m][n]`.
    pub fn frobenius_dot(&self, o: &Self) -> E {
        let mut acc = E::zero();
        for i in 0..3 {
            for j in 0..3 {
                acc = acc + self.0[i][j] * o.0[i][j];
            }
        }
        acc
    }
}

impl<T: Scalar> Mat3<T> {
    pub fn outer(a: &Vec3<T>, b: &Vec3<T>) -> Self {
        Self::from_fn(|i, j| a[i] * b[j])
    }

    pub fn to_complex(&self) -> Mat3<Complex<T>> {
        self.map(|x| Complex::new(x, T::zero()))
    }

    pub fn apply(&self, v: &Vec3<T>) -> Vec3<T> {
        Vec3([
            self.0[0][0] * v[0] + self.0[0][1] * v[1] + self.0[0][2] * v[2],
            self.0[1][0] * v[0] + self.0[1][1] * v[1] + self.0[1][2] * v[2],
            self.0[2][0] * v[0] + self.0[2][1] * v[1] + self.0[2][2] * v[2],
        ])
    }

    pub fn max_abs(&self) -> T {
        self.0.iter().flatten().fold(T::zero(), |m, x| m.max(x.abs()))
    }
}

impl<T: Scalar> Mat3<Complex<T>> {
    pub fn max_abs(&self) -> T {
        self.0.iter().flatten().fold(T::zero(), |m, x| m.max(x.norm()))
    }

    pub fn conj(&self) -> Self {
        self.map(|x| x.conj())
    }

    pub fn re(&self) -> Mat3<T> {
        self.map(|x| x.re)
    }
}

impl<E: Copy + Add<Output = E>> Add for Mat3<E> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut m = self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[i][j] + o.0[i][j];
            }
        }
        m
    }
}

impl<E: Copy + Zero + PartialEq> Zero for Mat3<E> {
    fn zero() -> Self {
        Mat3([[E::zero(); 3]; 3])
    }

    fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_zero())
    }
}

impl<E: Copy + Add<Output = E>> AddAssign for Mat3<E> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<E: Copy + Sub<Output = E>> Sub for Mat3<E> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let mut m = self;
        for i in 0..3 {
            for j in 0..3 {
                m.0[i][j] = self.0[i][j] - o.0[i][j];
            }
        }
        m
    }
}

impl<E> Index<(usize, usize)> for Mat3<E> {
    type Output = E;
    fn index(&self, (i, j): (usize, usize)) -> &E {
        &self.0[i][j]
    }
}

impl<E> IndexMut<(usize, usize)> for Mat3<E> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut E {
        &mut self.0[i][j]
    }
}

/// `Σ_{ℓmn} t1[ℓ][m]·t2[ℓ][n]·t3[m][n]`.
pub fn contract3<E: Copy + Zero + Add<Output = E> + Mul<Output = E>>(
    t1: &[[E; 3]; 3],
    t2: &[[E; 3]; 3],
    t3: &[[E; 3]; 3],
) -> E {
    let mut acc = E::zero();
    for l in 0..3 {
        for m in 0..3 {
            let a = t1[l][m];
            let mut inner = E::zero();
            for n in 0..3 {
                inner = inner + t2[l][n] * t3[m][n];
            }
            acc = acc + a * inner;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_and_norm() {
        let x = Vec3::new(1.0, 0.0, 0.0);
        let y = Vec3::new(0.0, 1.0, 0.0);
        assert_eq!(x.cross(&y), Vec3::new(0.0, 0.0, 1.0));
        assert!((Vec3::new(3.0f64, 4.0, 0.0).norm() - 5.0).abs() < 1e-15);
        assert!(Vec3::<f64>::zero().normalized().is_none());
    }

    #[test]
    fn contract3_identity() {
        let id = Mat3::<f64>::identity();
        assert_eq!(contract3(&id.0, &id.0, &id.0), 3.0);
    }
}
