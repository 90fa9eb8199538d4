//! 2x2 integer matrices, identified with Z^4 through the basis
//! `(E11, E22, -E21, E12)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2(pub [[BigInt; 2]; 2]);

impl Mat2 {
    pub fn new(m11: impl Into<BigInt>, m12: impl Into<BigInt>, m21: impl Into<BigInt>, m22: impl Into<BigInt>) -> Self {
        Mat2([[m11.into(), m12.into()], [m21.into(), m22.into()]])
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn zero() -> Self {
        Mat2::new(0, 0, 0, 0)
    }

    /// `diag(1, -1)`.
    pub fn j() -> Self {
        Mat2::new(1, 0, 0, -1)
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.0[row][col]
    }

    pub fn det(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn trace(&self) -> BigInt {
        &self.0[0][0] + &self.0[1][1]
    }

    /// The adjugate `((d, -b), (-c, a))`; the standard involution of M2.
    pub fn bar(&self) -> Self {
        let m = &self.0;
        Mat2([[m[1][1].clone(), -&m[0][1]], [-&m[1][0], m[0][0].clone()]])
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let m = &self.0;
        Mat2([[&m[0][0] * k, &m[0][1] * k], [&m[1][0] * k, &m[1][1] * k]])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(Zero::is_zero)
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_unimodular(&self) -> Result<Self> {
        let d = self.det();
        if !d.is_one() {
            return Err(Error::NotUnimodular(d));
        }
        Ok(self.bar())
    }

    /// Coordinates in the basis `(E11, E22, -E21, E12)`.
    pub fn to_coords(&self) -> [BigInt; 4] {
        let m = &self.0;
        [m[0][0].clone(), m[1][1].clone(), -&m[1][0], m[0][1].clone()]
    }

    pub fn from_coords(x: &[BigInt; 4]) -> Self {
        Mat2([[x[0].clone(), x[3].clone()], [-&x[2], x[1].clone()]])
    }

    /// Row-major entries `[m11, m12, m21, m22]`.
    pub fn entries(&self) -> [BigInt; 4] {
        let m = &self.0;
        [m[0][0].clone(), m[0][1].clone(), m[1][0].clone(), m[1][1].clone()]
    }

    pub fn from_entries(e: &[BigInt; 4]) -> Self {
        Mat2([[e[0].clone(), e[1].clone()], [e[2].clone(), e[3].clone()]])
    }
}

/// The symmetric form `Q(x, y) = tr(x * bar(y))`; `Q(x, x) = 2 det(x)`.
pub fn q_pair(x: &Mat2, y: &Mat2) -> BigInt {
    (x * &y.bar()).trace()
}

/// The symplectic form `theta(x, y) = tr(x * j * bar(y))`.
pub fn theta(x: &Mat2, y: &Mat2) -> BigInt {
    (&(x * &Mat2::j()) * &y.bar()).trace()
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &'a Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let entry = |i: usize, k: usize| &a[i][0] * &b[0][k] + &a[i][1] * &b[1][k];
        Mat2([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
    }
}

impl<'a> Add<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;

    fn add(self, rhs: &'a Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [&a[0][0] + &b[0][0], &a[0][1] + &b[0][1]],
            [&a[1][0] + &b[1][0], &a[1][1] + &b[1][1]],
        ])
    }
}

impl<'a> Sub<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;

    fn sub(self, rhs: &'a Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [&a[0][0] - &b[0][0], &a[0][1] - &b[0][1]],
            [&a[1][0] - &b[1][0], &a[1][1] - &b[1][1]],
        ])
    }
}

impl Neg for &Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        let a = &self.0;
        Mat2([[-&a[0][0], -&a[0][1]], [-&a[1][0], -&a[1][1]]])
    }
}

impl Neg for Mat2 {
    type Output = Mat2;

    fn neg(self) -> Mat2 {
        -&self
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "(({}, {}), ({}, {}))", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}
