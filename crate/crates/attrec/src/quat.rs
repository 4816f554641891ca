//! Quaternion and 3-vector value types shared by every solver.
//!
//! Quaternions are stored as a scalar part plus a 3-vector part and are
//! deliberately *not* constrained to unit norm: the iterates produced by the
//! functional-iteration solvers are non-unit polynomials by construction, and
//! unit-ness is asserted only at the API boundaries that hand out attitudes.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// A 3-vector. Units depend on context: rad/s for angular velocity, rad for
/// rotation vectors and angular increments.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    /// Outer product `self * other^T` as a 3x3 matrix.
    pub fn outer(self, other: Self) -> Mat3 {
        Mat3([
            [self.x * other.x, self.x * other.y, self.x * other.z],
            [self.y * other.x, self.y * other.y, self.y * other.z],
            [self.z * other.x, self.z * other.y, self.z * other.z],
        ])
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// A 3x3 matrix in row-major order. Only what the cubic Rodrigues term needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub const fn zero() -> Self {
        Mat3([[0.0; 3]; 3])
    }

    pub fn mul_vec(self, v: Vec3) -> Vec3 {
        let m = &self.0;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }
}

/// Quaternion with scalar part `s` and vector part `v`.
///
/// General values are unconstrained; see [`Quaternion::normalized`] for the
/// attitude boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    pub s: f64,
    pub v: Vec3,
}

impl Quaternion {
    pub const fn new(s: f64, x: f64, y: f64, z: f64) -> Self {
        Self {
            s,
            v: Vec3::new(x, y, z),
        }
    }

    pub const fn from_parts(s: f64, v: Vec3) -> Self {
        Self { s, v }
    }

    pub const fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 0.0)
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    /// Promote a 3-vector to a zero-scalar (pure) quaternion.
    pub const fn pure(v: Vec3) -> Self {
        Self { s: 0.0, v }
    }

    /// Quaternion exponential of a rotation vector `v = angle * axis`:
    /// `(cos(|v|/2), sin(|v|/2) * v/|v|)`.
    ///
    /// Below |v| = 1e-8 the sin(|v|/2)/|v| factor switches to its two-term
    /// Taylor series so the map stays smooth through the origin.
    pub fn from_rotation_vector(v: Vec3) -> Self {
        let angle = v.norm();
        let half = 0.5 * angle;
        if angle < 1e-8 {
            // sin(a/2)/a = 1/2 - a^2/48 + O(a^4)
            let k = 0.5 - angle * angle / 48.0;
            Self::from_parts(1.0 - half * half / 2.0, v * k)
        } else {
            Self::from_parts(half.cos(), v * (half.sin() / angle))
        }
    }

    /// Unit quaternion of a Rodrigues vector: `q = (2 + g) / sqrt(4 + |g|^2)`.
    ///
    /// Regular for every finite `g`; the encoded rotation angle satisfies
    /// `|g| = 2 tan(angle / 2)`.
    pub fn from_rodrigues(g: Vec3) -> Self {
        let d = (4.0 + g.norm_sq()).sqrt();
        Self::from_parts(2.0 / d, g * (1.0 / d))
    }

    pub fn conjugate(self) -> Self {
        Self::from_parts(self.s, -self.v)
    }

    pub fn norm_sq(self) -> f64 {
        self.s * self.s + self.v.norm_sq()
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dot(self, other: Self) -> f64 {
        self.s * other.s + self.v.dot(other.v)
    }

    pub fn scale(self, k: f64) -> Self {
        Self::from_parts(self.s * k, self.v * k)
    }

    /// Rescale to unit norm. Errors on a degenerate zero-norm value.
    pub fn normalized(self) -> Result<Self> {
        let n = self.norm();
        if n <= 0.0 || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(self.scale(1.0 / n))
    }

    /// Check the attitude invariant | |q| - 1 | <= tol.
    pub fn is_unit(self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    pub fn is_finite(self) -> bool {
        self.s.is_finite() && self.v.is_finite()
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::from_parts(self.s + rhs.s, self.v + rhs.v)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::from_parts(self.s - rhs.s, self.v - rhs.v)
    }
}

/// Hamilton product. Bilinear and norm-multiplicative but not commutative.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        Quaternion::from_parts(
            self.s * rhs.s - self.v.dot(rhs.v),
            rhs.v * self.s + self.v * rhs.s + self.v.cross(rhs.v),
        )
    }
}
