//! Plane vectors and 2×2 tensors.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    #[inline]
    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the planar cross product.
    #[inline]
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Rotation by −90°: (x, y) ↦ (y, −x).
    #[inline]
    pub fn rot_cw(self) -> Vec2 {
        Vec2::new(self.y, -self.x)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

impl AddAssign for Vec2 {
    #[inline]
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl SubAssign for Vec2 {
    #[inline]
    fn sub_assign(&mut self, o: Vec2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

/// A real 2×2 tensor, row-major: `m[i][j]` multiplies the j-th density
/// component into the i-th target component.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tensor2 {
    pub m: [[f64; 2]; 2],
}

impl Tensor2 {
    pub const ZERO: Tensor2 = Tensor2 { m: [[0.0; 2]; 2] };
    pub const IDENTITY: Tensor2 = Tensor2 { m: [[1.0, 0.0], [0.0, 1.0]] };

    #[inline]
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Tensor2 { m: [[a, b], [c, d]] }
    }

    /// Outer product a ⊗ b, i.e. entries a_i b_j.
    #[inline]
    pub fn outer(a: Vec2, b: Vec2) -> Self {
        Tensor2::new(a.x * b.x, a.x * b.y, a.y * b.x, a.y * b.y)
    }

    #[inline]
    pub fn scaled_identity(s: f64) -> Self {
        Tensor2::new(s, 0.0, 0.0, s)
    }

    #[inline]
    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m[0][0] * v.x + self.m[0][1] * v.y,
            self.m[1][0] * v.x + self.m[1][1] * v.y,
        )
    }

    #[inline]
    pub fn transpose(&self) -> Self {
        Tensor2::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|v| v.is_finite())
    }

    /// `self += s * other`.
    #[inline]
    pub fn add_scaled(&mut self, other: &Tensor2, s: f64) {
        self.m[0][0] += s * other.m[0][0];
        self.m[0][1] += s * other.m[0][1];
        self.m[1][0] += s * other.m[1][0];
        self.m[1][1] += s * other.m[1][1];
    }
}

impl Add for Tensor2 {
    type Output = Tensor2;
    fn add(mut self, o: Tensor2) -> Tensor2 {
        self.add_scaled(&o, 1.0);
        self
    }
}

impl Sub for Tensor2 {
    type Output = Tensor2;
    fn sub(mut self, o: Tensor2) -> Tensor2 {
        self.add_scaled(&o, -1.0);
        self
    }
}

impl Mul<f64> for Tensor2 {
    type Output = Tensor2;
    fn mul(self, s: f64) -> Tensor2 {
        let mut out = Tensor2::ZERO;
        out.add_scaled(&self, s);
        out
    }
}

/// Euclidean l² norm of a vector field.
pub fn field_norm(f: &[Vec2]) -> f64 {
    f.iter().map(|v| v.norm_sq()).sum::<f64>().sqrt()
}

/// ‖a − b‖ / ‖b‖ in the l² sense.
pub fn relative_l2(a: &[Vec2], b: &[Vec2]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(p, q)| (*p - *q).norm_sq()).sum();
    num.sqrt() / field_norm(b)
}
