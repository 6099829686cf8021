use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Unit vector, or `None` when the norm is zero or not finite.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// Scalar triple product `det(a, b, c) = a · (b × c)`.
    pub fn triple(a: Vec3, b: Vec3, c: Vec3) -> f64 {
        a.dot(b.cross(c))
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "({:.p$}, {:.p$}, {:.p$})", self.x, self.y, self.z),
            None => write!(f, "({}, {}, {})", self.x, self.y, self.z),
        }
    }
}

/// Point plus an orthonormal right-handed triple, e.g. a Frenet or adapted frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub point: Vec3,
    pub t: Vec3,
    pub n: Vec3,
    pub b: Vec3,
}

/// Frenet apparatus `(T, N, B)` at a curve point.
pub type FrenetFrame = Frame;

impl Frame {
    /// Largest deviation from orthonormality of `(t, n, b)`.
    pub fn orthonormality_defect(&self) -> f64 {
        let units = [self.t, self.n, self.b]
            .iter()
            .map(|v| (v.norm() - 1.0).abs())
            .fold(0.0, f64::max);
        let dots = [self.t.dot(self.n), self.t.dot(self.b), self.n.dot(self.b)]
            .iter()
            .map(|d| d.abs())
            .fold(0.0, f64::max);
        units.max(dots)
    }

    /// `‖b − t × n‖`.
    pub fn handedness_defect(&self) -> f64 {
        (self.b - self.t.cross(self.n)).norm()
    }

    /// Re-orthonormalises by Gram–Schmidt on `(t, n)` and sets `b = t × n`.
    pub fn gram_schmidt(&mut self) {
        let t = self.t.normalized().unwrap_or(Vec3::X);
        let n = (self.n - t * self.n.dot(t)).normalized().unwrap_or(Vec3::Y);
        self.t = t;
        self.n = n;
        self.b = t.cross(n);
    }
}
