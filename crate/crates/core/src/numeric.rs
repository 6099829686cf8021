//! Quadrature, fixed-step Runge–Kutta, finite-difference stencils and the small
//! amount of dense linear algebra the geometry code needs.

use nalgebra::{Matrix3, SVD};

use crate::error::{Error, Result};
use crate::vec3::Vec3;

pub const SIMPSON_MAX_DEPTH: u32 = 40;
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
///
/// The integrand may fail; the first failure aborts the integration. Non-finite
/// samples are reported as [`Error::Quadrature`].
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    let eval = |x: f64| -> Result<f64> {
        let y = f(x)?;
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Quadrature(format!("integrand is {y} at {x}")))
        }
    };
    let fa = eval(a)?;
    let fb = eval(b)?;
    let m = 0.5 * (a + b);
    let fm = eval(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&eval, a, b, fa, fm, fb, whole, tol, SIMPSON_MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    // Recursion also stops once the interval can no longer be split in f64.
    if depth == 0 || delta.abs() <= 15.0 * tol || m <= a || m >= b {
        return Ok(left + right + delta / 15.0);
    }
    Ok(simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}

/// One classical RK4 step for `y' = f(s, y)`.
pub fn rk4_step<const N: usize, F>(f: &F, s: f64, y: &[f64; N], h: f64) -> Result<[f64; N]>
where
    F: Fn(f64, &[f64; N]) -> Result<[f64; N]>,
{
    let axpy = |base: &[f64; N], k: &[f64; N], c: f64| -> [f64; N] {
        let mut out = *base;
        for i in 0..N {
            out[i] += c * k[i];
        }
        out
    };
    let k1 = f(s, y)?;
    let k2 = f(s + 0.5 * h, &axpy(y, &k1, 0.5 * h))?;
    let k3 = f(s + 0.5 * h, &axpy(y, &k2, 0.5 * h))?;
    let k4 = f(s + h, &axpy(y, &k3, h))?;
    let mut out = *y;
    for i in 0..N {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    Ok(out)
}

/// Fourth-order central stencils `(offsets, weights, divisor power)` for the
/// derivative of order `k <= 3`; the derivative is `Σ w f(x + o h) / h^k`.
pub fn central_stencil(k: usize) -> (&'static [i32], &'static [f64]) {
    match k {
        0 => (&[0], &[1.0]),
        1 => (&[-2, -1, 1, 2], &[1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0]),
        2 => (
            &[-2, -1, 0, 1, 2],
            &[-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0],
        ),
        3 => (
            &[-3, -2, -1, 1, 2, 3],
            &[
                1.0 / 8.0,
                -1.0,
                13.0 / 8.0,
                -13.0 / 8.0,
                1.0,
                -1.0 / 8.0,
            ],
        ),
        _ => panic!("stencils are provided up to third order"),
    }
}

/// Finite-difference derivative of order `k` of a scalar function.
pub fn fd_derivative<F: Fn(f64) -> f64>(f: F, x: f64, k: usize, h: f64) -> f64 {
    let (offs, w) = central_stencil(k);
    let s: f64 = offs
        .iter()
        .zip(w)
        .map(|(&o, &wi)| wi * f(x + f64::from(o) * h))
        .sum();
    s / h.powi(k as i32)
}

/// Finite-difference derivative of order `k` of a vector-valued function.
pub fn fd_derivative_vec<F: Fn(f64) -> Vec3>(f: F, x: f64, k: usize, h: f64) -> Vec3 {
    let (offs, w) = central_stencil(k);
    let mut s = Vec3::ZERO;
    for (&o, &wi) in offs.iter().zip(w) {
        s += f(x + f64::from(o) * h) * wi;
    }
    s / h.powi(k as i32)
}

/// First three derivatives at sample `i` of equally spaced samples (spacing `h`),
/// from fourth-order central stencils. `i` must be at least 3 away from both ends.
pub fn sampled_derivatives(points: &[Vec3], i: usize, h: f64) -> Option<[Vec3; 3]> {
    if i < 3 || i + 3 >= points.len() {
        return None;
    }
    let d = |k: usize| {
        let (offs, w) = central_stencil(k);
        let mut s = Vec3::ZERO;
        for (&o, &wi) in offs.iter().zip(w) {
            s += points[(i as i64 + i64::from(o)) as usize] * wi;
        }
        s / h.powi(k as i32)
    };
    Some([d(1), d(2), d(3)])
}

/// Minimum-norm least-squares solution of `rows · c = rhs` in three unknowns.
pub fn least_squares3(rows: &[Vec3], rhs: &[f64]) -> Option<Vec3> {
    let mut ata = Matrix3::<f64>::zeros();
    let mut atb = nalgebra::Vector3::<f64>::zeros();
    for (r, &b) in rows.iter().zip(rhs) {
        let v = nalgebra::Vector3::new(r.x, r.y, r.z);
        ata += v * v.transpose();
        atb += v * b;
    }
    let scale = ata.abs().max().max(1.0);
    let svd = SVD::new(ata, true, true);
    let x = svd.solve(&atb, 1e-10 * scale).ok()?;
    Some(Vec3::new(x[0], x[1], x[2]))
}

/// Proper rigid motion `p ↦ R p + t` minimising `Σ ‖R p_i + t − q_i‖²` (Kabsch).
#[derive(Debug, Clone, Copy)]
pub struct RigidMotion {
    pub rotation: [[f64; 3]; 3],
    pub translation: Vec3,
}

impl RigidMotion {
    pub fn apply(&self, p: Vec3) -> Vec3 {
        let r = &self.rotation;
        Vec3::new(
            r[0][0] * p.x + r[0][1] * p.y + r[0][2] * p.z,
            r[1][0] * p.x + r[1][1] * p.y + r[1][2] * p.z,
            r[2][0] * p.x + r[2][1] * p.y + r[2][2] * p.z,
        ) + self.translation
    }
}

pub fn rigid_align(points: &[Vec3], targets: &[Vec3]) -> Option<RigidMotion> {
    if points.len() != targets.len() || points.is_empty() {
        return None;
    }
    let n = points.len() as f64;
    let centroid = |ps: &[Vec3]| ps.iter().fold(Vec3::ZERO, |a, &p| a + p) / n;
    let cp = centroid(points);
    let cq = centroid(targets);
    let mut h = Matrix3::<f64>::zeros();
    for (p, q) in points.iter().zip(targets) {
        let a = *p - cp;
        let b = *q - cq;
        h += nalgebra::Vector3::new(a.x, a.y, a.z) * nalgebra::RowVector3::new(b.x, b.y, b.z);
    }
    let svd = SVD::new(h, true, true);
    let u = svd.u?;
    let vt = svd.v_t?;
    let mut d = Matrix3::identity();
    if (vt.transpose() * u.transpose()).determinant() < 0.0 {
        d[(2, 2)] = -1.0;
    }
    let r = vt.transpose() * d * u.transpose();
    let rotation = [
        [r[(0, 0)], r[(0, 1)], r[(0, 2)]],
        [r[(1, 0)], r[(1, 1)], r[(1, 2)]],
        [r[(2, 0)], r[(2, 1)], r[(2, 2)]],
    ];
    let mut motion = RigidMotion {
        rotation,
        translation: Vec3::ZERO,
    };
    motion.translation = cq - motion.apply(cp);
    Some(motion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn simpson_integrates_sine() {
        let v = adaptive_simpson(|x| Ok(x.sin()), 0.0, PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-11);
    }

    #[test]
    fn simpson_propagates_failures() {
        let r = adaptive_simpson(|x| Ok(1.0 / x), 0.0, 1.0, 1e-10);
        assert!(r.is_err());
    }

    #[test]
    fn rk4_exponential() {
        let f = |_s: f64, y: &[f64; 1]| Ok([y[0]]);
        let mut y = [1.0];
        let h = 1e-3;
        for i in 0..1000 {
            y = rk4_step(&f, i as f64 * h, &y, h).unwrap();
        }
        assert!((y[0] - 1f64.exp()).abs() < 1e-12);
    }

    #[test]
    fn stencils_differentiate_cubics_exactly() {
        let f = |x: f64| x * x * x - 2.0 * x;
        assert!((fd_derivative(f, 0.5, 1, 0.1) - (3.0 * 0.25 - 2.0)).abs() < 1e-12);
        assert!((fd_derivative(f, 0.5, 2, 0.1) - 3.0).abs() < 1e-10);
        assert!((fd_derivative(f, 0.5, 3, 0.1) - 6.0).abs() < 1e-9);
    }

    #[test]
    fn least_squares_picks_min_norm() {
        let rows = [Vec3::X, Vec3::Y, Vec3::new(1.0, 1.0, 0.0)];
        let c = least_squares3(&rows, &[1.0, 2.0, 3.0]).unwrap();
        assert!((c - Vec3::new(1.0, 2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn kabsch_recovers_rotation() {
        let pts = [Vec3::X, Vec3::Y, Vec3::Z, Vec3::new(1.0, 2.0, 3.0)];
        // quarter turn about z plus a shift
        let moved: Vec<Vec3> = pts
            .iter()
            .map(|p| Vec3::new(-p.y, p.x, p.z) + Vec3::new(1.0, 0.0, -2.0))
            .collect();
        let m = rigid_align(&pts, &moved).unwrap();
        for (p, q) in pts.iter().zip(&moved) {
            assert!((m.apply(*p) - *q).norm() < 1e-12);
        }
    }
}
