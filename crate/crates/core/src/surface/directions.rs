//! Asymptotic and principal directions, and the minimality test.

use super::{interior_grid, Local, SecondForm};
use crate::error::{Error, Result};
use crate::expr::SurfaceModel;

/// Solutions of `e du² + 2f du dv + g dv² = 0`, unit in the first form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymptoticDirections {
    None,
    One([f64; 2]),
    Two([f64; 2], [f64; 2]),
    /// Planar point: every direction is asymptotic.
    All,
}

impl AsymptoticDirections {
    pub fn count(&self) -> Option<usize> {
        match self {
            AsymptoticDirections::None => Some(0),
            AsymptoticDirections::One(_) => Some(1),
            AsymptoticDirections::Two(..) => Some(2),
            AsymptoticDirections::All => None,
        }
    }

    pub fn directions(&self) -> Vec<[f64; 2]> {
        match *self {
            AsymptoticDirections::One(a) => vec![a],
            AsymptoticDirections::Two(a, b) => vec![a, b],
            _ => Vec::new(),
        }
    }
}

/// Directions with vanishing normal curvature. Writing the quadratic in the
/// angle `θ` of `(cos θ, sin θ)` gives `A + B cos 2θ + C sin 2θ = 0` with
/// discriminant `B² + C² − A² = f² − eg`.
pub fn asymptotic_directions(first: &super::FirstForm, second: &SecondForm) -> AsymptoticDirections {
    let SecondForm { e, f, g } = *second;
    let tol = 1e-10 * (1.0 + second.norm_sq());
    if second.norm_sq() <= tol {
        return AsymptoticDirections::All;
    }
    let disc = f * f - e * g;
    if disc < -tol {
        return AsymptoticDirections::None;
    }
    let a = 0.5 * (e + g);
    let b = 0.5 * (e - g);
    let r = b.hypot(f);
    let psi = f.atan2(b);
    let spread = (-a / r).clamp(-1.0, 1.0).acos();
    let unit = |theta: f64| {
        let d = [theta.cos(), theta.sin()];
        let n = first.apply(d).sqrt();
        [d[0] / n, d[1] / n]
    };
    if disc <= tol {
        AsymptoticDirections::One(unit(0.5 * (psi + spread)))
    } else {
        AsymptoticDirections::Two(unit(0.5 * (psi + spread)), unit(0.5 * (psi - spread)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointDirections {
    pub u: f64,
    pub v: f64,
    pub asymptotic: AsymptoticDirections,
    /// Eigenvectors of the shape operator for `κ1`, `κ2`.
    pub principal: [[f64; 2]; 2],
    pub umbilic: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinimalityReport {
    pub is_minimal: bool,
    pub max_abs_h: f64,
    pub max_abs_k: f64,
    pub points: Vec<PointDirections>,
}

/// Sweeps a cell-centred `nu × nv` grid; minimal iff `max|H| ≤ 1e−7·(1 + max|K|)`.
pub fn minimality_and_directions(s: &SurfaceModel, nu: usize, nv: usize) -> Result<MinimalityReport> {
    if nu == 0 || nv == 0 {
        return Err(Error::Invalid("grid must be nonempty".into()));
    }
    let mut max_abs_h = 0.0f64;
    let mut max_abs_k = 0.0f64;
    let mut points = Vec::with_capacity(nu * nv);
    for (u, v) in interior_grid(s, nu, nv) {
        let l = Local::new(s, u, v)?;
        let b = l.bundle();
        max_abs_h = max_abs_h.max(b.H.abs());
        max_abs_k = max_abs_k.max(b.K.abs());
        points.push(PointDirections {
            u,
            v,
            asymptotic: asymptotic_directions(&b.first, &b.second),
            principal: [b.d1, b.d2],
            umbilic: b.umbilic,
        });
    }
    Ok(MinimalityReport {
        is_minimal: max_abs_h <= 1e-7 * (1.0 + max_abs_k),
        max_abs_h,
        max_abs_k,
        points,
    })
}
