//! Pointwise geometry of parametrized surfaces `x(u, v)`.
//!
//! The unit normal is always `n = x_u × x_v / ‖x_u × x_v‖`; sign-sensitive
//! quantities (`e, f, g`, `H`, `κ1`, `κ2`) refer to that orientation. The shape
//! operator is `S = I⁻¹ II`, so `n_u = −(S₁₁ x_u + S₂₁ x_v)`.

mod directions;
mod implicit;
pub(crate) mod structure;

pub use directions::{
    asymptotic_directions, minimality_and_directions, AsymptoticDirections, MinimalityReport,
    PointDirections,
};
pub use implicit::ImplicitSurface;
pub use structure::{
    christoffel, gauss_weingarten_residual, intrinsic_k, koszul_check, normal_identities_check,
    Christoffel, GaussWeingarten, NormalIdentities,
};

use crate::autodiff::{Jet, JetVec3};
use crate::error::{Error, Result};
use crate::expr::SurfaceModel;
use crate::vec3::Vec3;

/// `‖x_u × x_v‖` below this marks an irregular point.
pub const REGULARITY_TOL: f64 = 1e-9;

/// Taylor expansion of the surface map with arbitrary jets substituted for `u`
/// and `v` (this is how curves on the surface get their chain rule).
pub(crate) fn surface_jet_with(s: &SurfaceModel, uv: [Jet; 2]) -> Result<JetVec3> {
    let mut out = [Jet::constant(0.0); 3];
    for (o, e) in out.iter_mut().zip(&s.components) {
        *o = e.eval_generic(&uv)?;
    }
    Ok(JetVec3(out))
}

fn surface_jet(s: &SurfaceModel, u: f64, v: f64) -> Result<JetVec3> {
    surface_jet_with(s, [Jet::variable(u, 0), Jet::variable(v, 1)])
}

fn check_domain(s: &SurfaceModel, u: f64, v: f64) -> Result<()> {
    for (x, r) in [(u, s.u_range), (v, s.v_range)] {
        if !r.contains(x) {
            return Err(Error::OutOfRange {
                value: x,
                lo: r.lo,
                hi: r.hi,
            });
        }
    }
    Ok(())
}

/// All partial derivatives of `x` through third order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceJet {
    pub x: Vec3,
    pub xu: Vec3,
    pub xv: Vec3,
    pub xuu: Vec3,
    pub xuv: Vec3,
    pub xvv: Vec3,
    pub xuuu: Vec3,
    pub xuuv: Vec3,
    pub xuvv: Vec3,
    pub xvvv: Vec3,
}

pub fn jets(s: &SurfaceModel, u: f64, v: f64) -> Result<SurfaceJet> {
    check_domain(s, u, v)?;
    let j = surface_jet(s, u, v)?;
    let p = |a: u8, b: u8| j.partial([a, b, 0]);
    Ok(SurfaceJet {
        x: p(0, 0),
        xu: p(1, 0),
        xv: p(0, 1),
        xuu: p(2, 0),
        xuv: p(1, 1),
        xvv: p(0, 2),
        xuuu: p(3, 0),
        xuuv: p(2, 1),
        xuvv: p(1, 2),
        xvvv: p(0, 3),
    })
}

/// Everything derived from the jet of `x` at one regular point.
pub(crate) struct Local {
    pub u: f64,
    pub v: f64,
    pub x: JetVec3,
    pub xu: JetVec3,
    pub xv: JetVec3,
    /// Unit normal; exact through second order.
    pub n: JetVec3,
    /// `E, F, G` as jets; exact through second order.
    pub metric: [Jet; 3],
}

impl Local {
    pub fn new(s: &SurfaceModel, u: f64, v: f64) -> Result<Local> {
        check_domain(s, u, v)?;
        Local::unchecked(s, u, v)
    }

    /// Skips the domain check; used by integrators that probe just outside it.
    pub fn unchecked(s: &SurfaceModel, u: f64, v: f64) -> Result<Local> {
        let x = surface_jet(s, u, v)?;
        let xu = x.shift(0);
        let xv = x.shift(1);
        let cross = xu.cross(&xv);
        if !(cross.value().norm() >= REGULARITY_TOL) {
            return Err(Error::IrregularSurface { u, v });
        }
        let n = cross
            .normalized()
            .map_err(|_| Error::IrregularSurface { u, v })?;
        let metric = [xu.dot(&xu), xu.dot(&xv), xv.dot(&xv)];
        Ok(Local {
            u,
            v,
            x,
            xu,
            xv,
            n,
            metric,
        })
    }

    pub fn first(&self) -> FirstForm {
        let [e, f, g] = self.metric.map(|j| j.value());
        FirstForm { E: e, F: f, G: g }
    }

    pub fn second(&self) -> SecondForm {
        let n = self.n.value();
        let p = |a: u8, b: u8| self.x.partial([a, b, 0]).dot(n);
        SecondForm {
            e: p(2, 0),
            f: p(1, 1),
            g: p(0, 2),
        }
    }

    /// `(n_u, n_v)` from the differentiated unit normal.
    pub fn normal_derivatives(&self) -> (Vec3, Vec3) {
        (
            self.n.partial([1, 0, 0]),
            self.n.partial([0, 1, 0]),
        )
    }
}

/// Coefficients of the first fundamental form.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstForm {
    pub E: f64,
    pub F: f64,
    pub G: f64,
}

impl FirstForm {
    /// `EG − F²`.
    pub fn det(&self) -> f64 {
        self.E * self.G - self.F * self.F
    }

    pub fn apply(&self, d: [f64; 2]) -> f64 {
        self.E * d[0] * d[0] + 2.0 * self.F * d[0] * d[1] + self.G * d[1] * d[1]
    }
}

/// Coefficients of the second fundamental form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondForm {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl SecondForm {
    pub fn det(&self) -> f64 {
        self.e * self.g - self.f * self.f
    }

    pub fn apply(&self, d: [f64; 2]) -> f64 {
        self.e * d[0] * d[0] + 2.0 * self.f * d[0] * d[1] + self.g * d[1] * d[1]
    }

    /// Squared Frobenius norm `e² + 2f² + g²`.
    pub fn norm_sq(&self) -> f64 {
        self.e * self.e + 2.0 * self.f * self.f + self.g * self.g
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceRegularity {
    pub regular: bool,
    pub min_cross: f64,
    pub worst: (f64, f64),
    pub failures: Vec<((f64, f64), String)>,
}

/// Scans an endpoint-inclusive `nu × nv` grid for the minimum of `‖x_u × x_v‖`.
pub fn is_regular_surface(s: &SurfaceModel, nu: usize, nv: usize) -> Result<SurfaceRegularity> {
    if nu < 2 || nv < 2 {
        return Err(Error::Invalid("regularity grid must be at least 2x2".into()));
    }
    let mut report = SurfaceRegularity {
        regular: true,
        min_cross: f64::INFINITY,
        worst: (s.u_range.lo, s.v_range.lo),
        failures: Vec::new(),
    };
    for u in s.u_range.samples(nu) {
        for v in s.v_range.samples(nv) {
            match jets(s, u, v) {
                Ok(j) => {
                    let c = j.xu.cross(j.xv).norm();
                    if c < report.min_cross {
                        report.min_cross = c;
                        report.worst = (u, v);
                    }
                }
                Err(e) => report.failures.push(((u, v), e.to_string())),
            }
        }
    }
    report.regular = report.failures.is_empty() && report.min_cross >= REGULARITY_TOL;
    Ok(report)
}

/// Cell-centred `nu × nv` grid strictly inside the parameter rectangle.
pub fn interior_grid(s: &SurfaceModel, nu: usize, nv: usize) -> Vec<(f64, f64)> {
    let vs = s.v_range.interior(nv);
    s.u_range
        .interior(nu)
        .into_iter()
        .flat_map(|u| vs.iter().map(move |&v| (u, v)))
        .collect()
}

pub fn gauss_map(s: &SurfaceModel, u: f64, v: f64) -> Result<Vec3> {
    Ok(Local::new(s, u, v)?.n.value())
}

/// `(n_u, n_v)`, the partial derivatives of the Gauss map.
pub fn gauss_map_derivatives(s: &SurfaceModel, u: f64, v: f64) -> Result<(Vec3, Vec3)> {
    Ok(Local::new(s, u, v)?.normal_derivatives())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentPlane {
    pub point: Vec3,
    pub normal: Vec3,
    /// Spanning vectors of the parametric form `point + a·xu + b·xv`.
    pub xu: Vec3,
    pub xv: Vec3,
}

impl TangentPlane {
    pub fn at(&self, a: f64, b: f64) -> Vec3 {
        self.point + self.xu * a + self.xv * b
    }
}

pub fn tangent_plane(s: &SurfaceModel, u: f64, v: f64) -> Result<TangentPlane> {
    let l = Local::new(s, u, v)?;
    Ok(TangentPlane {
        point: l.x.value(),
        normal: l.n.value(),
        xu: l.xu.value(),
        xv: l.xv.value(),
    })
}

pub fn first_form(s: &SurfaceModel, u: f64, v: f64) -> Result<FirstForm> {
    Ok(Local::new(s, u, v)?.first())
}

pub fn second_form(s: &SurfaceModel, u: f64, v: f64) -> Result<SecondForm> {
    Ok(Local::new(s, u, v)?.second())
}

/// Angle between the parameter lines, in `(0, π)`.
pub fn parametric_angle(s: &SurfaceModel, u: f64, v: f64) -> Result<f64> {
    let i = first_form(s, u, v)?;
    Ok(i.det().max(0.0).sqrt().atan2(i.F))
}

/// Fundamental forms, curvatures and Christoffel symbols at a point.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormBundle {
    pub u: f64,
    pub v: f64,
    pub first: FirstForm,
    pub second: SecondForm,
    pub n: Vec3,
    /// Shape operator `I⁻¹ II`, row-major.
    pub shape: [[f64; 2]; 2],
    pub K: f64,
    pub H: f64,
    pub k1: f64,
    pub k2: f64,
    /// Principal directions in parameter space, unit in the first form.
    pub d1: [f64; 2],
    pub d2: [f64; 2],
    pub umbilic: bool,
    pub christoffel: Christoffel,
}

impl Local {
    pub fn bundle(&self) -> FormBundle {
        let first = self.first();
        let second = self.second();
        let FirstForm { E, F, G } = first;
        let SecondForm { e, f, g } = second;
        let det = first.det();
        let shape = [
            [(G * e - F * f) / det, (G * f - F * g) / det],
            [(E * f - F * e) / det, (E * g - F * f) / det],
        ];
        let h = 0.5 * (shape[0][0] + shape[1][1]);
        // Discriminant written to stay accurate near umbilics and never go negative.
        let half_gap = 0.5 * (shape[0][0] - shape[1][1]);
        let disc = (half_gap * half_gap + shape[0][1] * shape[1][0]).max(0.0);
        let root = disc.sqrt();
        let (k1, k2) = (h + root, h - root);
        let umbilic = (k1 - k2).abs() <= 1e-8 * (1.0 + k1.abs());
        let (d1, d2) = if umbilic {
            (
                unit_in(&first, [1.0, 0.0]),
                unit_in(&first, [-F, E]),
            )
        } else {
            (
                unit_in(&first, eigenvector(&shape, k1)),
                unit_in(&first, eigenvector(&shape, k2)),
            )
        };
        FormBundle {
            u: self.u,
            v: self.v,
            first,
            second,
            n: self.n.value(),
            shape,
            K: second.det() / det,
            H: h,
            k1,
            k2,
            d1,
            d2,
            umbilic,
            christoffel: structure::christoffel_from(self),
        }
    }
}

fn eigenvector(s: &[[f64; 2]; 2], lambda: f64) -> [f64; 2] {
    let a = [s[0][1], lambda - s[0][0]];
    let b = [lambda - s[1][1], s[1][0]];
    let na = a[0].hypot(a[1]);
    let nb = b[0].hypot(b[1]);
    if na >= nb {
        a
    } else {
        b
    }
}

fn unit_in(first: &FirstForm, d: [f64; 2]) -> [f64; 2] {
    let n = first.apply(d).sqrt();
    [d[0] / n, d[1] / n]
}

pub fn shape_and_curvatures(s: &SurfaceModel, u: f64, v: f64) -> Result<FormBundle> {
    Ok(Local::new(s, u, v)?.bundle())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    Elliptic,
    Hyperbolic,
    Parabolic,
    Planar,
}

impl PointClass {
    pub fn name(self) -> &'static str {
        match self {
            PointClass::Elliptic => "elliptic",
            PointClass::Hyperbolic => "hyperbolic",
            PointClass::Parabolic => "parabolic",
            PointClass::Planar => "planar",
        }
    }
}

/// Classification by the sign of `eg − f²`, with tolerance `1e−10·(1 + ‖II‖²)`.
pub fn classify(second: &SecondForm) -> PointClass {
    let tol = 1e-10 * (1.0 + second.norm_sq());
    let d = second.det();
    if d > tol {
        PointClass::Elliptic
    } else if d < -tol {
        PointClass::Hyperbolic
    } else if second.norm_sq() <= tol {
        PointClass::Planar
    } else {
        PointClass::Parabolic
    }
}

pub fn classify_point(s: &SurfaceModel, u: f64, v: f64) -> Result<PointClass> {
    Ok(classify(&second_form(s, u, v)?))
}

/// `II(d) / I(d)` for the tangent direction `d = (du, dv)`.
pub fn normal_curvature(s: &SurfaceModel, u: f64, v: f64, dir: [f64; 2]) -> Result<f64> {
    let l = Local::new(s, u, v)?;
    let i = l.first().apply(dir);
    if !(i > 0.0) {
        return Err(Error::Invalid("direction must be nonzero".into()));
    }
    Ok(l.second().apply(dir) / i)
}

/// `κ1 cos²θ + κ2 sin²θ`, `θ` measured from the first principal direction.
pub fn euler_curvature(s: &SurfaceModel, u: f64, v: f64, theta: f64) -> Result<f64> {
    let b = shape_and_curvatures(s, u, v)?;
    Ok(b.k1 * theta.cos().powi(2) + b.k2 * theta.sin().powi(2))
}

/// Normal curvatures at or below this are treated as asymptotic.
pub const ASYMPTOTIC_TOL: f64 = 1e-9;

/// Tilts the normal section of direction `dir` by each angle `φ`, builds the
/// osculating circle of the tilted section (radius `R_n cos φ`) and returns the
/// largest `|‖α(t) − c_n‖² − R_n²|` over the circles, `c_n` the centre of the
/// normal section's circle.
pub fn meusnier_check(
    s: &SurfaceModel,
    u: f64,
    v: f64,
    dir: [f64; 2],
    angles: &[f64],
) -> Result<f64> {
    let l = Local::new(s, u, v)?;
    let i = l.first().apply(dir);
    if !(i > 0.0) {
        return Err(Error::Invalid("direction must be nonzero".into()));
    }
    let mut kn = l.second().apply(dir) / i;
    if kn.abs() <= ASYMPTOTIC_TOL {
        return Err(Error::AsymptoticDirection {
            u,
            v,
            du: dir[0],
            dv: dir[1],
        });
    }
    let mut n = l.n.value();
    if kn < 0.0 {
        n = -n;
        kn = -kn;
    }
    let p = l.x.value();
    let t = (l.xu.value() * dir[0] + l.xv.value() * dir[1]) / i.sqrt();
    let b = n.cross(t);
    let rn = 1.0 / kn;
    let cn = p + n * rn;
    let mut worst = 0.0f64;
    for &phi in angles {
        if phi.cos() <= 0.0 {
            return Err(Error::Invalid(format!("tilt angle {phi} must lie in (−π/2, π/2)")));
        }
        let normal = n * phi.cos() + b * phi.sin();
        let r = phi.cos() * rn;
        let c = p + normal * r;
        for k in 0..64 {
            let a = std::f64::consts::TAU * k as f64 / 64.0;
            let alpha = c + (t * a.cos() + normal * a.sin()) * r;
            worst = worst.max(((alpha - cn).norm_sq() - rn * rn).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests;
