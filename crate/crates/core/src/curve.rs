//! Geometry of parametrized space curves: regularity, tangent lines, arc length,
//! curvature and torsion, the Frenet apparatus, shape tests and reconstruction
//! from natural equations.

use crate::autodiff::{Jet, JetVec3};
use crate::error::{Error, Result};
use crate::expr::{CurveModel, Expr, Interval};
use crate::numeric::{adaptive_simpson, least_squares3, rk4_step, DEFAULT_QUAD_TOL};
use crate::vec3::{Frame, FrenetFrame, Vec3};

/// Speeds below this are treated as zero.
pub const REGULARITY_TOL: f64 = 1e-9;
/// `‖γ' × γ''‖` at or below this leaves torsion and the normal undefined.
pub const CURVATURE_TOL: f64 = 1e-9;

/// Taylor expansion of the curve map at `t` (no domain check).
pub(crate) fn curve_jet(c: &CurveModel, t: f64) -> Result<JetVec3> {
    let slot = [Jet::variable(t, 0)];
    let mut out = [Jet::constant(0.0); 3];
    for (o, e) in out.iter_mut().zip(&c.components) {
        *o = e.eval_generic(&slot)?;
    }
    Ok(JetVec3(out))
}

fn check_domain(c: &CurveModel, t: f64) -> Result<()> {
    if c.domain.contains(t) {
        Ok(())
    } else {
        Err(Error::OutOfRange {
            value: t,
            lo: c.domain.lo,
            hi: c.domain.hi,
        })
    }
}

/// Point on the curve.
pub fn position(c: &CurveModel, t: f64) -> Result<Vec3> {
    check_domain(c, t)?;
    let mut p = [0.0; 3];
    for (o, e) in p.iter_mut().zip(&c.components) {
        *o = e.eval(&[t])?;
    }
    Ok(Vec3::from_array(p))
}

/// `(γ, γ', γ'', γ''')` at `t`.
pub fn derivatives(c: &CurveModel, t: f64) -> Result<[Vec3; 4]> {
    check_domain(c, t)?;
    let j = curve_jet(c, t)?;
    Ok([0u8, 1, 2, 3].map(|k| j.partial([k, 0, 0])))
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegularityReport {
    pub regular: bool,
    pub min_speed: f64,
    /// Parameter of the slowest sample.
    pub worst_t: f64,
    /// Samples where the model could not be evaluated.
    pub failures: Vec<(f64, String)>,
}

pub fn is_regular(c: &CurveModel, samples: usize) -> Result<RegularityReport> {
    if samples < 2 {
        return Err(Error::Invalid("regularity scan needs at least 2 samples".into()));
    }
    let mut report = RegularityReport {
        regular: true,
        min_speed: f64::INFINITY,
        worst_t: c.domain.lo,
        failures: Vec::new(),
    };
    for t in c.domain.samples(samples) {
        match derivatives(c, t) {
            Ok(d) => {
                let speed = d[1].norm();
                if speed < report.min_speed {
                    report.min_speed = speed;
                    report.worst_t = t;
                }
            }
            Err(e) => report.failures.push((t, e.to_string())),
        }
    }
    report.regular = report.failures.is_empty() && report.min_speed >= REGULARITY_TOL;
    Ok(report)
}

/// Parametrized line `u ↦ point + u·direction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub point: Vec3,
    pub direction: Vec3,
}

impl Line {
    pub fn at(&self, u: f64) -> Vec3 {
        self.point + self.direction * u
    }
}

pub fn tangent_line(c: &CurveModel, t0: f64) -> Result<Line> {
    let d = derivatives(c, t0)?;
    if d[1].norm() < REGULARITY_TOL {
        return Err(Error::ZeroSpeed { t: t0 });
    }
    Ok(Line {
        point: d[0],
        direction: d[1],
    })
}

pub fn speed(c: &CurveModel, t: f64) -> Result<f64> {
    Ok(derivatives(c, t)?[1].norm())
}

/// Length of the arc between parameters `a` and `b` (signed: negative if `b < a`).
pub fn arc_length(c: &CurveModel, a: f64, b: f64) -> Result<f64> {
    arc_length_tol(c, a, b, DEFAULT_QUAD_TOL)
}

pub fn arc_length_tol(c: &CurveModel, a: f64, b: f64, tol: f64) -> Result<f64> {
    check_domain(c, a)?;
    check_domain(c, b)?;
    adaptive_simpson(|t| Ok(curve_jet(c, t)?.partial([1, 0, 0]).norm()), a, b, tol)
}

/// Parameter `t ≥ base` with `arc_length(base, t) = s`.
pub fn param_by_arc_length(c: &CurveModel, s: f64, base: f64) -> Result<f64> {
    check_domain(c, base)?;
    let total = arc_length(c, base, c.domain.hi)?;
    if !(0.0..=total + 1e-10).contains(&s) {
        return Err(Error::OutOfRange {
            value: s,
            lo: 0.0,
            hi: total,
        });
    }
    let (mut lo, mut hi) = (base, c.domain.hi);
    if total > 0.0 {
        let mut t = base + (hi - base) * (s / total);
        for _ in 0..200 {
            let f = arc_length(c, base, t)? - s;
            if f.abs() <= 1e-10 {
                return Ok(t);
            }
            if f < 0.0 {
                lo = t;
            } else {
                hi = t;
            }
            let v = speed(c, t)?;
            let newton = t - f / v;
            // Newton when it stays inside the bracket, otherwise bisect.
            t = if v > REGULARITY_TOL && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= 1e-15 * (1.0 + hi.abs()) {
                return Ok(t);
            }
        }
        return Ok(t);
    }
    Ok(base)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    pub t: f64,
    pub speed: f64,
    pub kappa: f64,
    /// `None` where `γ' × γ''` vanishes.
    pub tau: Option<f64>,
    /// `None` where the principal normal is undefined (`κ = 0`).
    pub frame: Option<FrenetFrame>,
}

pub fn curvature_torsion(c: &CurveModel, t: f64) -> Result<CurvatureReport> {
    check_domain(c, t)?;
    let jet = curve_jet(c, t)?;
    let [p, d1, d2, d3] = [0u8, 1, 2, 3].map(|k| jet.partial([k, 0, 0]));
    let speed = d1.norm();
    if speed < REGULARITY_TOL {
        return Err(Error::ZeroSpeed { t });
    }
    let cross = d1.cross(d2);
    let cn = cross.norm();
    let kappa = cn / speed.powi(3);
    if cn <= CURVATURE_TOL {
        return Ok(CurvatureReport {
            t,
            speed,
            kappa,
            tau: None,
            frame: None,
        });
    }
    let tau = Vec3::triple(d1, d2, d3) / (cn * cn);
    let tangent = jet
        .shift(0)
        .normalized()
        .map_err(|_| Error::ZeroSpeed { t })?;
    let t_prime = tangent.shift(0).value();
    let tv = tangent.value();
    let n = t_prime.normalized().ok_or(Error::ZeroCurvature { t })?;
    Ok(CurvatureReport {
        t,
        speed,
        kappa,
        tau: Some(tau),
        frame: Some(Frame {
            point: p,
            t: tv,
            n,
            b: tv.cross(n),
        }),
    })
}

/// Frenet frame at `t`; fails where `κ = 0`.
pub fn frenet_frame(c: &CurveModel, t: f64) -> Result<FrenetFrame> {
    curvature_torsion(c, t)?
        .frame
        .ok_or(Error::ZeroCurvature { t })
}

/// Plane through `point` with unit `normal`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plane {
    pub point: Vec3,
    pub normal: Vec3,
}

impl Plane {
    pub fn signed_distance(&self, p: Vec3) -> f64 {
        (p - self.point).dot(self.normal)
    }
}

pub fn osculating_plane(c: &CurveModel, t0: f64) -> Result<Plane> {
    let f = frenet_frame(c, t0)?;
    Ok(Plane {
        point: f.point,
        normal: f.b,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Vec3,
    pub radius: f64,
    /// Unit normal of the plane containing the circle.
    pub normal: Vec3,
}

pub fn osculating_circle(c: &CurveModel, t0: f64) -> Result<Circle> {
    let r = curvature_torsion(c, t0)?;
    let f = r.frame.ok_or(Error::ZeroCurvature { t: t0 })?;
    let radius = 1.0 / r.kappa;
    Ok(Circle {
        center: f.point + f.n * radius,
        radius,
        normal: f.b,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeReport {
    pub planar: bool,
    pub general_helix: bool,
    pub spherical: bool,
    pub max_abs_tau: f64,
    pub max_kappa: f64,
    /// Mean and population standard deviation of `τ/κ`.
    pub ratio_mean: f64,
    pub ratio_stdev: f64,
    /// Least-squares common point of the normal planes and its worst residual.
    pub sphere_center: Option<Vec3>,
    pub sphere_residual: f64,
    /// Samples left out because torsion is undefined there.
    pub excluded: Vec<f64>,
}

pub fn shape_tests(c: &CurveModel, samples: usize) -> Result<ShapeReport> {
    if samples < 2 {
        return Err(Error::Invalid("shape tests need at least 2 samples".into()));
    }
    let mut taus = Vec::new();
    let mut kappas = Vec::new();
    let mut excluded = Vec::new();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for t in c.domain.samples(samples) {
        let r = curvature_torsion(c, t)?;
        let d = derivatives(c, t)?;
        let tangent = d[1] / r.speed;
        rows.push(tangent);
        rhs.push(tangent.dot(d[0]));
        match r.tau {
            Some(tau) => {
                taus.push(tau);
                kappas.push(r.kappa);
            }
            None => excluded.push(t),
        }
    }
    if taus.is_empty() {
        return Err(Error::ZeroCurvature { t: excluded[0] });
    }
    let max_abs_tau = taus.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let max_kappa = kappas.iter().fold(0.0f64, |m, &x| m.max(x));
    let ratios: Vec<f64> = taus.iter().zip(&kappas).map(|(t, k)| t / k).collect();
    let n = ratios.len() as f64;
    let ratio_mean = ratios.iter().sum::<f64>() / n;
    let ratio_stdev = (ratios
        .iter()
        .map(|r| (r - ratio_mean).powi(2))
        .sum::<f64>()
        / n)
        .sqrt();
    let mean_abs = ratios.iter().map(|r| r.abs()).sum::<f64>() / n;
    let sphere_center = least_squares3(&rows, &rhs);
    let sphere_residual = match sphere_center {
        Some(center) => rows
            .iter()
            .zip(&rhs)
            .map(|(r, b)| (r.dot(center) - b).abs())
            .fold(0.0, f64::max),
        None => f64::INFINITY,
    };
    Ok(ShapeReport {
        planar: max_abs_tau <= 1e-6 * (1.0 + max_kappa),
        general_helix: ratio_stdev <= 1e-6 * (1.0 + mean_abs),
        spherical: sphere_residual <= 1e-6,
        max_abs_tau,
        max_kappa,
        ratio_mean,
        ratio_stdev,
        sphere_center,
        sphere_residual,
        excluded,
    })
}

/// Frenet frame `(T, N, B)` at the origin aligned with the coordinate axes.
pub fn canonical_frame() -> Frame {
    Frame {
        point: Vec3::ZERO,
        t: Vec3::X,
        n: Vec3::Y,
        b: Vec3::Z,
    }
}

/// Output of [`reconstruct`]: arc-length samples with their frames.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub s: Vec<f64>,
    pub frames: Vec<Frame>,
    /// Uniform step used by the integrator.
    pub step: f64,
}

impl Reconstruction {
    pub fn points(&self) -> Vec<Vec3> {
        self.frames.iter().map(|f| f.point).collect()
    }
}

/// Minimum number of Runge–Kutta steps per unit of arc length.
pub const STEPS_PER_UNIT: f64 = 1000.0;

/// Integrates the Frenet–Serret system for prescribed curvature and torsion
/// (expressions in the single variable `s`, slot 0).
pub fn reconstruct(
    kappa: &Expr,
    tau: &Expr,
    range: Interval,
    init: &Frame,
) -> Result<Reconstruction> {
    if init.orthonormality_defect() > 1e-9 || init.handedness_defect() > 1e-9 {
        return Err(Error::Invalid(
            "initial frame must be orthonormal and right-handed".into(),
        ));
    }
    let steps = (STEPS_PER_UNIT * range.len()).ceil().max(1.0) as usize;
    let h = range.len() / steps as f64;
    let rhs = |s: f64, y: &[f64; 12]| -> Result<[f64; 12]> {
        let k = kappa.eval(&[s])?;
        if k <= 0.0 {
            return Err(Error::ZeroCurvature { t: s });
        }
        let w = tau.eval(&[s])?;
        let t = Vec3::new(y[3], y[4], y[5]);
        let n = Vec3::new(y[6], y[7], y[8]);
        let b = Vec3::new(y[9], y[10], y[11]);
        let dt = n * k;
        let dn = b * w - t * k;
        let db = n * -w;
        Ok([
            t.x, t.y, t.z, dt.x, dt.y, dt.z, dn.x, dn.y, dn.z, db.x, db.y, db.z,
        ])
    };
    let pack = |f: &Frame| -> [f64; 12] {
        let mut y = [0.0; 12];
        for (i, v) in [f.point, f.t, f.n, f.b].iter().enumerate() {
            y[3 * i..3 * i + 3].copy_from_slice(&v.to_array());
        }
        y
    };
    let unpack = |y: &[f64; 12]| Frame {
        point: Vec3::new(y[0], y[1], y[2]),
        t: Vec3::new(y[3], y[4], y[5]),
        n: Vec3::new(y[6], y[7], y[8]),
        b: Vec3::new(y[9], y[10], y[11]),
    };
    // Reject non-positive curvature at the start too, not only inside steps.
    rhs(range.lo, &pack(init))?;
    let mut s_values = Vec::with_capacity(steps + 1);
    let mut frames = Vec::with_capacity(steps + 1);
    let mut frame = *init;
    s_values.push(range.lo);
    frames.push(frame);
    for i in 0..steps {
        let s = range.lo + i as f64 * h;
        let y = rk4_step(&rhs, s, &pack(&frame), h)?;
        frame = unpack(&y);
        frame.gram_schmidt();
        s_values.push(if i + 1 == steps {
            range.hi
        } else {
            range.lo + (i + 1) as f64 * h
        });
        frames.push(frame);
    }
    Ok(Reconstruction {
        s: s_values,
        frames,
        step: h,
    })
}

/// Planar unit-speed curve with curvature `κ(s)` through the origin at `s0`,
/// heading along `+x` there.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarCurve {
    pub s: Vec<f64>,
    /// Turning angle `φ(s) = ∫_{s0}^{s} κ`.
    pub angle: Vec<f64>,
    pub points: Vec<Vec3>,
}

pub fn planar_from_curvature(
    kappa: &Expr,
    range: Interval,
    s0: f64,
    samples: usize,
) -> Result<PlanarCurve> {
    planar_from_curvature_tol(kappa, range, s0, samples, DEFAULT_QUAD_TOL)
}

pub fn planar_from_curvature_tol(
    kappa: &Expr,
    range: Interval,
    s0: f64,
    samples: usize,
    tol: f64,
) -> Result<PlanarCurve> {
    if !range.contains(s0) {
        return Err(Error::OutOfRange {
            value: s0,
            lo: range.lo,
            hi: range.hi,
        });
    }
    if samples < 2 {
        return Err(Error::Invalid("need at least 2 samples".into()));
    }
    let k = |s: f64| -> Result<f64> { Ok(kappa.eval(&[s])?) };
    let s_values = range.samples(samples);
    let mut angle = vec![0.0; samples];
    let mut points = vec![Vec3::ZERO; samples];
    let split = s_values.partition_point(|&s| s < s0);
    // Walk outwards from s0 in both directions, one segment at a time.
    for indices in [
        (split..samples).collect::<Vec<_>>(),
        (0..split).rev().collect::<Vec<_>>(),
    ] {
        let (mut a, mut phi_a, mut p_a) = (s0, 0.0, Vec3::ZERO);
        for i in indices {
            let b = s_values[i];
            let phi = |s: f64| -> Result<f64> { Ok(phi_a + adaptive_simpson(k, a, s, tol)?) };
            let x = adaptive_simpson(|s| Ok(phi(s)?.cos()), a, b, tol)?;
            let y = adaptive_simpson(|s| Ok(phi(s)?.sin()), a, b, tol)?;
            let phi_b = phi(b)?;
            p_a += Vec3::new(x, y, 0.0);
            phi_a = phi_b;
            a = b;
            angle[i] = phi_b;
            points[i] = p_a;
        }
    }
    Ok(PlanarCurve {
        s: s_values,
        angle,
        points,
    })
}
