//! Curves on a surface given in parameter space: geodesic curvature (extrinsic
//! and intrinsic), geodesic tracing and geodesic tests.

use crate::autodiff::{Jet, JetVec3};
use crate::error::{Error, Result};
use crate::expr::{parse_tuple, Expr, Interval, SurfaceModel};
use crate::numeric::{adaptive_simpson, rk4_step, DEFAULT_QUAD_TOL};
use crate::surface::{surface_jet_with, Local};
use crate::vec3::Vec3;

/// `t ↦ x(u(t), v(t))` on a host surface.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamCurve {
    pub surface: SurfaceModel,
    pub u: Expr,
    pub v: Expr,
    pub range: Interval,
}

impl ParamCurve {
    pub fn new(surface: SurfaceModel, u: Expr, v: Expr, range: Interval) -> Self {
        ParamCurve {
            surface,
            u,
            v,
            range,
        }
    }

    /// Parses `"(u(t), v(t)) on [a, b]"`.
    pub fn parse(surface: SurfaceModel, source: &str) -> Result<Self> {
        let tuple = parse_tuple(source, &["t"], 2)?;
        let range = match tuple.ranges.as_slice() {
            [r] => *r,
            _ => {
                return Err(Error::Invalid(
                    "a curve on a surface needs exactly one parameter range".into(),
                ))
            }
        };
        let mut c = tuple.components.into_iter();
        let (u, v) = (c.next().unwrap(), c.next().unwrap());
        Ok(ParamCurve::new(surface, u, v, range))
    }

    fn uv_jets(&self, t: f64) -> Result<[Jet; 2]> {
        if !self.range.contains(t) {
            return Err(Error::OutOfRange {
                value: t,
                lo: self.range.lo,
                hi: self.range.hi,
            });
        }
        let slot = [Jet::variable(t, 0)];
        let uv = [self.u.eval_generic(&slot)?, self.v.eval_generic(&slot)?];
        let (u, v) = (uv[0].value(), uv[1].value());
        if !self.surface.contains(u, v) {
            return Err(Error::LeftDomain { u, v, s: t });
        }
        Ok(uv)
    }

    /// Parameter point and its first two `t`-derivatives.
    pub fn parameter_derivatives(&self, t: f64) -> Result<[[f64; 2]; 3]> {
        let [u, v] = self.uv_jets(t)?;
        let d = |j: &Jet, k: u8| j.partial([k, 0, 0]);
        Ok([
            [d(&u, 0), d(&v, 0)],
            [d(&u, 1), d(&v, 1)],
            [d(&u, 2), d(&v, 2)],
        ])
    }

    /// Jet of the space curve in `t`.
    fn space_jet(&self, t: f64) -> Result<JetVec3> {
        surface_jet_with(&self.surface, self.uv_jets(t)?)
    }

    pub fn point(&self, t: f64) -> Result<Vec3> {
        Ok(self.space_jet(t)?.value())
    }

    pub fn speed(&self, t: f64) -> Result<f64> {
        Ok(self.space_jet(t)?.partial([1, 0, 0]).norm())
    }

    pub fn length(&self) -> Result<f64> {
        adaptive_simpson(|t| self.speed(t), self.range.lo, self.range.hi, DEFAULT_QUAD_TOL)
    }
}

/// `det(n, γ', γ'') / ‖γ'‖³` with `γ', γ''` from the chain rule.
pub fn geodesic_curvature(pc: &ParamCurve, t: f64) -> Result<f64> {
    let [p, _, _] = pc.parameter_derivatives(t)?;
    let n = Local::new(&pc.surface, p[0], p[1])?.n.value();
    let j = pc.space_jet(t)?;
    let (d1, d2) = (j.partial([1, 0, 0]), j.partial([2, 0, 0]));
    let speed = d1.norm();
    if speed < crate::curve::REGULARITY_TOL {
        return Err(Error::ZeroSpeed { t });
    }
    Ok(Vec3::triple(n, d1, d2) / speed.powi(3))
}

/// `√(EG − F²) [(u'v'' − v'u'') + u'B − v'A] / ‖γ'‖³`, where `A` and `B` are the
/// Christoffel contractions `Γ^1_ij u'^i u'^j` and `Γ^2_ij u'^i u'^j`.
pub fn intrinsic_geodesic_curvature(pc: &ParamCurve, t: f64) -> Result<f64> {
    let [p, d1, d2] = pc.parameter_derivatives(t)?;
    let l = Local::new(&pc.surface, p[0], p[1])?;
    let first = l.first();
    let gamma = crate::surface::christoffel(&pc.surface, p[0], p[1])?;
    let [a, b] = gamma.contract(d1, d1);
    let speed = first.apply(d1).sqrt();
    if !(speed >= crate::curve::REGULARITY_TOL) {
        return Err(Error::ZeroSpeed { t });
    }
    let bracket = (d1[0] * d2[1] - d1[1] * d2[0]) + (d1[0] * b - d1[1] * a);
    Ok(first.det().sqrt() * bracket / speed.powi(3))
}

/// Parameter position and velocity of a geodesic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicState {
    pub u: f64,
    pub v: f64,
    pub du: f64,
    pub dv: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicTrace {
    /// Arc length at each sample.
    pub s: Vec<f64>,
    pub states: Vec<GeodesicState>,
    pub points: Vec<Vec3>,
    /// Largest `|I(u', v') − 1|` seen before a renormalisation.
    pub max_energy_drift: f64,
    pub step: f64,
}

/// Minimum number of steps of [`trace_geodesic`].
pub const MIN_GEODESIC_STEPS: usize = 2000;

/// Integrates `u''^k = −Γ^k_ij u'^i u'^j` by RK4 over arc length `length`,
/// renormalising the velocity to unit length in the first form after every
/// step. `steps` is raised to [`MIN_GEODESIC_STEPS`] if smaller.
pub fn trace_geodesic(
    s: &SurfaceModel,
    init: GeodesicState,
    length: f64,
    steps: usize,
) -> Result<GeodesicTrace> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(Error::Invalid(format!("geodesic length {length} must be positive")));
    }
    let start = Local::new(s, init.u, init.v)?;
    let norm0 = start.first().apply([init.du, init.dv]).sqrt();
    if !(norm0 > crate::curve::REGULARITY_TOL) {
        return Err(Error::Invalid("initial velocity must be nonzero".into()));
    }
    let steps = steps.max(MIN_GEODESIC_STEPS);
    let h = length / steps as f64;
    let rhs = |_: f64, y: &[f64; 4]| -> Result<[f64; 4]> {
        let g = crate::surface::structure::christoffel_unchecked(s, y[0], y[1])?;
        let acc = g.contract([y[2], y[3]], [y[2], y[3]]);
        Ok([y[2], y[3], -acc[0], -acc[1]])
    };
    let mut y = [init.u, init.v, init.du / norm0, init.dv / norm0];
    let mut trace = GeodesicTrace {
        s: vec![0.0],
        states: Vec::with_capacity(steps + 1),
        points: Vec::with_capacity(steps + 1),
        max_energy_drift: 0.0,
        step: h,
    };
    let state = |y: &[f64; 4]| GeodesicState {
        u: y[0],
        v: y[1],
        du: y[2],
        dv: y[3],
    };
    trace.states.push(state(&y));
    trace.points.push(start.x.value());
    for i in 0..steps {
        let sv = i as f64 * h;
        y = rk4_step(&rhs, sv, &y, h)?;
        let s_next = (i + 1) as f64 * h;
        if !s.contains(y[0], y[1]) {
            return Err(Error::LeftDomain {
                u: y[0],
                v: y[1],
                s: s_next,
            });
        }
        let l = Local::new(s, y[0], y[1])?;
        let energy = l.first().apply([y[2], y[3]]);
        trace.max_energy_drift = trace.max_energy_drift.max((energy - 1.0).abs());
        let k = energy.sqrt();
        y[2] /= k;
        y[3] /= k;
        trace.s.push(s_next);
        trace.states.push(state(&y));
        trace.points.push(l.x.value());
    }
    Ok(trace)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicCheck {
    pub is_geodesic: bool,
    pub max_abs_kg: f64,
    /// Largest gap between the extrinsic and intrinsic formulas.
    pub max_formula_gap: f64,
    pub length: f64,
    pub threshold: f64,
}

/// Geodesic iff `max|κ_g| ≤ 1e−6·(1 + 1/ℓ)` over the samples, `ℓ` the length of
/// the curve.
pub fn is_geodesic(pc: &ParamCurve, samples: usize) -> Result<GeodesicCheck> {
    if samples < 2 {
        return Err(Error::Invalid("need at least 2 samples".into()));
    }
    let mut max_abs_kg = 0.0f64;
    let mut gap = 0.0f64;
    for t in pc.range.samples(samples) {
        let k = geodesic_curvature(pc, t)?;
        let ki = intrinsic_geodesic_curvature(pc, t)?;
        max_abs_kg = max_abs_kg.max(k.abs());
        gap = gap.max((k - ki).abs());
    }
    let length = pc.length()?;
    let threshold = 1e-6 * (1.0 + 1.0 / length);
    Ok(GeodesicCheck {
        is_geodesic: max_abs_kg <= threshold,
        max_abs_kg,
        max_formula_gap: gap,
        length,
        threshold,
    })
}
