//! Strips (framed curves): a regular curve together with a unit normal field.
//!
//! With unit tangent `T`, normal `N` and `W := N × T`, the strip invariants are
//! `κ_n = T'·N`, `κ_g = T'·W` and `τ = N'·W`, primes taken in arc length. The
//! reported adapted frame is the right-handed `(T, N, T × N)`, so `W = −B`.

use crate::autodiff::{Jet, JetVec3};
use crate::curve::{curve_jet, REGULARITY_TOL};
use crate::error::{Error, Result};
use crate::expr::{parse_tuple, CurveModel, Expr, Func, Interval};
use crate::numeric::rk4_step;
use crate::vec3::{Frame, Vec3};

/// Tolerance for `‖N‖ = 1` and `N·T = 0`.
pub const FIELD_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub enum NormalField {
    /// Components given as expressions in `t`.
    Explicit([Expr; 3]),
    /// `cos φ·N + sin φ·(N × T)` for the base field `N`.
    Rotated { base: Box<NormalField>, angle: Expr },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Strip {
    pub curve: CurveModel,
    pub normal: NormalField,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripInvariants {
    pub kappa_n: f64,
    pub kappa_g: f64,
    pub tau: f64,
}

impl Strip {
    pub fn new(curve: CurveModel, normal: [Expr; 3]) -> Self {
        Strip {
            curve,
            normal: NormalField::Explicit(normal),
        }
    }

    /// Normal field written as a tuple in `t`, e.g. `"(-sin t, cos t, 0)"`.
    pub fn parse(curve: CurveModel, normal_source: &str) -> Result<Self> {
        let tuple = parse_tuple(normal_source, &["t"], 3)?;
        if !tuple.ranges.is_empty() {
            return Err(Error::Invalid("a normal field takes no domain clause".into()));
        }
        let [a, b, c]: [Expr; 3] = tuple
            .components
            .try_into()
            .map_err(|_| Error::Invalid("normal field needs three components".into()))?;
        Ok(Strip::new(curve, [a, b, c]))
    }

    fn check(&self, t: f64) -> Result<()> {
        if self.curve.domain.contains(t) {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                value: t,
                lo: self.curve.domain.lo,
                hi: self.curve.domain.hi,
            })
        }
    }

    /// Jets of `(speed, T, N)` at `t`; `N` is valid through first order at least.
    fn jets(&self, t: f64) -> Result<(f64, JetVec3, JetVec3)> {
        let gamma = curve_jet(&self.curve, t)?;
        let velocity = gamma.shift(0);
        let speed = velocity.value().norm();
        if speed < REGULARITY_TOL {
            return Err(Error::ZeroSpeed { t });
        }
        let tangent = velocity
            .normalized()
            .map_err(|_| Error::ZeroSpeed { t })?;
        let normal = field_jet(&self.normal, &tangent, t)?;
        Ok((speed, tangent, normal))
    }

    /// Adapted frame `(T, N, T × N)`; fails unless `N` is a unit normal at `t`.
    pub fn adapted_frame(&self, t: f64) -> Result<Frame> {
        self.check(t)?;
        let (_, tangent, normal) = self.jets(t)?;
        let (tv, nv) = (tangent.value(), normal.value());
        validate(tv, nv, t)?;
        Ok(Frame {
            point: curve_jet(&self.curve, t)?.value(),
            t: tv,
            n: nv,
            b: tv.cross(nv),
        })
    }

    pub fn invariants(&self, t: f64) -> Result<StripInvariants> {
        self.check(t)?;
        let (speed, tangent, normal) = self.jets(t)?;
        let (tv, nv) = (tangent.value(), normal.value());
        validate(tv, nv, t)?;
        let dt = tangent.shift(0).value() / speed;
        let dn = normal.shift(0).value() / speed;
        let w = nv.cross(tv);
        Ok(StripInvariants {
            kappa_n: dt.dot(nv),
            kappa_g: dt.dot(w),
            tau: dn.dot(w),
        })
    }

    /// The strip with normal `cos φ·N + sin φ·(N × T)`; `φ` is an expression in `t`.
    pub fn rotate(&self, angle: Expr) -> Strip {
        Strip {
            curve: self.curve.clone(),
            normal: NormalField::Rotated {
                base: Box::new(self.normal.clone()),
                angle,
            },
        }
    }

    /// Speed `‖γ'(t)‖`.
    pub fn speed(&self, t: f64) -> Result<f64> {
        Ok(curve_jet(&self.curve, t)?.shift(0).value().norm())
    }
}

fn validate(t_unit: Vec3, n: Vec3, t: f64) -> Result<()> {
    let unit = (n.norm() - 1.0).abs();
    let dot = n.dot(t_unit).abs();
    if unit > FIELD_TOL || dot > FIELD_TOL {
        return Err(Error::Invalid(format!(
            "normal field at t = {t} is not a unit normal (|‖N‖ − 1| = {unit:.3e}, |N·T| = {dot:.3e})"
        )));
    }
    Ok(())
}

fn field_jet(field: &NormalField, tangent: &JetVec3, t: f64) -> Result<JetVec3> {
    let slot = [Jet::variable(t, 0)];
    match field {
        NormalField::Explicit(components) => {
            let mut out = [Jet::constant(0.0); 3];
            for (o, e) in out.iter_mut().zip(components) {
                *o = e.eval_generic(&slot)?;
            }
            Ok(JetVec3(out))
        }
        NormalField::Rotated { base, angle } => {
            let n = field_jet(base, tangent, t)?;
            let phi = angle.eval_generic(&slot)?;
            let fail = |reason: String| {
                Error::Domain(crate::error::DomainError {
                    subexpr: angle.to_string(),
                    reason,
                })
            };
            let c = crate::autodiff::Scalar::apply(phi, Func::Cos).map_err(fail)?;
            let s = crate::autodiff::Scalar::apply(phi, Func::Sin).map_err(fail)?;
            Ok(n.scale(c).add(&n.cross(tangent).scale(s)))
        }
    }
}

/// Sampled normal field of vanishing strip torsion.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelField {
    pub t: Vec<f64>,
    /// Rotation angle from the original field.
    pub angle: Vec<f64>,
    pub normals: Vec<Vec3>,
}

/// Solves `φ' = −τ·‖γ'‖` from `φ(range.lo) = phi0` with `steps` RK4 steps and
/// rotates the strip normal by `φ`.
pub fn parallel_normal_field(
    strip: &Strip,
    range: Interval,
    phi0: f64,
    steps: usize,
) -> Result<ParallelField> {
    for t in [range.lo, range.hi] {
        strip.check(t)?;
    }
    let steps = steps.max(1);
    let h = range.len() / steps as f64;
    let rhs = |t: f64, _: &[f64; 1]| -> Result<[f64; 1]> {
        Ok([-strip.invariants(t)?.tau * strip.speed(t)?])
    };
    let mut ts = Vec::with_capacity(steps + 1);
    let mut angles = Vec::with_capacity(steps + 1);
    let mut normals = Vec::with_capacity(steps + 1);
    let mut phi = [phi0];
    for i in 0..=steps {
        let t = if i == steps {
            range.hi
        } else {
            range.lo + i as f64 * h
        };
        let frame = strip.adapted_frame(t)?;
        // N × T = −B
        let w = -frame.b;
        ts.push(t);
        angles.push(phi[0]);
        normals.push(frame.n * phi[0].cos() + w * phi[0].sin());
        if i < steps {
            phi = rk4_step(&rhs, t, &phi, h)?;
        }
    }
    Ok(ParallelField {
        t: ts,
        angle: angles,
        normals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse_curve, parse_scalar};
    use crate::numeric::sampled_derivatives;

    fn conical_strip() -> Strip {
        let c = parse_curve("(t cos t, t sin t, t) on [0.5, 6]").unwrap();
        Strip::parse(c, "((-cos t)/sqrt(2), (-sin t)/sqrt(2), 1/sqrt(2))").unwrap()
    }

    #[test]
    fn conical_spiral_frame_is_adapted() {
        let s = conical_strip();
        for t in [0.5, 1.0, 3.0, 6.0] {
            let f = s.adapted_frame(t).unwrap();
            assert!(f.orthonormality_defect() < 1e-12);
            assert!(f.handedness_defect() < 1e-12);
        }
    }

    #[test]
    fn normal_equal_to_tangent_is_rejected() {
        let c = parse_curve("(t, 0, 0) on [0, 1]").unwrap();
        let s = Strip::parse(c, "(1, 0, 0)").unwrap();
        assert!(matches!(s.adapted_frame(0.5), Err(Error::Invalid(_))));
    }

    #[test]
    fn line_has_vanishing_curvatures() {
        let c = parse_curve("(2t, t, 0) on [0, 1]").unwrap();
        let s = Strip::parse(c, "(0, 0, 1)").unwrap();
        let i = s.invariants(0.4).unwrap();
        assert_eq!((i.kappa_n, i.kappa_g), (0.0, 0.0));
    }

    #[test]
    fn circle_strips() {
        let r = 2.0;
        let c = parse_curve("(2cos t, 2sin t, 0) on [0, 2pi]").unwrap();
        let radial = Strip::parse(c.clone(), "(cos t, sin t, 0)").unwrap();
        let i = radial.invariants(1.0).unwrap();
        assert!((i.kappa_n.abs() - 1.0 / r).abs() < 1e-14);
        assert!(i.kappa_g.abs() < 1e-14 && i.tau.abs() < 1e-14);
        let f = radial.adapted_frame(1.0).unwrap();
        assert!((f.b.z.abs() - 1.0).abs() < 1e-14);
        let vertical = Strip::parse(c, "(0, 0, 1)").unwrap();
        let i = vertical.invariants(1.0).unwrap();
        assert!(i.kappa_n.abs() < 1e-14);
        assert!((i.kappa_g.abs() - 1.0 / r).abs() < 1e-14);
        assert!(i.tau.abs() < 1e-14);
    }

    #[test]
    fn rotation_shifts_torsion_by_angle_rate() {
        let s = conical_strip();
        let same = s.rotate(parse_scalar("0", &["t"]).unwrap());
        let turned = s.rotate(parse_scalar("t", &["t"]).unwrap());
        for t in [0.7, 2.0, 5.0] {
            let a = s.invariants(t).unwrap();
            let z = same.invariants(t).unwrap();
            assert!((a.tau - z.tau).abs() < 1e-14);
            let b = turned.invariants(t).unwrap();
            let norm2 = |i: StripInvariants| i.kappa_n.powi(2) + i.kappa_g.powi(2);
            assert!((norm2(a) - norm2(b)).abs() < 1e-8);
            // dφ/ds = φ'(t) / ‖γ'‖
            let rate = 1.0 / s.speed(t).unwrap();
            assert!((b.tau - a.tau - rate).abs() < 1e-6);
        }
    }

    #[test]
    fn parallel_field_of_helix() {
        let c = parse_curve("(cos t, sin t, t) on [0, 6.3]").unwrap();
        let s = Strip::parse(c, "(-cos t, -sin t, 0)").unwrap();
        let range = Interval::new(0.0, 6.0).unwrap();
        let steps = 3000;
        let p = parallel_normal_field(&s, range, 0.0, steps).unwrap();
        // principal normal of the unit helix: strip torsion −1/2, speed √2
        for (t, phi) in p.t.iter().zip(&p.angle) {
            assert!((phi - t / std::f64::consts::SQRT_2).abs() < 1e-9);
        }
        let h = range.len() / steps as f64;
        let mut worst = 0.0f64;
        for i in (3..p.t.len() - 3).step_by(97) {
            let frame = s.adapted_frame(p.t[i]).unwrap();
            let [dn, _, _] = sampled_derivatives(&p.normals, i, h).unwrap();
            let dn = dn / s.speed(p.t[i]).unwrap();
            let w = p.normals[i].cross(frame.t);
            worst = worst.max(dn.dot(w).abs());
        }
        assert!(worst <= 1e-6, "residual torsion {worst}");
        let q = parallel_normal_field(&s, range, 0.4, steps).unwrap();
        for (a, b) in p.angle.iter().zip(&q.angle) {
            assert!((b - a - 0.4).abs() < 1e-6);
        }
    }

    #[test]
    fn torsion_free_strip_needs_no_rotation() {
        let c = parse_curve("(cos t, sin t, 0) on [0, 3]").unwrap();
        let s = Strip::parse(c, "(0, 0, 1)").unwrap();
        let p = parallel_normal_field(&s, Interval::new(0.0, 3.0).unwrap(), 0.0, 100).unwrap();
        assert!(p.angle.iter().all(|a| a.abs() < 1e-14));
    }
}
