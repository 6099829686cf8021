use serde_json::Value;

use geo3::catalog::Kind;
use geo3::curve::{self, CurvatureReport};
use geo3::{Expr, Interval};

use super::{nulls, point_t, spread, vec3, Outcome};
use crate::args::CurveCmd;
use crate::output::{num, opt, Report};
use crate::source::{load, require_samples, CliError, Ctx};

pub fn run(cmd: &CurveCmd) -> Result<Outcome, CliError> {
    match cmd {
        CurveCmd::Info { model, at, samples } => {
            let ctx = Ctx { command: "curve info" };
            let l = load(&ctx, model, Kind::Curve)?;
            let c = l.curve();
            let ts = if at.is_empty() {
                require_samples(&ctx, *samples)?;
                c.domain.samples(*samples)
            } else {
                at.clone()
            };
            let mut r = Report::new(
                "curve info",
                &["t", "x", "y", "z", "speed", "kappa", "tau", "radius", "cx", "cy", "cz"],
            );
            l.describe(&mut r);
            for t in ts {
                let rep = curve::curvature_torsion(c, t).map_err(ctx.at(&l.source, || point_t(t)))?;
                let CurvatureReport { speed, kappa, tau, frame, .. } = rep;
                let p = curve::position(c, t).map_err(ctx.at(&l.source, || point_t(t)))?;
                let mut row = vec![num(t)];
                row.extend(vec3(p));
                row.extend([num(speed), num(kappa), opt(tau)]);
                match frame {
                    Some(f) => {
                        let radius = 1.0 / kappa;
                        row.push(num(radius));
                        row.extend(vec3(f.point + f.n * radius));
                    }
                    None => row.extend(nulls::<4>()),
                }
                r.row(row);
            }
            Ok(r.into())
        }
        CurveCmd::Frames { model, samples } => {
            let ctx = Ctx { command: "curve frames" };
            require_samples(&ctx, *samples)?;
            let l = load(&ctx, model, Kind::Curve)?;
            let c = l.curve();
            let mut r = Report::new(
                "curve frames",
                &["t", "x", "y", "z", "Tx", "Ty", "Tz", "Nx", "Ny", "Nz", "Bx", "By", "Bz"],
            );
            l.describe(&mut r);
            let mut undefined = 0;
            for t in c.domain.samples(*samples) {
                let rep = curve::curvature_torsion(c, t).map_err(ctx.at(&l.source, || point_t(t)))?;
                let d = curve::derivatives(c, t).map_err(ctx.at(&l.source, || point_t(t)))?;
                let mut row = vec![num(t)];
                row.extend(vec3(d[0]));
                row.extend(vec3(d[1] / rep.speed));
                match rep.frame {
                    Some(f) => {
                        row.extend(vec3(f.n));
                        row.extend(vec3(f.b));
                    }
                    None => {
                        undefined += 1;
                        row.extend(nulls::<6>());
                    }
                }
                r.row(row);
            }
            r.summary("frenet_undefined", undefined);
            Ok(r.into())
        }
        CurveCmd::Length { model, from, to } => {
            let ctx = Ctx { command: "curve length" };
            let l = load(&ctx, model, Kind::Curve)?;
            let c = l.curve();
            let (a, b) = (from.unwrap_or(c.domain.lo), to.unwrap_or(c.domain.hi));
            let len = curve::arc_length(c, a, b)
                .map_err(|e| ctx.fail(e, Some(&l.source), Some(format!("t in [{a}, {b}]"))))?;
            let mut r = Report::new("curve length", &["from", "to", "length"]);
            l.describe(&mut r);
            r.row(vec![num(a), num(b), num(len)]);
            Ok(r.into())
        }
        CurveCmd::Reparam { model, samples } => {
            let ctx = Ctx { command: "curve reparam" };
            require_samples(&ctx, *samples)?;
            let l = load(&ctx, model, Kind::Curve)?;
            let c = l.curve();
            let base = c.domain.lo;
            let total = curve::arc_length(c, base, c.domain.hi)
                .map_err(|e| ctx.fail(e, Some(&l.source), Some(format!("t in {}", c.domain))))?;
            let mut r = Report::new("curve reparam", &["s", "t", "x", "y", "z"]);
            l.describe(&mut r);
            for s in Interval::new(0.0, total).map_or(vec![0.0], |i| i.samples(*samples)) {
                let t = curve::param_by_arc_length(c, s, base)
                    .map_err(|e| ctx.fail(e, Some(&l.source), Some(format!("s = {s}"))))?;
                let p = curve::position(c, t).map_err(ctx.at(&l.source, || point_t(t)))?;
                let mut row = vec![num(s), num(t)];
                row.extend(vec3(p));
                r.row(row);
            }
            r.summary("length", num(total));
            Ok(r.into())
        }
        CurveCmd::Tests { model, samples } => {
            let ctx = Ctx { command: "curve tests" };
            require_samples(&ctx, *samples)?;
            let l = load(&ctx, model, Kind::Curve)?;
            let c = l.curve();
            let reg = curve::is_regular(c, *samples).map_err(|e| ctx.fail(e, Some(&l.source), None))?;
            let mut r = Report::new("curve tests", &["t", "kappa", "tau", "tau_over_kappa"]);
            l.describe(&mut r);
            if !reg.regular {
                let (t, why) = reg
                    .failures
                    .first()
                    .cloned()
                    .unwrap_or((reg.worst_t, format!("speed {:e} below threshold", reg.min_speed)));
                let mut e = ctx.fail(geo3::Error::ZeroSpeed { t }, Some(&l.source), Some(point_t(t)));
                e.message = format!("curve is not regular: {why}");
                return Err(e);
            }
            let shape = curve::shape_tests(c, *samples).map_err(|e| ctx.fail(e, Some(&l.source), None))?;
            for t in c.domain.samples(*samples) {
                let rep = curve::curvature_torsion(c, t).map_err(ctx.at(&l.source, || point_t(t)))?;
                let ratio = rep.tau.filter(|_| rep.kappa > 0.0).map(|tau| tau / rep.kappa);
                r.row(vec![num(t), num(rep.kappa), opt(rep.tau), opt(ratio)]);
            }
            r.summary("regular", true)
                .summary("min_speed", num(reg.min_speed))
                .summary("planar", shape.planar)
                .summary("general_helix", shape.general_helix)
                .summary("spherical", shape.spherical)
                .summary("max_abs_tau", num(shape.max_abs_tau))
                .summary("tau_over_kappa_mean", num(shape.ratio_mean))
                .summary("tau_over_kappa_stdev", num(shape.ratio_stdev))
                .summary(
                    "sphere_center",
                    shape.sphere_center.map_or(Value::Null, |p| Value::Array(vec3(p).to_vec())),
                )
                .summary("sphere_residual", num(shape.sphere_residual))
                .summary("torsion_undefined", shape.excluded.len());
            Ok(r.into())
        }
        CurveCmd::Reconstruct { kappa, tau, range, planar, samples } => {
            let ctx = Ctx { command: "curve reconstruct" };
            require_samples(&ctx, *samples)?;
            let parse = |src: &str| -> Result<Expr, CliError> {
                geo3::parse_scalar(src, &["s"]).map_err(|e| ctx.fail(e.into(), Some(src), None))
            };
            let k = parse(kappa)?;
            let range = Interval::new(range.0, range.1)
                .map_err(|e| ctx.fail(e.into(), None, Some(format!("s in [{}, {}]", range.0, range.1))))?;
            let mut r;
            if *planar {
                let pc = curve::planar_from_curvature(&k, range, range.lo, *samples)
                    .map_err(|e| ctx.fail(e, Some(kappa), Some(format!("s in {range}"))))?;
                r = Report::new("curve reconstruct", &["s", "x", "y", "angle"]);
                for i in 0..pc.s.len() {
                    r.row(vec![num(pc.s[i]), num(pc.points[i].x), num(pc.points[i].y), num(pc.angle[i])]);
                }
            } else {
                let w = parse(tau)?;
                let rec = curve::reconstruct(&k, &w, range, &curve::canonical_frame())
                    .map_err(|e| ctx.fail(e, Some(kappa), Some(format!("s in {range}"))))?;
                r = Report::new("curve reconstruct", &["s", "x", "y", "z", "Tx", "Ty", "Tz"]);
                for i in spread(rec.s.len(), *samples) {
                    let f = &rec.frames[i];
                    let mut row = vec![num(rec.s[i])];
                    row.extend(vec3(f.point));
                    row.extend(vec3(f.t));
                    r.row(row);
                }
                r.summary("step", num(rec.step));
            }
            r.param("kappa", kappa.as_str());
            if !*planar {
                r.param("tau", tau.as_str());
            }
            r.param("range", format!("{range}"));
            r.param("planar", *planar);
            Ok(r.into())
        }
    }
}
