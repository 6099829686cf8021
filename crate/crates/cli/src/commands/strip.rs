use geo3::catalog::Kind;
use geo3::curve;
use geo3::strip::{parallel_normal_field, Strip};

use super::{point_t, spread, vec3, Outcome};
use crate::args::StripCmd;
use crate::output::{num, Report};
use crate::source::{load, require_samples, CliError, Ctx};

pub fn run(cmd: &StripCmd) -> Result<Outcome, CliError> {
    match cmd {
        StripCmd::Invariants { model, normal, rotate, samples } => {
            let ctx = Ctx { command: "strip invariants" };
            require_samples(&ctx, *samples)?;
            let l = load(&ctx, model, Kind::Curve)?;
            let c = l.curve();
            let mut strip = Strip::parse(c.clone(), normal).map_err(|e| ctx.fail(e, Some(normal), None))?;
            if let Some(src) = rotate {
                let angle = geo3::parse_scalar(src, &["t"]).map_err(|e| ctx.fail(e.into(), Some(src), None))?;
                strip = strip.rotate(angle);
            }
            let mut r = Report::new(
                "strip invariants",
                &["t", "kappa_n", "kappa_g", "tau", "kappa", "Nx", "Ny", "Nz"],
            );
            l.describe(&mut r);
            r.param("normal", normal.as_str());
            if let Some(src) = rotate {
                r.param("rotate", src.as_str());
            }
            // κ_n² + κ_g² = κ² holds for any unit normal field.
            let mut gap = 0.0f64;
            for t in c.domain.samples(*samples) {
                let inv = strip.invariants(t).map_err(ctx.at(normal, || point_t(t)))?;
                let frame = strip.adapted_frame(t).map_err(ctx.at(normal, || point_t(t)))?;
                let kappa = curve::curvature_torsion(c, t).map_err(ctx.at(&l.source, || point_t(t)))?.kappa;
                gap = gap.max((inv.kappa_n.hypot(inv.kappa_g) - kappa).abs());
                let mut row = vec![num(t), num(inv.kappa_n), num(inv.kappa_g), num(inv.tau), num(kappa)];
                row.extend(vec3(frame.n));
                r.row(row);
            }
            r.summary("max_curvature_split_gap", num(gap));
            Ok(r.into())
        }
        StripCmd::Parallel { model, normal, phi0, steps, samples } => {
            let ctx = Ctx { command: "strip parallel" };
            require_samples(&ctx, *samples)?;
            let l = load(&ctx, model, Kind::Curve)?;
            let c = l.curve();
            let strip = Strip::parse(c.clone(), normal).map_err(|e| ctx.fail(e, Some(normal), None))?;
            let field = parallel_normal_field(&strip, c.domain, *phi0, *steps)
                .map_err(|e| ctx.fail(e, Some(normal), Some(format!("t in {}", c.domain))))?;
            let mut r = Report::new("strip parallel", &["t", "angle", "Nx", "Ny", "Nz"]);
            l.describe(&mut r);
            r.param("normal", normal.as_str());
            r.param("phi0", num(*phi0));
            r.param("steps", *steps);
            for i in spread(field.t.len(), *samples) {
                let mut row = vec![num(field.t[i]), num(field.angle[i])];
                row.extend(vec3(field.normals[i]));
                r.row(row);
            }
            r.summary("total_rotation", num(field.angle.last().copied().unwrap_or(*phi0) - phi0));
            Ok(r.into())
        }
    }
}
