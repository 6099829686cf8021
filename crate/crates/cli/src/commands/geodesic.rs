use geo3::catalog::Kind;
use geo3::geodesy::{
    geodesic_curvature, intrinsic_geodesic_curvature, is_geodesic, trace_geodesic, GeodesicState, ParamCurve,
};

use super::{point_t, spread, vec3, Outcome};
use crate::args::GeodesicCmd;
use crate::output::{num, Report};
use crate::source::{load, require_samples, tolerance, CliError, Ctx};

/// Default bound on `|κ_g − κ_g,intrinsic|` for `geodesic check`.
pub const FORMULA_GAP_TOL: f64 = 1e-6;

pub fn run(cmd: &GeodesicCmd, tol_flag: Option<f64>) -> Result<Outcome, CliError> {
    match cmd {
        GeodesicCmd::Trace { model, init, length, steps, samples } => {
            let ctx = Ctx { command: "geodesic trace" };
            require_samples(&ctx, *samples)?;
            let [u, v, du, dv]: [f64; 4] = init
                .as_slice()
                .try_into()
                .map_err(|_| ctx.usage(format!("--init needs u,v,du,dv, got {} numbers", init.len())))?;
            let l = load(&ctx, model, Kind::Surface)?;
            let s = l.surface();
            let trace = trace_geodesic(s, GeodesicState { u, v, du, dv }, *length, *steps)
                .map_err(|e| ctx.fail(e, Some(&l.source), Some(format!("start (u, v) = ({u}, {v})"))))?;
            let mut r = Report::new("geodesic trace", &["s", "u", "v", "du", "dv", "x", "y", "z"]);
            l.describe(&mut r);
            r.param("init", format!("{u},{v},{du},{dv}"));
            r.param("length", num(*length));
            r.param("steps", *steps);
            for i in spread(trace.s.len(), *samples) {
                let st = &trace.states[i];
                let mut row = vec![num(trace.s[i]), num(st.u), num(st.v), num(st.du), num(st.dv)];
                row.extend(vec3(trace.points[i]));
                r.row(row);
            }
            r.summary("step", num(trace.step));
            r.summary("max_energy_drift", num(trace.max_energy_drift));
            Ok(r.into())
        }
        GeodesicCmd::Check { model, curve, samples } => {
            let ctx = Ctx { command: "geodesic check" };
            require_samples(&ctx, *samples)?;
            let tol = tolerance(&ctx, tol_flag)?.unwrap_or(FORMULA_GAP_TOL);
            let l = load(&ctx, model, Kind::Surface)?;
            let pc = ParamCurve::parse(l.surface().clone(), curve).map_err(|e| ctx.fail(e, Some(curve), None))?;
            let mut r = Report::new(
                "geodesic check",
                &["t", "u", "v", "x", "y", "z", "kappa_g", "kappa_g_intrinsic", "gap"],
            );
            l.describe(&mut r);
            r.param("curve", curve.as_str());
            for t in pc.range.samples(*samples) {
                let at = ctx.at(curve, || point_t(t));
                let [p, _, _] = pc.parameter_derivatives(t).map_err(&at)?;
                let k = geodesic_curvature(&pc, t).map_err(&at)?;
                let ki = intrinsic_geodesic_curvature(&pc, t).map_err(&at)?;
                let mut row = vec![num(t), num(p[0]), num(p[1])];
                row.extend(vec3(pc.point(t).map_err(&at)?));
                row.extend([num(k), num(ki), num((k - ki).abs())]);
                r.row(row);
            }
            let check = is_geodesic(&pc, *samples).map_err(|e| ctx.fail(e, Some(curve), None))?;
            let agree = check.max_formula_gap <= tol;
            r.summary("is_geodesic", check.is_geodesic)
                .summary("max_abs_kappa_g", num(check.max_abs_kg))
                .summary("geodesic_threshold", num(check.threshold))
                .summary("length", num(check.length))
                .summary("max_formula_gap", num(check.max_formula_gap))
                .summary("tol_formula_gap", num(tol))
                .summary("passed", agree);
            Ok(Outcome {
                report: r,
                check_failed: !agree,
            })
        }
    }
}
