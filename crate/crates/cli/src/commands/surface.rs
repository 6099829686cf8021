use std::collections::BTreeMap;

use serde_json::Value;

use geo3::catalog::Kind;
use geo3::surface::{
    self, classify, gauss_weingarten_residual, interior_grid, intrinsic_k, koszul_check,
    normal_identities_check, Christoffel,
};
use geo3::SurfaceModel;

use super::{point_uv, vec3, Outcome};
use crate::args::{PointArgs, SurfaceCmd};
use crate::output::{num, Report};
use crate::source::{load, tolerance, CliError, Ctx, Loaded};

/// Grid used when neither `--at` nor `--grid` is given.
const DEFAULT_GRID: (usize, usize) = (5, 5);

/// Sample points closer than this to a documented singular line of a catalog
/// chart are skipped by `surface check`.
pub const SINGULAR_MARGIN: f64 = 1e-2;

/// Default tolerances of `surface check`; `--tol` or `GEO3_TOLERANCE` replaces all.
pub const KOSZUL_TOL: f64 = 1e-7;
pub const GAUSS_WEINGARTEN_TOL: f64 = 1e-7;
pub const EGREGIUM_TOL: f64 = 1e-6;
pub const NORMAL_IDENTITY_TOL: f64 = 1e-7;

/// Offsets of the parallel surfaces checked against `1 − 2Ha + Ka²`.
pub const PARALLEL_OFFSETS: [f64; 2] = [0.05, 0.1];

fn points(ctx: &Ctx, s: &SurfaceModel, p: &PointArgs) -> Result<Vec<(f64, f64)>, CliError> {
    match (p.at, p.grid) {
        (Some((u, v)), None) => {
            if !s.contains(u, v) {
                return Err(ctx.fail(
                    geo3::Error::Invalid(format!("point outside {}x{}", s.u_range, s.v_range)),
                    None,
                    Some(point_uv(u, v)),
                ));
            }
            Ok(vec![(u, v)])
        }
        (None, g) => {
            let (nu, nv) = g.unwrap_or(DEFAULT_GRID);
            Ok(interior_grid(s, nu, nv))
        }
        (Some(_), Some(_)) => Err(ctx.usage("--at and --grid are exclusive")),
    }
}

fn header(l: &Loaded, name: &str, columns: &[&str]) -> Report {
    let mut r = Report::new(name, columns);
    l.describe(&mut r);
    r
}

pub fn run(cmd: &SurfaceCmd, tol_flag: Option<f64>) -> Result<Outcome, CliError> {
    match cmd {
        SurfaceCmd::Forms { model, points: pa } => {
            let ctx = Ctx { command: "surface forms" };
            let l = load(&ctx, model, Kind::Surface)?;
            let s = l.surface();
            let mut r = header(
                &l,
                "surface forms",
                &["u", "v", "x", "y", "z", "E", "F", "G", "e", "f", "g", "nx", "ny", "nz"],
            );
            for (u, v) in points(&ctx, s, pa)? {
                let b = surface::shape_and_curvatures(s, u, v).map_err(ctx.at(&l.source, || point_uv(u, v)))?;
                let p = surface::tangent_plane(s, u, v).map_err(ctx.at(&l.source, || point_uv(u, v)))?.point;
                let mut row = vec![num(u), num(v)];
                row.extend(vec3(p));
                row.extend([b.first.E, b.first.F, b.first.G, b.second.e, b.second.f, b.second.g].map(num));
                row.extend(vec3(b.n));
                r.row(row);
            }
            Ok(r.into())
        }
        SurfaceCmd::Curvatures { model, points: pa } => {
            let ctx = Ctx { command: "surface curvatures" };
            let l = load(&ctx, model, Kind::Surface)?;
            let s = l.surface();
            let mut r = header(
                &l,
                "surface curvatures",
                &["u", "v", "K", "H", "k1", "k2", "d1u", "d1v", "d2u", "d2v", "umbilic"],
            );
            for (u, v) in points(&ctx, s, pa)? {
                let b = surface::shape_and_curvatures(s, u, v).map_err(ctx.at(&l.source, || point_uv(u, v)))?;
                let mut row: Vec<Value> =
                    [u, v, b.K, b.H, b.k1, b.k2, b.d1[0], b.d1[1], b.d2[0], b.d2[1]].map(num).to_vec();
                row.push(b.umbilic.into());
                r.row(row);
            }
            Ok(r.into())
        }
        SurfaceCmd::Classify { model, points: pa } => {
            let ctx = Ctx { command: "surface classify" };
            let l = load(&ctx, model, Kind::Surface)?;
            let s = l.surface();
            let mut r = header(&l, "surface classify", &["u", "v", "class", "K"]);
            let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
            for (u, v) in points(&ctx, s, pa)? {
                let b = surface::shape_and_curvatures(s, u, v).map_err(ctx.at(&l.source, || point_uv(u, v)))?;
                let class = classify(&b.second).name();
                *counts.entry(class).or_default() += 1;
                r.row(vec![num(u), num(v), class.into(), num(b.K)]);
            }
            for name in ["elliptic", "hyperbolic", "parabolic", "planar"] {
                r.summary(name, counts.get(name).copied().unwrap_or(0));
            }
            Ok(r.into())
        }
        SurfaceCmd::Christoffel { model, points: pa } => {
            let ctx = Ctx { command: "surface christoffel" };
            let l = load(&ctx, model, Kind::Surface)?;
            let s = l.surface();
            let mut cols = vec!["u", "v"];
            cols.extend(Christoffel::NAMES);
            let mut r = header(&l, "surface christoffel", &cols);
            for (u, v) in points(&ctx, s, pa)? {
                let g = surface::christoffel(s, u, v).map_err(ctx.at(&l.source, || point_uv(u, v)))?;
                let mut row = vec![num(u), num(v)];
                row.extend(g.six().map(num));
                r.row(row);
            }
            Ok(r.into())
        }
        SurfaceCmd::Check { model, grid } => {
            let ctx = Ctx { command: "surface check" };
            let tol = tolerance(&ctx, tol_flag)?;
            let l = load(&ctx, model, Kind::Surface)?;
            let s = l.surface();
            let mut r = header(
                &l,
                "surface check",
                &["u", "v", "koszul", "gauss_weingarten", "egregium", "gauss_map", "parallel"],
            );
            r.param("grid", format!("{}x{}", grid.0, grid.1));
            let names = ["koszul", "gauss_weingarten", "egregium", "gauss_map", "parallel"];
            let limits = match tol {
                Some(t) => [t; 5],
                None => [KOSZUL_TOL, GAUSS_WEINGARTEN_TOL, EGREGIUM_TOL, NORMAL_IDENTITY_TOL, NORMAL_IDENTITY_TOL],
            };
            let mut worst = [0.0f64; 5];
            let mut skipped = 0;
            for (u, v) in interior_grid(s, grid.0, grid.1) {
                if l.entry.as_ref().is_some_and(|e| e.singular_distance(u, v) < SINGULAR_MARGIN) {
                    skipped += 1;
                    continue;
                }
                let at = ctx.at(&l.source, || point_uv(u, v));
                let kz = koszul_check(s, u, v).map_err(&at)?;
                let gw = gauss_weingarten_residual(s, u, v).map_err(&at)?.max();
                let k = surface::shape_and_curvatures(s, u, v).map_err(&at)?.K;
                let eg = (intrinsic_k(s, u, v).map_err(&at)? - k).abs();
                let mut gm = 0.0f64;
                let mut par = 0.0f64;
                for a in PARALLEL_OFFSETS {
                    let id = normal_identities_check(s, u, v, a).map_err(&at)?;
                    gm = gm.max(id.gauss_map);
                    par = par.max(id.parallel);
                }
                let vals = [kz, gw, eg, gm, par];
                for (w, x) in worst.iter_mut().zip(vals) {
                    // NaN must fail the check, so it is kept rather than ignored by max.
                    *w = if x.is_nan() { x } else { w.max(x) };
                }
                let mut row = vec![num(u), num(v)];
                row.extend(vals.map(num));
                r.row(row);
            }
            let mut failed = Vec::new();
            for i in 0..5 {
                let ok = worst[i] <= limits[i];
                if !ok {
                    failed.push(names[i]);
                }
                r.summary(&format!("max_{}", names[i]), num(worst[i]));
                r.summary(&format!("tol_{}", names[i]), num(limits[i]));
            }
            let max_residual = worst.iter().copied().fold(0.0, f64::max);
            r.summary("max_residual", num(max_residual));
            r.summary("skipped_near_singular", skipped);
            r.summary("passed", failed.is_empty());
            if !failed.is_empty() {
                r.summary("failed", failed.join(","));
            }
            Ok(Outcome {
                check_failed: !failed.is_empty(),
                report: r,
            })
        }
    }
}
