//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use geo3::catalog::{self, Model};
use geo3::curve::{curvature_torsion, tangent_line};
use geo3::geodesy::{
    geodesic_curvature, intrinsic_geodesic_curvature, is_geodesic, trace_geodesic, GeodesicState, ParamCurve,
};
use geo3::surface::{
    gauss_map, gauss_weingarten_residual, interior_grid, intrinsic_k, is_regular_surface, koszul_check,
    meusnier_check, minimality_and_directions, normal_identities_check, shape_and_curvatures,
};
use geo3::{parse_curve, parse_scalar, parse_surface, Interval, Vec3};
use rand::Rng;

type Outcome = (bool, String);

fn closed_form_curves() -> Outcome {
    let mut worst = 0.0f64;
    for r in [0.5, 1.0, 2.0, 5.0] {
        let c = catalog::make("circle", &[("r", r)]).unwrap();
        for t in c.curve().unwrap().domain.samples(17) {
            let rep = curvature_torsion(c.curve().unwrap(), t).unwrap();
            worst = worst.max((rep.kappa - 1.0 / r).abs()).max(rep.tau.unwrap().abs());
        }
    }
    let mut rng = common::rng(1);
    for _ in 0..20 {
        let (r, h) = (rng.gen_range(0.1..5.0), rng.gen_range(0.1..5.0));
        let c = catalog::make("helix", &[("r", r), ("h", h)]).unwrap();
        let d = r * r + h * h;
        for t in c.curve().unwrap().domain.samples(9) {
            let rep = curvature_torsion(c.curve().unwrap(), t).unwrap();
            worst = worst.max((rep.kappa - r / d).abs()).max((rep.tau.unwrap() - h / d).abs());
        }
    }
    (worst <= 1e-8, format!("max |error| = {worst:.2e} (tol 1e-8)"))
}

fn printed_checks() -> Outcome {
    let circle = parse_curve("(cos(t), sin(t), 0) on [0, 2*pi]").unwrap();
    let line = tangent_line(&circle, FRAC_PI_4).unwrap();
    let mut tangent_err = 0.0f64;
    for u in [-2.0, -0.5, 0.0, 0.3, 1.0, 4.0] {
        let want = Vec3::new(1.0 - u, 1.0 + u, 0.0) * FRAC_1_SQRT_2;
        // equality up to the rounding of cos(π/4) and sin(π/4)
        tangent_err = tangent_err.max((line.at(u) - want).norm() / (1.0 + f64::abs(u)));
    }
    let tangent_ok = tangent_err <= 4.0 * f64::EPSILON;
    let helicoid = parse_surface("(sinh(u)*cos(v), sinh(u)*sin(v), v) on [-2,2]x[0,2*pi]").unwrap();
    let mut normal_err = 0.0f64;
    for (u, v) in interior_grid(&helicoid, 7, 7) {
        let w = Vec3::new(v.sin(), -v.cos(), u.sinh()) * u.cosh();
        normal_err = normal_err.max((gauss_map(&helicoid, u, v).unwrap() - w / w.norm()).norm());
    }
    let torus = catalog::make("torus", &[("R", 2.0), ("r", 1.0)]).unwrap();
    let reg = is_regular_surface(torus.surface().unwrap(), 50, 50).unwrap();
    (
        tangent_ok && normal_err <= 1e-9 && reg.regular,
        format!(
            "tangent line err {tangent_err:.1e} (<= 4 eps), helicoid normal err {normal_err:.1e} (tol 1e-9), torus 50x50 regular = {} (min |xu x xv| = {:.3})",
            reg.regular, reg.min_cross
        ),
    )
}

fn frenet_suite() -> Outcome {
    let mut worst = common::FrenetResidual::default();
    for e in common::frenet_curves() {
        let r = common::frenet_residual(e.curve().unwrap(), 50);
        worst.frenet = worst.frenet.max(r.frenet);
        worst.darboux = worst.darboux.max(r.darboux);
    }
    (
        worst.frenet <= 1e-5 && worst.darboux <= 1e-5,
        format!(
            "20 curves x 50 points: Frenet residual {:.2e}, Darboux residual {:.2e} (tol 1e-5)",
            worst.frenet, worst.darboux
        ),
    )
}

fn fundamental_theorem() -> Outcome {
    let half = parse_scalar("0.5", &["s"]).unwrap();
    let (hk, ht) = common::reconstruction_roundtrip(&half, &half, Interval::new(0.0, 10.0).unwrap());
    let mut rng = common::rng(4);
    let (k, t) = common::random_trig_pair(&mut rng);
    let (rk, rt) = common::reconstruction_roundtrip(&k, &t, Interval::new(0.0, 6.0).unwrap());
    let align = common::constant_helix_alignment(0.5, 0.5, 2.0 * PI * 2f64.sqrt());
    let worst = hk.max(ht).max(rk).max(rt);
    (
        worst <= 1e-4 && align <= 1e-6,
        format!("(kappa, tau) round trip {worst:.2e} (tol 1e-4), aligned helix endpoint {align:.2e} (tol 1e-6)"),
    )
}

fn egregium() -> Outcome {
    let mut worst = 0.0f64;
    for e in common::egregium_surfaces() {
        let s = e.surface().unwrap();
        for (u, v) in common::regular_grid(&e, 20, 20, 1e-2) {
            let k = shape_and_curvatures(s, u, v).unwrap().K;
            worst = worst.max((intrinsic_k(s, u, v).unwrap() - k).abs());
        }
    }
    (worst <= 1e-6, format!("6 surfaces x 20x20: max |K_int - K_ext| = {worst:.2e} (tol 1e-6)"))
}

fn structure_suite() -> Outcome {
    let (mut kz, mut gw, mut gm, mut par) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut count = 0;
    for e in common::catalog_surfaces() {
        let s = e.surface().unwrap();
        count += 1;
        for (u, v) in common::regular_grid(&e, 10, 10, 1e-2) {
            kz = kz.max(koszul_check(s, u, v).unwrap());
            gw = gw.max(gauss_weingarten_residual(s, u, v).unwrap().max());
            for a in [0.05, 0.1] {
                let r = normal_identities_check(s, u, v, a).unwrap();
                gm = gm.max(r.gauss_map);
                par = par.max(r.parallel);
            }
        }
    }
    let worst = kz.max(gw).max(gm).max(par);
    (
        worst <= 1e-7,
        format!(
            "{count} surfaces: Koszul {kz:.1e}, Gauss-Weingarten {gw:.1e}, Gauss map {gm:.1e}, parallel {par:.1e} (tol 1e-7)"
        ),
    )
}

fn minimality() -> Outcome {
    let mut worst_h = 0.0f64;
    for name in ["helicoid", "catenoid", "enneper"] {
        let e = catalog::make(name, &[]).unwrap();
        let r = minimality_and_directions(e.surface().unwrap(), 20, 20).unwrap();
        worst_h = worst_h.max(r.max_abs_h);
    }
    let en = catalog::make("enneper", &[]).unwrap();
    let s = en.surface().unwrap();
    let (mut eg, mut f) = (0.0f64, 0.0f64);
    for (u, v) in interior_grid(s, 20, 20) {
        let b = shape_and_curvatures(s, u, v).unwrap();
        eg = eg.max((b.first.E - b.first.G).abs());
        f = f.max(b.first.F.abs());
    }
    (
        worst_h <= 1e-7 && eg <= 1e-8 && f <= 1e-8,
        format!("max|H| = {worst_h:.1e} (tol 1e-7); Enneper |E-G| = {eg:.1e}, |F| = {f:.1e} (tol 1e-8)"),
    )
}

fn geodesics() -> Outcome {
    let sphere = catalog::make("sphere", &[]).unwrap().surface().unwrap().clone();
    let mut lat = 0.0f64;
    let mut gap = 0.0f64;
    for u0 in [0.0, FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
        let pc = ParamCurve::parse(sphere.clone(), &format!("({u0:?}, t) on [0, 6.28]")).unwrap();
        for t in pc.range.samples(13) {
            let k = geodesic_curvature(&pc, t).unwrap();
            let ki = intrinsic_geodesic_curvature(&pc, t).unwrap();
            lat = lat.max((k.abs() - u0.tan().abs()).abs());
            gap = gap.max((k - ki).abs());
        }
    }
    let helicoid = parse_surface("(u*cos(v), u*sin(v), v) on [-2,2]x[0,2*pi]").unwrap();
    let beta = ParamCurve::parse(helicoid, "(t, 0) on [-2, 2]").unwrap();
    let hel = is_geodesic(&beta, 41).unwrap();
    gap = gap.max(hel.max_formula_gap);
    let init = GeodesicState { u: 0.0, v: 0.0, du: 0.0, dv: 1.0 };
    let tr = trace_geodesic(&sphere, init, 2.0 * PI, 4000).unwrap();
    let close = (*tr.points.last().unwrap() - tr.points[0]).norm();
    (
        lat <= 1e-6 && hel.max_abs_kg <= 1e-6 && close <= 1e-5 && gap <= 1e-6,
        format!(
            "latitude err {lat:.1e}, helicoid ray max|kg| {:.1e} (tol 1e-6), equator closure {close:.1e} (tol 1e-5), formula gap {gap:.1e} (tol 1e-6)",
            hel.max_abs_kg
        ),
    )
}

fn autodiff() -> Outcome {
    let outcomes = common::jet_fd_suite(500, 2024);
    let passed = outcomes.iter().filter(|o| o.passes(1e-6)).count();
    let worst = outcomes.iter().map(|o| o.worst_rel).fold(0.0, f64::max);
    let mut round_trip = 0;
    let mut entries = 0;
    for name in catalog::names() {
        let e = catalog::make(name, &[]).unwrap();
        entries += 1;
        let ok = match &e.model {
            Model::Curve(c) => parse_curve(&e.source()).map(|b| b.components == c.components).unwrap_or(false),
            Model::Surface(s) => parse_surface(&e.source()).map(|b| b.components == s.components).unwrap_or(false),
            Model::Implicit(f) => geo3::surface::ImplicitSurface::parse(&e.source()).map(|b| b == *f).unwrap_or(false),
        };
        round_trip += usize::from(ok);
    }
    (
        passed == 500 && round_trip == entries,
        format!(
            "{passed}/500 jet-vs-FD comparisons within 1e-6 (worst {worst:.1e}); parser round trip {round_trip}/{entries} entries"
        ),
    )
}

fn meusnier() -> Outcome {
    let angles = [0.0, FRAC_PI_6, FRAC_PI_3];
    let sphere = catalog::make("sphere", &[]).unwrap().surface().unwrap().clone();
    let cylinder = parse_surface("(cos(v), sin(v), u) on [-1,1]x[0,2*pi]").unwrap();
    let mut worst = 0.0f64;
    for (s, u, v, d) in [
        (&sphere, 0.3, 1.0, [1.0, 2.0]),
        (&sphere, -0.8, 4.0, [0.0, 1.0]),
        (&cylinder, 0.2, 1.0, [0.0, 1.0]),
        (&cylinder, -0.5, 2.5, [1.0, 1.0]),
    ] {
        worst = worst.max(meusnier_check(s, u, v, d, &angles).unwrap());
    }
    (worst <= 1e-8, format!("max sphere-of-curvature deviation {worst:.2e} (tol 1e-8)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 closed-form curves", closed_form_curves),
        ("2 printed values", printed_checks),
        ("3 Frenet residual", frenet_suite),
        ("4 fundamental theorem round trip", fundamental_theorem),
        ("5 Egregium", egregium),
        ("6 structure equations", structure_suite),
        ("7 minimality", minimality),
        ("8 geodesics", geodesics),
        ("9 autodiff and parser", autodiff),
        ("10 Meusnier", meusnier),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(r) => r,
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        failed += usize::from(!ok);
        println!("{} criterion {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
