//! Oracles and fixtures shared by the integration tests and the acceptance
//! runner. Finite differences here are written out independently of the
//! library's own stencils.
#![allow(dead_code)]

use geo3::autodiff::{lift1, lift2};
use geo3::catalog::{self, CatalogEntry, Model};
use geo3::curve::frenet_frame;
use geo3::{CurveModel, Expr, Interval, SurfaceModel, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fourth-order central differences of order 1, 2 and 3.
pub fn fd1<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

pub fn fd2<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    (-f(x - 2.0 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h * h)
}

pub fn fd3<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64) -> f64 {
    (f(x - 3.0 * h) - 8.0 * f(x - 2.0 * h) + 13.0 * f(x - h) - 13.0 * f(x + h) + 8.0 * f(x + 2.0 * h)
        - f(x + 3.0 * h))
        / (8.0 * h * h * h)
}

/// `d^k f / dx^k` for `k <= 3`.
pub fn fd<F: Fn(f64) -> f64>(f: &F, x: f64, k: u8, h: f64) -> f64 {
    match k {
        0 => f(x),
        1 => fd1(f, x, h),
        2 => fd2(f, x, h),
        3 => fd3(f, x, h),
        _ => unreachable!(),
    }
}

pub fn fd_vec1<F: Fn(f64) -> Vec3>(f: &F, x: f64, h: f64) -> Vec3 {
    (f(x - 2.0 * h) - f(x - h) * 8.0 + f(x + h) * 8.0 - f(x + 2.0 * h)) / (12.0 * h)
}

/// Step for finite differences of total order `k`: small for low orders,
/// larger for third order where rounding grows like `ε/h³`.
pub fn fd_step(k: u8) -> f64 {
    if k >= 3 {
        5e-3
    } else {
        1e-4
    }
}

/// Component expressions of every catalog curve and surface, with their
/// parameter ranges.
pub fn catalog_components() -> Vec<(String, Expr, Vec<Interval>)> {
    let mut out = Vec::new();
    for name in catalog::names() {
        let e = catalog::make(name, &[]).unwrap();
        match &e.model {
            Model::Curve(c) => {
                for (i, x) in c.components.iter().enumerate() {
                    out.push((format!("{name}[{i}]"), x.clone(), vec![c.domain]));
                }
            }
            Model::Surface(s) => {
                for (i, x) in s.components.iter().enumerate() {
                    out.push((format!("{name}[{i}]"), x.clone(), vec![s.u_range, s.v_range]));
                }
            }
            Model::Implicit(_) => {}
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct JetFdOutcome {
    pub label: String,
    pub point: Vec<f64>,
    /// Multi-index, jet value and finite-difference value of the worst partial.
    pub worst: ([u8; 2], f64, f64),
    pub worst_rel: f64,
}

impl JetFdOutcome {
    pub fn passes(&self, tol: f64) -> bool {
        self.worst_rel <= tol
    }
}

/// `|jet − fd| / (1 + |fd|)`, the relative measure used for jet checks.
pub fn rel_err(jet: f64, fd: f64) -> f64 {
    (jet - fd).abs() / (1.0 + fd.abs())
}

fn interior_point(r: &mut ChaCha8Rng, range: &Interval, margin: f64) -> f64 {
    range.lo + margin + (range.len() - 2.0 * margin) * r.gen_range(0.0..1.0)
}

/// Compares every jet partial of order `1..=3` of `expr` at a random point with
/// nested central differences.
pub fn jet_vs_fd(label: &str, expr: &Expr, ranges: &[Interval], r: &mut ChaCha8Rng) -> JetFdOutcome {
    let margin = 4.0 * fd_step(3);
    let point: Vec<f64> = ranges.iter().map(|iv| interior_point(r, iv, margin)).collect();
    let mut worst = ([0u8, 0u8], 0.0, 0.0);
    let mut worst_rel = -1.0;
    let mut record = |idx: [u8; 2], jet: f64, fdv: f64| {
        let e = rel_err(jet, fdv);
        if e > worst_rel || e.is_nan() {
            worst_rel = if e.is_nan() { f64::INFINITY } else { e };
            worst = (idx, jet, fdv);
        }
    };
    match point.as_slice() {
        &[t] => {
            let jet = lift1(expr, t).unwrap();
            let f = |x: f64| expr.eval(&[x]).unwrap();
            for k in 1..=3u8 {
                record([k, 0], jet.derivative(k), fd(&f, t, k, fd_step(k)));
            }
        }
        &[u, v] => {
            let jet = lift2(expr, u, v).unwrap();
            for ku in 0..=3u8 {
                for kv in 0..=(3 - ku) {
                    if ku + kv == 0 {
                        continue;
                    }
                    let h = fd_step(ku + kv);
                    // differentiate in v first, then in u
                    let inner = |uu: f64| {
                        let g = |vv: f64| expr.eval(&[uu, vv]).unwrap();
                        fd(&g, v, kv, h)
                    };
                    record([ku, kv], jet.partial(ku, kv), fd(&inner, u, ku, h));
                }
            }
        }
        _ => unreachable!(),
    }
    JetFdOutcome {
        label: label.to_string(),
        point,
        worst,
        worst_rel,
    }
}

/// `n` jet-versus-difference comparisons over random catalog components.
pub fn jet_fd_suite(n: usize, seed: u64) -> Vec<JetFdOutcome> {
    let comps = catalog_components();
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            let (label, e, ranges) = &comps[r.gen_range(0..comps.len())];
            jet_vs_fd(label, e, ranges, &mut r)
        })
        .collect()
}

/// Twenty curve instances from the catalog with nonvanishing curvature.
pub fn frenet_curves() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for r in [0.5, 1.0, 2.0, 5.0] {
        out.push(catalog::make("circle", &[("r", r)]).unwrap());
    }
    for (a, b) in [(2.0, 1.0), (1.0, 3.0), (0.5, 0.7), (4.0, 1.5), (1.0, 1.01)] {
        out.push(catalog::make("ellipse", &[("a", a), ("b", b)]).unwrap());
    }
    let mut r = rng(31);
    for _ in 0..10 {
        let rad = r.gen_range(0.2..3.0);
        let h = r.gen_range(-2.0..2.0);
        out.push(catalog::make("helix", &[("r", rad), ("h", h)]).unwrap());
    }
    out.push(catalog::make("log_spiral", &[]).unwrap());
    out
}

#[derive(Debug, Clone, Copy, Default)]
pub struct FrenetResidual {
    pub frenet: f64,
    pub darboux: f64,
}

/// Largest Frenet–Serret and Darboux residuals over `samples` interior points,
/// with primes taken in arc length by central differences of the frame.
pub fn frenet_residual(c: &CurveModel, samples: usize) -> FrenetResidual {
    let h = 1e-3;
    let mut out = FrenetResidual::default();
    let margin = 3.0 * h;
    let d = c.domain;
    for i in 0..samples {
        let t = d.lo + margin + (d.len() - 2.0 * margin) * (i as f64 + 0.5) / samples as f64;
        let r = geo3::curve::curvature_torsion(c, t).unwrap();
        let fr = r.frame.unwrap();
        let (k, tau) = (r.kappa, r.tau.unwrap());
        let frame = |x: f64| frenet_frame(c, x).unwrap();
        let dt = fd_vec1(&|x| frame(x).t, t, h) / r.speed;
        let dn = fd_vec1(&|x| frame(x).n, t, h) / r.speed;
        let db = fd_vec1(&|x| frame(x).b, t, h) / r.speed;
        let res = [
            (dt - fr.n * k).norm(),
            (dn + fr.t * k - fr.b * tau).norm(),
            (db + fr.n * tau).norm(),
        ];
        out.frenet = res.iter().fold(out.frenet, |a, &b| a.max(b));
        let delta = fr.t * tau + fr.b * k;
        let dar = [
            (dt - delta.cross(fr.t)).norm(),
            (dn - delta.cross(fr.n)).norm(),
            (db - delta.cross(fr.b)).norm(),
        ];
        out.darboux = dar.iter().fold(out.darboux, |a, &b| a.max(b));
    }
    out
}

/// Surfaces of the Egregium suite.
pub fn egregium_surfaces() -> Vec<CatalogEntry> {
    ["sphere", "torus", "helicoid", "catenoid", "hyperboloid_one", "enneper"]
        .iter()
        .map(|n| catalog::make(n, &[]).unwrap())
        .collect()
}

/// Every parametric catalog surface, with defaults.
pub fn catalog_surfaces() -> Vec<CatalogEntry> {
    catalog::names()
        .into_iter()
        .map(|n| catalog::make(n, &[]).unwrap())
        .filter(|e| e.surface().is_some())
        .collect()
}

/// Cell-centred grid points at least `margin` from documented singular lines.
pub fn regular_grid(e: &CatalogEntry, nu: usize, nv: usize, margin: f64) -> Vec<(f64, f64)> {
    let s: &SurfaceModel = e.surface().unwrap();
    geo3::surface::interior_grid(s, nu, nv)
        .into_iter()
        .filter(|&(u, v)| e.singular_distance(u, v) >= margin)
        .collect()
}

/// Largest `|κ − κ_in|` and `|τ − τ_in|` when the reconstructed polyline is
/// differentiated back with central differences on its own samples.
pub fn reconstruction_roundtrip(kappa: &Expr, tau: &Expr, range: Interval) -> (f64, f64) {
    let rec = geo3::curve::reconstruct(kappa, tau, range, &geo3::curve::canonical_frame()).unwrap();
    let pts = rec.points();
    let h = rec.step;
    let mut worst = (0.0f64, 0.0f64);
    for i in (3..pts.len() - 3).step_by(37) {
        let p = |o: i64| pts[(i as i64 + o) as usize];
        let d1 = (p(-2) - p(-1) * 8.0 + p(1) * 8.0 - p(2)) / (12.0 * h);
        let d2 = (p(-2) * -1.0 + p(-1) * 16.0 - p(0) * 30.0 + p(1) * 16.0 - p(2)) / (12.0 * h * h);
        let d3 = (p(-3) - p(-2) * 8.0 + p(-1) * 13.0 - p(1) * 13.0 + p(2) * 8.0 - p(3)) / (8.0 * h * h * h);
        let c = d1.cross(d2);
        let k = c.norm() / d1.norm().powi(3);
        let t = Vec3::triple(d1, d2, d3) / c.norm_sq();
        let s = rec.s[i];
        worst.0 = worst.0.max((k - kappa.eval(&[s]).unwrap()).abs());
        worst.1 = worst.1.max((t - tau.eval(&[s]).unwrap()).abs());
    }
    worst
}

/// Random trigonometric curvature and torsion with `κ ≥ 0.2` everywhere.
pub fn random_trig_pair(r: &mut ChaCha8Rng) -> (Expr, Expr) {
    let a1 = r.gen_range(-0.5..0.5);
    let a2 = r.gen_range(-0.5..0.5);
    let a0 = 0.2 + f64::abs(a1) + f64::abs(a2) + r.gen_range(0.0..1.0);
    let (b1, b2) = (r.gen_range(0.2..2.0), r.gen_range(0.2..2.0));
    let (c0, c1, d) = (r.gen_range(-1.0..1.0), r.gen_range(-0.8..0.8), r.gen_range(0.2..2.0));
    let k = format!("{a0:?} + ({a1:?})*sin({b1:?}*s) + ({a2:?})*cos({b2:?}*s)");
    let t = format!("({c0:?}) + ({c1:?})*sin({d:?}*s)");
    (geo3::parse_scalar(&k, &["s"]).unwrap(), geo3::parse_scalar(&t, &["s"]).unwrap())
}

/// Distance between the reconstructed endpoint for constant `(κ, τ)` and the
/// matching closed-form unit-speed helix, after a best rigid alignment.
pub fn constant_helix_alignment(kappa: f64, tau: f64, length: f64) -> f64 {
    let k = geo3::parse_scalar(&format!("{kappa:?}"), &["s"]).unwrap();
    let t = geo3::parse_scalar(&format!("{tau:?}"), &["s"]).unwrap();
    let rec = geo3::curve::reconstruct(&k, &t, Interval::new(0.0, length).unwrap(), &geo3::curve::canonical_frame())
        .unwrap();
    // helix of radius r and pitch h with κ = r/c², τ = h/c², c² = r² + h²
    let c2 = 1.0 / (kappa * kappa + tau * tau);
    let (r, h) = (kappa * c2, tau * c2);
    let c = c2.sqrt();
    let closed: Vec<Vec3> = rec
        .s
        .iter()
        .map(|&s| Vec3::new(r * (s / c).cos(), r * (s / c).sin(), h * s / c))
        .collect();
    let pts = rec.points();
    let m = geo3::numeric::rigid_align(&pts, &closed).unwrap();
    (m.apply(*pts.last().unwrap()) - *closed.last().unwrap()).norm()
}
