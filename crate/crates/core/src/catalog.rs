//! Named classical curves and surfaces with their closed-form invariants.
//!
//! Every entry is built from DSL source text so that the stored model is
//! exactly what the parser produces for the printed parametrization.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::expr::{
    add, div, mul, neg, parse_curve, parse_scalar, parse_surface, parse_tuple, sub, BinOp, CurveModel,
    Expr, Func, Interval, SurfaceModel,
};
use crate::surface::ImplicitSurface;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Curve,
    Surface,
    Implicit,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Curve => "curve",
            Kind::Surface => "surface",
            Kind::Implicit => "implicit",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Curve(CurveModel),
    Surface(SurfaceModel),
    Implicit(ImplicitSurface),
}

/// Closed forms in the model's own parameters (`t`, or `u, v`).
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedForm {
    /// `tau` is absent where the Frenet frame is undefined.
    Curve { kappa: Expr, tau: Option<Expr> },
    /// `h` is with respect to the chart normal `x_u × x_v / ‖x_u × x_v‖`.
    Surface { k: Expr, h: Option<Expr> },
    None,
}

/// A coordinate line on which the chart is singular.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Locus {
    U(f64),
    V(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: Kind,
    pub params: Vec<(String, f64)>,
    pub model: Model,
    pub closed_form: ClosedForm,
    pub singular: Vec<Locus>,
    pub notes: String,
}

impl CatalogEntry {
    pub fn curve(&self) -> Option<&CurveModel> {
        match &self.model {
            Model::Curve(c) => Some(c),
            _ => None,
        }
    }

    pub fn surface(&self) -> Option<&SurfaceModel> {
        match &self.model {
            Model::Surface(s) => Some(s),
            _ => None,
        }
    }

    pub fn implicit(&self) -> Option<&ImplicitSurface> {
        match &self.model {
            Model::Implicit(f) => Some(f),
            _ => None,
        }
    }

    /// Distance in parameter space to the nearest documented singular line.
    pub fn singular_distance(&self, u: f64, v: f64) -> f64 {
        self.singular
            .iter()
            .map(|l| match *l {
                Locus::U(a) => (u - a).abs(),
                Locus::V(b) => (v - b).abs(),
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// DSL text of the model; parses back to the same model.
    pub fn source(&self) -> String {
        match &self.model {
            Model::Curve(c) => c.to_string(),
            Model::Surface(s) => s.to_string(),
            Model::Implicit(f) => f.f.to_string(),
        }
    }
}

struct Spec {
    name: &'static str,
    kind: Kind,
    params: &'static [(&'static str, f64)],
    summary: &'static str,
}

const SPECS: &[Spec] = &[
    Spec {
        name: "line",
        kind: Kind::Curve,
        params: &[("a1", 0.0), ("a2", 0.0), ("a3", 0.0), ("b1", 1.0), ("b2", 1.0), ("b3", 0.0)],
        summary: "a + t b",
    },
    Spec {
        name: "circle",
        kind: Kind::Curve,
        params: &[("r", 1.0)],
        summary: "(r cos t, r sin t, 0)",
    },
    Spec {
        name: "ellipse",
        kind: Kind::Curve,
        params: &[("a", 2.0), ("b", 1.0)],
        summary: "(a cos t, b sin t, 0)",
    },
    Spec {
        name: "helix",
        kind: Kind::Curve,
        params: &[("r", 1.0), ("h", 1.0)],
        summary: "(r cos t, r sin t, h t)",
    },
    Spec {
        name: "log_spiral",
        kind: Kind::Curve,
        params: &[],
        summary: "e^t (cos t, sin t, 0)",
    },
    Spec {
        name: "plane",
        kind: Kind::Surface,
        params: &[
            ("p0x", 0.0),
            ("p0y", 0.0),
            ("p0z", 0.0),
            ("p1x", 1.0),
            ("p1y", 0.0),
            ("p1z", 0.0),
            ("p2x", 0.0),
            ("p2y", 1.0),
            ("p2z", 0.0),
        ],
        summary: "P0 + u (P1 - P0) + v (P2 - P0)",
    },
    Spec {
        name: "sphere",
        kind: Kind::Surface,
        params: &[],
        summary: "(cos u cos v, cos u sin v, sin u), latitude chart",
    },
    Spec {
        name: "sphere2",
        kind: Kind::Surface,
        params: &[],
        summary: "(cos u sin v, sin u sin v, cos v), polar-angle chart",
    },
    Spec {
        name: "ellipsoid",
        kind: Kind::Surface,
        params: &[("a", 3.0), ("b", 2.0), ("c", 1.0)],
        summary: "(a cos u cos v, b cos u sin v, c sin u)",
    },
    Spec {
        name: "hyperboloid_one",
        kind: Kind::Surface,
        params: &[("a", 1.0), ("b", 1.0), ("c", 1.0)],
        summary: "(a cosh u cos v, b cosh u sin v, c sinh u)",
    },
    Spec {
        name: "hyperboloid_two",
        kind: Kind::Surface,
        params: &[("a", 1.0), ("b", 1.0), ("c", 1.0), ("sign", 1.0)],
        summary: "(a sinh u cos v, b sinh u sin v, sign c cosh u)",
    },
    Spec {
        name: "cone",
        kind: Kind::Surface,
        params: &[("a", 1.0), ("b", 1.0), ("c", 1.0)],
        summary: "(a u cos v, b u sin v, c u)",
    },
    Spec {
        name: "elliptic_paraboloid",
        kind: Kind::Surface,
        params: &[("a", 1.0), ("b", 1.0), ("c", 1.0)],
        summary: "(u, v, c (u^2/a^2 + v^2/b^2))",
    },
    Spec {
        name: "hyperbolic_paraboloid",
        kind: Kind::Surface,
        params: &[("a", 1.0), ("b", 1.0), ("c", 1.0)],
        summary: "(u, v, c (u^2/a^2 - v^2/b^2))",
    },
    Spec {
        name: "torus",
        kind: Kind::Surface,
        params: &[("R", 2.0), ("r", 1.0)],
        summary: "((R + r cos u) cos v, (R + r cos u) sin v, r sin u), 0 < r < R",
    },
    Spec {
        name: "helicoid",
        kind: Kind::Surface,
        params: &[("c", 1.0)],
        summary: "(sinh u cos v, sinh u sin v, c v)",
    },
    Spec {
        name: "simple_helicoid",
        kind: Kind::Surface,
        params: &[("c", 1.0)],
        summary: "(u cos v, u sin v, c v)",
    },
    Spec {
        name: "catenoid",
        kind: Kind::Surface,
        params: &[],
        summary: "(cosh u cos v, cosh u sin v, u)",
    },
    Spec {
        name: "enneper",
        kind: Kind::Surface,
        params: &[],
        summary: "(u^3 - 3u(1 + v^2), v^3 - 3v(1 + u^2), 3(u^2 - v^2))",
    },
    Spec {
        name: "revolution",
        kind: Kind::Surface,
        params: &[],
        summary: "(x(u) cos v, x(u) sin v, y(u)); default profile (cosh u, u)",
    },
    Spec {
        name: "ruled",
        kind: Kind::Surface,
        params: &[],
        summary: "gamma(u) + v eta(u); default gamma = (cos u, sin u, 0), eta = (-sin u, cos u, 1)",
    },
    Spec {
        name: "tangent_developable",
        kind: Kind::Surface,
        params: &[],
        summary: "gamma(u) + v gamma'(u), v >= 1e-3; default gamma = (cos u, sin u, u)",
    },
    Spec {
        name: "implicit_plane",
        kind: Kind::Implicit,
        params: &[("nx", 0.0), ("ny", 0.0), ("nz", 1.0), ("d", 0.0)],
        summary: "nx x + ny y + nz z - d = 0",
    },
    Spec {
        name: "implicit_sphere",
        kind: Kind::Implicit,
        params: &[],
        summary: "x^2 + y^2 + z^2 - 1 = 0",
    },
    Spec {
        name: "implicit_torus",
        kind: Kind::Implicit,
        params: &[("R", 2.0), ("r", 1.0)],
        summary: "(sqrt(x^2 + y^2) - R)^2 + z^2 - r^2 = 0",
    },
];

/// Smallest `v` used by tangent developables; the edge `v = 0` is singular.
pub const DEVELOPABLE_EPS: f64 = 1e-3;

/// Names of all entries, in registry order.
pub fn names() -> Vec<&'static str> {
    SPECS.iter().map(|s| s.name).collect()
}

/// One-line description of an entry and its default parameters.
pub fn describe(name: &str) -> Option<(Kind, &'static str, &'static [(&'static str, f64)])> {
    SPECS
        .iter()
        .find(|s| s.name == name)
        .map(|s| (s.kind, s.summary, s.params))
}

/// Formats a number so that the DSL reads it back bit-for-bit.
fn num(x: f64) -> String {
    if x < 0.0 || (x == 0.0 && x.is_sign_negative()) {
        format!("({x:?})")
    } else {
        format!("{x:?}")
    }
}

fn invalid(name: &str, msg: impl std::fmt::Display) -> Error {
    Error::Invalid(format!("{name}: {msg}"))
}

fn scalar(src: &str, vars: &[&str]) -> Result<Expr> {
    Ok(parse_scalar(src, vars)?)
}

fn uv(src: &str) -> Result<Expr> {
    scalar(src, &["u", "v"])
}

/// Builds the entry `name`, overriding defaults with `params`.
pub fn make(name: &str, params: &[(&str, f64)]) -> Result<CatalogEntry> {
    let spec = SPECS
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::Invalid(format!("unknown catalog entry '{name}'")))?;
    let mut values: Vec<(String, f64)> = spec.params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    for (k, v) in params {
        let slot = values
            .iter_mut()
            .find(|(n, _)| n == k)
            .ok_or_else(|| invalid(name, format!("unknown parameter '{k}'")))?;
        if !v.is_finite() {
            return Err(invalid(name, format!("parameter {k} = {v} is not finite")));
        }
        slot.1 = *v;
    }
    let p = |k: &str| values.iter().find(|(n, _)| n == k).map(|(_, v)| *v).unwrap();
    let positive = |keys: &[&str]| -> Result<()> {
        for k in keys {
            if !(p(k) > 0.0) {
                return Err(invalid(name, format!("{k} must be positive, got {}", p(k))));
            }
        }
        Ok(())
    };
    let mut entry = match name {
        "line" => {
            let (a, b) = ([p("a1"), p("a2"), p("a3")], [p("b1"), p("b2"), p("b3")]);
            if b.iter().all(|&x| x == 0.0) {
                return Err(invalid(name, "direction b must be nonzero"));
            }
            let c: Vec<String> = (0..3).map(|i| format!("{} + {}*t", num(a[i]), num(b[i]))).collect();
            let model = parse_curve(&format!("({}, {}, {}) on [-1, 1]", c[0], c[1], c[2]))?;
            curve_entry(model, Expr::num(0.0), None, "straight line; the Frenet frame is undefined")
        }
        "circle" => {
            positive(&["r"])?;
            let r = num(p("r"));
            let model = parse_curve(&format!("({r}*cos(t), {r}*sin(t), 0) on [0, 2*pi]"))?;
            curve_entry(model, scalar(&format!("1/{r}"), &["t"])?, Some(Expr::num(0.0)), "")
        }
        "ellipse" => {
            positive(&["a", "b"])?;
            let (a, b) = (num(p("a")), num(p("b")));
            let model = parse_curve(&format!("({a}*cos(t), {b}*sin(t), 0) on [0, 2*pi]"))?;
            let kappa = scalar(
                &format!("{a}*{b}/({a}^2*sin(t)^2 + {b}^2*cos(t)^2)^1.5"),
                &["t"],
            )?;
            curve_entry(model, kappa, Some(Expr::num(0.0)), "")
        }
        "helix" => {
            positive(&["r"])?;
            let (r, h) = (num(p("r")), num(p("h")));
            let model = parse_curve(&format!("({r}*cos(t), {r}*sin(t), {h}*t) on [0, 4*pi]"))?;
            let kappa = scalar(&format!("{r}/({r}^2 + {h}^2)"), &["t"])?;
            let tau = scalar(&format!("{h}/({r}^2 + {h}^2)"), &["t"])?;
            curve_entry(model, kappa, Some(tau), "")
        }
        "log_spiral" => {
            let model = parse_curve("(exp(t)*cos(t), exp(t)*sin(t), 0) on [-2, 2]")?;
            let kappa = scalar("1/(sqrt(2)*exp(t))", &["t"])?;
            curve_entry(model, kappa, Some(Expr::num(0.0)), "")
        }
        "plane" => {
            let pt = |s: &str| [p(&format!("{s}x")), p(&format!("{s}y")), p(&format!("{s}z"))];
            let (p0, p1, p2) = (pt("p0"), pt("p1"), pt("p2"));
            let d1 = crate::vec3::Vec3::from_array(p1) - crate::vec3::Vec3::from_array(p0);
            let d2 = crate::vec3::Vec3::from_array(p2) - crate::vec3::Vec3::from_array(p0);
            if d1.cross(d2).norm() <= 1e-12 * (1.0 + d1.norm() * d2.norm()) {
                return Err(invalid(name, "P0, P1, P2 are collinear"));
            }
            let c: Vec<String> = (0..3)
                .map(|i| {
                    format!(
                        "{} + u*({} - {}) + v*({} - {})",
                        num(p0[i]),
                        num(p1[i]),
                        num(p0[i]),
                        num(p2[i]),
                        num(p0[i])
                    )
                })
                .collect();
            let model = parse_surface(&format!("({}, {}, {}) on [0, 1]x[0, 1]", c[0], c[1], c[2]))?;
            surface_entry(model, Expr::num(0.0), Some(Expr::num(0.0)), vec![], "")
        }
        "sphere" => {
            let model = parse_surface("(cos(u)*cos(v), cos(u)*sin(v), sin(u)) on [-pi/2, pi/2]x[0, 2*pi]")?;
            surface_entry(
                model,
                Expr::num(1.0),
                Some(Expr::num(1.0)),
                vec![Locus::U(-PI / 2.0), Locus::U(PI / 2.0)],
                "singular at the poles u = ±pi/2; the chart normal points inward",
            )
        }
        "sphere2" => {
            let model = parse_surface("(cos(u)*sin(v), sin(u)*sin(v), cos(v)) on [0, pi]x[0, 2*pi]")?;
            surface_entry(
                model,
                Expr::num(1.0),
                Some(uv("sin(v)/abs(sin(v))")?),
                vec![Locus::V(0.0), Locus::V(PI), Locus::V(2.0 * PI)],
                "singular where sin v = 0; the chart normal flips across v = pi",
            )
        }
        "ellipsoid" => {
            positive(&["a", "b", "c"])?;
            let (a, b, c) = (num(p("a")), num(p("b")), num(p("c")));
            let model = parse_surface(&format!(
                "({a}*cos(u)*cos(v), {b}*cos(u)*sin(v), {c}*sin(u)) on [-pi/2, pi/2]x[0, 2*pi]"
            ))?;
            let (w, r2) = quadric_terms(&a, &b, &c, "cos(u)*cos(v)", "cos(u)*sin(v)", "sin(u)");
            let k = uv(&format!("1/({a}^2*{b}^2*{c}^2*({w})^2)"))?;
            let h = uv(&format!(
                "({a}^2 + {b}^2 + {c}^2 - ({r2}))/(2*{a}^2*{b}^2*{c}^2*({w})^1.5)"
            ))?;
            surface_entry(
                model,
                k,
                Some(h),
                vec![Locus::U(-PI / 2.0), Locus::U(PI / 2.0)],
                "singular at u = ±pi/2; the chart normal points inward",
            )
        }
        "hyperboloid_one" => {
            positive(&["a", "b", "c"])?;
            let (a, b, c) = (num(p("a")), num(p("b")), num(p("c")));
            let model = parse_surface(&format!(
                "({a}*cosh(u)*cos(v), {b}*cosh(u)*sin(v), {c}*sinh(u)) on [-1.5, 1.5]x[0, 2*pi]"
            ))?;
            let (w, r2) = quadric_terms(&a, &b, &c, "cosh(u)*cos(v)", "cosh(u)*sin(v)", "sinh(u)");
            let k = uv(&format!("-1/({a}^2*{b}^2*{c}^2*({w})^2)"))?;
            let h = uv(&format!(
                "(({r2}) - {a}^2 - {b}^2 + {c}^2)/(2*{a}^2*{b}^2*{c}^2*({w})^1.5)"
            ))?;
            surface_entry(model, k, Some(h), vec![], "regular everywhere")
        }
        "hyperboloid_two" => {
            positive(&["a", "b", "c"])?;
            let sign = p("sign");
            if sign != 1.0 && sign != -1.0 {
                return Err(invalid(name, format!("sign must be 1 or -1, got {sign}")));
            }
            let (a, b, c, s) = (num(p("a")), num(p("b")), num(p("c")), num(sign));
            let model = parse_surface(&format!(
                "({a}*sinh(u)*cos(v), {b}*sinh(u)*sin(v), {s}*{c}*cosh(u)) on [0, 1.5]x[0, 2*pi]"
            ))?;
            let (w, r2) = quadric_terms(&a, &b, &c, "sinh(u)*cos(v)", "sinh(u)*sin(v)", "cosh(u)");
            let k = uv(&format!("1/({a}^2*{b}^2*{c}^2*({w})^2)"))?;
            let h = uv(&format!(
                "{s}*(({r2}) + {a}^2 + {b}^2 - {c}^2)/(2*{a}^2*{b}^2*{c}^2*({w})^1.5)"
            ))?;
            surface_entry(
                model,
                k,
                Some(h),
                vec![Locus::U(0.0)],
                "one sheet per sign; singular at the vertex u = 0",
            )
        }
        "cone" => {
            positive(&["a", "b", "c"])?;
            let (a, b, c) = (num(p("a")), num(p("b")), num(p("c")));
            let model = parse_surface(&format!(
                "({a}*u*cos(v), {b}*u*sin(v), {c}*u) on [-1, 1]x[0, 2*pi]"
            ))?;
            let e = format!("({a}^2*cos(v)^2 + {b}^2*sin(v)^2 + {c}^2)");
            let d = format!("({b}^2*{c}^2*cos(v)^2 + {a}^2*{c}^2*sin(v)^2 + {a}^2*{b}^2)");
            let h = uv(&format!("{a}*{b}*{c}*{e}/(2*abs(u)*{d}^1.5)"))?;
            surface_entry(model, Expr::num(0.0), Some(h), vec![Locus::U(0.0)], "singular at the apex u = 0")
        }
        "elliptic_paraboloid" | "hyperbolic_paraboloid" => {
            positive(&["a", "b"])?;
            if p("c") == 0.0 {
                return Err(invalid(name, "c must be nonzero"));
            }
            let (a, b, c) = (num(p("a")), num(p("b")), num(p("c")));
            let pm = if name == "elliptic_paraboloid" { "+" } else { "-" };
            let model = parse_surface(&format!(
                "(u, v, {c}*(u^2/{a}^2 {pm} v^2/{b}^2)) on [-1, 1]x[-1, 1]"
            ))?;
            let (hu, hv) = (format!("(2*{c}*u/{a}^2)"), format!("({pm}2*{c}*v/{b}^2)"));
            let (huu, hvv) = (format!("(2*{c}/{a}^2)"), format!("({pm}2*{c}/{b}^2)"));
            let w2 = format!("(1 + {hu}^2 + {hv}^2)");
            let k = uv(&format!("{huu}*{hvv}/{w2}^2"))?;
            let h = uv(&format!(
                "((1 + {hv}^2)*{huu} + (1 + {hu}^2)*{hvv})/(2*{w2}^1.5)"
            ))?;
            surface_entry(model, k, Some(h), vec![], "graph over the (x, y) plane")
        }
        "torus" => {
            let (big, small) = (p("R"), p("r"));
            if !(0.0 < small && small < big) {
                return Err(invalid(name, format!("need 0 < r < R, got R = {big}, r = {small}")));
            }
            let (rr, r) = (num(big), num(small));
            let model = parse_surface(&format!(
                "(({rr} + {r}*cos(u))*cos(v), ({rr} + {r}*cos(u))*sin(v), {r}*sin(u)) on [0, 2*pi]x[0, 2*pi]"
            ))?;
            let k = uv(&format!("cos(u)/({r}*({rr} + {r}*cos(u)))"))?;
            let h = uv(&format!("({rr} + 2*{r}*cos(u))/(2*{r}*({rr} + {r}*cos(u)))"))?;
            surface_entry(model, k, Some(h), vec![], "regular everywhere; the chart normal points into the tube")
        }
        "helicoid" => {
            if p("c") == 0.0 {
                return Err(invalid(name, "c must be nonzero"));
            }
            let c = num(p("c"));
            let model = parse_surface(&format!(
                "(sinh(u)*cos(v), sinh(u)*sin(v), {c}*v) on [-2, 2]x[0, 2*pi]"
            ))?;
            let k = uv(&format!("-{c}^2/({c}^2 + sinh(u)^2)^2"))?;
            surface_entry(model, k, Some(Expr::num(0.0)), vec![], "minimal; regular everywhere")
        }
        "simple_helicoid" => {
            if p("c") == 0.0 {
                return Err(invalid(name, "c must be nonzero"));
            }
            let c = num(p("c"));
            let model = parse_surface(&format!("(u*cos(v), u*sin(v), {c}*v) on [-2, 2]x[0, 2*pi]"))?;
            let k = uv(&format!("-{c}^2/(u^2 + {c}^2)^2"))?;
            surface_entry(model, k, Some(Expr::num(0.0)), vec![], "reparametrization of the helicoid by u -> sinh u")
        }
        "catenoid" => {
            let model = parse_surface("(cosh(u)*cos(v), cosh(u)*sin(v), u) on [-1.5, 1.5]x[0, 2*pi]")?;
            let k = uv("-1/cosh(u)^4")?;
            surface_entry(model, k, Some(Expr::num(0.0)), vec![], "surface of revolution of cosh; minimal")
        }
        "enneper" => {
            let model = parse_surface(
                "(u^3 - 3*u*(1 + v^2), v^3 - 3*v*(1 + u^2), 3*(u^2 - v^2)) on [-1, 1]x[-1, 1]",
            )?;
            let k = uv("-4/(9*(1 + u^2 + v^2)^4)")?;
            surface_entry(model, k, Some(Expr::num(0.0)), vec![], "conformal and minimal; regular everywhere")
        }
        "revolution" => revolution("(cosh(t), t) on [-1.5, 1.5]")?,
        "ruled" => ruled("(cos(t), sin(t), 0)", "(-sin(t), cos(t), 1)", Interval::new(0.0, 2.0 * PI)?, Interval::new(-1.0, 1.0)?)?,
        "tangent_developable" => tangent_developable("(cos(t), sin(t), t) on [0, 2*pi]", 1.0)?,
        "implicit_plane" => {
            let n = [p("nx"), p("ny"), p("nz")];
            if n.iter().all(|&x| x == 0.0) {
                return Err(invalid(name, "normal must be nonzero"));
            }
            let f = format!("{}*x + {}*y + {}*z - {}", num(n[0]), num(n[1]), num(n[2]), num(p("d")));
            implicit_entry(&f, "")?
        }
        "implicit_sphere" => implicit_entry("x^2 + y^2 + z^2 - 1", "")?,
        "implicit_torus" => {
            let (big, small) = (p("R"), p("r"));
            if !(0.0 < small && small < big) {
                return Err(invalid(name, format!("need 0 < r < R, got R = {big}, r = {small}")));
            }
            let f = format!("(sqrt(x^2 + y^2) - {})^2 + z^2 - {}^2", num(big), num(small));
            implicit_entry(&f, "gradient undefined on the z axis, which is off the surface")?
        }
        _ => unreachable!("every spec has a builder"),
    };
    entry.name = name.to_string();
    entry.params = values;
    if let Model::Curve(c) = &mut entry.model {
        c.label = Some(name.to_string());
    }
    if let Model::Surface(s) = &mut entry.model {
        s.label = Some(name.to_string());
    }
    Ok(entry)
}

/// `W = x²/a⁴ + y²/b⁴ + z²/c⁴` and `|p|²` for a quadric chart with coordinate
/// factors `fx, fy, fz` (so `x = a fx` and so on).
fn quadric_terms(a: &str, b: &str, c: &str, fx: &str, fy: &str, fz: &str) -> (String, String) {
    let w = format!("({fx})^2/{a}^2 + ({fy})^2/{b}^2 + ({fz})^2/{c}^2");
    let r2 = format!("{a}^2*({fx})^2 + {b}^2*({fy})^2 + {c}^2*({fz})^2");
    (w, r2)
}

fn blank(kind: Kind, model: Model, closed_form: ClosedForm, singular: Vec<Locus>, notes: &str) -> CatalogEntry {
    CatalogEntry {
        name: String::new(),
        kind,
        params: Vec::new(),
        model,
        closed_form,
        singular,
        notes: notes.to_string(),
    }
}

fn curve_entry(model: CurveModel, kappa: Expr, tau: Option<Expr>, notes: &str) -> CatalogEntry {
    blank(Kind::Curve, Model::Curve(model), ClosedForm::Curve { kappa, tau }, vec![], notes)
}

fn surface_entry(model: SurfaceModel, k: Expr, h: Option<Expr>, singular: Vec<Locus>, notes: &str) -> CatalogEntry {
    blank(Kind::Surface, Model::Surface(model), ClosedForm::Surface { k, h }, singular, notes)
}

fn implicit_entry(f: &str, notes: &str) -> Result<CatalogEntry> {
    let s = ImplicitSurface::parse(f)?;
    Ok(blank(Kind::Implicit, Model::Implicit(s), ClosedForm::None, vec![], notes))
}

// Symbolic vector helpers over `[Expr; 3]`.

fn dot(a: &[Expr; 3], b: &[Expr; 3]) -> Expr {
    add(
        add(mul(a[0].clone(), b[0].clone()), mul(a[1].clone(), b[1].clone())),
        mul(a[2].clone(), b[2].clone()),
    )
}

fn cross(a: &[Expr; 3], b: &[Expr; 3]) -> [Expr; 3] {
    let c = |i: usize, j: usize| sub(mul(a[i].clone(), b[j].clone()), mul(a[j].clone(), b[i].clone()));
    [c(1, 2), c(2, 0), c(0, 1)]
}

fn d_slot(a: &[Expr; 3], slot: usize) -> [Expr; 3] {
    [a[0].derivative(slot), a[1].derivative(slot), a[2].derivative(slot)]
}

fn square(e: Expr) -> Expr {
    Expr::binary(BinOp::Pow, e, Expr::num(2.0))
}

/// Rewrites a tuple parsed in `t` into the surface variable `u`.
fn in_u(es: Vec<Expr>) -> Vec<Expr> {
    es.into_iter().map(|e| e.rename_vars(&[(0, "u")])).collect()
}

fn to3(v: Vec<Expr>) -> [Expr; 3] {
    let mut it = v.into_iter();
    [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]
}

fn single_range(ranges: &[Interval], what: &str) -> Result<Interval> {
    match ranges {
        [r] => Ok(*r),
        _ => Err(Error::Invalid(format!("{what} needs exactly one parameter range"))),
    }
}

/// Surface of revolution of the planar profile `(x(t), y(t)) on [a, b]`
/// about the z axis, with `v ∈ [0, 2π]`.
pub fn revolution(profile: &str) -> Result<CatalogEntry> {
    let tuple = parse_tuple(profile, &["t"], 2)?;
    let range = single_range(&tuple.ranges, "a revolution profile")?;
    let mut it = in_u(tuple.components).into_iter();
    let (x, y) = (it.next().unwrap(), it.next().unwrap());
    let v = Expr::var(1, "v");
    let model = SurfaceModel::new(
        [
            mul(x.clone(), Expr::call(Func::Cos, v.clone())),
            mul(x.clone(), Expr::call(Func::Sin, v)),
            y.clone(),
        ],
        range,
        Interval::new(0.0, 2.0 * PI)?,
    );
    let (x1, y1) = (x.derivative(0), y.derivative(0));
    let (x2, y2) = (x1.derivative(0), y1.derivative(0));
    // L = |profile'|, bend = x'y'' - x''y'
    let l = Expr::call(Func::Sqrt, add(square(x1.clone()), square(y1.clone())));
    let bend = sub(mul(x1, y2), mul(x2, y1.clone()));
    let k = div(
        mul(y1.clone(), bend.clone()),
        mul(x.clone(), Expr::binary(BinOp::Pow, l.clone(), Expr::num(4.0))),
    );
    let h = mul(
        Expr::num(0.5),
        add(
            div(bend, Expr::binary(BinOp::Pow, l.clone(), Expr::num(3.0))),
            div(y1, mul(x, l)),
        ),
    );
    Ok(surface_entry(model, k, Some(h), vec![], "singular where the profile meets the axis, x(u) = 0"))
}

/// Ruled surface `γ(u) + v η(u)` from 3-tuples in `t`.
pub fn ruled(gamma: &str, eta: &str, u_range: Interval, v_range: Interval) -> Result<CatalogEntry> {
    let g = to3(in_u(parse_tuple(gamma, &["t"], 3)?.components));
    let e = to3(in_u(parse_tuple(eta, &["t"], 3)?.components));
    let v = Expr::var(1, "v");
    let comps = [0, 1, 2].map(|i| add(g[i].clone(), mul(v.clone(), e[i].clone())));
    let model = SurfaceModel::new(comps.clone(), u_range, v_range);
    let g1 = d_slot(&g, 0);
    let e1 = d_slot(&e, 0);
    let xu = d_slot(&comps, 0);
    let n = cross(&xu, &e);
    // K = -det(γ', η, η')² / |x_u × x_v|⁴
    let det = dot(&g1, &cross(&e, &e1));
    let k = neg(div(square(det), square(dot(&n, &n))));
    Ok(surface_entry(model, k, None, vec![], "rulings v -> x(u, v) are asymptotic lines"))
}

/// Tangent developable `γ(u) + v γ'(u)` of a curve source, with
/// `v ∈ [DEVELOPABLE_EPS, v_max]`.
pub fn tangent_developable(curve: &str, v_max: f64) -> Result<CatalogEntry> {
    if !(v_max > DEVELOPABLE_EPS) {
        return Err(Error::Invalid(format!("v_max must exceed {DEVELOPABLE_EPS}")));
    }
    let c = parse_curve(curve)?;
    let g: [Expr; 3] = c.components.clone().map(|e| e.rename_vars(&[(0, "u")]));
    let g1 = d_slot(&g, 0);
    let v = Expr::var(1, "v");
    let comps = [0, 1, 2].map(|i| add(g[i].clone(), mul(v.clone(), g1[i].clone())));
    let model = SurfaceModel::new(comps, c.domain, Interval::new(DEVELOPABLE_EPS, v_max)?);
    Ok(surface_entry(
        model,
        Expr::num(0.0),
        None,
        vec![Locus::V(0.0)],
        "edge of regression v = 0 excluded; the normal is constant along rulings",
    ))
}
