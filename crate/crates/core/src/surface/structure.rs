//! Christoffel symbols and the structure equations they enter: the Koszul
//! identity, the Gauss–Weingarten equations, the intrinsic (Brioschi) Gaussian
//! curvature and the normal-map identities.

use super::Local;
use crate::error::Result;
use crate::expr::SurfaceModel;
use crate::vec3::Vec3;

/// `Γ^k_ij` stored as `g[k][i][j]`, indices 0 (for `u`) and 1 (for `v`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffel {
    pub g: [[[f64; 2]; 2]; 2],
}

impl Christoffel {
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.g[k][i][j]
    }

    /// The six independent symbols in the order
    /// `Γ¹₁₁, Γ²₁₁, Γ¹₁₂, Γ²₁₂, Γ¹₂₂, Γ²₂₂`.
    pub fn six(&self) -> [f64; 6] {
        let g = &self.g;
        [
            g[0][0][0], g[1][0][0], g[0][0][1], g[1][0][1], g[0][1][1], g[1][1][1],
        ]
    }

    pub const NAMES: [&'static str; 6] = ["G1_11", "G2_11", "G1_12", "G2_12", "G1_22", "G2_22"];

    /// `Σ_ij Γ^k_ij a^i b^j` for each `k`.
    pub fn contract(&self, a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
        let mut out = [0.0; 2];
        for (k, o) in out.iter_mut().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    *o += self.g[k][i][j] * a[i] * b[j];
                }
            }
        }
        out
    }
}

/// `E, F, G` with the derivatives the Christoffel and Brioschi formulas use.
#[allow(non_snake_case)]
struct MetricDerivatives {
    E: f64,
    F: f64,
    G: f64,
    Eu: f64,
    Ev: f64,
    Fu: f64,
    Fv: f64,
    Gu: f64,
    Gv: f64,
    Evv: f64,
    Fuv: f64,
    Guu: f64,
}

#[allow(non_snake_case)]
fn metric_derivatives(l: &Local) -> MetricDerivatives {
    let [E, F, G] = l.metric;
    let d = |j: &crate::autodiff::Jet, a: u8, b: u8| j.partial([a, b, 0]);
    MetricDerivatives {
        E: E.value(),
        F: F.value(),
        G: G.value(),
        Eu: d(&E, 1, 0),
        Ev: d(&E, 0, 1),
        Fu: d(&F, 1, 0),
        Fv: d(&F, 0, 1),
        Gu: d(&G, 1, 0),
        Gv: d(&G, 0, 1),
        Evv: d(&E, 0, 2),
        Fuv: d(&F, 1, 1),
        Guu: d(&G, 2, 0),
    }
}

#[allow(non_snake_case)]
pub(crate) fn christoffel_from(l: &Local) -> Christoffel {
    let m = metric_derivatives(l);
    let (E, F, G) = (m.E, m.F, m.G);
    let d2 = 2.0 * (E * G - F * F);
    let g111 = (G * m.Eu - 2.0 * F * m.Fu + F * m.Ev) / d2;
    let g211 = (2.0 * E * m.Fu - E * m.Ev - F * m.Eu) / d2;
    let g112 = (G * m.Ev - F * m.Gu) / d2;
    let g212 = (E * m.Gu - F * m.Ev) / d2;
    let g122 = (2.0 * G * m.Fv - G * m.Gu - F * m.Gv) / d2;
    let g222 = (E * m.Gv - 2.0 * F * m.Fv + F * m.Gu) / d2;
    Christoffel {
        g: [
            [[g111, g112], [g112, g122]],
            [[g211, g212], [g212, g222]],
        ],
    }
}

pub fn christoffel(s: &SurfaceModel, u: f64, v: f64) -> Result<Christoffel> {
    Ok(christoffel_from(&Local::new(s, u, v)?))
}

/// Symbols without the domain check, for integrators.
pub(crate) fn christoffel_unchecked(s: &SurfaceModel, u: f64, v: f64) -> Result<Christoffel> {
    Ok(christoffel_from(&Local::unchecked(s, u, v)?))
}

/// Largest `|Σ_m g_km Γ^m_ij − ½(∂_i g_jk + ∂_j g_ik − ∂_k g_ij)|`.
pub fn koszul_check(s: &SurfaceModel, u: f64, v: f64) -> Result<f64> {
    let l = Local::new(s, u, v)?;
    let gamma = christoffel_from(&l);
    let m = metric_derivatives(&l);
    let g = [[m.E, m.F], [m.F, m.G]];
    // dg[i][j][k] = ∂_k g_ij
    let dg = [
        [[m.Eu, m.Ev], [m.Fu, m.Fv]],
        [[m.Fu, m.Fv], [m.Gu, m.Gv]],
    ];
    let mut worst = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                let lhs: f64 = (0..2).map(|mm| g[k][mm] * gamma.g[mm][i][j]).sum();
                let rhs = 0.5 * (dg[j][k][i] + dg[i][k][j] - dg[i][j][k]);
                worst = worst.max((lhs - rhs).abs());
            }
        }
    }
    Ok(worst)
}

/// Residual vectors of the Gauss–Weingarten equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussWeingarten {
    /// `x_uu, x_uv, x_vv` minus their Christoffel/second-form expansions.
    pub structural: [Vec3; 3],
    /// `n_u, n_v` minus their Weingarten expansions.
    pub normal: [Vec3; 2],
}

impl GaussWeingarten {
    pub fn max(&self) -> f64 {
        self.structural
            .iter()
            .chain(&self.normal)
            .map(|r| r.norm())
            .fold(0.0, f64::max)
    }
}

#[allow(non_snake_case)]
pub fn gauss_weingarten_residual(s: &SurfaceModel, u: f64, v: f64) -> Result<GaussWeingarten> {
    let l = Local::new(s, u, v)?;
    let gamma = christoffel_from(&l);
    let super::FirstForm { E, F, G } = l.first();
    let super::SecondForm { e, f, g } = l.second();
    let det = E * G - F * F;
    let (xu, xv, n) = (l.xu.value(), l.xv.value(), l.n.value());
    let p = |a: u8, b: u8| l.x.partial([a, b, 0]);
    let expand = |i: usize, j: usize, h: f64| {
        xu * gamma.g[0][i][j] + xv * gamma.g[1][i][j] + n * h
    };
    let (nu, nv) = l.normal_derivatives();
    Ok(GaussWeingarten {
        structural: [
            p(2, 0) - expand(0, 0, e),
            p(1, 1) - expand(0, 1, f),
            p(0, 2) - expand(1, 1, g),
        ],
        normal: [
            nu + (xu * (G * e - F * f) + xv * (E * f - F * e)) / det,
            nv + (xu * (G * f - F * g) + xv * (E * g - F * f)) / det,
        ],
    })
}

fn det3(m: [[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Gaussian curvature from `E, F, G` and their derivatives only (Brioschi).
pub fn intrinsic_k(s: &SurfaceModel, u: f64, v: f64) -> Result<f64> {
    let m = metric_derivatives(&Local::new(s, u, v)?);
    let m1 = [
        [
            -0.5 * m.Evv + m.Fuv - 0.5 * m.Guu,
            0.5 * m.Eu,
            m.Fu - 0.5 * m.Ev,
        ],
        [m.Fv - 0.5 * m.Gu, m.E, m.F],
        [0.5 * m.Gv, m.F, m.G],
    ];
    let m2 = [
        [0.0, 0.5 * m.Ev, 0.5 * m.Gu],
        [0.5 * m.Ev, m.E, m.F],
        [0.5 * m.Gu, m.F, m.G],
    ];
    let det = m.E * m.G - m.F * m.F;
    Ok((det3(m1) - det3(m2)) / (det * det))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalIdentities {
    /// `‖n_u × n_v − K x_u × x_v‖`.
    pub gauss_map: f64,
    /// `‖ρ_u × ρ_v − (1 − 2Ha + Ka²) x_u × x_v‖` for `ρ = x + a n`.
    pub parallel: f64,
}

pub fn normal_identities_check(s: &SurfaceModel, u: f64, v: f64, a: f64) -> Result<NormalIdentities> {
    let l = Local::new(s, u, v)?;
    let b = l.bundle();
    let (xu, xv) = (l.xu.value(), l.xv.value());
    let (nu, nv) = l.normal_derivatives();
    let cross = xu.cross(xv);
    let rho = (xu + nu * a).cross(xv + nv * a);
    Ok(NormalIdentities {
        gauss_map: (nu.cross(nv) - cross * b.K).norm(),
        parallel: (rho - cross * (1.0 - 2.0 * b.H * a + b.K * a * a)).norm(),
    })
}
