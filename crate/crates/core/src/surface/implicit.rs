use crate::autodiff::gradient3;
use crate::error::{Error, Result};
use crate::expr::{parse_scalar, Expr};
use crate::vec3::Vec3;

/// Level set `F(x, y, z) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImplicitSurface {
    pub f: Expr,
}

impl ImplicitSurface {
    /// Gradients shorter than this make a point irregular.
    pub const REGULARITY_TOL: f64 = 1e-9;

    pub fn new(f: Expr) -> Self {
        ImplicitSurface { f }
    }

    /// `F` written in the variables `x, y, z`.
    pub fn parse(source: &str) -> Result<Self> {
        Ok(ImplicitSurface::new(parse_scalar(source, &["x", "y", "z"])?))
    }

    pub fn gradient(&self, p: Vec3) -> Result<Vec3> {
        let (_, g) = gradient3(&self.f, p.to_array())?;
        Ok(Vec3::from_array(g))
    }

    /// `∇F / ‖∇F‖`.
    pub fn normal_at(&self, p: Vec3) -> Result<Vec3> {
        let g = self.gradient(p)?;
        if g.norm() <= Self::REGULARITY_TOL {
            return Err(Error::Invalid(format!("∇F vanishes at {p}")));
        }
        Ok(g / g.norm())
    }

    pub fn is_regular_at(&self, p: Vec3) -> Result<bool> {
        Ok(self.gradient(p)?.norm() > Self::REGULARITY_TOL)
    }

    /// `F(p)`; zero on the surface.
    pub fn level_residual(&self, p: Vec3) -> Result<f64> {
        Ok(self.f.eval(&p.to_array())?)
    }
}
