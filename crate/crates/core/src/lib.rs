//! Differential geometry of parametric curves and surfaces in three-dimensional
//! Euclidean space.
//!
//! Models are written in a small expression language ([`expr`]); all derivatives
//! come from truncated Taylor jets ([`autodiff`]), so curvature, torsion,
//! fundamental forms and Christoffel symbols are exact up to floating-point
//! rounding. Integrals and ODEs ([`numeric`]) use adaptive Simpson quadrature and
//! classical Runge–Kutta.

pub mod autodiff;
pub mod catalog;
pub mod curve;
pub mod error;
pub mod expr;
pub mod geodesy;
pub mod numeric;
pub mod strip;
pub mod surface;
pub mod vec3;

pub use error::{Error, ParseError, Result};
pub use expr::{parse_curve, parse_scalar, parse_surface, CurveModel, Expr, Interval, SurfaceModel};
pub use vec3::Vec3;
