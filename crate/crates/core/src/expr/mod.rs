//! The scalar expression DSL used to define curves and surfaces.

mod ast;
mod eval;
mod model;
mod parser;

pub use ast::{BinOp, Constant, Expr, Func, Var};
pub(crate) use ast::{add, div, mul, neg, sub};
pub use model::{parse_curve, parse_surface, parse_tuple, CurveModel, Interval, SurfaceModel, TupleSource};
pub use parser::parse_scalar;

#[cfg(test)]
mod tests;
