use std::collections::HashMap;

use super::ast::{BinOp, Expr};
use crate::autodiff::Scalar;
use crate::error::{DomainError, Error};

impl Expr {
    /// Evaluates with bindings given by slot index.
    pub fn eval(&self, slots: &[f64]) -> Result<f64, DomainError> {
        self.eval_generic(slots)
    }

    /// Evaluates with bindings given by variable name.
    pub fn eval_named(&self, bindings: &HashMap<&str, f64>) -> Result<f64, Error> {
        let mut slots: Vec<f64> = Vec::new();
        let mut missing = None;
        self.visit_vars(&mut |v| match bindings.get(v.name.as_str()) {
            Some(&x) => {
                if slots.len() <= v.slot {
                    slots.resize(v.slot + 1, f64::NAN);
                }
                slots[v.slot] = x;
            }
            None => missing = Some(v.name.clone()),
        });
        if let Some(name) = missing {
            return Err(Error::Unbound(name));
        }
        Ok(self.eval(&slots)?)
    }

    fn visit_vars(&self, f: &mut dyn FnMut(&super::ast::Var)) {
        match self {
            Expr::Num(_) | Expr::Const(_) => {}
            Expr::Var(v) => f(v),
            Expr::Neg(a) | Expr::Call(_, a) => a.visit_vars(f),
            Expr::Binary(_, a, b) => {
                a.visit_vars(f);
                b.visit_vars(f);
            }
        }
    }

    /// Evaluates over any [`Scalar`] (plain floats or Taylor jets).
    pub fn eval_generic<S: Scalar>(&self, slots: &[S]) -> Result<S, DomainError> {
        let fail = |reason: String| DomainError {
            subexpr: self.to_string(),
            reason,
        };
        match self {
            Expr::Num(v) => Ok(S::constant(*v)),
            Expr::Const(c) => Ok(S::constant(c.value())),
            Expr::Var(v) => slots
                .get(v.slot)
                .copied()
                .ok_or_else(|| fail(format!("variable `{}` is not bound", v.name))),
            Expr::Neg(a) => Ok(-a.eval_generic(slots)?),
            Expr::Call(func, a) => a.eval_generic(slots)?.apply(*func).map_err(fail),
            Expr::Binary(op, a, b) => {
                let x = a.eval_generic(slots)?;
                let y = b.eval_generic(slots)?;
                match op {
                    BinOp::Add => Ok(x + y),
                    BinOp::Sub => Ok(x - y),
                    BinOp::Mul => Ok(x * y),
                    BinOp::Div => x.div(y).map_err(fail),
                    BinOp::Pow => x.pow(y).map_err(fail),
                }
            }
        }
    }
}
