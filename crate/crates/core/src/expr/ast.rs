use std::fmt;

/// Named constants recognised by the DSL.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    pub fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::E => "e",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "pi" => Some(Constant::Pi),
            "e" => Some(Constant::E),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Ln,
    Sqrt,
    Atan,
    Abs,
}

impl Func {
    pub const ALL: [Func; 11] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
        Func::Atan,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Atan => "atan",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

/// A variable reference. `slot` indexes the binding slice passed to evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Var {
    pub slot: usize,
    pub name: String,
}

/// Scalar expression tree over declared variables.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Const(Constant),
    Var(Var),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

// Binding strength used by the printer; mirrors the parser's grammar.
const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

impl Expr {
    pub fn num(v: f64) -> Expr {
        Expr::Num(v)
    }

    pub fn var(slot: usize, name: &str) -> Expr {
        Expr::Var(Var {
            slot,
            name: name.to_string(),
        })
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn call(func: Func, arg: Expr) -> Expr {
        Expr::Call(func, Box::new(arg))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Num(_) | Expr::Const(_) | Expr::Var(_) | Expr::Call(..) => PREC_ATOM,
            Expr::Neg(_) => PREC_NEG,
            Expr::Binary(BinOp::Add | BinOp::Sub, ..) => PREC_ADD,
            Expr::Binary(BinOp::Mul | BinOp::Div, ..) => PREC_MUL,
            Expr::Binary(BinOp::Pow, ..) => PREC_POW,
        }
    }

    /// True when the expression references the variable in `slot`.
    pub fn depends_on(&self, slot: usize) -> bool {
        match self {
            Expr::Num(_) | Expr::Const(_) => false,
            Expr::Var(v) => v.slot == slot,
            Expr::Neg(a) | Expr::Call(_, a) => a.depends_on(slot),
            Expr::Binary(_, a, b) => a.depends_on(slot) || b.depends_on(slot),
        }
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Num(_) | Expr::Const(_) => true,
            Expr::Var(_) => false,
            Expr::Neg(a) | Expr::Call(_, a) => a.is_constant(),
            Expr::Binary(_, a, b) => a.is_constant() && b.is_constant(),
        }
    }

    /// Replaces every variable node by `f(var)`.
    pub fn substitute(&self, f: &dyn Fn(&Var) -> Expr) -> Expr {
        match self {
            Expr::Num(_) | Expr::Const(_) => self.clone(),
            Expr::Var(v) => f(v),
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(f))),
            Expr::Call(func, a) => Expr::call(*func, a.substitute(f)),
            Expr::Binary(op, a, b) => Expr::binary(*op, a.substitute(f), b.substitute(f)),
        }
    }

    /// Renames/reslots variables: `map[old_slot] = (new_slot, new_name)`.
    pub fn rename_vars(&self, map: &[(usize, &str)]) -> Expr {
        self.substitute(&|v| {
            let (slot, name) = map[v.slot];
            Expr::var(slot, name)
        })
    }

    /// Symbolic derivative with respect to the variable in `slot`.
    ///
    /// Only trivial folding of zeros and ones is performed; the result is meant
    /// for evaluation, not display.
    pub fn derivative(&self, slot: usize) -> Expr {
        use BinOp::*;
        if !self.depends_on(slot) {
            return Expr::Num(0.0);
        }
        match self {
            Expr::Num(_) | Expr::Const(_) => Expr::Num(0.0),
            Expr::Var(_) => Expr::Num(1.0),
            Expr::Neg(a) => neg(a.derivative(slot)),
            Expr::Binary(Add, a, b) => add(a.derivative(slot), b.derivative(slot)),
            Expr::Binary(Sub, a, b) => sub(a.derivative(slot), b.derivative(slot)),
            Expr::Binary(Mul, a, b) => add(
                mul(a.derivative(slot), (**b).clone()),
                mul((**a).clone(), b.derivative(slot)),
            ),
            Expr::Binary(Div, a, b) => div(
                sub(
                    mul(a.derivative(slot), (**b).clone()),
                    mul((**a).clone(), b.derivative(slot)),
                ),
                Expr::binary(Pow, (**b).clone(), Expr::Num(2.0)),
            ),
            Expr::Binary(Pow, a, b) => {
                if !b.depends_on(slot) {
                    let lowered = match **b {
                        Expr::Num(n) => Expr::Num(n - 1.0),
                        _ => sub((**b).clone(), Expr::Num(1.0)),
                    };
                    mul(
                        mul((**b).clone(), Expr::binary(Pow, (**a).clone(), lowered)),
                        a.derivative(slot),
                    )
                } else {
                    // d(a^b) = a^b (b' ln a + b a'/a)
                    mul(
                        self.clone(),
                        add(
                            mul(b.derivative(slot), Expr::call(Func::Ln, (**a).clone())),
                            div(mul((**b).clone(), a.derivative(slot)), (**a).clone()),
                        ),
                    )
                }
            }
            Expr::Call(func, a) => {
                let inner = (**a).clone();
                let outer = match func {
                    Func::Sin => Expr::call(Func::Cos, inner),
                    Func::Cos => neg(Expr::call(Func::Sin, inner)),
                    Func::Tan => add(
                        Expr::Num(1.0),
                        Expr::binary(Pow, Expr::call(Func::Tan, inner), Expr::Num(2.0)),
                    ),
                    Func::Sinh => Expr::call(Func::Cosh, inner),
                    Func::Cosh => Expr::call(Func::Sinh, inner),
                    Func::Tanh => sub(
                        Expr::Num(1.0),
                        Expr::binary(Pow, Expr::call(Func::Tanh, inner), Expr::Num(2.0)),
                    ),
                    Func::Exp => Expr::call(Func::Exp, inner),
                    Func::Ln => div(Expr::Num(1.0), inner),
                    Func::Sqrt => div(
                        Expr::Num(1.0),
                        mul(Expr::Num(2.0), Expr::call(Func::Sqrt, inner)),
                    ),
                    Func::Atan => div(
                        Expr::Num(1.0),
                        add(Expr::Num(1.0), Expr::binary(Pow, inner, Expr::Num(2.0))),
                    ),
                    Func::Abs => div(inner.clone(), Expr::call(Func::Abs, inner)),
                };
                mul(outer, a.derivative(slot))
            }
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.precedence() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Expr::Num(v) => write!(f, "{v}")?,
            Expr::Const(c) => f.write_str(c.name())?,
            Expr::Var(v) => f.write_str(&v.name)?,
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.fmt_prec(f, PREC_NEG)?;
            }
            Expr::Call(func, a) => {
                write!(f, "{}(", func.name())?;
                a.fmt_prec(f, 0)?;
                f.write_str(")")?;
            }
            Expr::Binary(op, a, b) => {
                let (lmin, rmin) = match op {
                    BinOp::Add | BinOp::Sub => (PREC_ADD, PREC_MUL),
                    BinOp::Mul | BinOp::Div => (PREC_MUL, PREC_NEG),
                    BinOp::Pow => (PREC_ATOM, PREC_NEG),
                };
                a.fmt_prec(f, lmin)?;
                match op {
                    BinOp::Pow => f.write_str("^")?,
                    _ => write!(f, " {} ", op.symbol())?,
                }
                b.fmt_prec(f, rmin)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

fn is_zero(e: &Expr) -> bool {
    matches!(e, Expr::Num(v) if *v == 0.0)
}

fn is_one(e: &Expr) -> bool {
    matches!(e, Expr::Num(v) if *v == 1.0)
}

pub(crate) fn neg(a: Expr) -> Expr {
    if is_zero(&a) {
        a
    } else {
        Expr::Neg(Box::new(a))
    }
}

pub(crate) fn add(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) {
        b
    } else if is_zero(&b) {
        a
    } else {
        Expr::binary(BinOp::Add, a, b)
    }
}

pub(crate) fn sub(a: Expr, b: Expr) -> Expr {
    if is_zero(&b) {
        a
    } else if is_zero(&a) {
        neg(b)
    } else {
        Expr::binary(BinOp::Sub, a, b)
    }
}

pub(crate) fn mul(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) || is_zero(&b) {
        Expr::Num(0.0)
    } else if is_one(&a) {
        b
    } else if is_one(&b) {
        a
    } else {
        Expr::binary(BinOp::Mul, a, b)
    }
}

pub(crate) fn div(a: Expr, b: Expr) -> Expr {
    if is_zero(&a) {
        Expr::Num(0.0)
    } else if is_one(&b) {
        a
    } else {
        Expr::binary(BinOp::Div, a, b)
    }
}
