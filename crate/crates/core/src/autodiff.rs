//! Truncated Taylor jets of total order 3 in up to three variables.
//!
//! A [`Jet`] stores normalised Taylor coefficients `c[α] = ∂^α f / α!` for every
//! multi-index `α` with `|α| <= 3`. Arithmetic truncates at order 3, so every
//! coefficient of a result only depends on coefficients of equal or lower degree
//! in the operands. [`Jet::shift`] exploits that: it differentiates a jet and marks
//! the (now unknown) degree-3 coefficients as NaN, which can never leak into
//! lower degrees.
//!
//! [`Jet1`] and [`Jet2`] are the one- and two-variable views used by curves and
//! surfaces.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::DomainError;
use crate::expr::{Expr, Func};
use crate::vec3::Vec3;

pub const ORDER: usize = 3;
const LEN: usize = 20;
const PAIRS: usize = 84;

const fn build_exponents() -> [[u8; 3]; LEN] {
    let mut out = [[0u8; 3]; LEN];
    let mut n = 0;
    let mut d = 0u8;
    while d <= ORDER as u8 {
        let mut i = d as i32;
        while i >= 0 {
            let mut j = (d as i32) - i;
            while j >= 0 {
                let k = d as i32 - i - j;
                out[n] = [i as u8, j as u8, k as u8];
                n += 1;
                j -= 1;
            }
            i -= 1;
        }
        d += 1;
    }
    out
}

const EXPONENTS: [[u8; 3]; LEN] = build_exponents();

const fn degree(e: [u8; 3]) -> u8 {
    e[0] + e[1] + e[2]
}

const fn index_of(e: [u8; 3]) -> usize {
    let mut n = 0;
    while n < LEN {
        let x = EXPONENTS[n];
        if x[0] == e[0] && x[1] == e[1] && x[2] == e[2] {
            return n;
        }
        n += 1;
    }
    usize::MAX
}

const fn build_pairs() -> [(u8, u8, u8); PAIRS] {
    let mut out = [(0u8, 0u8, 0u8); PAIRS];
    let mut n = 0;
    let mut a = 0;
    while a < LEN {
        let mut b = 0;
        while b < LEN {
            let ea = EXPONENTS[a];
            let eb = EXPONENTS[b];
            if degree(ea) + degree(eb) <= ORDER as u8 {
                let k = index_of([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
                out[n] = (a as u8, b as u8, k as u8);
                n += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
}

const PRODUCT_TABLE: [(u8, u8, u8); PAIRS] = build_pairs();

fn factorial(n: u8) -> f64 {
    (1..=n as u32).map(f64::from).product()
}

/// Truncated multivariate Taylor series of order 3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    c: [f64; LEN],
}

impl Jet {
    pub fn constant(value: f64) -> Jet {
        let mut c = [0.0; LEN];
        c[0] = value;
        Jet { c }
    }

    /// The independent variable in `slot` (0, 1 or 2) expanded at `value`.
    pub fn variable(value: f64, slot: usize) -> Jet {
        assert!(slot < 3, "jets carry at most three variables");
        let mut e = [0u8; 3];
        e[slot] = 1;
        let mut j = Jet::constant(value);
        j.c[index_of(e)] = 1.0;
        j
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Normalised Taylor coefficient for the multi-index `e`.
    pub fn coefficient(&self, e: [u8; 3]) -> f64 {
        self.c[index_of(e)]
    }

    /// Partial derivative `∂^{e0+e1+e2} / ∂x0^e0 ∂x1^e1 ∂x2^e2`.
    pub fn partial(&self, e: [u8; 3]) -> f64 {
        self.coefficient(e) * factorial(e[0]) * factorial(e[1]) * factorial(e[2])
    }

    pub fn is_constant(&self) -> bool {
        self.c[1..].iter().all(|&x| x == 0.0)
    }

    pub fn scale(mut self, s: f64) -> Jet {
        self.c.iter_mut().for_each(|x| *x *= s);
        self
    }

    /// Jet of `∂f/∂x_slot`; degree-3 coefficients become NaN (unknown).
    pub fn shift(&self, slot: usize) -> Jet {
        let mut out = [f64::NAN; LEN];
        for (n, e) in EXPONENTS.iter().enumerate() {
            if degree(*e) < ORDER as u8 {
                let mut up = *e;
                up[slot] += 1;
                out[n] = f64::from(up[slot]) * self.c[index_of(up)];
            }
        }
        Jet { c: out }
    }

    /// `f(self)` given `f, f', f'', f'''` at `self.value()`.
    pub fn compose(&self, d: [f64; 4]) -> Jet {
        let mut delta = *self;
        delta.c[0] = 0.0;
        let d2 = delta * delta;
        let d3 = d2 * delta;
        let mut out = [0.0; LEN];
        out[0] = d[0];
        for n in 1..LEN {
            out[n] = d[1] * delta.c[n] + 0.5 * d[2] * d2.c[n] + d[3] / 6.0 * d3.c[n];
        }
        Jet { c: out }
    }

    pub fn recip(&self) -> Result<Jet, String> {
        let x = self.value();
        if x == 0.0 {
            return Err("division by zero".into());
        }
        let r = 1.0 / x;
        Ok(self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r]))
    }

    pub fn powi(&self, n: i64) -> Result<Jet, String> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut base = *self;
        let mut acc = Jet::constant(1.0);
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        Ok(acc)
    }

    pub fn sqrt(&self) -> Result<Jet, String> {
        self.apply(Func::Sqrt)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a += b;
        }
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: Jet) -> Jet {
        for (a, b) in self.c.iter_mut().zip(rhs.c) {
            *a -= b;
        }
        self
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut out = [0.0; LEN];
        for &(a, b, k) in PRODUCT_TABLE.iter() {
            out[k as usize] += self.c[a as usize] * rhs.c[b as usize];
        }
        Jet { c: out }
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

/// Value and first three derivatives of an elementary function at `x`.
fn elementary_derivatives(func: Func, x: f64) -> Result<[f64; 4], String> {
    Ok(match func {
        Func::Sin => {
            let (s, c) = x.sin_cos();
            [s, c, -s, -c]
        }
        Func::Cos => {
            let (s, c) = x.sin_cos();
            [c, -s, -c, s]
        }
        Func::Tan => {
            let t = x.tan();
            let sec2 = 1.0 + t * t;
            [t, sec2, 2.0 * t * sec2, sec2 * (2.0 + 6.0 * t * t)]
        }
        Func::Sinh => {
            let (s, c) = (x.sinh(), x.cosh());
            [s, c, s, c]
        }
        Func::Cosh => {
            let (s, c) = (x.sinh(), x.cosh());
            [c, s, c, s]
        }
        Func::Tanh => {
            let t = x.tanh();
            let s = 1.0 - t * t;
            [t, s, -2.0 * t * s, s * (6.0 * t * t - 2.0)]
        }
        Func::Exp => {
            let e = x.exp();
            [e, e, e, e]
        }
        Func::Ln => {
            if x <= 0.0 {
                return Err(format!("ln of non-positive value {x}"));
            }
            let r = 1.0 / x;
            [x.ln(), r, -r * r, 2.0 * r * r * r]
        }
        Func::Sqrt => {
            if x <= 0.0 {
                return Err(format!("sqrt jet at non-positive value {x}"));
            }
            let s = x.sqrt();
            [s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x)]
        }
        Func::Atan => {
            let q = 1.0 / (1.0 + x * x);
            [x.atan(), q, -2.0 * x * q * q, (6.0 * x * x - 2.0) * q * q * q]
        }
        Func::Abs => {
            if x == 0.0 {
                return Err("abs is not differentiable at 0".into());
            }
            let s = x.signum();
            [x.abs(), s, 0.0, 0.0]
        }
    })
}

/// Number type the expression evaluator can run on.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn constant(v: f64) -> Self;
    fn value(&self) -> f64;
    fn is_constant(&self) -> bool;
    fn div(self, rhs: Self) -> Result<Self, String>;
    fn pow(self, rhs: Self) -> Result<Self, String>;
    fn apply(self, func: Func) -> Result<Self, String>;
}

fn as_small_integer(x: f64) -> Option<i64> {
    (x.fract() == 0.0 && x.abs() <= 1e9).then_some(x as i64)
}

fn check_finite(x: f64) -> Result<f64, String> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("non-finite result {x}"))
    }
}

impl Scalar for f64 {
    fn constant(v: f64) -> Self {
        v
    }

    fn value(&self) -> f64 {
        *self
    }

    fn is_constant(&self) -> bool {
        true
    }

    fn div(self, rhs: Self) -> Result<Self, String> {
        if rhs == 0.0 {
            return Err("division by zero".into());
        }
        check_finite(self / rhs)
    }

    fn pow(self, rhs: Self) -> Result<Self, String> {
        if let Some(n) = as_small_integer(rhs) {
            if self == 0.0 && n < 0 {
                return Err("zero raised to a negative power".into());
            }
            return check_finite(self.powi(n as i32));
        }
        if self > 0.0 {
            check_finite((rhs * self.ln()).exp())
        } else if self == 0.0 && rhs > 0.0 {
            Ok(0.0)
        } else {
            Err(format!("{self} raised to non-integer power {rhs}"))
        }
    }

    fn apply(self, func: Func) -> Result<Self, String> {
        let x = self;
        let y = match func {
            Func::Sin => x.sin(),
            Func::Cos => x.cos(),
            Func::Tan => x.tan(),
            Func::Sinh => x.sinh(),
            Func::Cosh => x.cosh(),
            Func::Tanh => x.tanh(),
            Func::Exp => x.exp(),
            Func::Ln => {
                if x <= 0.0 {
                    return Err(format!("ln of non-positive value {x}"));
                }
                x.ln()
            }
            Func::Sqrt => {
                if x < 0.0 {
                    return Err(format!("sqrt of negative value {x}"));
                }
                x.sqrt()
            }
            Func::Atan => x.atan(),
            Func::Abs => x.abs(),
        };
        check_finite(y)
    }
}

impl Scalar for Jet {
    fn constant(v: f64) -> Self {
        Jet::constant(v)
    }

    fn value(&self) -> f64 {
        self.c[0]
    }

    fn is_constant(&self) -> bool {
        Jet::is_constant(self)
    }

    fn div(self, rhs: Self) -> Result<Self, String> {
        if rhs.is_constant() {
            if rhs.value() == 0.0 {
                return Err("division by zero".into());
            }
            return Ok(self.scale(1.0 / rhs.value()));
        }
        Ok(self * rhs.recip()?)
    }

    fn pow(self, rhs: Self) -> Result<Self, String> {
        if rhs.is_constant() {
            let p = rhs.value();
            if let Some(n) = as_small_integer(p) {
                return self.powi(n);
            }
            let x = self.value();
            if x > 0.0 {
                let f = x.powf(p);
                return Ok(self.compose([
                    f,
                    p * f / x,
                    p * (p - 1.0) * f / (x * x),
                    p * (p - 1.0) * (p - 2.0) * f / (x * x * x),
                ]));
            }
            if x == 0.0 && p > 0.0 && self.is_constant() {
                return Ok(Jet::constant(0.0));
            }
            return Err(format!("{x} raised to non-integer power {p}"));
        }
        if self.value() <= 0.0 {
            return Err(format!(
                "non-positive base {} with variable exponent",
                self.value()
            ));
        }
        (rhs * self.apply(Func::Ln)?).apply(Func::Exp)
    }

    fn apply(self, func: Func) -> Result<Self, String> {
        if self.is_constant() {
            return Ok(Jet::constant(self.value().apply(func)?));
        }
        let d = elementary_derivatives(func, self.value())?;
        if !d.iter().all(|x| x.is_finite()) {
            return Err(format!("non-finite derivative of {}", func.name()));
        }
        Ok(self.compose(d))
    }
}

/// Single-variable jet: value and derivatives up to order 3 in `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet1(pub Jet);

impl Jet1 {
    /// `d^k f / dt^k`, `k <= 3`.
    pub fn derivative(&self, k: u8) -> f64 {
        self.0.partial([k, 0, 0])
    }

    pub fn derivatives(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|k| self.derivative(k))
    }
}

/// Two-variable jet: all partials `∂^{i+j} / ∂u^i ∂v^j` with `i + j <= 3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2(pub Jet);

impl Jet2 {
    pub fn partial(&self, i: u8, j: u8) -> f64 {
        self.0.partial([i, j, 0])
    }
}

/// Expands `expr` (variable in slot 0) at `t0`.
pub fn lift1(expr: &Expr, t0: f64) -> Result<Jet1, DomainError> {
    expr.eval_generic(&[Jet::variable(t0, 0)]).map(Jet1)
}

/// Expands `expr` (variables in slots 0 and 1) at `(u0, v0)`.
pub fn lift2(expr: &Expr, u0: f64, v0: f64) -> Result<Jet2, DomainError> {
    expr.eval_generic(&[Jet::variable(u0, 0), Jet::variable(v0, 1)])
        .map(Jet2)
}

/// Value and gradient of a function of three variables.
pub fn gradient3(expr: &Expr, p: [f64; 3]) -> Result<(f64, [f64; 3]), DomainError> {
    let vars = [
        Jet::variable(p[0], 0),
        Jet::variable(p[1], 1),
        Jet::variable(p[2], 2),
    ];
    let j = expr.eval_generic(&vars)?;
    Ok((
        j.value(),
        [j.partial([1, 0, 0]), j.partial([0, 1, 0]), j.partial([0, 0, 1])],
    ))
}

/// Vector of three jets, e.g. the Taylor expansion of a curve or surface map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetVec3(pub [Jet; 3]);

impl JetVec3 {
    pub fn value(&self) -> Vec3 {
        Vec3::new(self.0[0].value(), self.0[1].value(), self.0[2].value())
    }

    pub fn partial(&self, e: [u8; 3]) -> Vec3 {
        Vec3::new(
            self.0[0].partial(e),
            self.0[1].partial(e),
            self.0[2].partial(e),
        )
    }

    pub fn shift(&self, slot: usize) -> JetVec3 {
        JetVec3(self.0.map(|j| j.shift(slot)))
    }

    pub fn dot(&self, o: &JetVec3) -> Jet {
        self.0[0] * o.0[0] + self.0[1] * o.0[1] + self.0[2] * o.0[2]
    }

    pub fn cross(&self, o: &JetVec3) -> JetVec3 {
        let [a0, a1, a2] = self.0;
        let [b0, b1, b2] = o.0;
        JetVec3([a1 * b2 - a2 * b1, a2 * b0 - a0 * b2, a0 * b1 - a1 * b0])
    }

    pub fn scale(&self, s: Jet) -> JetVec3 {
        JetVec3(self.0.map(|j| j * s))
    }

    pub fn add(&self, o: &JetVec3) -> JetVec3 {
        JetVec3([0, 1, 2].map(|i| self.0[i] + o.0[i]))
    }

    pub fn sub(&self, o: &JetVec3) -> JetVec3 {
        JetVec3([0, 1, 2].map(|i| self.0[i] - o.0[i]))
    }

    pub fn norm(&self) -> Result<Jet, String> {
        self.dot(self).sqrt()
    }

    /// Unit vector field; fails where the vector vanishes.
    pub fn normalized(&self) -> Result<JetVec3, String> {
        Ok(self.scale(self.norm()?.recip()?))
    }
}
