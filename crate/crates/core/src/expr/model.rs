use std::fmt;

use super::ast::Expr;
use super::parser::{Parser, Tok};
use crate::error::ParseError;

/// Closed parameter interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, ParseError> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(ParseError::Domain(format!(
                "interval [{lo}, {hi}] must be finite with lo < hi"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, t: f64) -> bool {
        let slack = 1e-12 * (1.0 + self.lo.abs().max(self.hi.abs()));
        t >= self.lo - slack && t <= self.hi + slack
    }

    /// `n >= 2` equally spaced points including both ends.
    pub fn samples(&self, n: usize) -> Vec<f64> {
        let n = n.max(2);
        (0..n)
            .map(|i| self.lo + self.len() * i as f64 / (n - 1) as f64)
            .collect()
    }

    /// `n` cell-centred points strictly inside the interval.
    pub fn interior(&self, n: usize) -> Vec<f64> {
        let n = n.max(1);
        (0..n)
            .map(|i| self.lo + self.len() * (i as f64 + 0.5) / n as f64)
            .collect()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Parametric curve `t -> (x(t), y(t), z(t))` on an interval.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveModel {
    pub components: [Expr; 3],
    pub domain: Interval,
    pub label: Option<String>,
}

/// Parametric surface `(u, v) -> (x, y, z)` on a rectangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceModel {
    pub components: [Expr; 3],
    pub u_range: Interval,
    pub v_range: Interval,
    pub label: Option<String>,
}

impl CurveModel {
    pub fn new(components: [Expr; 3], domain: Interval) -> Self {
        CurveModel {
            components,
            domain,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

impl SurfaceModel {
    pub fn new(components: [Expr; 3], u_range: Interval, v_range: Interval) -> Self {
        SurfaceModel {
            components,
            u_range,
            v_range,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn contains(&self, u: f64, v: f64) -> bool {
        self.u_range.contains(u) && self.v_range.contains(v)
    }
}

impl fmt::Display for CurveModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.components;
        write!(f, "({x}, {y}, {z}) on {}", self.domain)
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = &self.components;
        write!(f, "({x}, {y}, {z}) on {}x{}", self.u_range, self.v_range)
    }
}

/// Parsed `(e1, ..., en) [on [a,b] (x [c,d])*]`.
#[derive(Debug, Clone)]
pub struct TupleSource {
    pub components: Vec<Expr>,
    pub ranges: Vec<Interval>,
}

/// Parses a parenthesised tuple of expressions with an optional `on` clause.
///
/// The arity is checked before the domain clause so that `(t, t)` reports an
/// arity error rather than a missing domain.
pub fn parse_tuple(
    source: &str,
    vars: &[&str],
    arity: usize,
) -> Result<TupleSource, ParseError> {
    let mut p = Parser::new(source, vars)?;
    p.expect(Tok::LParen, "`(`")?;
    let mut components = vec![p.expr()?];
    while *p.peek() == Tok::Comma {
        p.expect(Tok::Comma, "`,`")?;
        components.push(p.expr()?);
    }
    p.expect(Tok::RParen, "`)` closing the component tuple")?;
    if components.len() != arity {
        return Err(ParseError::Arity {
            expected: arity,
            found: components.len(),
        });
    }
    let mut ranges = Vec::new();
    if p.eat_ident("on") {
        p.with_vars(&[]);
        loop {
            ranges.push(parse_range(&mut p)?);
            if *p.peek() == Tok::Op('×') {
                p.expect(Tok::Op('×'), "`x`")?;
            } else if !p.eat_ident("x") && !p.eat_ident("X") {
                break;
            }
        }
    }
    p.expect_eof()?;
    Ok(TupleSource { components, ranges })
}

fn parse_range(p: &mut Parser<'_>) -> Result<Interval, ParseError> {
    p.expect(Tok::LBracket, "`[`")?;
    let at = p.offset();
    let lo = p.expr()?;
    p.expect(Tok::Comma, "`,`")?;
    let hi = p.expr()?;
    p.expect(Tok::RBracket, "`]`")?;
    let lo = lo.eval(&[]).map_err(|e| ParseError::Syntax {
        offset: at,
        message: e.to_string(),
    })?;
    let hi = hi.eval(&[]).map_err(|e| ParseError::Syntax {
        offset: at,
        message: e.to_string(),
    })?;
    Interval::new(lo, hi)
}

fn take3(v: Vec<Expr>) -> [Expr; 3] {
    let mut it = v.into_iter();
    let a = it.next().expect("arity checked");
    let b = it.next().expect("arity checked");
    let c = it.next().expect("arity checked");
    [a, b, c]
}

/// Parses `"(x(t), y(t), z(t)) on [a, b]"`.
pub fn parse_curve(source: &str) -> Result<CurveModel, ParseError> {
    let tuple = parse_tuple(source, &["t"], 3)?;
    let domain = match tuple.ranges.as_slice() {
        [d] => *d,
        [] => return Err(ParseError::Domain("missing `on [a, b]` clause".into())),
        _ => return Err(ParseError::Domain("a curve takes one interval".into())),
    };
    Ok(CurveModel::new(take3(tuple.components), domain))
}

/// Parses `"(x(u,v), y(u,v), z(u,v)) on [a, b]x[c, d]"`.
pub fn parse_surface(source: &str) -> Result<SurfaceModel, ParseError> {
    let tuple = parse_tuple(source, &["u", "v"], 3)?;
    let (u_range, v_range) = match tuple.ranges.as_slice() {
        [a, b] => (*a, *b),
        [] => return Err(ParseError::Domain("missing `on [a, b]x[c, d]` clause".into())),
        _ => return Err(ParseError::Domain("a surface takes two intervals".into())),
    };
    Ok(SurfaceModel::new(take3(tuple.components), u_range, v_range))
}
