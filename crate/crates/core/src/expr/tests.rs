use std::collections::HashMap;
use std::f64::consts::PI;

use proptest::prelude::*;

use super::*;
use crate::error::ParseError;

fn p(src: &str, vars: &[&str]) -> Expr {
    parse_scalar(src, vars).unwrap()
}

#[test]
fn root_of_pythagorean_identity_is_addition() {
    let e = p("cos(t)^2 + sin(t)^2", &["t"]);
    assert!(matches!(e, Expr::Binary(BinOp::Add, ..)));
}

#[test]
fn named_bindings() {
    let e = p("u*v - pi", &["u", "v"]);
    let b = HashMap::from([("u", 2.0), ("v", 3.0)]);
    assert_eq!(e.eval_named(&b).unwrap(), 6.0 - PI);
    let missing = HashMap::from([("u", 2.0)]);
    assert!(e.eval_named(&missing).is_err());
}

#[test]
fn unbalanced_paren_reports_offset() {
    let err = parse_scalar("cos(t", &["t"]).unwrap_err();
    assert_eq!(err.offset(), Some(5));
}

#[test]
fn undeclared_variable() {
    let err = parse_scalar("t + q", &["t"]).unwrap_err();
    assert_eq!(
        err,
        ParseError::UndeclaredVariable {
            name: "q".into(),
            offset: 4
        }
    );
}

#[test]
fn empty_source_is_rejected() {
    assert!(parse_scalar("   ", &["t"]).is_err());
}

#[test]
fn precedence_and_associativity() {
    assert_eq!(p("2+3*4", &[]).eval(&[]).unwrap(), 14.0);
    assert_eq!(p("2^3^2", &[]).eval(&[]).unwrap(), 512.0);
    assert_eq!(p("-2^2", &[]).eval(&[]).unwrap(), -4.0);
    assert_eq!(p("8/4/2", &[]).eval(&[]).unwrap(), 1.0);
    assert_eq!(p("8-4-2", &[]).eval(&[]).unwrap(), 2.0);
    assert_eq!(p("2^-1", &[]).eval(&[]).unwrap(), 0.5);
}

#[test]
fn simple_evaluations() {
    assert_eq!(p("sin(pi/2)", &[]).eval(&[]).unwrap(), 1.0);
    assert_eq!(p("cos(0)*3 + 1", &[]).eval(&[]).unwrap(), 4.0);
    let err = p("ln(-1)", &[]).eval(&[]).unwrap_err();
    assert_eq!(err.subexpr, "ln(-1)");
    assert!(p("1/(t-t)", &["t"]).eval(&[1.0]).is_err());
    assert!(p("sqrt(t)", &["t"]).eval(&[-1.0]).is_err());
}

#[test]
fn implicit_multiplication() {
    let x = 0.7;
    assert_eq!(p("2t", &["t"]).eval(&[x]).unwrap(), 2.0 * x);
    assert_eq!(p("cos t", &["t"]).eval(&[x]).unwrap(), x.cos());
    assert_eq!(
        p("cos t sin t", &["t"]).eval(&[x]).unwrap(),
        x.cos() * x.sin()
    );
    assert_eq!(p("t(1+t)", &["t"]).eval(&[x]).unwrap(), x * (1.0 + x));
    let (u, v) = (0.3, 1.1);
    assert_eq!(
        p("cos u*cos v", &["u", "v"]).eval(&[u, v]).unwrap(),
        u.cos() * v.cos()
    );
    assert!((p("e^t", &["t"]).eval(&[x]).unwrap() - x.exp()).abs() < 1e-15);
    assert_eq!(p("2e-3", &[]).eval(&[]).unwrap(), 0.002);
}

#[test]
fn negative_base_with_integer_exponent() {
    assert_eq!(p("t^3", &["t"]).eval(&[-2.0]).unwrap(), -8.0);
    assert!(p("t^0.5", &["t"]).eval(&[-2.0]).is_err());
    assert!((p("t^0.5", &["t"]).eval(&[4.0]).unwrap() - 2.0).abs() < 1e-15);
}

#[test]
fn curve_sources() {
    let circle = parse_curve("(cos t, sin t, 0) on [0, 2*pi]").unwrap();
    assert_eq!(circle.domain.hi, 2.0 * PI);
    let helix = parse_curve("(cos t, sin t, t) on [0, 4*pi]").unwrap();
    assert_eq!(helix.components[2].eval(&[1.5]).unwrap(), 1.5);
    assert_eq!(
        parse_curve("(t, t)").unwrap_err(),
        ParseError::Arity {
            expected: 3,
            found: 2
        }
    );
    assert!(matches!(
        parse_curve("(t, t, t)").unwrap_err(),
        ParseError::Domain(_)
    ));
    assert!(parse_curve("(t, t, t) on [1, 0]").is_err());
}

#[test]
fn surface_sources() {
    let sphere =
        parse_surface("(cos u*cos v, cos u*sin v, sin u) on [-pi/2,pi/2]x[0,2*pi]").unwrap();
    assert_eq!(sphere.u_range.lo, -PI / 2.0);
    assert_eq!(sphere.v_range.hi, 2.0 * PI);
    let helicoid = parse_surface("(sinh u*cos v, sinh u*sin v, v) on [-2,2]x[0,2*pi]").unwrap();
    assert_eq!(helicoid.components[2].eval(&[0.0, 1.25]).unwrap(), 1.25);
    assert_eq!(
        parse_surface("(u, v)").unwrap_err(),
        ParseError::Arity {
            expected: 3,
            found: 2
        }
    );
    assert!(parse_surface("(u, v, 0) on [0,1]×[0,1]").is_ok());
}

#[test]
fn printed_models_reparse() {
    let c = parse_curve("(2cos t, -sin t^2, e^t/3) on [0, 1]").unwrap();
    assert_eq!(parse_curve(&c.to_string()).unwrap(), c);
}

#[test]
fn pythagorean_identity_on_random_points() {
    use rand::{Rng, SeedableRng};
    let e = p("cos(t)^2+sin(t)^2", &["t"]);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let x: f64 = rng.gen_range(-1e3..1e3);
        assert!((e.eval(&[x]).unwrap() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn symbolic_derivative_matches_closed_form() {
    let e = p("t^3*sin(t) + exp(2t)/t", &["t"]);
    let d = e.derivative(0);
    let x = 1.3_f64;
    let want = 3.0 * x * x * x.sin() + x.powi(3) * x.cos() + (2.0 * (2.0 * x).exp() * x
        - (2.0 * x).exp())
        / (x * x);
    assert!((d.eval(&[x]).unwrap() - want).abs() < 1e-12);
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0.0f64..100.0).prop_map(Expr::Num),
        Just(Expr::Const(Constant::Pi)),
        Just(Expr::Const(Constant::E)),
        Just(Expr::var(0, "u")),
        Just(Expr::var(1, "v")),
    ];
    leaf.prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (
                prop_oneof![
                    Just(BinOp::Add),
                    Just(BinOp::Sub),
                    Just(BinOp::Mul),
                    Just(BinOp::Div),
                    Just(BinOp::Pow)
                ],
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(op, a, b)| Expr::binary(op, a, b)),
            (proptest::sample::select(Func::ALL.to_vec()), inner)
                .prop_map(|(f, a)| Expr::call(f, a)),
        ]
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip(e in arb_expr()) {
        let printed = e.to_string();
        let reparsed = parse_scalar(&printed, &["u", "v"]).unwrap();
        prop_assert_eq!(reparsed, e, "printed as {}", printed);
    }
}
