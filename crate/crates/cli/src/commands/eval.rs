use geo3::autodiff::Jet;

use super::Outcome;
use crate::args::EvalArgs;
use crate::output::{num, Report};
use crate::source::{CliError, Ctx};

/// Jets carry at most this many independent variables.
const MAX_JET_VARS: usize = 3;

pub fn run(args: &EvalArgs) -> Result<Outcome, CliError> {
    let ctx = Ctx { command: "eval" };
    let names: Vec<&str> = args.vars.iter().map(|(k, _)| k.as_str()).collect();
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(ctx.usage(format!("variable '{n}' bound twice")));
        }
    }
    let values: Vec<f64> = args.vars.iter().map(|(_, v)| *v).collect();
    let point = || {
        let parts: Vec<String> = args.vars.iter().map(|(k, v)| format!("{k} = {v}")).collect();
        parts.join(", ")
    };
    let e = geo3::parse_scalar(&args.expr, &names).map_err(|e| ctx.fail(e.into(), Some(&args.expr), None))?;
    let value = e.eval(&values).map_err(|err| ctx.fail(err.into(), Some(&args.expr), Some(point())))?;

    let mut cols = vec!["value".to_string()];
    let mut row = vec![num(value)];
    if names.len() <= MAX_JET_VARS {
        let slots: Vec<Jet> = values.iter().enumerate().map(|(i, &v)| Jet::variable(v, i)).collect();
        let jet = e
            .eval_generic(&slots)
            .map_err(|err| ctx.fail(err.into(), Some(&args.expr), Some(point())))?;
        for (i, n) in names.iter().enumerate() {
            let mut idx = [0u8; 3];
            idx[i] = 1;
            cols.push(format!("d_{n}"));
            row.push(num(jet.partial(idx)));
        }
    }
    let col_refs: Vec<&str> = cols.iter().map(String::as_str).collect();
    let mut r = Report::new("eval", &col_refs);
    r.param("expr", args.expr.as_str());
    for (k, v) in &args.vars {
        r.param(k, num(*v));
    }
    r.row(row);
    Ok(r.into())
}
