use serde_json::Value;

use geo3::catalog::{self, ClosedForm, Locus};

use super::Outcome;
use crate::args::CatalogCmd;
use crate::output::{num, Report};
use crate::source::{CliError, Ctx};

pub fn run(cmd: &CatalogCmd) -> Result<Outcome, CliError> {
    match cmd {
        CatalogCmd::List => {
            let mut r = Report::new("catalog list", &["name", "kind", "params", "description"]);
            for name in catalog::names() {
                let (kind, summary, params) = catalog::describe(name).expect("listed names resolve");
                let params: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                r.row(vec![name.into(), kind.name().into(), params.join(" ").into(), summary.into()]);
            }
            Ok(r.into())
        }
        CatalogCmd::Show { name, params } => {
            let ctx = Ctx { command: "catalog show" };
            let ps: Vec<(&str, f64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
            let e = catalog::make(name, &ps).map_err(|e| ctx.fail(e, Some(name), None))?;
            let mut r = Report::new("catalog show", &["param", "value"]);
            r.param("name", e.name.as_str());
            for (k, v) in &e.params {
                r.row(vec![k.as_str().into(), num(*v)]);
            }
            r.summary("kind", e.kind.name());
            r.summary("source", e.source());
            let text = |x: &geo3::Expr| Value::String(x.to_string());
            match &e.closed_form {
                ClosedForm::Curve { kappa, tau } => {
                    r.summary("kappa", text(kappa));
                    r.summary("tau", tau.as_ref().map_or(Value::Null, text));
                }
                ClosedForm::Surface { k, h } => {
                    r.summary("K", text(k));
                    r.summary("H", h.as_ref().map_or(Value::Null, text));
                }
                ClosedForm::None => {}
            }
            if !e.singular.is_empty() {
                let lines: Vec<String> = e
                    .singular
                    .iter()
                    .map(|l| match l {
                        Locus::U(a) => format!("u = {a}"),
                        Locus::V(b) => format!("v = {b}"),
                    })
                    .collect();
                r.summary("singular", lines.join(", "));
            }
            if !e.notes.is_empty() {
                r.summary("notes", e.notes.as_str());
            }
            Ok(r.into())
        }
    }
}
