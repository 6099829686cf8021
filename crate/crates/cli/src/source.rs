//! Model loading and error reporting shared by all subcommands.

use std::fmt;

use geo3::catalog::{self, CatalogEntry, Kind, Model};
use geo3::{CurveModel, Error, SurfaceModel};

use crate::args::ModelArgs;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_MATH: u8 = 2;
pub const EXIT_CHECK: u8 = 3;

/// A failure with the exit code it maps to. Every message names the
/// subcommand; `input` and `point` are filled in whenever they are known.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: u8,
    pub command: String,
    pub message: String,
    pub input: Option<String>,
    pub point: Option<String>,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}: {}", self.command, self.message)?;
        if let Some(i) = &self.input {
            write!(f, "\n  input: {i}")?;
        }
        if let Some(p) = &self.point {
            write!(f, "\n  at: {p}")?;
        }
        Ok(())
    }
}

/// The running subcommand, used to label errors.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub command: &'static str,
}

impl Ctx {
    pub fn usage(&self, message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            command: self.command.into(),
            message: message.into(),
            input: None,
            point: None,
        }
    }

    /// Maps a library error: malformed input exits 1, numerical failures exit 2.
    /// `source` is the text being processed; parse offsets are marked in it.
    pub fn fail(&self, e: Error, source: Option<&str>, point: Option<String>) -> CliError {
        let code = match e {
            Error::Parse(_) | Error::Unbound(_) | Error::Invalid(_) => EXIT_USAGE,
            _ => EXIT_MATH,
        };
        let input = source.map(|s| match &e {
            Error::Parse(p) => match p.offset() {
                Some(off) => mark(s, off),
                None => format!("`{s}`"),
            },
            _ => format!("`{s}`"),
        });
        CliError {
            code,
            command: self.command.into(),
            message: e.to_string(),
            input,
            point,
        }
    }

    /// Adapter for `map_err` when both the source and the point are known.
    pub fn at<'a>(&'a self, source: &'a str, point: impl Fn() -> String + 'a) -> impl Fn(Error) -> CliError + 'a {
        move |e| self.fail(e, Some(source), Some(point()))
    }
}

/// Quotes `s` and points at byte `off` with a caret on the next line.
fn mark(s: &str, off: usize) -> String {
    let col = s.get(..off.min(s.len())).map_or(off, |p| p.chars().count());
    format!("`{s}`\n          {}^", " ".repeat(col))
}

/// A resolved model: the object itself, the text it came from and, for catalog
/// entries, the entry with its parameters.
pub struct Loaded {
    pub source: String,
    pub entry: Option<CatalogEntry>,
    pub model: Model,
}

impl Loaded {
    pub fn curve(&self) -> &CurveModel {
        match &self.model {
            Model::Curve(c) => c,
            _ => unreachable!("load checked the kind"),
        }
    }

    pub fn surface(&self) -> &SurfaceModel {
        match &self.model {
            Model::Surface(s) => s,
            _ => unreachable!("load checked the kind"),
        }
    }

    /// Description for the report header: catalog name and parameters, or the
    /// inline source.
    pub fn describe(&self, report: &mut crate::output::Report) {
        report.param("model", self.source.as_str());
        if let Some(e) = &self.entry {
            report.param("catalog", e.name.as_str());
            for (k, v) in &e.params {
                report.param(k, crate::output::num(*v));
            }
        }
    }
}

/// Resolves `--file`, a catalog name or inline source into a model of `want`.
pub fn load(ctx: &Ctx, args: &ModelArgs, want: Kind) -> Result<Loaded, CliError> {
    let text = match (&args.model, &args.file) {
        (Some(m), None) => m.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| ctx.usage(format!("cannot read {}: {e}", path.display())))?
            .trim()
            .to_string(),
        _ => return Err(ctx.usage("give exactly one model: inline source, catalog name or --file")),
    };
    if let Some((kind, _, _)) = catalog::describe(&text) {
        if kind != want {
            return Err(ctx.usage(format!(
                "catalog entry '{text}' is a {}, this command needs a {}",
                kind.name(),
                want.name()
            )));
        }
        let params: Vec<(&str, f64)> = args.params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        let entry = catalog::make(&text, &params).map_err(|e| ctx.fail(e, Some(&text), None))?;
        return Ok(Loaded {
            source: entry.source(),
            model: entry.model.clone(),
            entry: Some(entry),
        });
    }
    if !args.params.is_empty() {
        return Err(ctx.usage(format!("--param applies to catalog entries only, and '{text}' is not one")));
    }
    let model = match want {
        Kind::Curve => geo3::parse_curve(&text).map(Model::Curve),
        Kind::Surface => geo3::parse_surface(&text).map(Model::Surface),
        Kind::Implicit => geo3::surface::ImplicitSurface::parse(&text)
            .map(Model::Implicit)
            .map_err(|e| match e {
                Error::Parse(p) => p,
                other => geo3::ParseError::Domain(other.to_string()),
            }),
    }
    .map_err(|e| ctx.fail(e.into(), Some(&text), None))?;
    Ok(Loaded {
        source: text,
        entry: None,
        model,
    })
}

/// `GEO3_TOLERANCE` unless `--tol` is given; both must be positive and finite.
pub fn tolerance(ctx: &Ctx, flag: Option<f64>) -> Result<Option<f64>, CliError> {
    let valid = |x: f64| x.is_finite() && x > 0.0;
    if let Some(t) = flag {
        return if valid(t) {
            Ok(Some(t))
        } else {
            Err(ctx.usage(format!("--tol {t} must be positive and finite")))
        };
    }
    match std::env::var("GEO3_TOLERANCE") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if valid(t) => Ok(Some(t)),
            _ => Err(ctx.usage(format!("GEO3_TOLERANCE='{s}' is not a positive number"))),
        },
        Err(_) => Ok(None),
    }
}

pub fn require_samples(ctx: &Ctx, n: usize) -> Result<(), CliError> {
    if n < 2 {
        Err(ctx.usage(format!("--samples must be at least 2, got {n}")))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CTX: Ctx = Ctx { command: "curve info" };

    fn args(model: &str, params: &[(&str, f64)]) -> ModelArgs {
        ModelArgs {
            model: Some(model.into()),
            file: None,
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    #[test]
    fn arity_error_is_usage() {
        let e = load(&CTX, &args("(t,t)", &[]), Kind::Curve).err().unwrap();
        assert_eq!(e.code, EXIT_USAGE);
        assert!(e.to_string().contains("expected 3 components, found 2"));
        assert!(e.to_string().contains("curve info"));
    }

    #[test]
    fn syntax_error_marks_offset() {
        let e = load(&CTX, &args("(t, t, *) on [0,1]", &[]), Kind::Curve).err().unwrap();
        let shown = e.input.unwrap();
        let caret = shown.lines().nth(1).unwrap();
        // The caret sits under the offending byte inside the backtick quotes.
        assert_eq!(caret.find('^').unwrap(), 10 + 7);
    }

    #[test]
    fn catalog_names_and_kinds() {
        let l = load(&CTX, &args("helix", &[("r", 2.0)]), Kind::Curve).unwrap();
        assert_eq!(l.entry.as_ref().unwrap().name, "helix");
        assert_eq!(load(&CTX, &args("sphere", &[]), Kind::Curve).err().unwrap().code, EXIT_USAGE);
        assert_eq!(load(&CTX, &args("(t,t,t) on [0,1]", &[("r", 1.0)]), Kind::Curve).err().unwrap().code, EXIT_USAGE);
    }

    #[test]
    fn math_errors_exit_two() {
        let e = CTX.fail(Error::ZeroSpeed { t: 0.0 }, None, Some("t = 0".into()));
        assert_eq!(e.code, EXIT_MATH);
        assert!(e.to_string().ends_with("at: t = 0"));
    }
}
