use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Differential geometry of curves and surfaces given by formulas.
#[derive(Debug, Parser)]
#[command(name = "geo3", version, about)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Tolerance for `check` subcommands; overrides GEO3_TOLERANCE.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Space curves `(x(t), y(t), z(t)) on [a, b]`.
    Curve {
        #[command(subcommand)]
        cmd: CurveCmd,
    },
    /// Curves carrying a unit normal field.
    Strip {
        #[command(subcommand)]
        cmd: StripCmd,
    },
    /// Parametric surfaces `(x(u,v), y(u,v), z(u,v)) on [a,b]x[c,d]`.
    Surface {
        #[command(subcommand)]
        cmd: SurfaceCmd,
    },
    /// Geodesic curvature and geodesic tracing.
    Geodesic {
        #[command(subcommand)]
        cmd: GeodesicCmd,
    },
    /// Named classical curves and surfaces.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Evaluate a scalar expression and its first derivatives.
    Eval(EvalArgs),
}

/// Where the model comes from: inline source, a catalog name, or a file.
#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Inline DSL source or catalog name.
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    pub model: Option<String>,
    /// Read the DSL source from a UTF-8 file.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Catalog parameter, `name=value`; repeatable.
    #[arg(long = "param", value_parser = parse_kv)]
    pub params: Vec<(String, f64)>,
}

#[derive(Debug, Subcommand)]
pub enum CurveCmd {
    /// Speed, curvature, torsion and osculating circle.
    Info {
        #[command(flatten)]
        model: ModelArgs,
        /// Parameter values; default is `--samples` points over the domain.
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        at: Vec<f64>,
        #[arg(long, default_value_t = 11)]
        samples: usize,
    },
    /// Frenet frames at evenly spaced parameters.
    Frames {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 21)]
        samples: usize,
    },
    /// Arc length between two parameters (default: the whole domain).
    Length {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_negative_numbers = true)]
        from: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
    },
    /// Samples of the arc-length reparametrization `t(s)`.
    Reparam {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 21)]
        samples: usize,
    },
    /// Regularity, planarity, general-helix and spherical tests.
    Tests {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Curve with prescribed curvature and torsion, as functions of `s`.
    Reconstruct {
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        tau: String,
        /// Arc-length interval `a,b`.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        range: (f64, f64),
        /// Integrate a plane curve with signed curvature; `--tau` is ignored.
        #[arg(long)]
        planar: bool,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum StripCmd {
    /// Normal curvature, geodesic curvature and strip torsion.
    Invariants {
        #[command(flatten)]
        model: ModelArgs,
        /// Unit normal field as a tuple in `t`.
        #[arg(long, allow_hyphen_values = true)]
        normal: String,
        /// Rotate the normal field by this angle, an expression in `t`.
        #[arg(long, allow_hyphen_values = true)]
        rotate: Option<String>,
        #[arg(long, default_value_t = 11)]
        samples: usize,
    },
    /// Normal field with vanishing strip torsion.
    Parallel {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        normal: String,
        /// Initial rotation angle.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi0: f64,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        #[arg(long, default_value_t = 21)]
        samples: usize,
    },
}

/// Evaluation points: one `u,v` pair or a cell-centred `NxM` grid.
#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, conflicts_with = "grid")]
    pub at: Option<(f64, f64)>,
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<(usize, usize)>,
}

#[derive(Debug, Subcommand)]
pub enum SurfaceCmd {
    /// First and second fundamental forms and the unit normal.
    Forms {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        points: PointArgs,
    },
    /// Gaussian, mean and principal curvatures with principal directions.
    Curvatures {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        points: PointArgs,
    },
    /// Elliptic, hyperbolic, parabolic or planar points.
    Classify {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        points: PointArgs,
    },
    /// Christoffel symbols.
    Christoffel {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        points: PointArgs,
    },
    /// Koszul, Gauss-Weingarten, Egregium and normal-map identities.
    Check {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, value_parser = parse_grid, default_value = "10x10")]
        grid: (usize, usize),
    },
}

#[derive(Debug, Subcommand)]
pub enum GeodesicCmd {
    /// Integrate the geodesic equations from a point and direction.
    Trace {
        #[command(flatten)]
        model: ModelArgs,
        /// Initial state `u,v,du,dv`.
        #[arg(long, value_delimiter = ',', num_args = 1, allow_negative_numbers = true)]
        init: Vec<f64>,
        /// Arc length to trace.
        #[arg(long)]
        length: f64,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        #[arg(long, default_value_t = 101)]
        samples: usize,
    },
    /// Geodesic curvature along a curve `(u(t), v(t)) on [a, b]` by both formulas.
    Check {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long, default_value_t = 21)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogCmd {
    /// All entries with their kinds.
    List,
    /// One entry with parameters, source and closed forms.
    Show {
        name: String,
        #[arg(long = "param", value_parser = parse_kv)]
        params: Vec<(String, f64)>,
    },
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
    /// Variable binding `name=value`; repeatable, in declaration order.
    #[arg(long = "var", value_parser = parse_kv)]
    pub vars: Vec<(String, f64)>,
}

fn parse_kv(s: &str) -> Result<(String, f64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got `{s}`"))?;
    let v: f64 = v.trim().parse().map_err(|_| format!("`{v}` is not a number"))?;
    Ok((k.trim().to_string(), v))
}

fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected two comma-separated numbers, got `{s}`"))?;
    let p = |x: &str| x.trim().parse::<f64>().map_err(|_| format!("`{x}` is not a number"));
    Ok((p(a)?, p(b)?))
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NxM, got `{s}`"))?;
    let p = |x: &str| match x.trim().parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("`{x}` is not a positive integer")),
    };
    Ok((p(a)?, p(b)?))
}
