mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use recess_core::bodies::{self, VBody};
use recess_core::flows::{self, FlowKind, ModelBodyConfig};
use recess_core::metrics::{self, MetricsConfig};
use recess_core::{cones, Error};

use output::{format_sig, write_atomic};

/// Generator-form engine for unbounded convex polyhedral bodies.
#[derive(Parser)]
#[command(name = "recess", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Input body (JSON: {"dim": n, "points": [[..]], "rays": [[..]], "lines": [[..]]}).
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    /// Second body for two-body commands.
    #[arg(short = 'j', long = "other")]
    other: Option<PathBuf>,
    /// Output path; stdout when omitted.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
    /// Truncation radius of the sampling grid.
    #[arg(long = "r-max", default_value_t = 1e3)]
    r_max: f64,
    /// Number of sampling grid directions.
    #[arg(long = "grid-directions", default_value_t = 180)]
    grid_directions: usize,
    /// Number of geometric radial levels.
    #[arg(long = "radial-levels", default_value_t = 12)]
    radial_levels: usize,
    /// Monte-Carlo sample count.
    #[arg(long = "mc-samples", default_value_t = 200_000)]
    mc_samples: usize,
    /// Random seed for Monte-Carlo estimates.
    #[arg(long = "seed", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a body as Bounded, Irreducible or Cylinder(m).
    Classify(CommonArgs),
    /// Central direction of an irreducible body.
    Cd(CommonArgs),
    /// Total curvature of a body.
    Tau(CommonArgs),
    /// Bounded-Hausdorff, recession and asymptotic distances of two bodies.
    Distance(CommonArgs),
    /// Run a deformation flow and write its trace as CSV.
    Flow(FlowArgs),
}

#[derive(Args)]
struct FlowArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Which deformation to run.
    #[arg(long = "theorem", value_parser = clap::value_parser!(u8).range(1..=3))]
    theorem: u8,
    /// Number of time steps.
    #[arg(long = "steps", default_value_t = 50)]
    steps: usize,
    /// Boundary samples per angular ring of the model bodies.
    #[arg(long = "resolution", default_value_t = 64)]
    resolution: usize,
    /// Radial extent of the model-body discretization.
    #[arg(long = "radial-extent", default_value_t = 64.0)]
    radial_extent: f64,
    /// Emit one SVG snapshot per step (2D bodies only).
    #[arg(long = "svg")]
    svg: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("recess: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code)
}

enum CliError {
    Io(String),
    Parse(String),
    Math(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 1,
            CliError::Math(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Parse(m) => write!(f, "{m}"),
            CliError::Math(m) => write!(f, "{m}"),
        }
    }
}

fn math_err(e: Error) -> CliError {
    let hint = match &e {
        Error::NotInKPlus => " (Theorem 2 requires a body with no lines)",
        Error::NotCylinder => " (Theorem 3 requires a cylinder over a compact base)",
        Error::NotIrreducible => " (this operation requires an irreducible body)",
        _ => "",
    };
    CliError::Math(format!("{e}{hint}"))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify(args) => {
            let body = load_body(&args.input)?;
            let class = match bodies::classify(&body) {
                bodies::BodyClass::Bounded => "Bounded".to_string(),
                bodies::BodyClass::Irreducible => "Irreducible".to_string(),
                bodies::BodyClass::Cylinder(m) => format!("Cylinder({m})"),
            };
            emit(&args.output, &format!("{{\"class\":\"{class}\"}}\n"))
        }
        Command::Cd(args) => {
            let body = load_body(&args.input)?;
            let cd = bodies::central_direction(&body).map_err(math_err)?;
            let coords: Vec<String> = cd.coords().iter().map(|c| format_sig(*c)).collect();
            emit(&args.output, &format!("{{\"cd\":[{}]}}\n", coords.join(",")))
        }
        Command::Tau(args) => {
            let body = load_body(&args.input)?;
            let (tau, method) = if body.dim() <= cones::DEFAULT_DIM_CAP {
                let value = bodies::total_curvature(&body);
                let method = match body.dim() {
                    0..=2 => "exact2d",
                    3 => "exact3d",
                    _ => "montecarlo",
                };
                (value, method)
            } else {
                let (value, _) = bodies::total_curvature_mc(&body, args.mc_samples, args.seed);
                (value, "montecarlo")
            };
            emit(
                &args.output,
                &format!("{{\"tau\":{},\"method\":\"{method}\"}}\n", format_sig(tau)),
            )
        }
        Command::Distance(args) => {
            let body = load_body(&args.input)?;
            let other_path = args
                .other
                .as_ref()
                .ok_or_else(|| CliError::Io("distance needs a second body (-j)".into()))?;
            let other = load_body(other_path)?;
            let cfg = metrics_config(&args);
            let d_bh = metrics::bounded_hausdorff(&body, &other, &cfg);
            let d_a = metrics::asymptotic_distance(&body, &other, &cfg);
            let d_rc = d_a - d_bh;
            emit(
                &args.output,
                &format!(
                    "{{\"d_bh\":{},\"d_rc\":{},\"d_a\":{}}}\n",
                    format_sig(d_bh),
                    format_sig(d_rc),
                    format_sig(d_a)
                ),
            )
        }
        Command::Flow(args) => run_flow(args),
    }
}

fn run_flow(args: FlowArgs) -> Result<(), CliError> {
    let body = load_body(&args.common.input)?;
    let kind = match args.theorem {
        1 => FlowKind::Theorem1,
        2 => FlowKind::Theorem2,
        _ => FlowKind::Theorem3,
    };
    if args.steps < 1 {
        return Err(CliError::Io("steps must be at least 1".into()));
    }
    let cfg = ModelBodyConfig::new(args.resolution, args.radial_extent).map_err(math_err)?;
    let mcfg = metrics_config(&args.common);
    let retain = args.svg;
    let trace =
        flows::run_trace(&body, kind, args.steps, &cfg, &mcfg, retain).map_err(math_err)?;

    let mut csv = String::from("t,tau,nc_radius,step_da\n");
    for i in 0..trace.times.len() {
        csv.push_str(&format!(
            "{},{},{},{}\n",
            format_sig(trace.times[i]),
            format_sig(trace.tau[i]),
            format_sig(trace.nc_radius[i]),
            format_sig(trace.step_da[i])
        ));
    }
    emit(&args.common.output, &csv)?;

    if args.svg {
        if body.dim() != 2 {
            return Err(CliError::Io("--svg requires a 2-dimensional body".into()));
        }
        let frames = trace.bodies.as_ref().expect("bodies retained for svg");
        let stem = args
            .common
            .output
            .clone()
            .unwrap_or_else(|| PathBuf::from("flow.csv"));
        for (i, frame) in frames.iter().enumerate() {
            let path = svg::frame_path(&stem, i);
            let doc = svg::render_frame(frame).map_err(math_err)?;
            write_atomic(&path, &doc).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(())
}

fn metrics_config(args: &CommonArgs) -> MetricsConfig {
    MetricsConfig {
        r_max: args.r_max,
        grid_directions: args.grid_directions,
        radial_levels: args.radial_levels,
        ..Default::default()
    }
}

fn load_body(path: &PathBuf) -> Result<VBody, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    VBody::from_json_str(&text).map_err(|e| match e {
        Error::Parse(m) => CliError::Parse(format!("{}: {m}", path.display())),
        other => CliError::Parse(format!("{}: {other}", path.display())),
    })
}

fn emit(output: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match output {
        Some(path) => write_atomic(path, content)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
