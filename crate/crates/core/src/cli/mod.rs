//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.

mod commands;
mod spec;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::analysis::AnalysisError;
use crate::eigensolver::SolveError;
use crate::models::ModelError;

pub use spec::{BackendChoice, Command, DefectChoice, Format, GammaUnits, RunSpec, SystemKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Numerical(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => EXIT_VALIDATION,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::InvalidModel(_)
            | ModelError::InvalidBoundary(_)
            | ModelError::InvalidEnergy(_)
            | ModelError::RadiusOutOfRange { .. }
            | ModelError::UnsortedGrid => CliError::Validation(e.to_string()),
            ModelError::ClosedFormUnavailable { .. }
            | ModelError::Integration(_)
            | ModelError::SpecFun(_) => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::InvalidConfig(msg) => CliError::Validation(msg),
            SolveError::Model(m) => m.into(),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::UnsupportedKind { .. }
            | AnalysisError::InvalidArgument(_)
            | AnalysisError::NoPartner(_) => CliError::Validation(e.to_string()),
            AnalysisError::Solve(s) => s.into(),
            AnalysisError::Model(m) => m.into(),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "cavity-spectra",
    version,
    about = "Spectra of a free particle, hydrogen in a sphere and hydrogen on a cone under Robin boundary conditions",
    long_about = "Spectra of a free particle, hydrogen in a sphere and hydrogen on a cone under Robin \
                  boundary conditions γψ + ∂ψ/∂r = 0 at r = R.\n\n\
                  Units: ħ = M = 1, e² = 1 for hydrogen kinds (Bohr radius a = 1). Energies print in \
                  Me⁴ for hydrogen and cone and in π²/(2MR²) for the free particle unless --raw-units \
                  is given; --emin/--emax use the same units. Finite boundary values are γ in units of \
                  1/a (hydrogen, cone) or 1/R (free) unless --gamma-units says otherwise; 'inf' and \
                  '-inf' select the Dirichlet limits. Reported gamma values are absolute.\n\n\
                  Exit codes: 0 success, 2 usage or validation error, 3 numerical failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Eigenvalues at one boundary condition.
    Spectrum(RunArgs),
    /// Branches over a u = arctan(γR) grid, or over --radii at fixed γ.
    Flow(RunArgs),
    /// Avoided crossings between adjacent branches of a u flow.
    Crossing(RunArgs),
    /// (l, l+2) degeneracy scan of hydrogen in a sphere (or (m, m+2s) on a cone).
    Degeneracy(RunArgs),
    /// Generalized uncertainty relation for the states of a spectrum.
    Uncertainty(RunArgs),
    /// Runge-Lenz boundary defects for the states of a hydrogen spectrum.
    Defect(RunArgs),
    /// (m, m+2s) degeneracy scan on the cone.
    ConeDegeneracy(RunArgs),
    /// Re-solve the run recorded in a JSON output document and compare energies.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON run description; flags given on the command line override it.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// System to solve.
    #[arg(long, value_enum)]
    system: Option<SystemKind>,
    /// Orbital quantum number (free, hydrogen).
    #[arg(long)]
    l: Option<u32>,
    /// Magnetic quantum number (cone).
    #[arg(long, allow_negative_numbers = true)]
    m: Option<i32>,
    /// Cone scale factor s in (0, 1].
    #[arg(long, allow_negative_numbers = true)]
    s: Option<f64>,
    /// Cavity radius (units of a for hydrogen kinds).
    #[arg(long, allow_negative_numbers = true)]
    radius: Option<f64>,
    /// Boundary: 'inf', '-inf', 'neumann' or a finite γ in --gamma-units.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "u")]
    boundary: Option<String>,
    /// Boundary angle u = arctan(γR) in [-π/2, π/2].
    #[arg(long, allow_negative_numbers = true)]
    u: Option<f64>,
    /// Unit of finite γ values [default: bohr for hydrogen and cone, radius for free].
    #[arg(long, value_enum)]
    gamma_units: Option<GammaUnits>,
    /// Lower edge of the energy window.
    #[arg(long, allow_negative_numbers = true)]
    emin: Option<f64>,
    /// Upper edge of the energy window.
    #[arg(long, allow_negative_numbers = true)]
    emax: Option<f64>,
    /// Number of lowest states to keep [default: 5; 3 for crossing].
    #[arg(long)]
    states: Option<usize>,
    /// Read and print energies in internal units.
    #[arg(long)]
    raw_units: bool,
    /// Number of u grid points [default: 201 for flow, 81 for crossing].
    #[arg(long)]
    ugrid: Option<usize>,
    /// u range of the grid; endpoints within 0.003 of ±π/2 snap to ±π/2.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    urange: Option<Vec<f64>>,
    /// Comma-separated radii for a radius flow.
    #[arg(long, value_delimiter = ',')]
    radii: Option<Vec<f64>>,
    /// Comma-separated boundary values for degeneracy scans.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    gammas: Option<Vec<String>>,
    /// Number of degenerate pairs to test [default: 2 on the sphere, 1 on the cone].
    #[arg(long)]
    pairs: Option<usize>,
    /// Gap below which a pair counts as degenerate, in display energy units [default: 1e-8].
    #[arg(long, allow_negative_numbers = true)]
    tol: Option<f64>,
    /// Runge-Lenz defect kind [default: rplus].
    #[arg(long, value_enum)]
    defect: Option<DefectChoice>,
    /// Uniform scan grid points [default: 2000].
    #[arg(long)]
    grid_points: Option<usize>,
    /// Relative root tolerance [default: 1e-12].
    #[arg(long, allow_negative_numbers = true)]
    root_tol: Option<f64>,
    /// Radial solution backend [default: auto].
    #[arg(long, value_enum)]
    backend: Option<BackendChoice>,
    /// Output format [default: csv for spectrum and flow, json otherwise].
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file [default: standard output].
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// JSON output document of an earlier run.
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    /// Relative energy tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Output file [default: standard output].
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

fn read_json(path: &Path) -> Result<serde_json::Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("{} is not valid JSON: {e}", path.display())))
}

/// Accepts either a bare run description or an output document holding one under `spec`.
pub fn spec_from_json(value: serde_json::Value) -> Result<RunSpec, CliError> {
    let inner = match value {
        serde_json::Value::Object(mut map) if map.contains_key("spec") => {
            map.remove("spec").unwrap_or_default()
        }
        other => other,
    };
    serde_json::from_value(inner)
        .map_err(|e| CliError::Validation(format!("invalid run description: {e}")))
}

fn merge(command: Command, args: RunArgs) -> Result<RunSpec, CliError> {
    let mut spec = match &args.config {
        Some(path) => spec_from_json(read_json(path)?)?,
        None => RunSpec::default(),
    };
    spec.command = command;
    if command == Command::ConeDegeneracy {
        if args.system.is_some_and(|s| s != SystemKind::Cone) {
            return Err(CliError::Validation(
                "cone-degeneracy needs --system cone".into(),
            ));
        }
        spec.system = SystemKind::Cone;
    }
    macro_rules! take {
        ($($field:ident),*) => {
            $(if let Some(v) = args.$field { spec.$field = Some(v); })*
        };
    }
    take!(
        s,
        radius,
        gamma_units,
        emin,
        emax,
        states,
        ugrid,
        radii,
        gammas,
        pairs,
        tol,
        defect,
        grid_points,
        root_tol,
        backend,
        format,
        output
    );
    if let Some(v) = args.system {
        spec.system = v;
    }
    if let Some(v) = args.l {
        spec.l = v;
    }
    if let Some(v) = args.m {
        spec.m = v;
    }
    if let Some(b) = args.boundary {
        spec.boundary = Some(b);
        spec.u = None;
    }
    if let Some(u) = args.u {
        spec.u = Some(u);
        spec.boundary = None;
    }
    if let Some(r) = args.urange {
        spec.urange = Some([r[0], r[1]]);
    }
    if args.raw_units {
        spec.raw_units = true;
    }
    Ok(spec)
}

fn execute(cli: Cli) -> Result<i32, CliError> {
    let (command, args) = match cli.command {
        Sub::Spectrum(a) => (Command::Spectrum, a),
        Sub::Flow(a) => (Command::Flow, a),
        Sub::Crossing(a) => (Command::Crossing, a),
        Sub::Degeneracy(a) => (Command::Degeneracy, a),
        Sub::Uncertainty(a) => (Command::Uncertainty, a),
        Sub::Defect(a) => (Command::Defect, a),
        Sub::ConeDegeneracy(a) => (Command::ConeDegeneracy, a),
        Sub::Verify(v) => {
            return commands::verify(&read_json(&v.config)?, v.tol, v.output.as_deref())
        }
    };
    let spec = merge(command, args)?;
    let out = commands::dispatch(&spec)?;
    commands::emit(&spec, &out)?;
    Ok(if out.flagged { EXIT_NUMERICAL } else { EXIT_OK })
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
