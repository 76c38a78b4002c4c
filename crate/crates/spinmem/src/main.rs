use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use spinmem::cli::{
    self, figure_base_config, load_config_file, resolve_cooperativity, CommandSpec, GridSpec,
    OutputFormat, RunConfig,
};
use spinmem::error::{Error, Result};
use spinmem::numerics::TARGET_REL_TOL;
use spinmem::params::{MediumParams, Scheme};

#[derive(Parser)]
#[command(
    name = "spinmem",
    version,
    about = "Squeezing transfer from a probe field to collective atomic spins"
)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Outgoing quadrature noise spectrum of the probe field
    Spectrum(CommonArgs),
    /// Collective spin-noise spectrum and its source decomposition
    SpinSpectrum(CommonArgs),
    /// Squeezing transfer efficiency, exact and asymptotic
    Efficiency(CommonArgs),
    /// Efficiency versus cooperativity
    Sweep(SweepArgs),
    /// Reference datasets fig1 through fig5
    Figure(FigureArgs),
    /// Control-field strength that maximizes the transfer efficiency
    Optimize(OptimizeArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Ground-state decoherence rate, units of gamma
    #[arg(long)]
    gamma0: Option<f64>,
    /// Control-field Rabi frequency, units of gamma
    #[arg(long = "omega-rabi")]
    omega_rabi: Option<f64>,
    /// One-photon detuning, units of gamma
    #[arg(long = "delta")]
    delta: Option<f64>,
    /// Collective coupling g^2 N, units of gamma^2
    #[arg(long)]
    g2n: Option<f64>,
    /// Transit time through the medium, units of 1/gamma
    #[arg(long)]
    transit: Option<f64>,
    /// Cooperativity; sets transit (single pass) or g2n (cavity)
    #[arg(long)]
    cooperativity: Option<f64>,
    /// Atom number entering the collective-spin normalization
    #[arg(long = "n-atoms")]
    n_atoms: Option<f64>,
    /// Cavity mirror transmission
    #[arg(long = "cavity-T")]
    cavity_t: Option<f64>,
    /// eit, raman, cavity-eit, or cavity-raman
    #[arg(long)]
    scheme: Option<String>,
    /// Input squeezing in dB below shot noise
    #[arg(long = "s-in-db")]
    s_in_db: Option<f64>,
    /// Lower edge of the frequency grid, units of gamma
    #[arg(long = "omega-min")]
    omega_min: Option<f64>,
    /// Upper edge of the frequency grid, units of gamma
    #[arg(long = "omega-max")]
    omega_max: Option<f64>,
    /// Number of grid points
    #[arg(long)]
    points: Option<usize>,
    /// Use a logarithmic frequency grid
    #[arg(long = "log-grid")]
    log_grid: bool,
    /// csv or json
    #[arg(long)]
    format: Option<String>,
    /// Write the dataset to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// key=value parameter file, applied before the flags
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Smallest swept cooperativity
    #[arg(long = "c-min", default_value_t = 1.0)]
    c_min: f64,
    /// Largest swept cooperativity
    #[arg(long = "c-max", default_value_t = 1000.0)]
    c_max: f64,
    /// Number of swept cooperativities
    #[arg(long = "c-points", default_value_t = 13)]
    c_points: usize,
    /// Sweep linearly instead of logarithmically
    #[arg(long = "c-linear")]
    c_linear: bool,
}

#[derive(Args)]
struct FigureArgs {
    /// fig1, fig2, fig3, fig4, or fig5
    name: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct OptimizeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Lower control-field bound, units of gamma
    #[arg(long = "omega-lo", default_value_t = 0.1)]
    omega_lo: f64,
    /// Upper control-field bound, units of gamma
    #[arg(long = "omega-hi", default_value_t = 10.0)]
    omega_hi: f64,
}

fn flag_error(message: String) -> Error {
    Error::ConfigParse { line: 0, message }
}

/// Overlays configuration file and explicit flags onto a base RunConfig.
fn apply_common(config: &mut RunConfig, common: &CommonArgs) -> Result<()> {
    let mut cooperativity = None;
    if let Some(path) = &common.config {
        let values = load_config_file(path)?;
        cooperativity = values.apply(&mut config.params);
    }
    if let Some(x) = common.gamma0 {
        config.params.gamma0 = x;
    }
    if let Some(x) = common.omega_rabi {
        config.params.omega_rabi = x;
    }
    if let Some(x) = common.delta {
        config.params.delta1 = x;
    }
    if let Some(x) = common.g2n {
        config.params.g2n = x;
    }
    if let Some(x) = common.transit {
        config.params.transit = x;
    }
    if let Some(x) = common.n_atoms {
        config.params.n_atoms = x;
    }
    if let Some(x) = common.cavity_t {
        config.params.cavity_t = Some(x);
    }
    if let Some(s) = &common.scheme {
        config.scheme = Scheme::from_str(s).map_err(flag_error)?;
    }
    if common.cooperativity.is_some() {
        cooperativity = common.cooperativity;
    }
    config.params = resolve_cooperativity(config.params, cooperativity, config.scheme);
    if let Some(s) = &common.format {
        config.format = OutputFormat::from_str(s).map_err(flag_error)?;
    }
    if let Some(x) = common.s_in_db {
        config.s_in_db = x;
    }
    if let Some(x) = common.omega_min {
        config.grid.min = x;
    }
    if let Some(x) = common.omega_max {
        config.grid.max = x;
    }
    if let Some(x) = common.points {
        config.grid.points = x;
    }
    if common.log_grid {
        config.grid.log = true;
    }
    if let Ok(text) = std::env::var("SPINMEM_TOL") {
        let tol: f64 = text.trim().parse().map_err(|e| {
            flag_error(format!("SPINMEM_TOL must be a positive number: {e}"))
        })?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(flag_error(format!(
                "SPINMEM_TOL must be a positive number, got {tol}"
            )));
        }
        config.tol = tol;
    }
    Ok(())
}

fn build_config(command: Command) -> Result<(RunConfig, Option<PathBuf>)> {
    let fresh = |spec: CommandSpec| {
        RunConfig::new(spec, MediumParams::default(), Scheme::SinglePassEit)
    };
    let (mut config, common) = match command {
        Command::Spectrum(common) => (fresh(CommandSpec::Spectrum), common),
        Command::SpinSpectrum(common) => (fresh(CommandSpec::SpinSpectrum), common),
        Command::Efficiency(common) => (fresh(CommandSpec::Efficiency), common),
        Command::Sweep(args) => {
            let c_grid = GridSpec {
                min: args.c_min,
                max: args.c_max,
                points: args.c_points,
                log: !args.c_linear,
            };
            (fresh(CommandSpec::Sweep { c_grid }), args.common)
        }
        Command::Figure(args) => {
            let config = figure_base_config(&args.name, OutputFormat::Csv, TARGET_REL_TOL)?;
            (config, args.common)
        }
        Command::Optimize(args) => (
            fresh(CommandSpec::Optimize {
                omega_lo: args.omega_lo,
                omega_hi: args.omega_hi,
            }),
            args.common,
        ),
    };
    apply_common(&mut config, &common)?;
    Ok((config, common.out))
}

fn execute(command: Command) -> Result<()> {
    let (config, out_path) = build_config(command)?;
    let output = cli::run(&config)?;
    for warning in &output.warnings {
        eprintln!("warning: {warning}");
    }
    match out_path {
        Some(path) => std::fs::write(path, output.body)?,
        None => print!("{}", output.body),
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = CliArgs::parse();
    match execute(args.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
