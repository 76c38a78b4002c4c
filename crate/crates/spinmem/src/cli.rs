//! Command execution behind the binary: grid handling, configuration files,
//! dataset rendering with a parseable metadata header, figure presets, and
//! the pumping optimizer.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::atomic;
use crate::cavity;
use crate::error::{Error, Result};
use crate::field;
use crate::numerics::{golden_section_max, TARGET_REL_TOL};
use crate::params::{
    db_to_linear, validate, MediumParams, Scheme, ValidatedParams, DEFAULT_CAVITY_T,
};

/// Dataset serialization format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// Frequency (or cooperativity) grid specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    pub log: bool,
}

impl GridSpec {
    pub fn linear(min: f64, max: f64, points: usize) -> Self {
        GridSpec {
            min,
            max,
            points,
            log: false,
        }
    }

    pub fn logarithmic(min: f64, max: f64, points: usize) -> Self {
        GridSpec {
            min,
            max,
            points,
            log: true,
        }
    }

    pub fn values(&self) -> Result<Vec<f64>> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(Error::InvalidGrid(format!(
                "grid needs min < max, got [{}, {}]",
                self.min, self.max
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidGrid(format!(
                "grid needs at least 2 points, got {}",
                self.points
            )));
        }
        if self.log && self.min <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "logarithmic grid needs min > 0, got {}",
                self.min
            )));
        }
        let n = self.points;
        let values = (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                if self.log {
                    (self.min.ln() + t * (self.max.ln() - self.min.ln())).exp()
                } else {
                    self.min + t * (self.max - self.min)
                }
            })
            .collect();
        Ok(values)
    }
}

/// What to compute, with any subcommand-specific inputs.
#[derive(Debug, Clone, PartialEq)]
pub enum CommandSpec {
    Spectrum,
    SpinSpectrum,
    Efficiency,
    /// Efficiency versus cooperativity on the given grid.
    Sweep { c_grid: GridSpec },
    /// Named reference dataset, fig1 through fig5.
    Figure { name: String },
    /// Maximize efficiency over the control-field strength within bounds.
    Optimize { omega_lo: f64, omega_hi: f64 },
}

impl CommandSpec {
    fn name(&self) -> &'static str {
        match self {
            CommandSpec::Spectrum => "spectrum",
            CommandSpec::SpinSpectrum => "spin-spectrum",
            CommandSpec::Efficiency => "efficiency",
            CommandSpec::Sweep { .. } => "sweep",
            CommandSpec::Figure { .. } => "figure",
            CommandSpec::Optimize { .. } => "optimize",
        }
    }
}

/// Everything one invocation needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandSpec,
    pub params: MediumParams,
    pub scheme: Scheme,
    /// Input squeezing in dB below shot noise.
    pub s_in_db: f64,
    pub grid: GridSpec,
    pub format: OutputFormat,
    /// Relative quadrature tolerance target.
    pub tol: f64,
}

impl RunConfig {
    pub fn new(command: CommandSpec, params: MediumParams, scheme: Scheme) -> Self {
        RunConfig {
            command,
            params,
            scheme,
            s_in_db: 3.0103,
            grid: GridSpec::linear(0.0, 3.0, 301),
            format: OutputFormat::Csv,
            tol: TARGET_REL_TOL,
        }
    }
}

/// Values read from a key=value configuration file.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ConfigFileValues {
    pub gamma0: Option<f64>,
    pub omega_rabi: Option<f64>,
    pub delta1: Option<f64>,
    pub g2n: Option<f64>,
    pub transit: Option<f64>,
    pub n_atoms: Option<f64>,
    pub cavity_t: Option<f64>,
    pub cooperativity: Option<f64>,
}

impl ConfigFileValues {
    /// Overlays the file's values onto `params`; the cooperativity (if any)
    /// is returned for scheme-dependent application.
    pub fn apply(&self, params: &mut MediumParams) -> Option<f64> {
        if let Some(x) = self.gamma0 {
            params.gamma0 = x;
        }
        if let Some(x) = self.omega_rabi {
            params.omega_rabi = x;
        }
        if let Some(x) = self.delta1 {
            params.delta1 = x;
        }
        if let Some(x) = self.g2n {
            params.g2n = x;
        }
        if let Some(x) = self.transit {
            params.transit = x;
        }
        if let Some(x) = self.n_atoms {
            params.n_atoms = x;
        }
        if let Some(x) = self.cavity_t {
            params.cavity_t = Some(x);
        }
        self.cooperativity
    }
}

/// Parses a configuration file of `key = value` lines; `#` starts a comment.
pub fn load_config_file(path: &Path) -> Result<ConfigFileValues> {
    parse_config(&std::fs::read_to_string(path)?)
}

pub fn parse_config(text: &str) -> Result<ConfigFileValues> {
    let mut values = ConfigFileValues::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        let (key, value) = line.split_once('=').ok_or_else(|| Error::ConfigParse {
            line: lineno,
            message: format!("expected key=value, got `{line}`"),
        })?;
        let key = key.trim();
        let value: f64 = value.trim().parse().map_err(|e| Error::ConfigParse {
            line: lineno,
            message: format!("bad numeric value for `{key}`: {e}"),
        })?;
        let slot = match key {
            "gamma0" => &mut values.gamma0,
            "omega_rabi" => &mut values.omega_rabi,
            "delta1" => &mut values.delta1,
            "g2n" => &mut values.g2n,
            "transit" => &mut values.transit,
            "n_atoms" => &mut values.n_atoms,
            "cavity_T" => &mut values.cavity_t,
            "cooperativity" => &mut values.cooperativity,
            other => {
                return Err(Error::ConfigParse {
                    line: lineno,
                    message: format!("unknown key `{other}`"),
                })
            }
        };
        *slot = Some(value);
    }
    Ok(values)
}

/// Applies a requested cooperativity to the parameters in the way the
/// scheme defines it.
pub fn resolve_cooperativity(
    params: MediumParams,
    cooperativity: Option<f64>,
    scheme: Scheme,
) -> MediumParams {
    match cooperativity {
        Some(c) if scheme.is_cavity() => params.with_cavity_cooperativity(c),
        Some(c) => params.with_single_pass_cooperativity(c),
        None => params,
    }
}

/// A rendered dataset plus any advisory warnings gathered on the way.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub body: String,
    pub warnings: Vec<String>,
}

struct Dataset {
    metadata: Vec<(String, String)>,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Dataset {
    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let metadata: serde_json::Map<String, serde_json::Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
            .collect();
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| match cell.parse::<f64>() {
                        Ok(x) if x.is_finite() => serde_json::json!(x),
                        _ => serde_json::Value::String(cell.clone()),
                    })
                    .collect()
            })
            .collect();
        let doc = serde_json::json!({
            "metadata": serde_json::Value::Object(metadata),
            "columns": self.columns,
            "rows": rows,
        });
        let mut body = serde_json::to_string_pretty(&doc).expect("dataset serializes");
        body.push('\n');
        body
    }
}

fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

fn metadata_for(config: &RunConfig) -> Vec<(String, String)> {
    let p = &config.params;
    let mut md: Vec<(String, String)> = vec![
        ("version".into(), env!("CARGO_PKG_VERSION").into()),
        ("command".into(), config.command.name().into()),
    ];
    match &config.command {
        CommandSpec::Figure { name } => md.push(("figure".into(), name.clone())),
        CommandSpec::Sweep { c_grid } => {
            md.push(("c_min".into(), fmt_f64(c_grid.min)));
            md.push(("c_max".into(), fmt_f64(c_grid.max)));
            md.push(("c_points".into(), c_grid.points.to_string()));
            md.push(("c_log".into(), c_grid.log.to_string()));
        }
        CommandSpec::Optimize { omega_lo, omega_hi } => {
            md.push(("omega_lo".into(), fmt_f64(*omega_lo)));
            md.push(("omega_hi".into(), fmt_f64(*omega_hi)));
        }
        _ => {}
    }
    md.extend([
        ("scheme".into(), config.scheme.to_string()),
        ("format".into(), config.format.to_string()),
        ("s_in_db".into(), fmt_f64(config.s_in_db)),
        ("gamma0".into(), fmt_f64(p.gamma0)),
        ("omega_rabi".into(), fmt_f64(p.omega_rabi)),
        ("delta1".into(), fmt_f64(p.delta1)),
        ("g2n".into(), fmt_f64(p.g2n)),
        ("transit".into(), fmt_f64(p.transit)),
        ("n_atoms".into(), fmt_f64(p.n_atoms)),
        ("omega_min".into(), fmt_f64(config.grid.min)),
        ("omega_max".into(), fmt_f64(config.grid.max)),
        ("points".into(), config.grid.points.to_string()),
        ("log_grid".into(), config.grid.log.to_string()),
        ("tol".into(), fmt_f64(config.tol)),
    ]);
    if let Some(t) = p.cavity_t {
        md.push(("cavity_T".into(), fmt_f64(t)));
    }
    md
}

/// Reconstructs the RunConfig from an emitted dataset (CSV `#` header or
/// JSON metadata object).
pub fn parse_metadata(body: &str) -> Result<RunConfig> {
    let mut map: Vec<(String, String)> = Vec::new();
    if body.trim_start().starts_with('{') {
        let doc: serde_json::Value =
            serde_json::from_str(body).map_err(|e| Error::ConfigParse {
                line: 0,
                message: format!("invalid JSON dataset: {e}"),
            })?;
        let obj = doc
            .get("metadata")
            .and_then(|m| m.as_object())
            .ok_or_else(|| Error::ConfigParse {
                line: 0,
                message: "JSON dataset lacks a metadata object".into(),
            })?;
        for (k, v) in obj {
            let text = match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            map.push((k.clone(), text));
        }
    } else {
        for line in body.lines() {
            let Some(rest) = line.strip_prefix('#') else {
                break;
            };
            if let Some((k, v)) = rest.trim().split_once('=') {
                map.push((k.trim().to_string(), v.trim().to_string()));
            }
        }
    }

    let get = |key: &str| -> Result<&str> {
        map.iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| Error::ConfigParse {
                line: 0,
                message: format!("metadata key `{key}` missing"),
            })
    };
    let get_f64 = |key: &str| -> Result<f64> {
        get(key)?.parse().map_err(|e| Error::ConfigParse {
            line: 0,
            message: format!("metadata key `{key}`: {e}"),
        })
    };
    let get_usize = |key: &str| -> Result<usize> {
        get(key)?.parse().map_err(|e| Error::ConfigParse {
            line: 0,
            message: format!("metadata key `{key}`: {e}"),
        })
    };
    let get_bool = |key: &str| -> Result<bool> {
        get(key)?.parse().map_err(|e| Error::ConfigParse {
            line: 0,
            message: format!("metadata key `{key}`: {e}"),
        })
    };

    let command = match get("command")? {
        "spectrum" => CommandSpec::Spectrum,
        "spin-spectrum" => CommandSpec::SpinSpectrum,
        "efficiency" => CommandSpec::Efficiency,
        "sweep" => CommandSpec::Sweep {
            c_grid: GridSpec {
                min: get_f64("c_min")?,
                max: get_f64("c_max")?,
                points: get_usize("c_points")?,
                log: get_bool("c_log")?,
            },
        },
        "figure" => CommandSpec::Figure {
            name: get("figure")?.to_string(),
        },
        "optimize" => CommandSpec::Optimize {
            omega_lo: get_f64("omega_lo")?,
            omega_hi: get_f64("omega_hi")?,
        },
        other => {
            return Err(Error::ConfigParse {
                line: 0,
                message: format!("unknown command `{other}` in metadata"),
            })
        }
    };
    let scheme = Scheme::from_str(get("scheme")?).map_err(|message| Error::ConfigParse {
        line: 0,
        message,
    })?;
    let format = OutputFormat::from_str(get("format")?).map_err(|message| Error::ConfigParse {
        line: 0,
        message,
    })?;
    let params = MediumParams {
        gamma: 1.0,
        gamma0: get_f64("gamma0")?,
        omega_rabi: get_f64("omega_rabi")?,
        delta1: get_f64("delta1")?,
        g2n: get_f64("g2n")?,
        transit: get_f64("transit")?,
        n_atoms: get_f64("n_atoms")?,
        cavity_t: match map.iter().find(|(k, _)| k == "cavity_T") {
            Some((_, v)) => Some(v.parse().map_err(|e| Error::ConfigParse {
                line: 0,
                message: format!("metadata key `cavity_T`: {e}"),
            })?),
            None => None,
        },
    };
    Ok(RunConfig {
        command,
        params,
        scheme,
        s_in_db: get_f64("s_in_db")?,
        grid: GridSpec {
            min: get_f64("omega_min")?,
            max: get_f64("omega_max")?,
            points: get_usize("points")?,
            log: get_bool("log_grid")?,
        },
        format,
        tol: get_f64("tol")?,
    })
}

fn collect_warnings(into: &mut Vec<String>, v: &ValidatedParams) {
    for w in &v.warnings {
        if !into.contains(w) {
            into.push(w.clone());
        }
    }
}

/// Executes one command and renders its dataset.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    let mut warnings = Vec::new();
    let dataset = match &config.command {
        CommandSpec::Spectrum => run_spectrum(config, &mut warnings)?,
        CommandSpec::SpinSpectrum => run_spin_spectrum(config, &mut warnings)?,
        CommandSpec::Efficiency => run_efficiency(config, &mut warnings)?,
        CommandSpec::Sweep { c_grid } => run_sweep(config, *c_grid, &mut warnings)?,
        CommandSpec::Figure { name } => run_figure(config, name, &mut warnings)?,
        CommandSpec::Optimize { omega_lo, omega_hi } => {
            run_optimize(config, *omega_lo, *omega_hi, &mut warnings)?
        }
    };
    Ok(RunOutput {
        body: dataset.render(config.format),
        warnings,
    })
}

fn s_out_db(s_out: f64) -> f64 {
    10.0 * s_out.log10()
}

fn run_spectrum(config: &RunConfig, warnings: &mut Vec<String>) -> Result<Dataset> {
    let v = validate(config.params, config.scheme)?;
    collect_warnings(warnings, &v);
    let s_in = db_to_linear(config.s_in_db);
    let mut rows = Vec::new();
    for w in config.grid.values()? {
        let s = field::s_out(w, s_in, &v)?;
        rows.push(vec![fmt_f64(w), fmt_f64(s), fmt_f64(s_out_db(s))]);
    }
    Ok(Dataset {
        metadata: metadata_for(config),
        columns: vec![
            "omega_over_gamma".into(),
            "s_out_linear".into(),
            "s_out_db".into(),
        ],
        rows,
    })
}

fn run_spin_spectrum(config: &RunConfig, warnings: &mut Vec<String>) -> Result<Dataset> {
    let v = validate(config.params, config.scheme)?;
    collect_warnings(warnings, &v);
    let s_in = db_to_linear(config.s_in_db);
    let mut rows = Vec::new();
    for w in config.grid.values()? {
        let b = atomic::spectrum_breakdown(w, &v)?;
        let s = b.b_f * s_in + b.b_coh + b.b_spin;
        rows.push(vec![
            fmt_f64(w),
            fmt_f64(b.b_f),
            fmt_f64(b.b_coh),
            fmt_f64(b.b_spin),
            fmt_f64(s),
        ]);
    }
    Ok(Dataset {
        metadata: metadata_for(config),
        columns: vec![
            "omega_over_gamma".into(),
            "b_f".into(),
            "b_coh".into(),
            "b_spin".into(),
            "s_jx_normalized".into(),
        ],
        rows,
    })
}

fn efficiency_row(v: &ValidatedParams, tol: f64) -> Result<Vec<String>> {
    let report = atomic::efficiency_report_with_tol(v, tol)?;
    Ok(vec![
        fmt_f64(v.cooperativity),
        fmt_f64(report.eta_exact),
        fmt_f64(report.eta_asymptotic),
        report.scheme.to_string(),
    ])
}

fn efficiency_columns() -> Vec<String> {
    vec![
        "cooperativity".into(),
        "eta_exact".into(),
        "eta_asymptotic".into(),
        "scheme".into(),
    ]
}

fn run_efficiency(config: &RunConfig, warnings: &mut Vec<String>) -> Result<Dataset> {
    let v = validate(config.params, config.scheme)?;
    collect_warnings(warnings, &v);
    Ok(Dataset {
        metadata: metadata_for(config),
        columns: efficiency_columns(),
        rows: vec![efficiency_row(&v, config.tol)?],
    })
}

fn run_sweep(config: &RunConfig, c_grid: GridSpec, warnings: &mut Vec<String>) -> Result<Dataset> {
    let mut rows = Vec::new();
    for c in c_grid.values()? {
        let params = resolve_cooperativity(config.params, Some(c), config.scheme);
        let v = validate(params, config.scheme)?;
        collect_warnings(warnings, &v);
        rows.push(efficiency_row(&v, config.tol)?);
    }
    Ok(Dataset {
        metadata: metadata_for(config),
        columns: efficiency_columns(),
        rows,
    })
}

fn run_optimize(
    config: &RunConfig,
    omega_lo: f64,
    omega_hi: f64,
    warnings: &mut Vec<String>,
) -> Result<Dataset> {
    if !(omega_lo > 0.0 && omega_hi > 0.0) {
        return Err(Error::BoundsError {
            lo: omega_lo,
            hi: omega_hi,
            reason: "control-field bounds must be positive",
        });
    }
    let eta_at = |log_omega: f64| -> f64 {
        let params = MediumParams {
            omega_rabi: log_omega.exp(),
            ..config.params
        };
        validate(params, config.scheme)
            .and_then(|v| atomic::efficiency_report_with_tol(&v, config.tol))
            .map(|r| r.eta_exact)
            .unwrap_or(f64::NEG_INFINITY)
    };
    let (log_opt, eta_opt) = golden_section_max(eta_at, omega_lo.ln(), omega_hi.ln(), 1.0e-6)?;
    let omega_opt = log_opt.exp();

    let params = MediumParams {
        omega_rabi: omega_opt,
        ..config.params
    };
    let v = validate(params, config.scheme)?;
    collect_warnings(warnings, &v);
    Ok(Dataset {
        metadata: metadata_for(config),
        columns: vec![
            "omega_rabi_opt".into(),
            "gamma_e_opt".into(),
            "eta_opt".into(),
            "eit_transfer_regime".into(),
            "raman_transfer_regime".into(),
            "gain_regime".into(),
        ],
        rows: vec![vec![
            fmt_f64(omega_opt),
            fmt_f64(v.gamma_e),
            fmt_f64(eta_opt),
            v.flags.eit_transfer.to_string(),
            v.flags.raman_transfer.to_string(),
            v.flags.gain_regime.to_string(),
        ]],
    })
}

/// Caption parameters of the five reference figures, as a ready-to-run
/// configuration. Explicit user flags are applied on top by the binary.
pub fn figure_base_config(name: &str, format: OutputFormat, tol: f64) -> Result<RunConfig> {
    let eit = MediumParams {
        gamma0: 1.0e-3,
        ..MediumParams::default()
    };
    let raman = MediumParams {
        gamma0: 1.0e-3,
        omega_rabi: 10.0,
        delta1: 100.0,
        ..MediumParams::default()
    };
    let (params, scheme, grid) = match name {
        "fig1" => (eit, Scheme::SinglePassEit, GridSpec::linear(0.0, 3.0, 301)),
        "fig2" => (eit, Scheme::SinglePassEit, GridSpec::linear(0.0, 2.0, 201)),
        "fig3" => (
            raman,
            Scheme::SinglePassRaman,
            GridSpec::linear(0.0, 3.0, 301),
        ),
        "fig4" => (
            raman,
            Scheme::SinglePassRaman,
            GridSpec::linear(0.0, 2.0, 201),
        ),
        "fig5" => (
            eit,
            Scheme::SinglePassEit,
            GridSpec::logarithmic(1.0, 1000.0, 31),
        ),
        other => return Err(Error::UnknownFigure(other.to_string())),
    };
    let mut config = RunConfig::new(
        CommandSpec::Figure {
            name: name.to_string(),
        },
        params,
        scheme,
    );
    config.grid = grid;
    config.format = format;
    config.tol = tol;
    Ok(config)
}

// Output field spectra for a family of decoherence rates (fig1, fig3).
fn figure_field_family(
    config: &RunConfig,
    warnings: &mut Vec<String>,
) -> Result<Dataset> {
    let gamma0_set = [0.0, 1.0e-3, 1.0e-2, 1.0e-1];
    let s_in = db_to_linear(config.s_in_db);
    let grid = config.grid.values()?;
    let mut columns = vec!["omega_over_gamma".to_string()];
    let mut validated = Vec::new();
    for &g0 in &gamma0_set {
        let params = MediumParams {
            gamma0: g0,
            ..config.params
        };
        let v = validate(params, config.scheme)?;
        collect_warnings(warnings, &v);
        columns.push(format!("s_out_gamma0_{g0}"));
        validated.push(v);
    }
    let mut rows = Vec::new();
    for &w in &grid {
        let mut row = vec![fmt_f64(w)];
        for v in &validated {
            row.push(fmt_f64(field::s_out(w, s_in, v)?));
        }
        rows.push(row);
    }
    Ok(Dataset {
        metadata: metadata_for(config),
        columns,
        rows,
    })
}

// Spin spectra for coherent and squeezed input (fig2, fig4).
fn figure_spin_pair(config: &RunConfig, warnings: &mut Vec<String>) -> Result<Dataset> {
    let v = validate(config.params, config.scheme)?;
    collect_warnings(warnings, &v);
    let s_in = db_to_linear(config.s_in_db);
    let mut rows = Vec::new();
    for w in config.grid.values()? {
        let b = atomic::spectrum_breakdown(w, &v)?;
        let noise = b.b_coh + b.b_spin;
        rows.push(vec![
            fmt_f64(w),
            fmt_f64(b.b_f + noise),
            fmt_f64(b.b_f * s_in + noise),
        ]);
    }
    Ok(Dataset {
        metadata: metadata_for(config),
        columns: vec![
            "omega_over_gamma".into(),
            "s_jx_coherent".into(),
            "s_jx_squeezed".into(),
        ],
        rows,
    })
}

// Efficiency-versus-cooperativity comparison (fig5): cavity and single pass,
// resonant and detuned coupling side by side.
fn figure_efficiency_comparison(
    config: &RunConfig,
    warnings: &mut Vec<String>,
) -> Result<Dataset> {
    let gamma0 = config.params.gamma0;
    let sp_eit = MediumParams {
        gamma0,
        ..MediumParams::default()
    };
    let sp_raman = MediumParams {
        gamma0,
        omega_rabi: 10.0,
        delta1: 100.0,
        ..MediumParams::default()
    };
    let cav_eit = MediumParams {
        cavity_t: Some(DEFAULT_CAVITY_T),
        ..sp_eit
    };
    let cav_raman = MediumParams {
        cavity_t: Some(DEFAULT_CAVITY_T),
        ..sp_raman
    };

    let mut rows = Vec::new();
    for c in config.grid.values()? {
        let mut row = vec![fmt_f64(c)];
        for (base, scheme) in [
            (cav_eit, Scheme::CavityEit),
            (cav_raman, Scheme::CavityRaman),
            (sp_eit, Scheme::SinglePassEit),
            (sp_raman, Scheme::SinglePassRaman),
        ] {
            let params = resolve_cooperativity(base, Some(c), scheme);
            let v = validate(params, scheme)?;
            collect_warnings(warnings, &v);
            let eta = if scheme.is_cavity() {
                cavity::efficiency_cavity(&v)?
            } else {
                atomic::efficiency_exact_with_tol(&v, config.tol)?
            };
            row.push(fmt_f64(eta));
        }
        rows.push(row);
    }
    Ok(Dataset {
        metadata: metadata_for(config),
        columns: vec![
            "cooperativity".into(),
            "eta_cavity_eit".into(),
            "eta_cavity_raman".into(),
            "eta_sp_eit".into(),
            "eta_sp_raman".into(),
        ],
        rows,
    })
}

fn run_figure(config: &RunConfig, name: &str, warnings: &mut Vec<String>) -> Result<Dataset> {
    match name {
        "fig1" | "fig3" => figure_field_family(config, warnings),
        "fig2" | "fig4" => figure_spin_pair(config, warnings),
        "fig5" => figure_efficiency_comparison(config, warnings),
        other => Err(Error::UnknownFigure(other.to_string())),
    }
}
