//! Flag / config-file resolution into a validated scenario configuration.
//!
//! Precedence: command-line flag > config-file entry > scenario default.
//! Config files are flat `key=value` text with the same keys as the flags
//! without the leading dashes; `#` starts a comment.

use std::path::PathBuf;

use clap::{Args, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    EbRegion,
    EtaTilde,
    Setup1,
    Setup2,
    Prp,
    Thresholds,
    CheckChannel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Raw optional parameters shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// Transmissivity of each beam splitter
    #[arg(long, allow_negative_numbers = true)]
    pub eta: Option<f64>,
    /// Lower end of a transmissivity sweep
    #[arg(long, allow_negative_numbers = true)]
    pub eta_min: Option<f64>,
    /// Upper end of a transmissivity sweep
    #[arg(long, allow_negative_numbers = true)]
    pub eta_max: Option<f64>,
    /// Number of sweep points (endpoints included)
    #[arg(long)]
    pub steps: Option<usize>,
    /// Squeezer strength of the filter
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,
    /// Two-mode squeezing of the probe state
    #[arg(long, allow_negative_numbers = true)]
    pub rprime: Option<f64>,
    /// Variance of the added P-quadrature noise
    #[arg(long, allow_negative_numbers = true)]
    pub np: Option<f64>,
    /// Noise quanta added by the attenuation channel
    #[arg(long, allow_negative_numbers = true)]
    pub n0: Option<f64>,
    /// Number of filter-angle sweep points over [0, pi]
    #[arg(long)]
    pub theta_steps: Option<usize>,
    /// Highest EB order to scan
    #[arg(long)]
    pub order: Option<usize>,
    /// Tolerance for boundary classifications
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    /// Probe squeezing used by the EB test columns
    #[arg(long, allow_negative_numbers = true)]
    pub probe_rprime: Option<f64>,
    /// Output file (defaults to standard output)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// key=value config file; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Fully resolved, validated parameters for one run.
#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub eta: f64,
    pub eta_min: f64,
    pub eta_max: f64,
    pub steps: usize,
    pub r: f64,
    pub rprime: f64,
    pub np: f64,
    pub n0: f64,
    pub theta_steps: usize,
    pub order: usize,
    pub tol: f64,
    pub probe_rprime: f64,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Domain(msg) => write!(f, "{msg}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<cvchan_core::Error> for CliError {
    fn from(err: cvchan_core::Error) -> CliError {
        CliError::Domain(err.to_string())
    }
}

pub fn resolve(scenario: Scenario, cli: Overrides) -> Result<ScenarioConfig, CliError> {
    let file = match &cli.config {
        Some(path) => parse_config_file(path)?,
        None => Overrides::default(),
    };
    let merged = merge(cli, file);

    let defaults = defaults_for(scenario);
    let cfg = ScenarioConfig {
        scenario,
        eta: merged.eta.unwrap_or(defaults.eta),
        eta_min: merged.eta_min.unwrap_or(defaults.eta_min),
        eta_max: merged.eta_max.unwrap_or(defaults.eta_max),
        steps: merged.steps.unwrap_or(defaults.steps),
        r: merged.r.unwrap_or(defaults.r),
        rprime: merged.rprime.unwrap_or(defaults.rprime),
        np: merged.np.unwrap_or(defaults.np),
        n0: merged.n0.unwrap_or(defaults.n0),
        theta_steps: merged.theta_steps.unwrap_or(defaults.theta_steps),
        order: merged.order.unwrap_or(defaults.order),
        tol: merged.tol.unwrap_or(defaults.tol),
        probe_rprime: merged.probe_rprime.unwrap_or(defaults.probe_rprime),
        out: merged.out,
        format: merged.format.unwrap_or(OutputFormat::Csv),
    };
    validate(&cfg)?;
    Ok(cfg)
}

struct Defaults {
    eta: f64,
    eta_min: f64,
    eta_max: f64,
    steps: usize,
    r: f64,
    rprime: f64,
    np: f64,
    n0: f64,
    theta_steps: usize,
    order: usize,
    tol: f64,
    probe_rprime: f64,
}

/// Defaults mirror each scenario's reference parameter point.
fn defaults_for(scenario: Scenario) -> Defaults {
    let mut d = Defaults {
        eta: 0.9,
        eta_min: 0.0,
        eta_max: 1.0,
        steps: 101,
        r: 1.0,
        rprime: 0.8,
        np: 1.0,
        n0: 0.0,
        theta_steps: 181,
        order: 3,
        tol: 1e-10,
        probe_rprime: 2.0,
    };
    match scenario {
        Scenario::EtaTilde => {
            d.eta_min = 0.01;
            d.eta_max = 0.99;
        }
        Scenario::Prp => {
            d.rprime = 2.0;
        }
        Scenario::CheckChannel => {
            d.eta = 0.5;
            d.np = 0.0;
            d.order = 20;
        }
        _ => {}
    }
    d
}

fn merge(cli: Overrides, file: Overrides) -> Overrides {
    Overrides {
        eta: cli.eta.or(file.eta),
        eta_min: cli.eta_min.or(file.eta_min),
        eta_max: cli.eta_max.or(file.eta_max),
        steps: cli.steps.or(file.steps),
        r: cli.r.or(file.r),
        rprime: cli.rprime.or(file.rprime),
        np: cli.np.or(file.np),
        n0: cli.n0.or(file.n0),
        theta_steps: cli.theta_steps.or(file.theta_steps),
        order: cli.order.or(file.order),
        tol: cli.tol.or(file.tol),
        probe_rprime: cli.probe_rprime.or(file.probe_rprime),
        out: cli.out.or(file.out),
        format: cli.format.or(file.format),
        config: cli.config,
    }
}

fn parse_config_file(path: &PathBuf) -> Result<Overrides, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Overrides::default();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!(
                "{}:{}: expected key=value, got {raw:?}",
                path.display(),
                line_no + 1
            ))
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad_value = |what: &str| {
            CliError::Usage(format!(
                "{}:{}: invalid {what} for key {key:?}: {value:?}",
                path.display(),
                line_no + 1
            ))
        };
        match key {
            "eta" => out.eta = Some(parse_f64(value).ok_or_else(|| bad_value("number"))?),
            "eta-min" => out.eta_min = Some(parse_f64(value).ok_or_else(|| bad_value("number"))?),
            "eta-max" => out.eta_max = Some(parse_f64(value).ok_or_else(|| bad_value("number"))?),
            "steps" => out.steps = Some(value.parse().map_err(|_| bad_value("integer"))?),
            "r" => out.r = Some(parse_f64(value).ok_or_else(|| bad_value("number"))?),
            "rprime" => out.rprime = Some(parse_f64(value).ok_or_else(|| bad_value("number"))?),
            "np" => out.np = Some(parse_f64(value).ok_or_else(|| bad_value("number"))?),
            "n0" => out.n0 = Some(parse_f64(value).ok_or_else(|| bad_value("number"))?),
            "theta-steps" => {
                out.theta_steps = Some(value.parse().map_err(|_| bad_value("integer"))?)
            }
            "order" => out.order = Some(value.parse().map_err(|_| bad_value("integer"))?),
            "tol" => out.tol = Some(parse_f64(value).ok_or_else(|| bad_value("number"))?),
            "probe-rprime" => {
                out.probe_rprime = Some(parse_f64(value).ok_or_else(|| bad_value("number"))?)
            }
            "out" => out.out = Some(PathBuf::from(value)),
            "format" => {
                out.format = Some(match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    _ => return Err(bad_value("format (csv|json)")),
                })
            }
            _ => {
                return Err(CliError::Usage(format!(
                    "{}:{}: unknown key {key:?}",
                    path.display(),
                    line_no + 1
                )))
            }
        }
    }
    Ok(out)
}

fn parse_f64(value: &str) -> Option<f64> {
    value.parse::<f64>().ok().filter(|x| x.is_finite())
}

fn validate(cfg: &ScenarioConfig) -> Result<(), CliError> {
    let domain = |msg: String| Err(CliError::Domain(msg));
    for (name, value) in [
        ("eta", cfg.eta),
        ("eta-min", cfg.eta_min),
        ("eta-max", cfg.eta_max),
    ] {
        if !value.is_finite() || !(0.0..=1.0).contains(&value) {
            return domain(format!("{name} = {value} outside [0, 1]"));
        }
    }
    if cfg.eta_min > cfg.eta_max {
        return domain(format!(
            "eta-min = {} exceeds eta-max = {}",
            cfg.eta_min, cfg.eta_max
        ));
    }
    for (name, value) in [
        ("rprime", cfg.rprime),
        ("np", cfg.np),
        ("n0", cfg.n0),
    ] {
        if !value.is_finite() || value < 0.0 {
            return domain(format!("{name} = {value} outside [0, inf)"));
        }
    }
    if !cfg.r.is_finite() {
        return domain("r must be finite".to_string());
    }
    if !cfg.tol.is_finite() || cfg.tol <= 0.0 {
        return domain(format!("tol = {} outside (0, inf)", cfg.tol));
    }
    if !cfg.probe_rprime.is_finite() || cfg.probe_rprime <= 0.0 {
        return domain(format!(
            "probe-rprime = {} outside (0, inf)",
            cfg.probe_rprime
        ));
    }
    if cfg.steps < 2 {
        return domain(format!("steps = {} must be at least 2", cfg.steps));
    }
    if cfg.theta_steps < 2 {
        return domain(format!(
            "theta-steps = {} must be at least 2",
            cfg.theta_steps
        ));
    }
    if cfg.order < 1 {
        return domain(format!("order = {} must be at least 1", cfg.order));
    }
    Ok(())
}
