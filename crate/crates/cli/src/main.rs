//! `cvchan` — sweep runner and channel inspector for the Gaussian channel
//! toolbox. Every subcommand emits a deterministic CSV or JSON table.

mod config;
mod run;
mod table;

use clap::{Parser, Subcommand};

use config::{CliError, Overrides, Scenario};

#[derive(Parser)]
#[command(
    name = "cvchan",
    version,
    about = "Gaussian channel sweeps: entanglement-breaking regions, witness curves and amendability thresholds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Noise thresholds N0(eta) for the attenuation channel to be EB of order n
    EbRegion(Overrides),
    /// EB boundary of the beam splitter / squeezer / beam splitter composition
    EtaTilde(Overrides),
    /// Witness and PPT curves for the squeezer setup, swept in transmissivity
    Setup1(Overrides),
    /// Same sweep with the squeezer removed (reference configuration)
    Setup2(Overrides),
    /// Witness and PPT curves for the phase-shift setup, swept in filter angle
    Prp(Overrides),
    /// Closed-form thresholds for one parameter point
    Thresholds(Overrides),
    /// Inspect a single attenuation-family channel
    CheckChannel(Overrides),
}

fn main() {
    let cli = Cli::parse();
    let (scenario, overrides) = match cli.command {
        Command::EbRegion(o) => (Scenario::EbRegion, o),
        Command::EtaTilde(o) => (Scenario::EtaTilde, o),
        Command::Setup1(o) => (Scenario::Setup1, o),
        Command::Setup2(o) => (Scenario::Setup2, o),
        Command::Prp(o) => (Scenario::Prp, o),
        Command::Thresholds(o) => (Scenario::Thresholds, o),
        Command::CheckChannel(o) => (Scenario::CheckChannel, o),
    };
    if let Err(err) = try_run(scenario, overrides) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn try_run(scenario: Scenario, overrides: Overrides) -> Result<(), CliError> {
    let cfg = config::resolve(scenario, overrides)?;
    let table = run::run_scenario(&cfg)?;
    run::write_output(&table, &cfg)
}
