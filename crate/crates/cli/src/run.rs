//! Scenario execution: each subcommand produces a table of sweep rows in
//! ascending order of the swept parameter. Rows whose point falls outside the
//! domain of a derived quantity are skipped rather than aborting the sweep;
//! configuration-level range violations are rejected up front.

use std::io::Write;

use cvchan_core::{
    amendability_c, attenuation_boundary, eb_order, eta_bar, eta_tilde, is_eb_choi,
    is_eb_diagonal, is_entangled, log_negativity, nu_squared, optimal_product_witness,
    prp_channel, product_witness, r_tilde, scenario, theta_window, CorrelationSign,
    GaussianChannel, Matrix, WitnessSign,
};

use crate::config::{CliError, OutputFormat, Scenario, ScenarioConfig};
use crate::table::{Cell, Table};

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    match cfg.scenario {
        Scenario::EbRegion => run_eb_region(cfg),
        Scenario::EtaTilde => run_eta_tilde(cfg),
        Scenario::Setup1 => run_setup(cfg, cfg.r),
        Scenario::Setup2 => run_setup(cfg, 0.0),
        Scenario::Prp => run_prp(cfg),
        Scenario::Thresholds => run_thresholds(cfg),
        Scenario::CheckChannel => run_check_channel(cfg),
    }
}

fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

fn all_finite(row: &[Cell]) -> bool {
    row.iter().all(|cell| match cell {
        Cell::Float(x) => x.is_finite(),
        _ => true,
    })
}

fn push_if_finite(table: &mut Table, row: Vec<Cell>) {
    if all_finite(&row) {
        table.push(row);
    }
}

fn run_eb_region(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    let mut table = Table::new(vec!["eta", "n", "N0_boundary"]);
    for n in 1..=cfg.order {
        for eta in linspace(cfg.eta_min, cfg.eta_max, cfg.steps) {
            match attenuation_boundary(eta, n) {
                Ok(boundary) => push_if_finite(
                    &mut table,
                    vec![Cell::Float(eta), Cell::Int(n as i64), Cell::Float(boundary)],
                ),
                Err(_) => continue,
            }
        }
    }
    Ok(table)
}

fn run_eta_tilde(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    let mut table = Table::new(vec!["eta", "r_tilde"]);
    for eta in linspace(cfg.eta_min, cfg.eta_max, cfg.steps) {
        match r_tilde(eta) {
            Ok(r) => push_if_finite(&mut table, vec![Cell::Float(eta), Cell::Float(r)]),
            Err(_) => continue,
        }
    }
    Ok(table)
}

fn run_setup(cfg: &ScenarioConfig, r: f64) -> Result<Table, CliError> {
    let mut table = Table::new(vec![
        "eta",
        "r",
        "rprime",
        "q2",
        "p2",
        "W",
        "nu2",
        "E_N",
        "is_entangled",
    ]);
    for eta in linspace(cfg.eta_min, cfg.eta_max, cfg.steps) {
        let row = (|| -> cvchan_core::Result<Vec<Cell>> {
            let v = scenario::setup_output(eta, r, cfg.rprime, CorrelationSign::Negative)?;
            let witness = product_witness(&v, WitnessSign::Plus)?;
            let nu2 = nu_squared(&v)?;
            Ok(vec![
                Cell::Float(eta),
                Cell::Float(r),
                Cell::Float(cfg.rprime),
                Cell::Float(witness.q2),
                Cell::Float(witness.p2),
                Cell::Float(witness.w),
                Cell::Float(nu2),
                Cell::Float(log_negativity(&v)?),
                Cell::Bool(is_entangled(&v, cfg.tol)?),
            ])
        })();
        match row {
            Ok(row) => push_if_finite(&mut table, row),
            Err(_) => continue,
        }
    }
    Ok(table)
}

fn run_prp(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    let mut table = Table::new(vec!["theta", "nu2", "W_corrected", "W_raw", "is_eb"]);
    for theta in linspace(0.0, std::f64::consts::PI, cfg.theta_steps) {
        let row = (|| -> cvchan_core::Result<Vec<Cell>> {
            let channel = prp_channel(theta, cfg.eta, cfg.np)?;
            let corrected =
                scenario::prp_output_corrected(theta, cfg.eta, cfg.np, cfg.rprime)?;
            let raw = scenario::prp_output(theta, cfg.eta, cfg.np, cfg.rprime)?;
            let verdict = is_eb_choi(&channel, cfg.probe_rprime, cfg.tol)?;
            Ok(vec![
                Cell::Float(theta),
                Cell::Float(nu_squared(&corrected)?),
                Cell::Float(optimal_product_witness(&corrected)?.w),
                Cell::Float(optimal_product_witness(&raw)?.w),
                Cell::Bool(verdict.is_eb),
            ])
        })();
        match row {
            Ok(row) => push_if_finite(&mut table, row),
            Err(_) => continue,
        }
    }
    Ok(table)
}

fn run_thresholds(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    let mut table = Table::new(vec!["name", "value"]);
    let mut named = |name: &'static str, value: cvchan_core::Result<f64>| {
        if let Ok(value) = value {
            if value.is_finite() {
                table.push(vec![Cell::Text(name.to_string()), Cell::Float(value)]);
            }
        }
    };
    named("eta_tilde", eta_tilde(cfg.r));
    named("r_tilde", r_tilde(cfg.eta));
    named("eta_bar", eta_bar(cfg.rprime));
    named("reliability_eta_min", eta_bar(cfg.rprime));
    named("reliability_eta_max", eta_tilde(cfg.r));
    named("c", amendability_c(cfg.eta, cfg.np));
    if let Ok(Some(window)) = theta_window(cfg.eta, cfg.np) {
        table.push(vec![
            Cell::Text("theta_min".to_string()),
            Cell::Float(window.theta_min),
        ]);
        table.push(vec![
            Cell::Text("theta_max".to_string()),
            Cell::Float(window.theta_max),
        ]);
    }
    Ok(table)
}

fn run_check_channel(cfg: &ScenarioConfig) -> Result<Table, CliError> {
    // Attenuation family with optional extra P-quadrature noise:
    // K = sqrt(eta)·I, beta = (n0 + (1-eta)/2)·I + np·diag(0, 1).
    let half = 0.5 * (1.0 - cfg.eta);
    let channel = GaussianChannel::new(
        Matrix::identity(2).scaled(cfg.eta.sqrt()),
        vec![0.0; 2],
        Matrix::diagonal(&[cfg.n0 + half, cfg.n0 + half + cfg.np]),
    )?;
    let choi = is_eb_choi(&channel, cfg.probe_rprime, cfg.tol)?;
    let diagonal = is_eb_diagonal(&channel)?;
    let order = eb_order(&channel, cfg.order, cfg.tol)?;

    let mut table = Table::new(vec!["name", "value"]);
    let mut named = |name: &'static str, value: Cell| {
        table.push(vec![Cell::Text(name.to_string()), value]);
    };
    named("eta", Cell::Float(cfg.eta));
    named("n0", Cell::Float(cfg.n0));
    named("np", Cell::Float(cfg.np));
    named("probe_rprime", Cell::Float(cfg.probe_rprime));
    named("is_cpt", Cell::Bool(channel.is_cpt(cfg.tol)));
    named("is_eb_choi", Cell::Bool(choi.is_eb));
    named("nu2_choi", Cell::Float(choi.nu2.unwrap_or(f64::NAN)));
    named("is_eb_diagonal", Cell::Bool(diagonal.is_eb));
    named(
        "eb_order",
        match order {
            Some(n) => Cell::Int(n as i64),
            None => Cell::Text("none".to_string()),
        },
    );
    Ok(table)
}

pub fn write_output(table: &Table, cfg: &ScenarioConfig) -> Result<(), CliError> {
    let rendered = match cfg.format {
        OutputFormat::Csv => table.to_csv(),
        OutputFormat::Json => table.to_json(),
    };
    match &cfg.out {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            file.write_all(rendered.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(rendered.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{resolve, Overrides};

    fn cfg_for(scenario: Scenario, patch: impl FnOnce(&mut Overrides)) -> ScenarioConfig {
        let mut overrides = Overrides::default();
        patch(&mut overrides);
        resolve(scenario, overrides).unwrap()
    }

    #[test]
    fn eb_region_matches_closed_form() {
        let cfg = cfg_for(Scenario::EbRegion, |o| o.steps = Some(11));
        let table = run_scenario(&cfg).unwrap();
        assert_eq!(table.rows.len(), 33);
        // First row: n = 1, eta = 0, boundary 0.
        assert_eq!(table.rows[0][1], Cell::Int(1));
        assert_eq!(table.rows[0][2], Cell::Float(0.0));
    }

    #[test]
    fn eta_tilde_skips_undefined_endpoints() {
        let cfg = cfg_for(Scenario::EtaTilde, |o| {
            o.eta_min = Some(0.0);
            o.eta_max = Some(1.0);
            o.steps = Some(2);
        });
        let table = run_scenario(&cfg).unwrap();
        assert!(table.rows.is_empty());
    }

    #[test]
    fn setup2_rows_are_entangled_above_zero_transmissivity() {
        let cfg = cfg_for(Scenario::Setup2, |o| {
            o.eta_min = Some(0.1);
            o.eta_max = Some(0.9);
            o.steps = Some(9);
        });
        let table = run_scenario(&cfg).unwrap();
        assert_eq!(table.rows.len(), 9);
        for row in &table.rows {
            match (&row[6], &row[8]) {
                (Cell::Float(nu2), Cell::Bool(entangled)) => {
                    assert!(*nu2 < 0.25);
                    assert!(entangled);
                }
                other => panic!("unexpected cells {other:?}"),
            }
        }
    }

    #[test]
    fn prp_window_matches_expected_region() {
        let cfg = cfg_for(Scenario::Prp, |o| o.theta_steps = Some(64));
        let table = run_scenario(&cfg).unwrap();
        for row in &table.rows {
            let theta = match row[0] {
                Cell::Float(t) => t,
                _ => unreachable!(),
            };
            let is_eb = match row[4] {
                Cell::Bool(b) => b,
                _ => unreachable!(),
            };
            if !(0.95..=2.20).contains(&theta) {
                assert!(!is_eb, "theta = {theta}");
            }
            if (1.05..=2.10).contains(&theta) {
                assert!(is_eb, "theta = {theta}");
            }
        }
    }

    #[test]
    fn check_channel_reports_order() {
        let cfg = cfg_for(Scenario::CheckChannel, |o| {
            o.eta = Some(0.5);
            o.n0 = Some(0.6);
        });
        let table = run_scenario(&cfg).unwrap();
        let order_row = table
            .rows
            .iter()
            .find(|row| row[0] == Cell::Text("eb_order".to_string()))
            .unwrap();
        assert_eq!(order_row[1], Cell::Int(1));
    }
}
