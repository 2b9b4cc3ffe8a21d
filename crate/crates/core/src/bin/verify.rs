//! Runs verification scenarios and prints their reports.
//!
//! Exit status: 0 all pass, 1 some check failed, 2 configuration error,
//! 3 runtime error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use inflap::report::{apply_setting, emit_profile_tables, exit_code, load_config_file, render};
use inflap::scenario::{run_scenario, CheckReport, ScenarioConfig, ScenarioId};
use inflap::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "verify", version, about = "Certify the constructions and measure principle violations")]
struct Cli {
    /// Scenarios: EX1A, EX1B, EX2, EX3, PROPERTY_SUITE, or ALL.
    #[arg(required = true)]
    scenarios: Vec<String>,
    /// Domain dimension.
    #[arg(long)]
    n: Option<String>,
    /// Target dimension.
    #[arg(long = "N")]
    target_dim: Option<String>,
    /// Samples along the first axis; odd and at least 3.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    safety: Option<String>,
    /// Analytic residual tolerance in units of M³.
    #[arg(long = "tol-scale")]
    tol_scale: Option<String>,
    #[arg(long = "hull-tol")]
    hull_tol: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long = "t-max")]
    t_max: Option<String>,
    #[arg(long = "property-cases")]
    property_cases: Option<String>,
    /// json (one report per line) or csv.
    #[arg(long)]
    format: Option<String>,
    /// Write the output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write profile tables into this directory.
    #[arg(long = "emit-profiles")]
    emit_profiles: Option<PathBuf>,
    /// Flat key = value file, applied before flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Omit wall-clock timings so output is byte-identical across runs.
    #[arg(long = "no-timings")]
    no_timings: bool,
}

impl Cli {
    fn flag_settings(&self) -> Vec<(&'static str, String)> {
        let mut s = Vec::new();
        let flags: [(&'static str, &Option<String>); 10] = [
            ("n", &self.n),
            ("N", &self.target_dim),
            ("grid_points", &self.grid),
            ("safety", &self.safety),
            ("tol_scale", &self.tol_scale),
            ("hull_tol", &self.hull_tol),
            ("seed", &self.seed),
            ("t_max", &self.t_max),
            ("property_cases", &self.property_cases),
            ("format", &self.format),
        ];
        for (k, v) in flags {
            if let Some(v) = v {
                s.push((k, v.clone()));
            }
        }
        if let Some(p) = &self.out {
            s.push(("out", p.display().to_string()));
        }
        if let Some(p) = &self.emit_profiles {
            s.push(("emit_profiles", p.display().to_string()));
        }
        s
    }
}

fn scenario_ids(names: &[String]) -> Result<Vec<ScenarioId>> {
    let mut ids = Vec::new();
    for name in names {
        if name.eq_ignore_ascii_case("all") {
            ids.extend(ScenarioId::ALL);
        } else {
            ids.push(name.parse()?);
        }
    }
    Ok(ids)
}

/// Defaults, then the config file, then flags.
fn build_config(cli: &Cli, id: ScenarioId) -> Result<ScenarioConfig> {
    let mut cfg = ScenarioConfig::new(id);
    if let Some(path) = &cli.config {
        for (k, v) in load_config_file(path)? {
            apply_setting(&mut cfg, &k, &v)?;
        }
    }
    for (k, v) in cli.flag_settings() {
        apply_setting(&mut cfg, k, &v)?;
    }
    Ok(cfg)
}

fn run(cli: &Cli) -> (Vec<Result<CheckReport>>, Option<ScenarioConfig>) {
    let ids = match scenario_ids(&cli.scenarios) {
        Ok(ids) => ids,
        Err(e) => return (vec![Err(e)], None),
    };
    let mut results = Vec::new();
    let mut last_cfg = None;
    for id in ids {
        let r = build_config(cli, id).and_then(|cfg| {
            let errs = cfg.validate();
            if let Some(e) = errs.first() {
                for e in errs.iter().skip(1) {
                    eprintln!("verify: {id}: {e}");
                }
                return Err(e.clone());
            }
            let rep = run_scenario(&cfg);
            last_cfg = Some(cfg);
            rep
        });
        let r = r.map(|rep| if cli.no_timings { rep.without_timings() } else { rep });
        results.push(r);
    }
    (results, last_cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (results, cfg) = run(&cli);
    for r in &results {
        if let Err(e) = r {
            eprintln!("verify: {e}");
        }
    }
    let reports: Vec<CheckReport> = results.iter().filter_map(|r| r.as_ref().ok().cloned()).collect();
    let mut code = exit_code(&results);
    if let Some(cfg) = cfg {
        let out = render(&reports, cfg.format).and_then(|text| match &cfg.out_path {
            Some(path) => fs::write(path, text).map_err(Error::from),
            None => {
                print!("{text}");
                Ok(())
            }
        });
        let profiles = match &cfg.emit_profiles {
            Some(dir) => emit_profile_tables(dir, &cfg),
            None => Ok(()),
        };
        for e in [out.err(), profiles.err()].into_iter().flatten() {
            eprintln!("verify: {e}");
            code = code.max(3);
        }
    }
    ExitCode::from(code as u8)
}
