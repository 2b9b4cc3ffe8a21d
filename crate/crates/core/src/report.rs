//! Report serialization, exit codes, flat config files and profile tables.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::Formatter;

use crate::error::{Error, Result};
use crate::profiles::{choose_speed_bound, ArcComplement, PhaseK, Profile};
use crate::scenario::{CheckReport, Format, ScenarioConfig};

/// Compact JSON with every float written at 17 significant digits.
/// Non-finite floats become `null`.
struct FullPrecision;

impl Formatter for FullPrecision {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            write!(w, "{value:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Io(format!("serializing report: {e}")))?;
    String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
}

/// One report as a single JSON line, without trailing newline.
pub fn report_to_json(report: &CheckReport) -> Result<String> {
    to_json(report)
}

pub fn report_from_json(line: &str) -> Result<CheckReport> {
    serde_json::from_str(line).map_err(|e| Error::Io(format!("parsing report: {e}")))
}

/// JSON Lines: one report per line.
pub fn reports_to_json_lines(reports: &[CheckReport]) -> Result<String> {
    let mut out = String::new();
    for r in reports {
        out.push_str(&report_to_json(r)?);
        out.push('\n');
    }
    Ok(out)
}

pub const CSV_HEADER: [&str; 8] = [
    "scenario", "check", "key", "domain", "statistic", "value", "threshold", "verdict",
];

struct Row {
    check: &'static str,
    key: String,
    domain: String,
    statistic: &'static str,
    value: f64,
    threshold: Option<f64>,
    verdict: &'static str,
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

/// One row per check, in the same order as the JSON sections.
fn rows(report: &CheckReport) -> Vec<Row> {
    let s = &report.scenario;
    let mut out = Vec::with_capacity(report.check_count());
    for (k, r) in &s.residual {
        out.push(Row {
            check: "residual",
            key: k.clone(),
            domain: r.domain.clone(),
            statistic: "sup_abs",
            value: r.sup,
            threshold: Some(r.tol),
            verdict: verdict(r.pass),
        });
    }
    for (k, p) in &s.principle {
        let v = match (p.violates_max, p.violates_min) {
            (true, true) => "violates_both",
            (true, false) => "violates_max",
            (false, true) => "violates_min",
            (false, false) => "holds",
        };
        out.push(Row {
            check: "principle",
            key: k.clone(),
            domain: p.domain.clone(),
            statistic: "margin",
            value: p.margin,
            threshold: None,
            verdict: v,
        });
    }
    for (k, h) in &s.hull {
        out.push(Row {
            check: "hull",
            key: k.clone(),
            domain: h.domain.clone(),
            statistic: "max_outside_distance",
            value: h.max_outside_distance,
            threshold: Some(h.hull_tol),
            verdict: if h.contained { "contained" } else { "escapes" },
        });
    }
    for (k, c) in &s.conservation {
        out.push(Row {
            check: "conservation",
            key: k.clone(),
            domain: c.domain.clone(),
            statistic: "max_dev",
            value: c.max_dev,
            threshold: Some(c.tol),
            verdict: verdict(c.pass),
        });
    }
    for (k, p) in &s.properties {
        out.push(Row {
            check: "property",
            key: k.clone(),
            domain: String::new(),
            statistic: "max_error",
            value: p.max_error,
            threshold: Some(p.tol),
            verdict: verdict(p.pass),
        });
    }
    for (k, e) in &s.expected {
        out.push(Row {
            check: "expected",
            key: k.clone(),
            domain: String::new(),
            statistic: "observed_margin",
            value: e.observed_margin,
            threshold: Some(e.threshold),
            verdict: verdict(e.pass),
        });
    }
    out
}

fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// CSV with a single header row followed by one row per check of every report.
pub fn reports_to_csv(reports: &[CheckReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in reports {
        let id = r.scenario.id.to_string();
        for row in rows(r) {
            w.write_record([
                id.as_str(),
                row.check,
                &row.key,
                &row.domain,
                row.statistic,
                &fmt_float(row.value),
                &row.threshold.map(fmt_float).unwrap_or_default(),
                row.verdict,
            ])
            .map_err(csv_err)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn render(reports: &[CheckReport], format: Format) -> Result<String> {
    match format {
        Format::Json => reports_to_json_lines(reports),
        Format::Csv => reports_to_csv(reports),
    }
}

/// 0 when every scenario passes, 1 when any fails, 2 on a configuration
/// error, 3 on any other runtime error. Errors take precedence over failures.
pub fn exit_code(results: &[Result<CheckReport>]) -> i32 {
    let mut code = 0;
    for r in results {
        let c = match r {
            Ok(rep) if rep.overall_pass() => 0,
            Ok(_) => 1,
            Err(Error::Config { .. }) => 2,
            Err(_) => 3,
        };
        code = code.max(c);
    }
    code
}

fn parse_field<V: std::str::FromStr>(field: &str, value: &str) -> Result<V>
where
    V::Err: std::fmt::Display,
{
    value
        .trim()
        .parse()
        .map_err(|e| Error::config(field, format!("cannot parse {value:?}: {e}")))
}

/// Applies one `key = value` setting. Keys match the CLI flag names.
pub fn apply_setting(cfg: &mut ScenarioConfig, key: &str, value: &str) -> Result<()> {
    let key = key.trim();
    match key {
        "n" => cfg.n = parse_field(key, value)?,
        "N" => cfg.target_dim = parse_field(key, value)?,
        "grid" | "grid_points" => cfg.grid_points = parse_field(key, value)?,
        "safety" => cfg.safety = parse_field(key, value)?,
        "tol_scale" | "tol-scale" => cfg.residual_tol_scale = parse_field(key, value)?,
        "hull_tol" | "hull-tol" => cfg.hull_tol = parse_field(key, value)?,
        "seed" => cfg.seed = parse_field(key, value)?,
        "t_max" | "t-max" => cfg.t_max = parse_field(key, value)?,
        "cache_cells" | "cache-cells" => cfg.cache_cells = parse_field(key, value)?,
        "cross_points" | "cross-points" => cfg.cross_points = parse_field(key, value)?,
        "directions" => cfg.directions = parse_field(key, value)?,
        "fd_step" | "fd-step" => cfg.fd_step = parse_field(key, value)?,
        "property_cases" | "property-cases" => cfg.property_cases = parse_field(key, value)?,
        "polar_points" | "polar-points" => cfg.polar_points = parse_field(key, value)?,
        "format" => cfg.format = value.parse()?,
        "out" => cfg.out_path = Some(value.trim().into()),
        "emit_profiles" | "emit-profiles" => cfg.emit_profiles = Some(value.trim().into()),
        other => return Err(Error::config(other, "unknown configuration key")),
    }
    Ok(())
}

/// Parses a flat `key = value` file; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::config("config", format!("line {}: expected key = value", i + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

pub fn load_config_file(path: &Path) -> Result<Vec<(String, String)>> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::config("config", format!("{}: {e}", path.display())))?;
    parse_config_text(&text)
}

const PROFILE_TABLE_POINTS: usize = 601;

fn write_table<F>(dir: &Path, name: &str, a: f64, b: f64, f: F) -> Result<()>
where
    F: Fn(f64) -> Result<[f64; 3]>,
{
    let path = dir.join(format!("{name}.csv"));
    let mut w = csv::Writer::from_path(&path).map_err(|e| Error::Io(e.to_string()))?;
    let csv_err = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["t", "value", "d1", "d2"]).map_err(csv_err)?;
    let last = (PROFILE_TABLE_POINTS - 1) as f64;
    for k in 0..PROFILE_TABLE_POINTS {
        let t = (a * (last - k as f64) + b * k as f64) / last;
        let [v, d1, d2] = f(t)?;
        w.write_record([fmt_float(t), fmt_float(v), fmt_float(d1), fmt_float(d2)])
            .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes `w1, w2, z1, z2, rho_star, phase_k` tables (columns `t, value, d1, d2`)
/// into `dir`, creating it if needed.
pub fn emit_profile_tables(dir: &Path, cfg: &ScenarioConfig) -> Result<()> {
    fs::create_dir_all(dir)?;
    let plain = |p: Profile<f64>| move |t: f64| {
        let j = p.jet(t);
        Ok([j.val, j.d1, j.d2])
    };
    write_table(dir, "w1", -3.0, 3.0, plain(Profile::W1))?;
    write_table(dir, "z1", 0.0, 4.0, plain(Profile::Z1))?;
    write_table(dir, "rho_star", -3.0, 3.0, plain(Profile::RhoStar))?;

    let w2 = ArcComplement::new(Profile::W1, choose_speed_bound(&Profile::W1, cfg.safety)?, cfg.cache_cells)?;
    write_table(dir, "w2", -3.0, 3.0, |t| {
        let j = w2.jet(t)?;
        Ok([j.val, j.d1, j.d2])
    })?;
    let z2 = ArcComplement::new(Profile::Z1, choose_speed_bound(&Profile::Z1, cfg.safety)?, cfg.cache_cells)?;
    write_table(dir, "z2", 0.0, 4.0, |t| {
        let j = z2.jet(t)?;
        Ok([j.val, j.d1, j.d2])
    })?;
    let k = PhaseK::new(
        choose_speed_bound(&Profile::RhoStar, cfg.safety)?,
        cfg.t_max,
        cfg.cache_cells,
    )?;
    write_table(dir, "phase_k", -cfg.t_max, cfg.t_max, |t| {
        let j = k.jet(t)?;
        Ok([j.val, j.d1, j.d2])
    })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::{run_scenario, ScenarioId};

    #[test]
    fn config_text() {
        let kv = parse_config_text("# c\nn = 2\n\nseed=7 # trailing\n").unwrap();
        assert_eq!(kv, vec![("n".into(), "2".into()), ("seed".into(), "7".into())]);
        assert!(parse_config_text("n 2").is_err());
        let mut cfg = ScenarioConfig::new(ScenarioId::Ex2);
        apply_setting(&mut cfg, "N", "3").unwrap();
        assert_eq!(cfg.target_dim, 3);
        assert!(matches!(apply_setting(&mut cfg, "bogus", "1"), Err(Error::Config { .. })));
        assert!(matches!(apply_setting(&mut cfg, "n", "x"), Err(Error::Config { .. })));
    }

    #[test]
    fn exit_codes() {
        let mut cfg = ScenarioConfig::new(ScenarioId::Ex2);
        cfg.grid_points = 201;
        let ok = run_scenario(&cfg).unwrap();
        let mut bad = ok.clone();
        bad.scenario.overall_pass = false;
        assert_eq!(exit_code(&[Ok(ok.clone())]), 0);
        assert_eq!(exit_code(&[Ok(ok.clone()), Ok(bad.clone())]), 1);
        assert_eq!(exit_code(&[Ok(bad.clone()), Err(Error::config("n", "x"))]), 2);
        assert_eq!(exit_code(&[Err(Error::config("n", "x")), Err(Error::Degenerate("d".into()))]), 3);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let mut cfg = ScenarioConfig::new(ScenarioId::Ex1a);
        cfg.grid_points = 101;
        let r = run_scenario(&cfg).unwrap().without_timings();
        let line = report_to_json(&r).unwrap();
        assert!(!line.contains('\n'));
        assert_eq!(report_from_json(&line).unwrap(), r);
    }

    #[test]
    fn full_precision_floats() {
        assert_eq!(to_json(&vec![0.1f64, f64::NAN]).unwrap(), "[1.0000000000000001e-1,null]");
    }
}
