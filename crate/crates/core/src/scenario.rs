//! Scenario registry: each scenario builds one construction, certifies its
//! residual and measures the principle violation it is designed to exhibit.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::checkers::{
    conservation_check, directional_check, hull_check, modulus_check, residual_certify,
    HullVerdict, JetSource, PrincipleVerdict, Residual, ResidualReport,
};
use crate::domain::{DomainSpec, Sampling};
use crate::error::{Error, Result};
use crate::maps::{ProfileConfig, SmoothMap, SolutionMap};
use crate::properties::{operator_suite, polar_suite, PropertyOutcome};

pub const SCHEMA_VERSION: u32 = 1;

/// Fraction of the analytic margin a detected violation must reach.
pub const MARGIN_FRACTION: f64 = 0.5;
/// Residual bound on the finite-difference path, in units of `M³`.
pub const FD_TOL_SCALE: f64 = 1e-3;
/// Allowed `| |Du|² − M² |`, in units of `M²`.
pub const CONSERVATION_TOL_SCALE: f64 = 1e-9;

const INV_E: f64 = 0.367_879_441_171_442_33;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ScenarioId {
    #[serde(rename = "EX1A")]
    Ex1a,
    #[serde(rename = "EX1B")]
    Ex1b,
    #[serde(rename = "EX2")]
    Ex2,
    #[serde(rename = "EX3")]
    Ex3,
    #[serde(rename = "PROPERTY_SUITE")]
    PropertySuite,
}

impl ScenarioId {
    pub const ALL: [ScenarioId; 5] = [
        ScenarioId::Ex1a,
        ScenarioId::Ex1b,
        ScenarioId::Ex2,
        ScenarioId::Ex3,
        ScenarioId::PropertySuite,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ScenarioId::Ex1a => "EX1A",
            ScenarioId::Ex1b => "EX1B",
            ScenarioId::Ex2 => "EX2",
            ScenarioId::Ex3 => "EX3",
            ScenarioId::PropertySuite => "PROPERTY_SUITE",
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        ScenarioId::ALL
            .into_iter()
            .find(|id| id.as_str() == norm)
            .ok_or_else(|| Error::config("scenario", format!("unknown scenario {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::config("format", format!("expected json or csv, got {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: ScenarioId,
    /// Domain dimension `n`.
    pub n: usize,
    /// Target dimension `N`; ignored by the scalar scenario EX3.
    pub target_dim: usize,
    pub grid_points: usize,
    pub safety: f64,
    /// Analytic residual tolerance in units of `M³`.
    pub residual_tol_scale: f64,
    pub hull_tol: f64,
    pub seed: u64,
    pub t_max: f64,
    pub cache_cells: usize,
    pub cross_points: usize,
    pub directions: usize,
    pub fd_step: f64,
    pub property_cases: usize,
    pub polar_points: usize,
    pub format: Format,
    pub out_path: Option<PathBuf>,
    pub emit_profiles: Option<PathBuf>,
}

impl ScenarioConfig {
    pub fn new(scenario: ScenarioId) -> Self {
        Self {
            scenario,
            n: 1,
            target_dim: 2,
            grid_points: 2001,
            safety: 0.05,
            residual_tol_scale: 1e-8,
            hull_tol: 1e-9,
            seed: 0,
            t_max: 2.0,
            cache_cells: 4096,
            cross_points: 3,
            directions: 16,
            fd_step: 1e-4,
            property_cases: 500,
            polar_points: 100,
            format: Format::Json,
            out_path: None,
            emit_profiles: None,
        }
    }

    /// Every violated constraint, each naming its field.
    pub fn validate(&self) -> Vec<Error> {
        let mut errs = Vec::new();
        let mut bad = |field: &str, msg: String| errs.push(Error::config(field, msg));
        if self.n < 1 {
            bad("n", "must be ≥ 1".into());
        }
        if self.target_dim < 2 && self.scenario != ScenarioId::Ex3 {
            bad("N", format!("must be ≥ 2 for {}, got {}", self.scenario, self.target_dim));
        }
        if self.grid_points < 3 || self.grid_points.is_multiple_of(2) {
            bad("grid_points", format!("must be odd and ≥ 3, got {}", self.grid_points));
        }
        if !(self.safety > 0.0 && self.safety.is_finite()) {
            bad("safety", format!("must be > 0, got {}", self.safety));
        }
        if !(self.residual_tol_scale > 0.0 && self.residual_tol_scale.is_finite()) {
            bad("tol_scale", format!("must be > 0, got {}", self.residual_tol_scale));
        }
        if !(self.hull_tol >= 0.0 && self.hull_tol.is_finite()) {
            bad("hull_tol", format!("must be ≥ 0, got {}", self.hull_tol));
        }
        if !(self.t_max >= 1.5 && self.t_max.is_finite()) {
            bad("t_max", format!("must be ≥ 1.5 to cover the u3 grids, got {}", self.t_max));
        }
        if self.cache_cells < 16 {
            bad("cache_cells", format!("must be ≥ 16, got {}", self.cache_cells));
        }
        if !(self.fd_step > 0.0 && self.fd_step < 0.1) {
            bad("fd_step", format!("must be in (0, 0.1), got {}", self.fd_step));
        }
        if self.property_cases < 1 {
            bad("property_cases", "must be ≥ 1".into());
        }
        errs
    }

    fn profile_config(&self) -> ProfileConfig {
        ProfileConfig {
            safety: self.safety,
            t_max: self.t_max,
            cache_cells: self.cache_cells,
            ..ProfileConfig::default()
        }
    }

    fn sampling(&self, witnesses: &[f64]) -> Sampling<f64> {
        Sampling {
            grid_points: self.grid_points,
            witnesses: witnesses.to_vec(),
            cross_extent: 1.0,
            cross_points: self.cross_points,
            directions: self.directions,
            seed: self.seed,
        }
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            n: self.n,
            target_dim: self.target_dim,
            grid_points: self.grid_points,
            safety: self.safety,
            residual_tol_scale: self.residual_tol_scale,
            fd_tol_scale: FD_TOL_SCALE,
            hull_tol: self.hull_tol,
            seed: self.seed,
            t_max: self.t_max,
            cache_cells: self.cache_cells,
            fd_step: self.fd_step,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub n: usize,
    #[serde(rename = "N")]
    pub target_dim: usize,
    pub grid_points: usize,
    pub safety: f64,
    pub residual_tol_scale: f64,
    pub fd_tol_scale: f64,
    pub hull_tol: f64,
    pub seed: u64,
    pub t_max: f64,
    pub cache_cells: usize,
    pub fd_step: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpeedBoundSection {
    #[serde(rename = "M")]
    pub m: f64,
    pub sup_estimate: f64,
    pub safety: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualSection {
    pub operator: String,
    pub source: String,
    pub domain: String,
    pub samples: usize,
    pub sup: f64,
    pub tol: f64,
    pub pass: bool,
    pub worst_point: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessSection {
    pub sup_interior: Vec<f64>,
    pub max_boundary: Vec<f64>,
    pub inf_interior: Vec<f64>,
    pub min_boundary: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PrincipleSection {
    pub field: String,
    pub domain: String,
    pub sup_interior: f64,
    pub max_boundary: f64,
    pub inf_interior: f64,
    pub min_boundary: f64,
    pub max_violation_margin: f64,
    pub min_violation_margin: f64,
    /// Larger of the two violation margins.
    pub margin: f64,
    pub violates_max: bool,
    pub violates_min: bool,
    pub witnesses: WitnessSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HullSection {
    pub domain: String,
    pub contained: bool,
    pub max_outside_distance: f64,
    pub hull_tol: f64,
    pub hull_vertices: usize,
    pub witness_point: Vec<f64>,
    pub witness_image: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConservationSection {
    pub map: String,
    pub domain: String,
    pub max_dev: f64,
    pub tol: f64,
    pub pass: bool,
    pub worst_point: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertySection {
    pub cases: usize,
    pub max_error: f64,
    pub tol: f64,
    pub pass: bool,
}

/// A violation the scenario must exhibit, compared against its analytic margin.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectationSection {
    pub description: String,
    pub observed_margin: f64,
    pub analytic_margin: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSection {
    pub id: ScenarioId,
    pub schema_version: u32,
    pub config: ConfigEcho,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub speed_bound: Option<SpeedBoundSection>,
    pub residual: BTreeMap<String, ResidualSection>,
    pub principle: BTreeMap<String, PrincipleSection>,
    pub hull: BTreeMap<String, HullSection>,
    pub conservation: BTreeMap<String, ConservationSection>,
    pub properties: BTreeMap<String, PropertySection>,
    pub expected: BTreeMap<String, ExpectationSection>,
    pub overall_pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub elapsed_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub scenario: ScenarioSection,
    /// Wall-clock data; the only non-deterministic part of a report.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timings: Option<Timings>,
}

impl CheckReport {
    pub fn overall_pass(&self) -> bool {
        self.scenario.overall_pass
    }

    pub fn without_timings(mut self) -> Self {
        self.timings = None;
        self
    }

    /// Number of individual checks, one per section entry.
    pub fn check_count(&self) -> usize {
        let s = &self.scenario;
        s.residual.len()
            + s.principle.len()
            + s.hull.len()
            + s.conservation.len()
            + s.properties.len()
            + s.expected.len()
    }
}

fn principle_section(field: &str, d: &DomainSpec<f64>, v: &PrincipleVerdict<f64>) -> PrincipleSection {
    PrincipleSection {
        field: field.to_string(),
        domain: d.label(),
        sup_interior: v.sup_interior,
        max_boundary: v.max_boundary,
        inf_interior: v.inf_interior,
        min_boundary: v.min_boundary,
        max_violation_margin: v.max_violation_margin,
        min_violation_margin: v.min_violation_margin,
        margin: v.margin(),
        violates_max: v.violates_max(),
        violates_min: v.violates_min(),
        witnesses: WitnessSection {
            sup_interior: v.witnesses.sup_interior.clone(),
            max_boundary: v.witnesses.max_boundary.clone(),
            inf_interior: v.witnesses.inf_interior.clone(),
            min_boundary: v.witnesses.min_boundary.clone(),
        },
    }
}

fn hull_section(d: &DomainSpec<f64>, h: &HullVerdict<f64>, tol: f64) -> HullSection {
    HullSection {
        domain: d.label(),
        contained: h.contained,
        max_outside_distance: h.max_outside_distance,
        hull_tol: tol,
        hull_vertices: h.hull_vertices,
        witness_point: h.witness_point.clone(),
        witness_image: h.witness_image.to_vec(),
    }
}

fn property_section(o: &PropertyOutcome) -> PropertySection {
    PropertySection {
        cases: o.cases,
        max_error: o.max_error,
        tol: o.tol,
        pass: o.pass,
    }
}

fn expectation(description: &str, observed: f64, analytic: f64) -> ExpectationSection {
    let threshold = MARGIN_FRACTION * analytic;
    ExpectationSection {
        description: description.to_string(),
        observed_margin: observed,
        analytic_margin: analytic,
        threshold,
        pass: observed >= threshold,
    }
}

/// Scenario builder shared by the four constructions.
struct Builder<'a> {
    cfg: &'a ScenarioConfig,
    section: ScenarioSection,
}

impl<'a> Builder<'a> {
    fn new(cfg: &'a ScenarioConfig) -> Self {
        Self {
            cfg,
            section: ScenarioSection {
                id: cfg.scenario,
                schema_version: SCHEMA_VERSION,
                config: cfg.echo(),
                speed_bound: None,
                residual: BTreeMap::new(),
                principle: BTreeMap::new(),
                hull: BTreeMap::new(),
                conservation: BTreeMap::new(),
                properties: BTreeMap::new(),
                expected: BTreeMap::new(),
                overall_pass: false,
            },
        }
    }

    fn speed_bound(&mut self, m: &SolutionMap<f64>) {
        let b = m.bound();
        self.section.speed_bound = Some(SpeedBoundSection {
            m: b.m,
            sup_estimate: b.sup_estimate,
            safety: b.safety,
        });
    }

    /// Certifies `residual` on both jet paths: analytic against
    /// `tol_scale·M³`, finite differences against `FD_TOL_SCALE·M³`.
    fn residuals(
        &mut self,
        map: &SolutionMap<f64>,
        residual: Residual<'_, f64>,
        d: &DomainSpec<f64>,
    ) -> Result<()> {
        let m3 = map.speed().powi(3);
        let paths = [
            (JetSource::Analytic, self.cfg.residual_tol_scale * m3),
            (JetSource::FiniteDifference { h: self.cfg.fd_step }, FD_TOL_SCALE * m3),
        ];
        for (src, tol) in paths {
            let r: ResidualReport<f64> = residual_certify(map, residual, d, tol, src)?;
            self.section.residual.insert(
                format!("{}_{}", residual.name(), src.name()),
                ResidualSection {
                    operator: residual.name().to_string(),
                    source: src.name().to_string(),
                    domain: d.label(),
                    samples: d.interior.len(),
                    sup: r.sup_residual,
                    tol: r.tol,
                    pass: r.pass,
                    worst_point: r.worst_point,
                },
            );
        }
        Ok(())
    }

    fn conservation(&mut self, map: &SolutionMap<f64>, d: &DomainSpec<f64>) -> Result<()> {
        let m = map.speed();
        let c = conservation_check(map, d, m)?;
        let tol = CONSERVATION_TOL_SCALE * m * m;
        self.section.conservation.insert(
            map.family().name().to_string(),
            ConservationSection {
                map: map.family().name().to_string(),
                domain: d.label(),
                max_dev: c.max_dev,
                tol,
                pass: c.max_dev <= tol,
                worst_point: c.worst_point,
            },
        );
        Ok(())
    }

    fn unit(&self, k: usize) -> Vec<f64> {
        let mut e = vec![0.0; self.cfg.target_dim];
        e[k] = 1.0;
        e
    }

    fn finish(mut self) -> ScenarioSection {
        let s = &self.section;
        let residual_ok = s.residual.values().all(|r| r.pass);
        let expected_ok = s.expected.values().all(|e| e.pass);
        let properties_ok = s.properties.values().all(|p| p.pass);
        self.section.overall_pass = residual_ok && expected_ok && properties_ok;
        self.section
    }
}

/// Two-sided failure over a pair of slabs: one slab must violate only the
/// maximum principle and the other only the minimum principle. Returns the
/// smaller of the two relevant margins, or `None` if the pattern is absent.
fn two_sided_margin(neg: &PrincipleVerdict<f64>, pos: &PrincipleVerdict<f64>) -> Option<f64> {
    let only_max = |v: &PrincipleVerdict<f64>| v.violates_max() && !v.violates_min();
    let only_min = |v: &PrincipleVerdict<f64>| v.violates_min() && !v.violates_max();
    if only_max(neg) && only_min(pos) {
        Some(neg.max_violation_margin.min(pos.min_violation_margin))
    } else if only_min(neg) && only_max(pos) {
        Some(neg.min_violation_margin.min(pos.max_violation_margin))
    } else {
        None
    }
}

fn run_ex1a(b: &mut Builder<'_>) -> Result<()> {
    let cfg = b.cfg;
    let u1 = SolutionMap::u1(cfg.n, cfg.target_dim, &cfg.profile_config())?;
    b.speed_bound(&u1);
    let wide = DomainSpec::slab(-3.0, 3.0, cfg.n, &cfg.sampling(&[0.0, 1.0, -1.0, 2.0, -2.0]))?;
    b.residuals(&u1, Residual::Tangential, &wide)?;
    b.conservation(&u1, &wide)?;

    let neg = DomainSpec::slab(-2.0, 0.0, cfg.n, &cfg.sampling(&[-1.0]))?;
    let pos = DomainSpec::slab(0.0, 2.0, cfg.n, &cfg.sampling(&[1.0]))?;
    let e1 = b.unit(0);
    let e2 = b.unit(1);
    let mut e1_verdicts = Vec::new();
    for d in [&neg, &pos] {
        let v = directional_check(&u1, &e1, d)?;
        b.section.principle.insert(format!("e1/{}", d.label()), principle_section("e1.u", d, &v));
        e1_verdicts.push(v);
        let v = directional_check(&u1, &e2, d)?;
        b.section.principle.insert(format!("e2/{}", d.label()), principle_section("e2.u", d, &v));
    }
    let observed = two_sided_margin(&e1_verdicts[0], &e1_verdicts[1]).unwrap_or(0.0);
    b.section.expected.insert(
        "two_sided_e1".into(),
        expectation(
            "e1.u violates the maximum principle on one slab and the minimum principle on the other",
            observed,
            INV_E,
        ),
    );

    let both = DomainSpec::slab(-2.0, 2.0, cfg.n, &cfg.sampling(&[0.0, 1.0, -1.0]))?;
    let h = hull_check(&u1, &both, cfg.hull_tol)?;
    b.section.hull.insert(both.label(), hull_section(&both, &h, cfg.hull_tol));
    let observed = if h.contained { 0.0 } else { h.max_outside_distance };
    b.section.expected.insert(
        "hull_escape".into(),
        expectation("image leaves the convex hull of the boundary image", observed, INV_E),
    );
    Ok(())
}

fn run_ex1b(b: &mut Builder<'_>) -> Result<()> {
    let cfg = b.cfg;
    let u2 = SolutionMap::u2(cfg.n, cfg.target_dim, &cfg.profile_config())?;
    b.speed_bound(&u2);
    let ann = DomainSpec::annulus(1.0, 3.0, cfg.n, &cfg.sampling(&[2.0]))?;
    b.residuals(&u2, Residual::Tangential, &ann)?;
    b.conservation(&u2, &ann)?;

    let v = directional_check(&u2, &b.unit(0), &ann)?;
    b.section.principle.insert(format!("e1/{}", ann.label()), principle_section("e1.u", &ann, &v));
    b.section.expected.insert(
        "max_principle_e1".into(),
        expectation(
            "e1.u exceeds its boundary maximum",
            v.max_violation_margin,
            INV_E,
        ),
    );

    let h = hull_check(&u2, &ann, cfg.hull_tol)?;
    b.section.hull.insert(ann.label(), hull_section(&ann, &h, cfg.hull_tol));
    let observed = if h.contained { 0.0 } else { h.max_outside_distance };
    b.section.expected.insert(
        "hull_escape".into(),
        expectation("image leaves the convex hull of the boundary image", observed, INV_E),
    );
    Ok(())
}

fn run_ex2(b: &mut Builder<'_>) -> Result<()> {
    let cfg = b.cfg;
    let u3 = SolutionMap::u3(cfg.n, cfg.target_dim, &cfg.profile_config())?;
    b.speed_bound(&u3);
    let wide = DomainSpec::slab(-1.5, 1.5, cfg.n, &cfg.sampling(&[0.0, 1.0, -1.0]))?;
    b.residuals(&u3, Residual::Tangential, &wide)?;
    b.conservation(&u3, &wide)?;

    let slab = DomainSpec::slab(-1.0, 1.0, cfg.n, &cfg.sampling(&[0.0]))?;
    let v = modulus_check(&u3, &slab)?;
    b.section.principle.insert("modulus".into(), principle_section("|u|", &slab, &v));
    b.section.expected.insert(
        "modulus_max_principle".into(),
        expectation("|u| exceeds its boundary maximum", v.max_violation_margin, 1.0 - INV_E),
    );

    for o in polar_suite(&u3, cfg.seed, cfg.polar_points)? {
        b.section.properties.insert(o.name.into(), property_section(&o));
    }
    Ok(())
}

fn run_ex3(b: &mut Builder<'_>) -> Result<()> {
    let cfg = b.cfg;
    let pc = cfg.profile_config();
    let v = SolutionMap::v(cfg.n, &pc)?;
    let forcing = SolutionMap::forcing(cfg.n, &pc)?;
    b.speed_bound(&forcing);
    let wide = DomainSpec::slab(-3.0, 3.0, cfg.n, &cfg.sampling(&[0.0, 1.0, -1.0, 2.0, -2.0]))?;
    b.residuals(&v, Residual::Perturbed(&forcing as &dyn SmoothMap<f64>), &wide)?;

    let neg = DomainSpec::slab(-2.0, 0.0, cfg.n, &cfg.sampling(&[-1.0]))?;
    let pos = DomainSpec::slab(0.0, 2.0, cfg.n, &cfg.sampling(&[1.0]))?;
    let mut verdicts = Vec::new();
    for d in [&neg, &pos] {
        let verdict = directional_check(&v, &[1.0], d)?;
        b.section.principle.insert(format!("v/{}", d.label()), principle_section("v", d, &verdict));
        verdicts.push(verdict);
    }
    let observed = two_sided_margin(&verdicts[0], &verdicts[1]).unwrap_or(0.0);
    b.section.expected.insert(
        "two_sided_v".into(),
        expectation(
            "v violates the maximum principle on one slab and the minimum principle on the other",
            observed,
            INV_E,
        ),
    );
    Ok(())
}

fn run_properties(b: &mut Builder<'_>) -> Result<()> {
    for o in operator_suite(b.cfg.seed, b.cfg.property_cases)? {
        b.section.properties.insert(o.name.into(), property_section(&o));
    }
    Ok(())
}

/// Runs one scenario. The report is a deterministic function of `cfg` apart
/// from its `timings`.
pub fn run_scenario(cfg: &ScenarioConfig) -> Result<CheckReport> {
    if let Some(e) = cfg.validate().into_iter().next() {
        return Err(e);
    }
    let start = Instant::now();
    let mut b = Builder::new(cfg);
    match cfg.scenario {
        ScenarioId::Ex1a => run_ex1a(&mut b)?,
        ScenarioId::Ex1b => run_ex1b(&mut b)?,
        ScenarioId::Ex2 => run_ex2(&mut b)?,
        ScenarioId::Ex3 => run_ex3(&mut b)?,
        ScenarioId::PropertySuite => run_properties(&mut b)?,
    }
    Ok(CheckReport {
        scenario: b.finish(),
        timings: Some(Timings {
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_names() {
        assert_eq!("ex1a".parse::<ScenarioId>().unwrap(), ScenarioId::Ex1a);
        assert_eq!("property-suite".parse::<ScenarioId>().unwrap(), ScenarioId::PropertySuite);
        assert!("EX4".parse::<ScenarioId>().is_err());
    }

    #[test]
    fn validation_names_fields() {
        let mut cfg = ScenarioConfig::new(ScenarioId::Ex2);
        cfg.grid_points = 2000;
        cfg.target_dim = 1;
        cfg.safety = 0.0;
        let fields: Vec<String> = cfg
            .validate()
            .into_iter()
            .map(|e| match e {
                Error::Config { field, .. } => field,
                e => panic!("{e}"),
            })
            .collect();
        assert_eq!(fields, vec!["N", "grid_points", "safety"]);
        let mut ex3 = ScenarioConfig::new(ScenarioId::Ex3);
        ex3.target_dim = 1;
        assert!(ex3.validate().is_empty());
    }

    #[test]
    fn two_sided_pattern() {
        let v = |maxm: f64, minm: f64| PrincipleVerdict {
            sup_interior: 0.0,
            max_boundary: 0.0,
            inf_interior: 0.0,
            min_boundary: 0.0,
            max_violation_margin: maxm,
            min_violation_margin: minm,
            witnesses: crate::checkers::PrincipleWitnesses {
                sup_interior: vec![],
                max_boundary: vec![],
                inf_interior: vec![],
                min_boundary: vec![],
            },
        };
        assert_eq!(two_sided_margin(&v(0.3, -1.0), &v(-1.0, 0.2)), Some(0.2));
        assert_eq!(two_sided_margin(&v(-1.0, 0.2), &v(0.3, -1.0)), Some(0.2));
        assert_eq!(two_sided_margin(&v(0.3, -1.0), &v(0.3, -1.0)), None);
        assert_eq!(two_sided_margin(&v(0.3, 0.1), &v(-1.0, 0.2)), None);
    }
}
