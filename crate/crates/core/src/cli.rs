//! Scenario files, subcommands and output writers behind the `wfscope` binary.
//!
//! A scenario is a TOML document (or the `run_meta.json` of an earlier run).
//! Every subcommand writes its tables into the output directory plus a
//! `run_meta.json` that echoes the effective configuration.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::detector::{
    candidate_grid, decay_profile_of, propagated_wf_scan, static_wf_scan, DetectionConfig,
    ScanResult, Verdict,
};
use crate::error::WfError;
use crate::hamflow::{default_steps, growth_exponent, integrate_flow, PhasePoint, PotentialSpec};
use crate::propagator::PropagatorConfig;
use crate::signal::{sample, SignalSpec};
use crate::window::{scaled_window, WindowBase, WindowSpec};
use crate::wpt::{wpt_grid, FieldRef, DEFAULT_EPS_TAIL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INDETERMINATE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DIVERGENCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "wfscope",
    version,
    about = "Wave front set detection for Schrödinger flows"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Scenario file (TOML, or a previous run_meta.json).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory; overrides `output_dir` from the scenario.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the detector.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Drop λ schedule entries above this value.
    #[arg(long, global = true)]
    pub lambda_max: Option<f64>,
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Transform table of the sampled signal (wpt.csv).
    Wpt,
    /// Static scan of the initial data (verdict.csv, profile.csv).
    Detect,
    /// Scan of the solution at t0 through the backward flow.
    PropagateDetect,
    /// Bicharacteristic of the probe and optional growth fit.
    Flow,
    /// Solution at t0 on the propagator grid (field.csv).
    Evolve,
    /// Threshold audit on the smooth and jump fixtures.
    Calibrate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Wpt => "wpt",
            Command::Detect => "detect",
            Command::PropagateDetect => "propagate-detect",
            Command::Flow => "flow",
            Command::Evolve => "evolve",
            Command::Calibrate => "calibrate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowKind {
    Gaussian,
    Hermite1,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowConfig {
    pub base: WindowKind,
    /// `[re, im]` of the Gaussian width parameter.
    #[serde(default = "unit_a0")]
    pub a0: [f64; 2],
    /// Defaults to `detection.b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
}

fn unit_a0() -> [f64; 2] {
    [1.0, 0.0]
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CandidateGridConfig {
    #[serde(default)]
    pub xs: Vec<f64>,
    #[serde(default)]
    pub xis: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WptConfig {
    pub lambda: f64,
    /// Every `x_stride`-th grid node whose window fits inside the grid.
    pub x_stride: usize,
    /// Rows with `|ξ|` above this are not written.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi_max: Option<f64>,
}

impl Default for WptConfig {
    fn default() -> Self {
        Self {
            lambda: 1.0,
            x_stride: 64,
            xi_max: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FlowConfig {
    pub probe: PhasePoint,
    pub lambda: f64,
    /// RK4 steps; defaults to the resolution used by the detector.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    /// Schedule for the growth fit of `|x(0; π, x, λξ)|`; empty skips it.
    pub growth_lambdas: Vec<f64>,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            probe: PhasePoint::new(0.0, 1.0),
            lambda: 1.0,
            steps: None,
            growth_lambdas: Vec::new(),
        }
    }
}

fn zero_potential() -> PotentialSpec {
    PotentialSpec::Zero
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub signal: SignalSpec,
    #[serde(default = "zero_potential")]
    pub potential: PotentialSpec,
    pub window: WindowConfig,
    pub detection: DetectionConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0: Option<f64>,
    /// `t0` in units of π; exclusive with `t0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t0_pi: Option<f64>,
    #[serde(default)]
    pub candidate_grid: CandidateGridConfig,
    #[serde(default)]
    pub propagator: PropagatorConfig,
    #[serde(default)]
    pub wpt: WptConfig,
    #[serde(default)]
    pub flow: FlowConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
}

/// A failure mapped to a process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    fn at(path: &str, e: WfError) -> Self {
        let mut err = Self::from(e);
        err.message = format!("{path}: {}", err.message);
        err
    }
}

fn numeric_code(e: &WfError) -> i32 {
    match e {
        WfError::Divergence { .. }
        | WfError::NonFinite { .. }
        | WfError::BranchTracking { .. }
        | WfError::DomainTooSmall { .. } => EXIT_DIVERGENCE,
        _ => EXIT_CONFIG,
    }
}

impl From<WfError> for CliError {
    fn from(e: WfError) -> Self {
        Self {
            code: numeric_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::config(format!("i/o error: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::config(format!("invalid scenario: {e}")))
    }

    /// Accepts either a bare config object or a `run_meta.json` document.
    pub fn from_json(text: &str) -> CliResult<Self> {
        let mut value: serde_json::Value = serde_json::from_str(text)
            .map_err(|e| CliError::config(format!("invalid json scenario: {e}")))?;
        if let Some(inner) = value.get_mut("config") {
            value = inner.take();
        }
        serde_json::from_value(value)
            .map_err(|e| CliError::config(format!("invalid json scenario: {e}")))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
        if path.extension().is_some_and(|e| e == "json") {
            Self::from_json(&text)
        } else {
            Self::from_toml(&text)
        }
    }

    pub fn t0(&self) -> f64 {
        match (self.t0, self.t0_pi) {
            (Some(t), _) => t,
            (None, Some(k)) => k * PI,
            (None, None) => 0.0,
        }
    }

    pub fn window_spec(&self) -> WindowSpec {
        let b = self.window.b.unwrap_or(self.detection.b);
        match self.window.base {
            WindowKind::Gaussian => WindowSpec {
                base: WindowBase::Gaussian {
                    a0: Complex64::new(self.window.a0[0], self.window.a0[1]),
                },
                b,
            },
            WindowKind::Hermite1 => WindowSpec::hermite1(b),
        }
    }

    pub fn candidates(&self) -> Vec<PhasePoint> {
        candidate_grid(&self.candidate_grid.xs, &self.candidate_grid.xis)
    }

    /// Checks every section, reporting the offending field path.
    pub fn validate(&self) -> CliResult<()> {
        self.signal
            .validate()
            .map_err(|e| CliError::at("signal", e))?;
        let pot = self
            .potential
            .build()
            .map_err(|e| CliError::at("potential", e))?;
        if self.window.b.is_some_and(|b| b != self.detection.b) {
            return Err(CliError::config(format!(
                "window.b ({}) must equal detection.b ({})",
                self.window.b.unwrap_or_default(),
                self.detection.b
            )));
        }
        self.window_spec()
            .validate()
            .map_err(|e| CliError::at("window", e))?;
        self.detection
            .validate_for_rho(pot.rho())
            .map_err(|e| CliError::at("detection", e))?;
        if self.t0.is_some() && self.t0_pi.is_some() {
            return Err(CliError::config("set at most one of t0 and t0_pi"));
        }
        if !self.t0().is_finite() {
            return Err(CliError::config("t0 must be finite"));
        }
        if self
            .candidate_grid
            .xs
            .iter()
            .chain(&self.candidate_grid.xis)
            .any(|v| !v.is_finite())
        {
            return Err(CliError::config("candidate_grid: entries must be finite"));
        }
        self.propagator
            .validate()
            .map_err(|e| CliError::at("propagator", e))?;
        if !(self.wpt.lambda >= 1.0) || self.wpt.x_stride == 0 {
            return Err(CliError::config(
                "wpt: lambda must be >= 1 and x_stride positive",
            ));
        }
        if !(self.flow.lambda >= 1.0) || self.flow.steps == Some(0) {
            return Err(CliError::config(
                "flow: lambda must be >= 1 and steps positive",
            ));
        }
        Ok(())
    }
}

/// Writes `contents` to `dir/name` through a temporary file and a rename.
pub fn write_atomic(dir: &Path, name: &str, contents: &[u8]) -> CliResult<PathBuf> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.as_file().sync_all()?;
    let target = dir.join(name);
    tmp.persist(&target).map_err(|e| CliError::from(e.error))?;
    Ok(target)
}

fn verdict_csv(scan: &ScanResult) -> String {
    let mut s = String::from(
        "x0,xi0,verdict,fitted_order,residual,n_lambdas,sup_at_min_lambda,sup_at_max_lambda\n",
    );
    for v in &scan.verdicts {
        let p = &v.profile;
        let _ = writeln!(
            s,
            "{:?},{:?},{},{:?},{:?},{},{:?},{:?}",
            v.point.x,
            v.point.xi,
            v.verdict.as_str(),
            p.fitted_order,
            p.fit_residual,
            p.lambdas.len(),
            p.sup_values[0],
            p.sup_values[p.sup_values.len() - 1]
        );
    }
    s
}

fn profile_csv(scan: &ScanResult) -> String {
    let mut s = String::from("x0,xi0,lambda,sup_value\n");
    for v in &scan.verdicts {
        for (l, sup) in v.profile.lambdas.iter().zip(&v.profile.sup_values) {
            let _ = writeln!(s, "{:?},{:?},{:?},{:?}", v.point.x, v.point.xi, l, sup);
        }
    }
    s
}

/// Result of one subcommand before `run_meta.json` is written.
struct Report {
    outputs: Vec<PathBuf>,
    extra: serde_json::Value,
    code: i32,
}

struct Context<'a> {
    cfg: &'a ScenarioConfig,
    dir: &'a Path,
    verbose: bool,
}

impl Context<'_> {
    fn log(&self, msg: impl AsRef<str>) {
        if self.verbose {
            eprintln!("wfscope: {}", msg.as_ref());
        }
    }

    fn write(&self, out: &mut Vec<PathBuf>, name: &str, contents: &[u8]) -> CliResult<()> {
        out.push(write_atomic(self.dir, name, contents)?);
        self.log(format!("wrote {name}"));
        Ok(())
    }
}

fn cmd_wpt(ctx: &Context) -> CliResult<Report> {
    let cfg = ctx.cfg;
    let grid = cfg.propagator.grid;
    let f = sample(&cfg.signal, &grid)?;
    let w = scaled_window(&cfg.window_spec(), cfg.wpt.lambda)?;
    let radius = w.effective_radius(DEFAULT_EPS_TAIL);
    let x_grid: Vec<f64> = (0..grid.len())
        .step_by(cfg.wpt.x_stride)
        .map(|i| grid.x(i))
        .filter(|&x| grid.covers(x - radius, x + radius))
        .collect();
    if x_grid.is_empty() {
        return Err(CliError::config(
            "wpt: no grid node leaves room for the window; widen propagator.grid",
        ));
    }
    ctx.log(format!("transform at {} positions", x_grid.len()));
    let table = wpt_grid(&f, &w, &x_grid)?;
    let xi_max = cfg.wpt.xi_max.unwrap_or(f64::INFINITY);
    let mut s = String::from("x,xi,re,im\n");
    for (ix, x) in table.x_grid().iter().enumerate() {
        for (ixi, xi) in table.xi_grid().iter().enumerate() {
            if xi.abs() <= xi_max {
                let v = table.get(ix, ixi);
                let _ = writeln!(s, "{x:?},{xi:?},{:?},{:?}", v.re, v.im);
            }
        }
    }
    let mut outputs = Vec::new();
    ctx.write(&mut outputs, "wpt.csv", s.as_bytes())?;
    Ok(Report {
        outputs,
        extra: json!({ "positions": x_grid.len() }),
        code: EXIT_OK,
    })
}

fn scan_report(ctx: &Context, scan: ScanResult) -> CliResult<Report> {
    let mut outputs = Vec::new();
    ctx.write(&mut outputs, "verdict.csv", verdict_csv(&scan).as_bytes())?;
    ctx.write(&mut outputs, "profile.csv", profile_csv(&scan).as_bytes())?;
    let mut code = EXIT_OK;
    let failures: Vec<_> = scan
        .failures
        .iter()
        .map(|f| {
            eprintln!(
                "wfscope: candidate ({}, {}) failed: {}",
                f.point.x, f.point.xi, f.error
            );
            code = code.max(numeric_code(&f.error));
            json!({ "index": f.index, "x0": f.point.x, "xi0": f.point.xi, "error": f.error.to_string() })
        })
        .collect();
    let count = |v: Verdict| scan.with_verdict(v).len();
    if code == EXIT_OK
        && !scan.verdicts.is_empty()
        && count(Verdict::Indeterminate) == scan.verdicts.len()
    {
        eprintln!("wfscope: warning: every verdict is indeterminate");
        code = EXIT_INDETERMINATE;
    }
    ctx.log(format!(
        "{} singular, {} smooth, {} indeterminate, {} failed",
        count(Verdict::Singular),
        count(Verdict::Smooth),
        count(Verdict::Indeterminate),
        failures.len()
    ));
    Ok(Report {
        outputs,
        extra: json!({
            "counts": {
                "singular": count(Verdict::Singular),
                "smooth": count(Verdict::Smooth),
                "indeterminate": count(Verdict::Indeterminate),
            },
            "failures": failures,
        }),
        code,
    })
}

fn nonempty_candidates(cfg: &ScenarioConfig) -> CliResult<Vec<PhasePoint>> {
    let c = cfg.candidates();
    if c.is_empty() {
        Err(CliError::config(
            "candidate_grid: xs and xis must both be non-empty",
        ))
    } else {
        Ok(c)
    }
}

fn cmd_detect(ctx: &Context) -> CliResult<Report> {
    let cfg = ctx.cfg;
    let candidates = nonempty_candidates(cfg)?;
    ctx.log(format!("static scan of {} candidates", candidates.len()));
    let scan = static_wf_scan(
        FieldRef::Analytic(&cfg.signal),
        &cfg.window_spec(),
        &candidates,
        &cfg.detection,
    )?;
    scan_report(ctx, scan)
}

fn cmd_propagate_detect(ctx: &Context) -> CliResult<Report> {
    let cfg = ctx.cfg;
    let candidates = nonempty_candidates(cfg)?;
    let pot = cfg.potential.build()?;
    ctx.log(format!(
        "propagated scan of {} candidates at t0 = {}",
        candidates.len(),
        cfg.t0()
    ));
    let scan = propagated_wf_scan(
        FieldRef::Analytic(&cfg.signal),
        cfg.t0(),
        &pot,
        &cfg.window_spec(),
        &candidates,
        &cfg.detection,
    )?;
    scan_report(ctx, scan)
}

fn cmd_flow(ctx: &Context) -> CliResult<Report> {
    let cfg = ctx.cfg;
    let pot = cfg.potential.build()?;
    let t0 = cfg.t0();
    let fc = &cfg.flow;
    let steps = fc.steps.unwrap_or_else(|| default_steps(t0));
    let start = PhasePoint::new(fc.probe.x, fc.lambda * fc.probe.xi);
    let traj = integrate_flow(&pot, t0, start, 0.0, steps)?;
    let mut s = String::from("s,x,xi\n");
    for (t, p) in traj.times.iter().zip(&traj.states) {
        let _ = writeln!(s, "{t:?},{:?},{:?}", p.x, p.xi);
    }
    let mut outputs = Vec::new();
    ctx.write(&mut outputs, "trajectory.csv", s.as_bytes())?;
    let end = traj.last();
    let mut extra = json!({ "endpoint": { "x": end.x, "xi": end.xi } });
    if !fc.growth_lambdas.is_empty() {
        let growth_steps = fc.steps.unwrap_or_else(|| default_steps(PI));
        let (slope, residual) = growth_exponent(
            &pot,
            fc.probe.x,
            fc.probe.xi,
            &fc.growth_lambdas,
            growth_steps,
        )?;
        ctx.log(format!("growth slope {slope:.4}"));
        let growth = json!({
            "rho": pot.rho(),
            "probe": fc.probe,
            "lambdas": fc.growth_lambdas,
            "steps": growth_steps,
            "slope": slope,
            "expected_slope": pot.rho() - 1.0,
            "residual": residual,
        });
        let text = serde_json::to_string_pretty(&growth).expect("growth report serializes");
        ctx.write(&mut outputs, "growth.json", text.as_bytes())?;
        extra["growth_slope"] = json!(slope);
    }
    Ok(Report {
        outputs,
        extra,
        code: EXIT_OK,
    })
}

fn cmd_evolve(ctx: &Context) -> CliResult<Report> {
    let cfg = ctx.cfg;
    let pot = cfg.potential.build()?;
    let u0 = sample(&cfg.signal, &cfg.propagator.grid)?;
    ctx.log(format!("evolving to t = {}", cfg.t0()));
    let u = cfg.propagator.evolve(&u0, &pot, 0.0, cfg.t0())?;
    let grid = u.grid();
    let mut s = String::from("x,re,im,abs\n");
    for (i, v) in u.values().iter().enumerate() {
        let _ = writeln!(s, "{:?},{:?},{:?},{:?}", grid.x(i), v.re, v.im, v.norm());
    }
    let mut outputs = Vec::new();
    ctx.write(&mut outputs, "field.csv", s.as_bytes())?;
    Ok(Report {
        outputs,
        extra: json!({ "boundary_fraction": u.boundary_fraction() }),
        code: EXIT_OK,
    })
}

fn cmd_calibrate(ctx: &Context) -> CliResult<Report> {
    let cfg = ctx.cfg;
    let wspec = cfg.window_spec();
    let fixtures = [
        (
            "gaussian",
            SignalSpec::Gaussian {
                center: 0.0,
                width: 1.0,
            },
            PhasePoint::new(0.0, 1.0),
            Verdict::Smooth,
        ),
        (
            "heaviside_at_jump",
            SignalSpec::HeavisideGaussian {
                jump_point: 0.0,
                width: 1.0,
            },
            PhasePoint::new(0.0, 1.0),
            Verdict::Singular,
        ),
        (
            "heaviside_off_jump",
            SignalSpec::HeavisideGaussian {
                jump_point: 0.0,
                width: 1.0,
            },
            PhasePoint::new(2.0, 1.0),
            Verdict::Smooth,
        ),
    ];
    let mut rows = Vec::new();
    let mut all_pass = true;
    for (name, signal, p, expected) in fixtures {
        let profile = decay_profile_of(&signal, &wspec, p, &cfg.detection)?;
        let verdict = crate::detector::classify(profile.fitted_order, &cfg.detection);
        all_pass &= verdict == expected;
        ctx.log(format!("{name}: order {:.3}", profile.fitted_order));
        rows.push(json!({
            "fixture": name,
            "signal": signal,
            "point": p,
            "expected": expected,
            "verdict": verdict,
            "fitted_order": profile.fitted_order,
            "residual": profile.fit_residual,
            "lambdas": profile.lambdas,
            "sup_values": profile.sup_values,
        }));
    }
    let doc = json!({
        "b": cfg.detection.b,
        "predicted_jump_order": 1.0 - cfg.detection.b / 2.0,
        "order_singular_max": cfg.detection.order_singular_max,
        "order_smooth_min": cfg.detection.order_smooth_min,
        "fixtures": rows,
        "all_pass": all_pass,
    });
    let text = serde_json::to_string_pretty(&doc).expect("calibration serializes");
    let mut outputs = Vec::new();
    ctx.write(&mut outputs, "calibration.json", text.as_bytes())?;
    if !all_pass {
        eprintln!("wfscope: warning: thresholds misclassify a calibration fixture");
    }
    Ok(Report {
        outputs,
        extra: json!({ "all_pass": all_pass }),
        code: if all_pass {
            EXIT_OK
        } else {
            EXIT_INDETERMINATE
        },
    })
}

/// Loads the scenario, applies command-line overrides and checks the output
/// directory.
pub fn prepare(cli: &Cli) -> CliResult<(ScenarioConfig, PathBuf)> {
    let path = cli
        .config
        .as_deref()
        .ok_or_else(|| CliError::config("missing --config <path>"))?;
    let mut cfg = ScenarioConfig::load(path)?;
    if let Some(l) = cli.lambda_max {
        if !(l >= 1.0) {
            return Err(CliError::config(format!(
                "--lambda-max must be >= 1, got {l}"
            )));
        }
        cfg.detection = cfg.detection.with_lambda_max(l);
    }
    if let Some(out) = &cli.out {
        cfg.output_dir = Some(out.clone());
    }
    cfg.validate()?;
    let dir = cfg
        .output_dir
        .clone()
        .ok_or_else(|| CliError::config("missing output dir: set output_dir or pass --out"))?;
    if !dir.is_dir() {
        return Err(CliError::config(format!(
            "missing output dir: {} does not exist",
            dir.display()
        )));
    }
    Ok((cfg, dir))
}

fn execute(cli: &Cli) -> CliResult<i32> {
    let started = Instant::now();
    let (cfg, dir) = prepare(cli)?;
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::config(format!("--threads: {e}")))?;
    }
    let ctx = Context {
        cfg: &cfg,
        dir: &dir,
        verbose: cli.verbose,
    };
    let report = match cli.command {
        Command::Wpt => cmd_wpt(&ctx),
        Command::Detect => cmd_detect(&ctx),
        Command::PropagateDetect => cmd_propagate_detect(&ctx),
        Command::Flow => cmd_flow(&ctx),
        Command::Evolve => cmd_evolve(&ctx),
        Command::Calibrate => cmd_calibrate(&ctx),
    }?;
    let mut outputs: Vec<String> = report
        .outputs
        .iter()
        .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
        .collect();
    outputs.push("run_meta.json".into());
    let meta = json!({
        "command": cli.command.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "wall_time_s": started.elapsed().as_secs_f64(),
        "threads": rayon::current_num_threads(),
        "thresholds": {
            "order_singular_max": cfg.detection.order_singular_max,
            "order_smooth_min": cfg.detection.order_smooth_min,
        },
        "outputs": outputs,
        "result": report.extra,
        "exit_code": report.code,
        "config": cfg,
    });
    let text = serde_json::to_string_pretty(&meta).expect("run metadata serializes");
    write_atomic(&dir, "run_meta.json", text.as_bytes())?;
    Ok(report.code)
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("wfscope: error: {}", e.message);
            e.code
        }
    }
}
