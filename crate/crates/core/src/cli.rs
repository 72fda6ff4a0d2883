//! The `fluxsat` command line: JSON configs in, CSV and JSON artifacts out.
//!
//! Exit codes: 0 success, 2 configuration error, 3 solver failure,
//! 4 certification failure.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{lower_bound_t_ell, scaling_study, upper_bound_t_u, EdgeTemplate};
use crate::error::{config, Error, Result};
use crate::model::ModelKind;
use crate::solver::{
    init_state, measure_waiting_time, Datum, Observer, RadialGrid, Snapshots, Solver, Trace,
    WaitingTimeSetup, DEFAULT_CFL, DEFAULT_RELATIVE_THRESHOLD,
};
use crate::subsolutions::{synthesize_m_params, synthesize_rel_params, MSubParams, RelSubParams};
use crate::verify::{certify_m, certify_rel, CertificationReport, CertifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_CERTIFICATION: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "fluxsat", version, about = "Subsolutions, waiting-time bounds and radial simulation for flux-saturated porous medium equations")]
pub struct Cli {
    /// Output directory (overrides the config's output.dir).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Maximum number of concurrent runs.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Speed-limited family.
    M,
    /// Relativistic family.
    Rel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Rel,
    Slpm,
}

#[derive(Debug, clap::Args)]
pub struct AutoArgs {
    /// Synthesize parameters from (L, R, N, exponent) instead of reading a file.
    #[arg(long, conflicts_with = "params", requires_all = ["l", "r", "n", "exponent"])]
    pub auto: bool,
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long = "L", alias = "l", id = "l")]
    pub l: Option<f64>,
    #[arg(long = "R", alias = "r", id = "r")]
    pub r: Option<f64>,
    #[arg(long = "N", alias = "n", id = "n")]
    pub n: Option<usize>,
    #[arg(long)]
    pub exponent: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the solver from a config and write trace and snapshot CSVs.
    Simulate { config: PathBuf },
    /// Certify subsolution parameters and write a JSON report.
    Verify {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        source: AutoArgs,
    },
    /// Measure waiting times for a list of growth coefficients.
    WaitingTime { config: PathBuf },
    /// Print the analytic waiting-time bounds.
    Bounds {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        exponent: f64,
        #[arg(long = "N", alias = "n", default_value_t = 1)]
        n: usize,
        #[arg(long = "L", alias = "l")]
        l: f64,
        /// Lower-bound constant C; the lower bound is omitted without it.
        #[arg(long = "C", alias = "c")]
        c: Option<f64>,
    },
    /// Emit a radial profile of a subsolution family as CSV.
    Subsolution {
        #[arg(long, value_enum)]
        family: Family,
        #[command(flatten)]
        source: AutoArgs,
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        /// Number of radial sample points.
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub r_max: f64,
    pub cells: usize,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateRun {
    pub t_end: f64,
    #[serde(default = "default_cfl")]
    pub cfl: f64,
    /// Trace cadence in time units; every step when zero.
    #[serde(default)]
    pub trace_interval: f64,
    #[serde(default)]
    pub snapshot_times: Vec<f64>,
    /// Radius whose cell value is traced as `u_at_x0`.
    #[serde(default)]
    pub x0: f64,
    /// Absolute support threshold; `1e-8 × max u0` by default.
    #[serde(default)]
    pub threshold: Option<f64>,
}

fn default_cfl() -> f64 {
    DEFAULT_CFL
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub model: ModelKind,
    pub grid: GridConfig,
    pub datum: Datum,
    pub run: SimulateRun,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaitingTimeRun {
    pub t_max: f64,
    /// Observation point distance beyond the datum's support edge.
    pub x0_offset: f64,
    #[serde(default)]
    pub threshold: Option<f64>,
    /// Lower-bound constant `C`, if known.
    #[serde(default)]
    pub c_lower: Option<f64>,
    pub l_values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaitingTimeConfig {
    pub model: ModelKind,
    pub grid: GridConfig,
    /// Edge datum template; its coefficient is each `L` in turn.
    pub datum: EdgeTemplate,
    pub run: WaitingTimeRun,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Parses `args` and runs the command; returns the exit code.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_)
        | Error::Json(_)
        | Error::Domain(_)
        | Error::Synthesis(_)
        | Error::LifetimeExceeded { .. }
        | Error::HorizonExceeded { .. } => EXIT_CONFIG,
        Error::StepRejected { .. } | Error::Io(_) => EXIT_SOLVER,
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Simulate { config } => cmd_simulate(config, cli.out.as_deref()),
        Command::Verify { family, source } => cmd_verify(*family, source, cli.out.as_deref(), cli.seed),
        Command::WaitingTime { config } => cmd_waiting_time(config, cli.out.as_deref(), cli.jobs),
        Command::Bounds { kind, exponent, n, l, c } => {
            cmd_bounds(*kind, *exponent, *n, *l, *c, cli.out.as_deref())
        }
        Command::Subsolution {
            family,
            source,
            t,
            points,
        } => cmd_subsolution(*family, source, *t, *points, cli.out.as_deref()),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| config(format!("{}: {e}", path.display())))
}

fn out_dir(flag: Option<&Path>, cfg: &OutputConfig) -> Result<PathBuf> {
    let dir = flag
        .map(Path::to_path_buf)
        .or_else(|| cfg.dir.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    fs::create_dir_all(&dir)?;
    Ok(dir)
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct SimulateSummary {
    t_end: f64,
    steps: u64,
    mass_initial: f64,
    mass_final: f64,
    support_initial: f64,
    support_final: f64,
    threshold: f64,
    snapshots: Vec<SnapshotEntry>,
}

#[derive(Debug, Serialize)]
struct SnapshotEntry {
    t: f64,
    file: String,
}

pub fn cmd_simulate(path: &Path, out_flag: Option<&Path>) -> Result<i32> {
    let cfg: SimulateConfig = read_json(path)?;
    if !(cfg.run.t_end >= 0.0) || !cfg.run.t_end.is_finite() {
        return Err(config(format!("run.t_end must be nonnegative, got {}", cfg.run.t_end)));
    }
    if cfg.run.trace_interval < 0.0 {
        return Err(config("run.trace_interval must be nonnegative"));
    }
    if cfg.run.snapshot_times.iter().any(|t| !(*t >= 0.0)) {
        return Err(config("snapshot times must be nonnegative"));
    }
    let grid = Arc::new(RadialGrid::new(cfg.model.dimension, cfg.grid.r_max, cfg.grid.cells)?);
    let state = init_state(grid.clone(), &cfg.datum)?;
    let dir = out_dir(out_flag, &cfg.output)?;
    let threshold = cfg
        .run
        .threshold
        .unwrap_or(DEFAULT_RELATIVE_THRESHOLD * state.max_value());
    let mass_initial = state.mass();
    let support_initial = state.support_radius(threshold);
    let mut trace = Trace::new(cfg.run.trace_interval, threshold, grid.cell_of(cfg.run.x0));
    let mut snaps = Snapshots::at(
        cfg.run
            .snapshot_times
            .iter()
            .copied()
            .filter(|t| *t <= cfg.run.t_end)
            .collect(),
    );
    let mut solver = Solver::new(cfg.model, state)?.with_cfl(cfg.run.cfl)?;
    let summary = solver.run(cfg.run.t_end, &mut [&mut trace, &mut snaps as &mut dyn Observer])?;
    // always close the trace at the final time
    if trace.rows.last().map(|r| r.t) != Some(solver.state().t) {
        let mut final_row = Trace::new(0.0, threshold, trace.x0_cell);
        final_row.observe(solver.state());
        trace.rows.extend(final_row.rows);
    }

    let mut w = create(&dir.join("trace.csv"))?;
    trace.write_csv(&mut w)?;
    w.flush()?;
    let mut entries = Vec::new();
    for (k, s) in snaps.states.iter().enumerate() {
        let file = format!("snapshot_{k:04}.csv");
        let mut w = create(&dir.join(&file))?;
        s.write_snapshot_csv(&mut w)?;
        w.flush()?;
        entries.push(SnapshotEntry { t: s.t, file });
    }
    let fin = solver.state();
    write_json(
        &dir.join("summary.json"),
        &SimulateSummary {
            t_end: fin.t,
            steps: summary.steps,
            mass_initial,
            mass_final: fin.mass(),
            support_initial,
            support_final: fin.support_radius(threshold),
            threshold,
            snapshots: entries,
        },
    )?;
    Ok(EXIT_OK)
}

enum Params {
    M(MSubParams),
    Rel(RelSubParams),
}

fn load_params(family: Family, src: &AutoArgs) -> Result<Params> {
    if src.auto {
        let (l, r, n, e) = match (src.l, src.r, src.n, src.exponent) {
            (Some(l), Some(r), Some(n), Some(e)) => (l, r, n, e),
            _ => return Err(config("--auto needs --L, --R, --N and --exponent")),
        };
        return Ok(match family {
            Family::M => Params::M(synthesize_m_params(l, r, n, e)?.params),
            Family::Rel => Params::Rel(synthesize_rel_params(l, r, n, e)?.params),
        });
    }
    let path = src
        .params
        .as_deref()
        .ok_or_else(|| config("give either --auto or --params FILE"))?;
    Ok(match family {
        Family::M => Params::M(read_json(path)?),
        Family::Rel => Params::Rel(read_json(path)?),
    })
}

pub fn cmd_verify(family: Family, src: &AutoArgs, out_flag: Option<&Path>, seed: u64) -> Result<i32> {
    let params = load_params(family, src)?;
    let opts = CertifyOptions {
        seed,
        ..CertifyOptions::default()
    };
    let report: CertificationReport = match &params {
        Params::M(p) => certify_m(p, &opts),
        Params::Rel(p) => certify_rel(p, &opts),
    };
    let dir = out_dir(out_flag, &OutputConfig::default())?;
    write_json(&dir.join(format!("certification_{}.json", report.family)), &report)?;
    println!(
        "{} family: {} (max residual {:.3e}, min slack {:.3e})",
        report.family,
        if report.pass { "PASS" } else { "FAIL" },
        report.max_residual,
        report.min_slack
    );
    Ok(if report.pass { EXIT_OK } else { EXIT_CERTIFICATION })
}

pub fn cmd_waiting_time(path: &Path, out_flag: Option<&Path>, jobs: usize) -> Result<i32> {
    let cfg: WaitingTimeConfig = read_json(path)?;
    if cfg.run.l_values.is_empty() {
        return Err(config("run.l_values must not be empty"));
    }
    if cfg.run.l_values.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
        return Err(config("run.l_values must be positive"));
    }
    if !(cfg.datum.edge > 0.0) {
        return Err(config("datum.edge must be positive"));
    }
    let dir = out_dir(out_flag, &cfg.output)?;
    let setup = WaitingTimeSetup {
        x0_offset: cfg.run.x0_offset,
        threshold: cfg.run.threshold,
        t_max: cfg.run.t_max,
        r_max: cfg.grid.r_max,
        cells: cfg.grid.cells,
        l: None,
        c_lower: cfg.run.c_lower,
    };
    let study = if cfg.run.l_values.len() >= 3 {
        scaling_study(&cfg.model, &cfg.run.l_values, &cfg.datum, &setup, jobs)?
    } else {
        let reports = cfg
            .run
            .l_values
            .iter()
            .map(|&l| {
                let mut s = setup.clone();
                s.l = Some(l);
                measure_waiting_time(&cfg.model, &cfg.datum.datum(l, &cfg.model), &s)
            })
            .collect::<Result<Vec<_>>>()?;
        let within_upper_bound = reports
            .iter()
            .filter(|r| r.reached)
            .all(|r| r.t_star_measured <= 1.1 * r.t_upper);
        crate::bounds::ScalingStudy {
            fit: None,
            reports,
            within_upper_bound,
        }
    };
    for (k, r) in study.reports.iter().enumerate() {
        write_json(&dir.join(format!("waiting_time_{k:02}.json")), r)?;
    }
    let mut w = create(&dir.join("scaling.csv"))?;
    study.write_csv(&mut w)?;
    w.flush()?;
    write_json(&dir.join("scaling_summary.json"), &study.summary_json())?;
    for r in &study.reports {
        println!(
            "L = {}: t* = {:.6e} ({}), T_u = {:.6e}",
            r.l_used,
            r.t_star_measured,
            if r.reached { "reached" } else { "inconclusive" },
            r.t_upper
        );
    }
    if let Some(f) = &study.fit {
        println!("slope = {:.6}", f.slope);
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Serialize)]
struct BoundsOutput {
    kind: &'static str,
    exponent: f64,
    dimension: usize,
    l: f64,
    w: f64,
    t_upper: f64,
    t_lower: Option<f64>,
}

pub fn cmd_bounds(kind: Kind, exponent: f64, n: usize, l: f64, c: Option<f64>, out_flag: Option<&Path>) -> Result<i32> {
    let model = match kind {
        Kind::Rel => ModelKind::relativistic(exponent, n)?,
        Kind::Slpm => ModelKind::speed_limited(exponent, n)?,
    };
    let (t_upper, w) = upper_bound_t_u(l, &model)?;
    let t_lower = match c {
        Some(_) => Some(lower_bound_t_ell(l, c, &model)?),
        None => None,
    };
    let out = BoundsOutput {
        kind: match kind {
            Kind::Rel => "rel",
            Kind::Slpm => "slpm",
        },
        exponent,
        dimension: n,
        l,
        w,
        t_upper,
        t_lower,
    };
    println!("{}", serde_json::to_string_pretty(&out)?);
    if let Some(dir) = out_flag {
        fs::create_dir_all(dir)?;
        write_json(&dir.join("bounds.json"), &out)?;
    }
    Ok(EXIT_OK)
}

type RadialEval = Box<dyn Fn(f64) -> Result<f64>>;

pub fn cmd_subsolution(family: Family, src: &AutoArgs, t: f64, points: usize, out_flag: Option<&Path>) -> Result<i32> {
    if points < 2 {
        return Err(config("--points must be at least 2"));
    }
    let params = load_params(family, src)?;
    let dir = out_dir(out_flag, &OutputConfig::default())?;
    let (name, radius, eval): (&str, f64, RadialEval) = match &params {
        Params::M(p) => {
            let p = p.clone();
            ("m", p.support_radius(t.max(0.0)), Box::new(move |r| p.eval_radial(t, r)))
        }
        Params::Rel(p) => {
            let p = p.clone();
            ("rel", p.front_radius(t.max(0.0)), Box::new(move |r| p.eval_radial(t, r)))
        }
    };
    let r_end = 1.25 * radius;
    let mut w = create(&dir.join(format!("subsolution_{name}.csv")))?;
    writeln!(w, "r,u")?;
    for k in 0..points {
        let r = r_end * k as f64 / (points - 1) as f64;
        writeln!(w, "{:.16e},{:.16e}", r, eval(r)?)?;
    }
    w.flush()?;
    match &params {
        Params::M(p) => write_json(&dir.join("subsolution_m_params.json"), p)?,
        Params::Rel(p) => write_json(&dir.join("subsolution_rel_params.json"), p)?,
    }
    Ok(EXIT_OK)
}
