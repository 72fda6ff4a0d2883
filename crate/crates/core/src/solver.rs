//! Explicit, conservative and monotone finite-volume stepping of radially
//! symmetric solutions.
//!
//! The radial form `u_t = r^{1−N} (r^{N−1} a(u, u_r))_r` is discretized on
//! uniform cells `[i h, (i+1) h]`. The face flux takes the mobility from the
//! larger neighbour and the central difference as gradient,
//!
//! ```text
//! F_{i+1/2} = a( max(u_i, u_{i+1}), (u_{i+1} − u_i)/h )
//! ```
//!
//! which is nondecreasing in `u_{i+1}` and nonincreasing in `u_i` for both
//! fluxes of [`crate::model`]. Fluxes vanish at `r = 0` and `r = r_max`.

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{config, domain, Error, Result};
use crate::model::ModelKind;

pub const DEFAULT_CFL: f64 = 0.4;
/// Support threshold relative to the initial maximum.
pub const DEFAULT_RELATIVE_THRESHOLD: f64 = 1e-8;

/// Area of the unit `(N−1)`-sphere, with `ω_1 = 1` for the half-line.
pub fn sphere_area(dimension: usize) -> f64 {
    if dimension == 1 {
        return 1.0;
    }
    let n = dimension as f64;
    2.0 * std::f64::consts::PI.powf(0.5 * n) / gamma_half_integer(dimension)
}

/// `Γ(k/2)` for a positive integer `k`.
fn gamma_half_integer(k: usize) -> f64 {
    let (mut x, mut g) = if k.is_multiple_of(2) {
        (1.0, 1.0)
    } else {
        (0.5, std::f64::consts::PI.sqrt())
    };
    while x < 0.5 * k as f64 - 1e-9 {
        g *= x;
        x += 1.0;
    }
    g
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    pub dimension: usize,
    pub r_max: f64,
    pub cells: usize,
    pub h: f64,
    volumes: Vec<f64>,
    /// Face areas `ω_N r_i^{N−1}`, `cells + 1` entries.
    areas: Vec<f64>,
}

impl RadialGrid {
    pub fn new(dimension: usize, r_max: f64, cells: usize) -> Result<Self> {
        if dimension < 1 {
            return Err(config("grid dimension must be at least 1"));
        }
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(config(format!("r_max must be positive, got {r_max}")));
        }
        if cells < 8 {
            return Err(config(format!("grid needs at least 8 cells, got {cells}")));
        }
        let h = r_max / cells as f64;
        let omega = sphere_area(dimension);
        let n = dimension as i32;
        let areas: Vec<f64> = (0..=cells)
            .map(|i| omega * (i as f64 * h).powi(n - 1))
            .collect();
        let volumes = (0..cells)
            .map(|i| {
                let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
                omega * (b.powi(n) - a.powi(n)) / dimension as f64
            })
            .collect();
        Ok(Self {
            dimension,
            r_max,
            cells,
            h,
            volumes,
            areas,
        })
    }

    pub fn volumes(&self) -> &[f64] {
        &self.volumes
    }

    pub fn face_areas(&self) -> &[f64] {
        &self.areas
    }

    pub fn midpoint(&self, i: usize) -> f64 {
        (i as f64 + 0.5) * self.h
    }

    /// Index of the cell containing radius `r`, clamped to the grid.
    pub fn cell_of(&self, r: f64) -> usize {
        ((r / self.h).floor().max(0.0) as usize).min(self.cells - 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadialState {
    pub grid: Arc<RadialGrid>,
    pub t: f64,
    pub values: Vec<f64>,
}

impl RadialState {
    pub fn zeros(grid: Arc<RadialGrid>) -> Self {
        let values = vec![0.0; grid.cells];
        Self {
            grid,
            t: 0.0,
            values,
        }
    }

    pub fn from_values(grid: Arc<RadialGrid>, t: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.cells {
            return Err(domain(format!(
                "{} values for a grid of {} cells",
                values.len(),
                grid.cells
            )));
        }
        if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(domain("cell values must be finite and nonnegative"));
        }
        Ok(Self { grid, t, values })
    }

    pub fn mass(&self) -> f64 {
        self.values
            .iter()
            .zip(self.grid.volumes())
            .map(|(u, v)| u * v)
            .sum()
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Outer edge of the outermost cell whose value exceeds `threshold`; 0 if none.
    pub fn support_radius(&self, threshold: f64) -> f64 {
        support_radius(self, threshold)
    }

    /// `r,u` rows at cell midpoints, 17 significant digits.
    pub fn write_snapshot_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "r,u")?;
        for (i, u) in self.values.iter().enumerate() {
            writeln!(out, "{:.16e},{:.16e}", self.grid.midpoint(i), u)?;
        }
        Ok(())
    }
}

pub fn support_radius(state: &RadialState, threshold: f64) -> f64 {
    state
        .values
        .iter()
        .rposition(|&u| u > threshold)
        .map_or(0.0, |i| (i + 1) as f64 * state.grid.h)
}

/// Radial initial data.
#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Datum {
    /// `value` on `[0, radius)`.
    Constant { value: f64, radius: f64 },
    /// `min(L r^p, cap)` on `[0, extent)`.
    PowerLaw {
        coefficient: f64,
        exponent: f64,
        cap: f64,
        extent: f64,
    },
    /// `L · min(edge − r, plateau_depth)^p` on `[0, edge)`: growth coefficient
    /// `L` at the support edge, flattened to a plateau away from it.
    Edge {
        coefficient: f64,
        exponent: f64,
        edge: f64,
        #[serde(default)]
        plateau_depth: Option<f64>,
    },
    /// `height · (1 − (r/radius)²)_+^power`.
    Bump {
        height: f64,
        radius: f64,
        #[serde(default = "one")]
        power: f64,
    },
    /// An arbitrary profile, e.g. a subsolution snapshot.
    #[serde(skip)]
    Profile {
        f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
        support: f64,
    },
}

fn one() -> f64 {
    1.0
}

impl fmt::Debug for Datum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Datum::Profile { support, .. } => {
                f.debug_struct("Profile").field("support", support).finish_non_exhaustive()
            }
            other => f.write_str(&serde_json::to_string(other).map_err(|_| fmt::Error)?),
        }
    }
}

impl Datum {
    pub fn profile<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F, support: f64) -> Self {
        Datum::Profile {
            f: Arc::new(f),
            support,
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            Datum::Constant { value, radius } => {
                if r < radius {
                    value
                } else {
                    0.0
                }
            }
            Datum::PowerLaw {
                coefficient,
                exponent,
                cap,
                extent,
            } => {
                if r < extent {
                    (coefficient * r.powf(exponent)).min(cap)
                } else {
                    0.0
                }
            }
            Datum::Edge {
                coefficient,
                exponent,
                edge,
                plateau_depth,
            } => {
                if r < edge {
                    let d = (edge - r).min(plateau_depth.unwrap_or(f64::INFINITY));
                    coefficient * d.powf(exponent)
                } else {
                    0.0
                }
            }
            Datum::Bump {
                height,
                radius,
                power,
            } => {
                let y = r / radius;
                if y < 1.0 {
                    height * (1.0 - y * y).powf(power)
                } else {
                    0.0
                }
            }
            Datum::Profile { ref f, .. } => f(r),
        }
    }

    /// Radius beyond which the datum vanishes.
    pub fn support_radius(&self) -> f64 {
        match *self {
            Datum::Constant { radius, .. } => radius,
            Datum::PowerLaw { extent, .. } => extent,
            Datum::Edge { edge, .. } => edge,
            Datum::Bump { radius, .. } => radius,
            Datum::Profile { support, .. } => support,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite_pos = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(config(format!("datum field {name} must be positive, got {v}")))
            }
        };
        match *self {
            Datum::Constant { value, radius } => {
                if !(value >= 0.0) || !value.is_finite() {
                    return Err(config("constant datum value must be nonnegative"));
                }
                finite_pos("radius", radius)
            }
            Datum::PowerLaw {
                coefficient,
                exponent,
                cap,
                extent,
            } => {
                finite_pos("coefficient", coefficient)?;
                finite_pos("exponent", exponent)?;
                finite_pos("cap", cap)?;
                finite_pos("extent", extent)
            }
            Datum::Edge {
                coefficient,
                exponent,
                edge,
                plateau_depth,
            } => {
                finite_pos("coefficient", coefficient)?;
                finite_pos("exponent", exponent)?;
                finite_pos("edge", edge)?;
                if let Some(d) = plateau_depth {
                    finite_pos("plateau_depth", d)?;
                }
                Ok(())
            }
            Datum::Bump {
                height,
                radius,
                power,
            } => {
                finite_pos("height", height)?;
                finite_pos("radius", radius)?;
                finite_pos("power", power)
            }
            Datum::Profile { support, .. } => finite_pos("support", support),
        }
    }
}

/// Cell values of `datum` by the midpoint rule.
pub fn init_state(grid: Arc<RadialGrid>, datum: &Datum) -> Result<RadialState> {
    datum.validate()?;
    let support = datum.support_radius();
    if support > grid.r_max {
        return Err(config(format!(
            "datum support {support} exceeds r_max = {}",
            grid.r_max
        )));
    }
    let values: Vec<f64> = (0..grid.cells).map(|i| datum.eval(grid.midpoint(i))).collect();
    if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
        return Err(config("datum must be finite and nonnegative"));
    }
    Ok(RadialState {
        grid,
        t: 0.0,
        values,
    })
}

/// Face fluxes and the largest step that keeps the update monotone.
///
/// `fluxes` gets `cells + 1` entries, already multiplied by the face area.
fn face_fluxes(model: &ModelKind, state: &RadialState, cfl: f64, fluxes: &mut Vec<f64>) -> f64 {
    let grid = &state.grid;
    let u = &state.values;
    let n = grid.cells;
    let inv_h = 1.0 / grid.h;
    let areas = grid.face_areas();
    let vols = grid.volumes();
    fluxes.clear();
    fluxes.resize(n + 1, 0.0);
    // β_f = A_f (sup|a_z| + sup a_g / h) at the face's larger value
    let mut beta_prev = 0.0;
    let mut rate = 0.0f64;
    for i in 1..n {
        let (ul, ur) = (u[i - 1], u[i]);
        let z = ul.max(ur);
        let beta = if z > 0.0 {
            let g = (ur - ul) * inv_h;
            fluxes[i] = areas[i] * model.flux_unchecked(z, g);
            let (az, ag) = model.derivative_bounds(z);
            areas[i] * (az + ag * inv_h)
        } else {
            0.0
        };
        rate = rate.max((beta_prev + beta) / vols[i - 1]);
        beta_prev = beta;
    }
    rate = rate.max(beta_prev / vols[n - 1]);
    if rate > 0.0 {
        cfl / rate
    } else {
        f64::INFINITY
    }
}

/// Largest admissible time step for `state` at Courant factor `cfl`.
pub fn admissible_dt(model: &ModelKind, state: &RadialState, cfl: f64) -> f64 {
    let mut scratch = Vec::new();
    face_fluxes(model, state, cfl, &mut scratch)
}

fn check_model_grid(model: &ModelKind, grid: &RadialGrid) -> Result<()> {
    if model.dimension != grid.dimension {
        return Err(domain(format!(
            "model dimension {} does not match grid dimension {}",
            model.dimension, grid.dimension
        )));
    }
    Ok(())
}

/// One explicit step of size `dt`; fails with [`Error::StepRejected`] if
/// `dt` exceeds the admissible step at [`DEFAULT_CFL`].
pub fn step(model: &ModelKind, state: &RadialState, dt: f64) -> Result<RadialState> {
    let mut solver = Solver::new(*model, state.clone())?;
    solver.step(dt)?;
    Ok(solver.into_state())
}

/// Returned by an [`Observer`] to continue or end a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

pub trait Observer {
    /// Called with the initial state and after every step.
    fn observe(&mut self, state: &RadialState) -> Flow;
    /// A time at which the state must be sampled exactly; the step size is
    /// shortened to land on it.
    fn next_stop(&self) -> Option<f64> {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRow {
    pub t: f64,
    pub mass: f64,
    pub support_radius: f64,
    pub u_at_x0: f64,
}

/// Records `t, mass, support_radius, u_at_x0` every `interval` time units
/// (every step when `interval` is zero).
#[derive(Debug, Clone)]
pub struct Trace {
    pub interval: f64,
    pub threshold: f64,
    pub x0_cell: usize,
    pub rows: Vec<TraceRow>,
    next: f64,
}

impl Trace {
    pub fn new(interval: f64, threshold: f64, x0_cell: usize) -> Self {
        Self {
            interval,
            threshold,
            x0_cell,
            rows: Vec::new(),
            next: f64::NEG_INFINITY,
        }
    }

    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "t,mass,support_radius,u_at_x0")?;
        for r in &self.rows {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{:.16e}",
                r.t, r.mass, r.support_radius, r.u_at_x0
            )?;
        }
        Ok(())
    }
}

impl Observer for Trace {
    fn observe(&mut self, state: &RadialState) -> Flow {
        if state.t >= self.next {
            self.rows.push(TraceRow {
                t: state.t,
                mass: state.mass(),
                support_radius: state.support_radius(self.threshold),
                u_at_x0: state.values[self.x0_cell.min(state.values.len() - 1)],
            });
            self.next = if self.interval > 0.0 {
                state.t + self.interval
            } else {
                state.t
            };
        }
        Flow::Continue
    }

    fn next_stop(&self) -> Option<f64> {
        (self.interval > 0.0 && self.next.is_finite()).then_some(self.next)
    }
}

/// Full states at a list of output times.
#[derive(Debug, Clone, Default)]
pub struct Snapshots {
    pub times: Vec<f64>,
    pub states: Vec<RadialState>,
}

impl Snapshots {
    pub fn at(mut times: Vec<f64>) -> Self {
        times.sort_by(|a, b| a.total_cmp(b));
        Self {
            times,
            states: Vec::new(),
        }
    }
}

impl Observer for Snapshots {
    fn observe(&mut self, state: &RadialState) -> Flow {
        while let Some(&t) = self.times.get(self.states.len()) {
            if state.t >= t {
                self.states.push(state.clone());
            } else {
                break;
            }
        }
        Flow::Continue
    }

    fn next_stop(&self) -> Option<f64> {
        self.times.get(self.states.len()).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunSummary {
    pub steps: u64,
    pub t: f64,
    pub stopped_early: bool,
}

/// Owns a state and advances it in time.
#[derive(Debug, Clone)]
pub struct Solver {
    model: ModelKind,
    cfl: f64,
    state: RadialState,
    fluxes: Vec<f64>,
}

impl Solver {
    pub fn new(model: ModelKind, state: RadialState) -> Result<Self> {
        check_model_grid(&model, &state.grid)?;
        Ok(Self {
            model,
            cfl: DEFAULT_CFL,
            state,
            fluxes: Vec::new(),
        })
    }

    pub fn with_cfl(mut self, cfl: f64) -> Result<Self> {
        if !(cfl > 0.0 && cfl <= 1.0) {
            return Err(config(format!("cfl must lie in (0, 1], got {cfl}")));
        }
        self.cfl = cfl;
        Ok(self)
    }

    pub fn state(&self) -> &RadialState {
        &self.state
    }

    pub fn into_state(self) -> RadialState {
        self.state
    }

    pub fn model(&self) -> &ModelKind {
        &self.model
    }

    pub fn admissible_dt(&mut self) -> f64 {
        face_fluxes(&self.model, &self.state, self.cfl, &mut self.fluxes)
    }

    /// Advance by exactly `dt`.
    pub fn step(&mut self, dt: f64) -> Result<()> {
        if !(dt >= 0.0) {
            return Err(domain(format!("time step must be nonnegative, got {dt}")));
        }
        let admissible = self.admissible_dt();
        if dt > admissible {
            return Err(Error::StepRejected { dt, admissible });
        }
        self.apply(dt);
        Ok(())
    }

    /// Update from the fluxes computed by the last `admissible_dt` call.
    fn apply(&mut self, dt: f64) {
        let vols = self.state.grid.volumes();
        for (i, u) in self.state.values.iter_mut().enumerate() {
            let du = dt * (self.fluxes[i + 1] - self.fluxes[i]) / vols[i];
            // monotonicity guarantees u + du ≥ 0 up to roundoff
            *u = (*u + du).max(0.0);
        }
        self.state.t += dt;
    }

    /// Advance to `t_end` with the largest admissible steps, calling each
    /// observer at the start and after every step.
    pub fn run(&mut self, t_end: f64, observers: &mut [&mut (dyn Observer + '_)]) -> Result<RunSummary> {
        if !(t_end >= self.state.t) {
            return Err(domain(format!(
                "t_end = {t_end} lies before the current time {}",
                self.state.t
            )));
        }
        let mut flow = Flow::Continue;
        for o in observers.iter_mut() {
            if o.observe(&self.state) == Flow::Stop {
                flow = Flow::Stop;
            }
        }
        let mut steps = 0u64;
        while flow == Flow::Continue && self.state.t < t_end {
            let admissible = self.admissible_dt();
            let mut target = t_end;
            for o in observers.iter() {
                if let Some(s) = o.next_stop() {
                    if s > self.state.t && s < target {
                        target = s;
                    }
                }
            }
            let remaining = target - self.state.t;
            let dt = admissible.min(remaining);
            if !(dt > 0.0) || !dt.is_finite() {
                if admissible.is_infinite() {
                    // nothing moves: jump straight to the target
                    self.state.t = target;
                } else {
                    return Err(Error::StepRejected { dt, admissible });
                }
            } else {
                self.apply(dt);
                if dt == remaining {
                    self.state.t = target;
                }
            }
            steps += 1;
            for o in observers.iter_mut() {
                if o.observe(&self.state) == Flow::Stop {
                    flow = Flow::Stop;
                }
            }
        }
        Ok(RunSummary {
            steps,
            t: self.state.t,
            stopped_early: flow == Flow::Stop && self.state.t < t_end,
        })
    }

    /// Take exactly `n` admissible steps.
    pub fn run_steps(&mut self, n: u64) -> Result<()> {
        for _ in 0..n {
            let dt = self.admissible_dt();
            if dt.is_infinite() {
                return Ok(());
            }
            self.apply(dt);
        }
        Ok(())
    }
}

/// Evolve `state` to `t_end`; returns the final state.
pub fn run(
    model: &ModelKind,
    state: RadialState,
    t_end: f64,
    observers: &mut [&mut (dyn Observer + '_)],
) -> Result<(RadialState, RunSummary)> {
    let mut solver = Solver::new(*model, state)?;
    let summary = solver.run(t_end, observers)?;
    Ok((solver.into_state(), summary))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaitingTimeReport {
    pub t_star_measured: f64,
    /// False when the observation cell never crossed the threshold before `t_max`.
    pub reached: bool,
    pub threshold: f64,
    pub x0_cell: usize,
    pub x0_radius: f64,
    /// `C L^{1−exponent}`, present when `C` was supplied.
    pub t_lower: Option<f64>,
    pub t_upper: f64,
    pub w_constant: f64,
    pub l_used: f64,
    pub cells: usize,
    pub steps: u64,
}

/// Settings for [`measure_waiting_time`].
#[derive(Debug, Clone)]
pub struct WaitingTimeSetup {
    /// Distance of the observation point beyond the datum's support edge.
    pub x0_offset: f64,
    /// Absolute threshold; defaults to `1e-8 × max u0`.
    pub threshold: Option<f64>,
    pub t_max: f64,
    pub r_max: f64,
    pub cells: usize,
    /// Growth coefficient used for the analytic bounds; estimated from the datum when absent.
    pub l: Option<f64>,
    /// Lower-bound constant `C`, if known.
    pub c_lower: Option<f64>,
}

struct CrossingWatch {
    cell: usize,
    threshold: f64,
    hit: Option<f64>,
}

impl Observer for CrossingWatch {
    fn observe(&mut self, state: &RadialState) -> Flow {
        if state.values[self.cell] > self.threshold {
            self.hit = Some(state.t);
            Flow::Stop
        } else {
            Flow::Continue
        }
    }
}

/// First time the cell at `support edge + x0_offset` exceeds the threshold.
pub fn measure_waiting_time(
    model: &ModelKind,
    datum: &Datum,
    setup: &WaitingTimeSetup,
) -> Result<WaitingTimeReport> {
    measure_waiting_time_observed(model, datum, setup, &mut [])
}

/// As [`measure_waiting_time`], with extra observers attached to the run.
pub fn measure_waiting_time_observed(
    model: &ModelKind,
    datum: &Datum,
    setup: &WaitingTimeSetup,
    extra: &mut [&mut (dyn Observer + '_)],
) -> Result<WaitingTimeReport> {
    if !(setup.t_max > 0.0) {
        return Err(config("t_max must be positive"));
    }
    if !(setup.x0_offset >= 0.0) {
        return Err(config("x0_offset must be nonnegative"));
    }
    let grid = Arc::new(RadialGrid::new(model.dimension, setup.r_max, setup.cells)?);
    let state = init_state(grid.clone(), datum)?;
    let x0_radius = datum.support_radius() + setup.x0_offset;
    if x0_radius >= grid.r_max {
        return Err(config(format!(
            "observation radius {x0_radius} lies outside the grid (r_max = {})",
            grid.r_max
        )));
    }
    let x0_cell = grid.cell_of(x0_radius);
    let umax = state.max_value();
    let threshold = setup
        .threshold
        .unwrap_or(DEFAULT_RELATIVE_THRESHOLD * umax);
    if state.values[x0_cell] > threshold {
        return Err(config(format!(
            "the datum already covers the observation cell {x0_cell}"
        )));
    }
    let l_used = match setup.l {
        Some(l) => l,
        None => match *datum {
            Datum::Edge { coefficient, .. } => coefficient,
            _ => {
                let edge = datum.support_radius();
                let exponent = model.growth_exponent();
                crate::bounds::estimate_growth_coefficient(
                    |x: &[f64]| datum.eval(x[0].abs()),
                    &[edge],
                    &[-1.0],
                    exponent,
                    edge.min(1.0),
                )
            }
        },
    };
    let (t_upper, w_constant) = crate::bounds::upper_bound_t_u(l_used, model)?;
    let t_lower = match setup.c_lower {
        Some(c) => Some(crate::bounds::lower_bound_t_ell(l_used, Some(c), model)?),
        None => None,
    };

    let mut watch = CrossingWatch {
        cell: x0_cell,
        threshold,
        hit: None,
    };
    let mut solver = Solver::new(*model, state)?;
    let summary = {
        let mut obs: Vec<&mut (dyn Observer + '_)> = Vec::with_capacity(1 + extra.len());
        obs.push(&mut watch);
        for o in extra.iter_mut() {
            obs.push(&mut **o);
        }
        solver.run(setup.t_max, &mut obs)?
    };
    Ok(WaitingTimeReport {
        t_star_measured: watch.hit.unwrap_or(setup.t_max),
        reached: watch.hit.is_some(),
        threshold,
        x0_cell,
        x0_radius,
        t_lower,
        t_upper,
        w_constant,
        l_used,
        cells: setup.cells,
        steps: summary.steps,
    })
}
