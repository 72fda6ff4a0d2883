//! Pointwise certification of the two subsolution families and the
//! numerical comparison test against the solver.
//!
//! For the speed-limited family the exact residual `u_t − div(...)` is
//! evaluated from closed forms in the unscaled frame (`s = 1`) and mapped back.
//! For the relativistic family the bulk condition is `γ ≥ G(r, |x|)` and the
//! free boundary is checked through the truncated jump inequality.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::model::ModelKind;
use crate::numerics::integrate_piecewise;
use crate::solver::{Flow, Observer, RadialGrid, RadialState, Solver};
use crate::subsolutions::{bulk_gamma_requirement, MSubParams, MValidity, RadialSubsolution, RelSubParams};

pub const DEFAULT_SEED: u64 = 42;
/// Tolerance of the jump inequality quadrature.
pub const TOL_QUAD: f64 = 1e-10;
/// Allowed error of the finite-difference Rankine–Hugoniot check.
pub const TOL_RANKINE_HUGONIOT: f64 = 1e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BulkResidual {
    /// `u_t − div(...)`; the subsolution inequality is `residual ≤ tol`.
    pub residual: f64,
    pub u_t: f64,
    pub div: f64,
    /// `1e-8 (1 + |u_t| + |div|)`
    pub tol: f64,
}

impl BulkResidual {
    pub fn holds(&self) -> bool {
        self.residual <= self.tol
    }
}

/// Exact bulk residual of the speed-limited family at time `t` and distance
/// `y` from the center, together with the speed-window slacks.
pub fn bulk_residual_m(t: f64, y: f64, p: &MSubParams) -> Result<(BulkResidual, MValidity)> {
    if !(t >= 0.0) || t >= p.lifetime {
        return Err(domain(format!("t = {t} outside [0, {})", p.lifetime)));
    }
    let rho = p.support_radius(t);
    if !(y >= 0.0) || y >= rho {
        return Err(domain(format!("y = {y} outside the support radius {rho}")));
    }
    let (mm, n) = (p.exponent, p.dimension as f64);
    let e = 1.0 / (mm - 1.0);
    // unscaled frame: τ = t/s, B = 1 + wτ, reduced radius Y = |x|/B
    let bb = rho / p.s;
    let yy = y / rho;
    let y2 = yy * yy;
    let a = (p.b * (p.ell - 1.0 / bb)).powf(e);
    let one_minus = 1.0 - y2;
    let f = one_minus.powf(e);
    let a_dot = a.powf(2.0 - mm) * p.b * p.w / ((mm - 1.0) * bb * bb);
    // ∇f(Y)·Y
    let fy = e * one_minus.powf(e - 1.0) * (-2.0 * y2);
    let u_t = -a_dot / (a * a) * f - p.w / (a * bb) * fy;
    let x = 4.0 * y2 / (a.powf(2.0 * mm - 2.0) * bb * bb);
    let d = (1.0 + x).sqrt();
    let am_b2 = a.powf(mm) * bb * bb;
    let div = -2.0 * fy / (am_b2 * d) - 2.0 * n * f / (am_b2 * d * d * d) * (1.0 + (n - 1.0) / n * x);
    let scale = p.s.powf((2.0 - mm) / (mm - 1.0));
    let (u_t, div) = (scale * u_t, scale * div);
    Ok((
        BulkResidual {
            residual: u_t - div,
            u_t,
            div,
            tol: 1e-8 * (1.0 + u_t.abs() + div.abs()),
        },
        p.validity(),
    ))
}

/// `γ − G(r(τ), x_norm)`; nonnegative where the bulk inequality holds.
pub fn bulk_residual_rel(t: f64, x_norm: f64, p: &RelSubParams) -> Result<f64> {
    let horizon = p.scaled_horizon();
    if !(t >= 0.0) || t >= horizon {
        return Err(domain(format!("t = {t} outside [0, {horizon})")));
    }
    let r = p.front_radius(t);
    if !(x_norm >= 0.0) || x_norm >= r {
        return Err(domain(format!("|x| = {x_norm} outside the front radius {r}")));
    }
    Ok(p.gamma - bulk_gamma_requirement(r, x_norm, p.dimension, p.m)?)
}

/// Two-level truncation `T(σ) = clamp(σ, lo, hi) − lo`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Truncation {
    pub lo: f64,
    pub hi: f64,
}

impl Truncation {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0) || !(hi > lo) || !hi.is_finite() {
            return Err(domain(format!("truncation needs 0 < a < b, got ({lo}, {hi})")));
        }
        Ok(Self { lo, hi })
    }

    pub fn value(&self, s: f64) -> f64 {
        s.clamp(self.lo, self.hi) - self.lo
    }

    pub fn slope(&self, s: f64) -> f64 {
        if s > self.lo && s < self.hi {
            1.0
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JumpCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub u_plus: f64,
    pub front_speed: f64,
}

impl JumpCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs + tol
    }
}

/// `∫_0^{u⁺} (ST)'(σ) σ (σ^{m−1} − r') dσ` against `u⁺ T(u⁺) S(u⁺) ((u⁺)^{m−1} − r')`.
pub fn jump_inequality(u_plus: f64, front_speed: f64, m: f64, t: Truncation, s: Truncation) -> JumpCheck {
    let integrand = |x: f64| {
        let d = s.slope(x) * t.value(x) + s.value(x) * t.slope(x);
        d * x * (x.powf(m - 1.0) - front_speed)
    };
    let lhs = integrate_piecewise(&integrand, 0.0, u_plus, &[t.lo, t.hi, s.lo, s.hi], TOL_QUAD * 0.1);
    let rhs = u_plus * t.value(u_plus) * s.value(u_plus) * (u_plus.powf(m - 1.0) - front_speed);
    JumpCheck {
        lhs,
        rhs,
        u_plus,
        front_speed,
    }
}

/// The jump inequality at the front of `p` at time `t`, with `u⁺ = U/A(τ)`
/// and the front speed `r'` of the scaled family.
pub fn jump_check_rel(t: f64, p: &RelSubParams, trunc_t: (f64, f64), trunc_s: (f64, f64)) -> Result<JumpCheck> {
    let tt = Truncation::new(trunc_t.0, trunc_t.1)?;
    let ss = Truncation::new(trunc_s.0, trunc_s.1)?;
    let horizon = p.scaled_horizon();
    if !(t >= 0.0) || t >= horizon {
        return Err(domain(format!("t = {t} outside [0, {horizon})")));
    }
    Ok(jump_inequality(p.jump_height(t), p.front_speed(t), p.m, tt, ss))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WorstPoint {
    pub t: f64,
    pub y: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificationReport {
    pub family: String,
    pub params: serde_json::Value,
    pub n_samples: usize,
    /// Largest bulk violation: `u_t − div` for the speed-limited family,
    /// `G − γ` for the relativistic one.
    pub max_residual: f64,
    /// Smallest of the sufficient-condition slacks (and, for the relativistic
    /// family, of `γ − G`).
    pub min_slack: f64,
    pub pass: bool,
    pub worst_point: WorstPoint,
    /// Family-specific diagnostics.
    pub details: serde_json::Value,
}

/// Sampling grid for certification.
#[derive(Debug, Clone, Copy)]
pub struct CertifyOptions {
    pub time_samples: usize,
    pub radial_samples: usize,
    /// Jump checks at random times with random truncation pairs.
    pub truncation_pairs: usize,
    pub seed: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            time_samples: 200,
            radial_samples: 200,
            truncation_pairs: 20,
            seed: DEFAULT_SEED,
        }
    }
}

/// Evaluates the exact residual on a `time_samples × radial_samples` grid
/// `t_i = i·lifetime/n_t`, `|x| = (j/n_y)·(s + w t_i)`, which stays one grid
/// step away from the moving support boundary.
pub fn certify_m(p: &MSubParams, opts: &CertifyOptions) -> CertificationReport {
    let validity = p.validity();
    let mut worst = WorstPoint {
        t: 0.0,
        y: 0.0,
        value: f64::NEG_INFINITY,
    };
    let mut all_hold = true;
    let mut n = 0;
    for i in 0..opts.time_samples {
        let t = p.lifetime * i as f64 / opts.time_samples as f64;
        let rho = p.support_radius(t);
        for j in 0..opts.radial_samples {
            let y = rho * j as f64 / opts.radial_samples as f64;
            let (r, _) = bulk_residual_m(t, y, p).expect("sample lies inside the support");
            n += 1;
            all_hold &= r.holds();
            if r.residual > worst.value {
                worst = WorstPoint {
                    t,
                    y,
                    value: r.residual,
                };
            }
        }
    }
    CertificationReport {
        family: "m".into(),
        params: serde_json::to_value(p).expect("params serialize"),
        n_samples: n,
        max_residual: worst.value,
        min_slack: validity.slack_lower.min(validity.slack_upper),
        pass: all_hold && validity.is_valid(),
        worst_point: worst,
        details: serde_json::json!({
            "slack_lower": validity.slack_lower,
            "slack_upper": validity.slack_upper,
            "bulk_holds": all_hold,
        }),
    }
}

/// Random truncation pairs inside `(0, u⁺]`; every other pair has its upper
/// level within 1% of `u⁺`.
fn truncation_pair(rng: &mut ChaCha8Rng, u_plus: f64, near_top: bool) -> ((f64, f64), (f64, f64)) {
    let mut draw = |near: bool| {
        let hi = if near {
            u_plus * rng.gen_range(0.99..1.0)
        } else {
            u_plus * rng.gen_range(0.05..1.2)
        };
        let lo = hi * rng.gen_range(0.01..0.95);
        (lo, hi)
    };
    (draw(near_top), draw(false))
}

/// Bulk check of `γ − G` on a grid over `[0, horizon) × [0, r(t))`, the
/// Rankine–Hugoniot identity `r' = A^{1−m}` by forward differences with
/// `h = 1e-6` in the unscaled time, and the jump inequality for random
/// truncation pairs.
pub fn certify_rel(p: &RelSubParams, opts: &CertifyOptions) -> CertificationReport {
    let horizon = p.scaled_horizon();
    let mut worst = WorstPoint {
        t: 0.0,
        y: 0.0,
        value: f64::NEG_INFINITY,
    };
    let mut n = 0;
    for i in 0..opts.time_samples {
        let t = horizon * i as f64 / opts.time_samples as f64;
        let r = p.front_radius(t);
        for j in 0..opts.radial_samples {
            let y = r * j as f64 / opts.radial_samples as f64;
            let slack = bulk_residual_rel(t, y, p).expect("sample lies inside the support");
            n += 1;
            if -slack > worst.value {
                worst = WorstPoint { t, y, value: -slack };
            }
        }
    }
    let bulk_ok = worst.value <= 0.0;

    let unscaled_horizon = p.horizon;
    let h = 1e-6;
    let mut rh_err: f64 = 0.0;
    for i in 0..opts.time_samples {
        let tau = (unscaled_horizon - h) * i as f64 / opts.time_samples as f64;
        let fd = (p.radius_unscaled(tau + h) - p.radius_unscaled(tau)) / h;
        rh_err = rh_err.max((fd - p.a_unscaled(tau).powf(1.0 - p.m)).abs());
    }
    let rh_ok = rh_err <= TOL_RANKINE_HUGONIOT;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut jump_excess = f64::NEG_INFINITY;
    let mut lhs_max = f64::NEG_INFINITY;
    let mut rhs_max: f64 = 0.0;
    for k in 0..opts.truncation_pairs {
        let t = rng.gen_range(0.0..horizon);
        let u_plus = p.jump_height(t);
        let (tt, ss) = truncation_pair(&mut rng, u_plus, k % 2 == 0);
        let jc = jump_check_rel(t, p, tt, ss).expect("truncation levels are ordered");
        jump_excess = jump_excess.max(jc.lhs - jc.rhs);
        lhs_max = lhs_max.max(jc.lhs);
        rhs_max = rhs_max.max(jc.rhs.abs());
    }
    let jump_ok = opts.truncation_pairs == 0 || jump_excess <= TOL_QUAD;

    CertificationReport {
        family: "rel".into(),
        params: serde_json::to_value(p).expect("params serialize"),
        n_samples: n,
        max_residual: worst.value,
        min_slack: -worst.value,
        pass: bulk_ok && rh_ok && jump_ok,
        worst_point: worst,
        details: serde_json::json!({
            "bulk_holds": bulk_ok,
            "rankine_hugoniot_max_error": rh_err,
            "jump_max_excess": if jump_excess.is_finite() { jump_excess } else { 0.0 },
            "jump_max_lhs": if lhs_max.is_finite() { lhs_max } else { 0.0 },
            "jump_max_abs_rhs": rhs_max,
            "truncation_pairs": opts.truncation_pairs,
        }),
    }
}

/// Grid and output cadence of a comparison run.
#[derive(Debug, Clone, Copy)]
pub struct ComparisonConfig {
    pub cells: usize,
    pub r_max: f64,
    /// End of the run; must not exceed the subsolution's validity.
    pub t_end: f64,
    /// Check the gap every `every` steps (and at `t_end`).
    pub every: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonReport {
    /// `min (u − u_sub)` over all checked cells and times.
    pub min_gap: f64,
    pub at_t: f64,
    pub at_r: f64,
    /// Maximum of the initial solver state.
    pub umax: f64,
    pub checks: u64,
    pub steps: u64,
}

struct GapWatch<'a> {
    sub: &'a dyn RadialSubsolution,
    every: u64,
    calls: u64,
    t_end: f64,
    report: ComparisonReport,
    err: Option<crate::Error>,
}

impl GapWatch<'_> {
    fn check(&mut self, state: &RadialState) {
        let g = &state.grid;
        for (i, &u) in state.values.iter().enumerate() {
            let r = g.midpoint(i);
            match self.sub.value_at(state.t, r) {
                Ok(v) => {
                    let gap = u - v;
                    if gap < self.report.min_gap {
                        self.report.min_gap = gap;
                        self.report.at_t = state.t;
                        self.report.at_r = r;
                    }
                }
                Err(e) => {
                    self.err = Some(e);
                    return;
                }
            }
        }
        self.report.checks += 1;
    }
}

impl Observer for GapWatch<'_> {
    fn observe(&mut self, state: &RadialState) -> Flow {
        if self.calls.is_multiple_of(self.every) || state.t >= self.t_end {
            self.check(state);
        }
        self.calls += 1;
        if self.err.is_some() {
            Flow::Stop
        } else {
            Flow::Continue
        }
    }
}

/// Runs the solver from `u0 = (1 + margin)·sub(0)` on a grid centered at the
/// subsolution's center and records `min (u − sub)`.
pub fn comparison_test(
    model: &ModelKind,
    sub: &dyn RadialSubsolution,
    margin: f64,
    cfg: &ComparisonConfig,
) -> Result<ComparisonReport> {
    comparison_test_observed(model, sub, margin, cfg, &mut [])
}

/// As [`comparison_test`], with extra observers attached to the run.
pub fn comparison_test_observed(
    model: &ModelKind,
    sub: &dyn RadialSubsolution,
    margin: f64,
    cfg: &ComparisonConfig,
    extra: &mut [&mut (dyn Observer + '_)],
) -> Result<ComparisonReport> {
    if !(margin >= 0.0) {
        return Err(domain(format!("margin must be nonnegative, got {margin}")));
    }
    if !(cfg.t_end >= 0.0) || cfg.t_end > sub.valid_until() {
        return Err(domain(format!(
            "t_end = {} outside the subsolution's validity [0, {}]",
            cfg.t_end,
            sub.valid_until()
        )));
    }
    if sub.dimension() != model.dimension {
        return Err(domain("subsolution and model dimensions differ"));
    }
    let grid = Arc::new(RadialGrid::new(model.dimension, cfg.r_max, cfg.cells)?);
    let values: Vec<f64> = (0..grid.cells)
        .map(|i| sub.value_at(0.0, grid.midpoint(i)).map(|v| (1.0 + margin) * v))
        .collect::<Result<_>>()?;
    let state = RadialState::from_values(grid, 0.0, values)?;
    let umax = state.max_value();
    let mut watch = GapWatch {
        sub,
        every: cfg.every.max(1),
        calls: 0,
        t_end: cfg.t_end,
        report: ComparisonReport {
            min_gap: f64::INFINITY,
            at_t: 0.0,
            at_r: 0.0,
            umax,
            checks: 0,
            steps: 0,
        },
        err: None,
    };
    // the subsolution is only defined on [0, valid_until)
    let t_end = if cfg.t_end >= sub.valid_until() {
        cfg.t_end * (1.0 - 1e-12)
    } else {
        cfg.t_end
    };
    watch.t_end = t_end;
    let mut solver = Solver::new(*model, state)?;
    let summary = {
        let mut obs: Vec<&mut (dyn Observer + '_)> = Vec::with_capacity(1 + extra.len());
        obs.push(&mut watch);
        for o in extra.iter_mut() {
            obs.push(&mut **o);
        }
        solver.run(t_end, &mut obs)?
    };
    if let Some(e) = watch.err {
        return Err(e);
    }
    let mut report = watch.report;
    report.steps = summary.steps;
    Ok(report)
}
