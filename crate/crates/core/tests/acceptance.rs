//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::sync::Arc;
use std::time::Instant;

use fluxsat::bounds::{scaling_study, upper_bound_t_u, EdgeTemplate};
use fluxsat::numerics::linear_fit;
use fluxsat::solver::{
    admissible_dt, init_state, measure_waiting_time_observed, step, Datum, Flow, Observer,
    RadialGrid, RadialState, Solver, WaitingTimeSetup, DEFAULT_CFL, DEFAULT_RELATIVE_THRESHOLD,
};
use fluxsat::subsolutions::{
    bulk_gamma_requirement, gamma0, gamma0_region, synthesize_m_params, synthesize_rel_params,
    MSubParams, RelSubParams,
};
use fluxsat::verify::{certify_m, certify_rel, comparison_test_observed, ComparisonConfig, CertifyOptions};
use fluxsat::ModelKind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Largest `support(t) − support(0) − t − 2h` seen during a run.
struct SpeedWatch {
    threshold: f64,
    start: Option<(f64, f64)>,
    worst: f64,
}

impl SpeedWatch {
    fn new(threshold: f64) -> Self {
        Self {
            threshold,
            start: None,
            worst: f64::NEG_INFINITY,
        }
    }
}

impl Observer for SpeedWatch {
    fn observe(&mut self, s: &RadialState) -> Flow {
        let r = s.support_radius(self.threshold);
        let (t0, r0) = *self.start.get_or_insert((s.t, r));
        self.worst = self.worst.max(r - r0 - (s.t - t0) - 2.0 * s.grid.h);
        Flow::Continue
    }
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut ok = true;
    for m in [2.0, 1.5, 3.0, 4.25] {
        let (_, w) = upper_bound_t_u(1.0, &ModelKind::relativistic(m, 1).unwrap()).unwrap();
        ok &= w == 4f64.powf(m);
    }
    let (tu, w) = upper_bound_t_u(1.0, &ModelKind::relativistic(2.0, 3).unwrap()).unwrap();
    ok &= tu == 16.0 && w == 16.0;
    let mut k_ok = 0;
    for _ in 0..10 {
        let n = rng.gen_range(1..=4usize);
        let big_m: f64 = rng.gen_range(1.1..5.0);
        let syn = synthesize_m_params(1.0, 1.0, n, big_m).unwrap();
        if syn.params.k == 2.0 * n as f64 * (big_m - 1.0) {
            k_ok += 1;
        }
    }
    outcome(ok && k_ok == 10, format!("W(m=2) = {w}, K exact for {k_ok}/10 random (N, M)"))
}

fn criterion_2() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (l, r, n, big_m) in [(1.0, 1.0, 1, 2.0), (1.0, 1.0, 2, 2.0), (2.0, 1.0, 1, 3.0)] {
        let p = synthesize_m_params(l, r, n, big_m).unwrap().params;
        let rep = certify_m(&p, &CertifyOptions::default());
        let v = p.validity();
        pass &= rep.pass && rep.n_samples == 40_000 && v.slack_lower >= 0.0 && v.slack_upper >= 0.0;
        parts.push(format!("({l},{r},{n},{big_m}): max residual {:.2e}, slacks ({:.2e}, {:.2e})",
            rep.max_residual, v.slack_lower, v.slack_upper));
    }
    outcome(pass, parts.join("; "))
}

fn criterion_3() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (l, r, n, m) in [(1.0, 1.0, 1, 2.0), (2.0, 1.0, 1, 2.0), (1.0, 1.0, 2, 3.0)] {
        let p = synthesize_rel_params(l, r, n, m).unwrap().params;
        let rep = certify_rel(&p, &CertifyOptions::default());
        let d = &rep.details;
        let rh = d["rankine_hugoniot_max_error"].as_f64().unwrap();
        let lhs = d["jump_max_lhs"].as_f64().unwrap();
        let rhs = d["jump_max_abs_rhs"].as_f64().unwrap();
        let pairs = d["truncation_pairs"].as_u64().unwrap();
        // rhs is zero up to the roundoff of (U/A)^{m−1} versus r'
        let u3 = p.amplitude.powi(3);
        pass &= rep.pass && rep.min_slack >= 0.0 && rh <= 1e-5 && lhs <= 0.0 && rhs <= 1e-12 * u3 && pairs == 20;
        parts.push(format!("({l},{r},{n},{m}): γ = {:.4}, min γ−G {:.3e}, RH err {rh:.1e}, max lhs {lhs:.2e}, |rhs| {rhs:.1e}",
            p.gamma, rep.min_slack));
    }
    outcome(pass, parts.join("; "))
}

/// Exhaustive grid over H without the band `y > ρ − 1e-3`, then three rounds of
/// 101×101 local grids shrinking around the best point.
fn gamma0_oracle(n: usize, m: f64, horizon: f64, r1: f64) -> f64 {
    let (lo, hi) = gamma0_region(m, horizon, r1);
    let cells = 2000;
    let g = |rho: f64, y: f64| {
        if y < 0.0 || y > rho - 1e-3 || rho < lo || rho > hi {
            f64::NEG_INFINITY
        } else {
            bulk_gamma_requirement(rho, y, n, m).unwrap()
        }
    };
    let (mut best, mut br, mut by) = (f64::NEG_INFINITY, lo, 0.0);
    for i in 0..cells {
        let rho = lo + (hi - lo) * i as f64 / (cells - 1) as f64;
        for j in 0..cells {
            let y = (rho - 1e-3) * j as f64 / (cells - 1) as f64;
            let v = g(rho, y);
            if v > best {
                (best, br, by) = (v, rho, y);
            }
        }
    }
    let (mut wr, mut wy) = ((hi - lo) / (cells - 1) as f64, hi / (cells - 1) as f64);
    for _ in 0..3 {
        let (cr, cy) = (br, by);
        for i in 0..=100 {
            let rho = cr + wr * (i as f64 / 50.0 - 1.0);
            for j in 0..=100 {
                let y = cy + wy * (j as f64 / 50.0 - 1.0);
                let v = g(rho, y);
                if v > best {
                    (best, br, by) = (v, rho, y);
                }
            }
        }
        wr /= 25.0;
        wy /= 25.0;
    }
    best.max(1.0)
}

fn criterion_4() -> Outcome {
    let got = gamma0(1, 2.0, 1.0, 1.0).value;
    let oracle = gamma0_oracle(1, 2.0, 1.0, 1.0);
    let rel = (got - oracle).abs() / oracle;
    outcome(rel <= 0.01 && got >= 1.5, format!("γ0 = {got:.8}, oracle = {oracle:.8}, relative difference {rel:.2e}"))
}

fn slpm_bump_state(cells: usize) -> (ModelKind, RadialState) {
    let model = ModelKind::speed_limited(2.0, 1).unwrap();
    let grid = Arc::new(RadialGrid::new(1, 3.0, cells).unwrap());
    let s = init_state(grid, &Datum::Bump { height: 1.0, radius: 1.0, power: 2.0 }).unwrap();
    (model, s)
}

fn criterion_5(speed: &mut Vec<(String, f64)>) -> Outcome {
    let (model, s) = slpm_bump_state(1024);
    let m0 = s.mass();
    let mut watch = SpeedWatch::new(DEFAULT_RELATIVE_THRESHOLD * s.max_value());
    watch.observe(&s);
    let mut solver = Solver::new(model, s).unwrap();
    let mut drift: f64 = 0.0;
    for _ in 0..10_000 {
        let dt = solver.admissible_dt();
        solver.step(dt).unwrap();
        watch.observe(solver.state());
        drift = drift.max((solver.state().mass() - m0).abs() / m0);
    }
    speed.push(("conservation run".into(), watch.worst));
    outcome(drift < 1e-10, format!("max relative mass drift {drift:.2e} over 10^4 steps to t = {:.4}", solver.state().t))
}

fn random_pair(rng: &mut ChaCha8Rng, grid: &Arc<RadialGrid>) -> (RadialState, RadialState) {
    let u: Vec<f64> = (0..grid.cells)
        .map(|_| if rng.gen_bool(0.25) { 0.0 } else { rng.gen_range(0.0..2.0) })
        .collect();
    let v: Vec<f64> = u
        .iter()
        .map(|x| if rng.gen_bool(0.3) { *x } else { x + rng.gen_range(0.0..1.0) })
        .collect();
    (
        RadialState::from_values(grid.clone(), 0.0, u).unwrap(),
        RadialState::from_values(grid.clone(), 0.0, v).unwrap(),
    )
}

fn criterion_6(speed: &mut Vec<(String, f64)>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut ordered = 0;
    for k in 0..100 {
        let n = rng.gen_range(1..=3usize);
        let e: f64 = rng.gen_range(1.3..3.5);
        let model = if k % 2 == 0 {
            ModelKind::relativistic(e, n).unwrap()
        } else {
            ModelKind::speed_limited(e, n).unwrap()
        };
        let grid = Arc::new(RadialGrid::new(n, 1.0, 64).unwrap());
        let (u, v) = random_pair(&mut rng, &grid);
        let dt = admissible_dt(&model, &u, DEFAULT_CFL).min(admissible_dt(&model, &v, DEFAULT_CFL));
        let (su, sv) = (step(&model, &u, dt).unwrap(), step(&model, &v, dt).unwrap());
        if su.values.iter().zip(&sv.values).all(|(a, b)| a <= b) {
            ordered += 1;
        }
    }

    let model = ModelKind::speed_limited(2.0, 1).unwrap();
    let p = synthesize_m_params(1.0, 1.0, 1, 2.0).unwrap().params;
    let mut gaps = Vec::new();
    let mut within = true;
    for cells in [1024, 2048] {
        let cfg = ComparisonConfig { cells, r_max: 3.0, t_end: 0.8 * p.lifetime, every: 25 };
        let umax0 = p.eval_radial(0.0, 0.0).unwrap() * 1.05;
        let mut watch = SpeedWatch::new(DEFAULT_RELATIVE_THRESHOLD * umax0);
        let rep = comparison_test_observed(&model, &p, 0.05, &cfg, &mut [&mut watch]).unwrap();
        speed.push((format!("comparison run, {cells} cells"), watch.worst));
        within &= rep.min_gap >= -0.05 * rep.umax;
        gaps.push(rep.min_gap);
    }
    let violation = |g: f64| (-g).max(0.0);
    let shrinking = violation(gaps[1]) <= violation(gaps[0]);
    outcome(
        ordered == 100 && within && shrinking,
        format!(
            "{ordered}/100 ordered pairs stay ordered; min(u − sub) = {:.3e} (1024 cells), {:.3e} (2048 cells) through 0.8 × lifetime",
            gaps[0], gaps[1]
        ),
    )
}

fn waiting_setup(r_max: f64, t_max: f64) -> WaitingTimeSetup {
    WaitingTimeSetup {
        x0_offset: 0.01,
        threshold: None,
        t_max,
        r_max,
        cells: 1024,
        l: None,
        c_lower: None,
    }
}

fn criterion_7(speed: &mut Vec<(String, f64)>) -> Outcome {
    let ls = [1.0, 2.0, 4.0];
    let template = EdgeTemplate { edge: 1.0, plateau_depth: Some(0.5) };

    let rel = ModelKind::relativistic(2.0, 1).unwrap();
    let study = scaling_study(&rel, &ls, &template, &waiting_setup(2.0, 40.0), 1).unwrap();
    let rel_slope = study.fit.as_ref().map_or(f64::NAN, |f| f.slope);
    let bounded = study
        .reports
        .iter()
        .all(|r| r.reached && r.t_star_measured > 0.0 && r.t_star_measured <= 1.1 * 16.0 / r.l_used);

    let sl = ModelKind::speed_limited(2.0, 1).unwrap();
    let mut points = Vec::new();
    let mut sl_reached = true;
    for &l in &ls {
        let datum = template.datum(l, &sl);
        let mut setup = waiting_setup(3.0, 20.0);
        setup.l = Some(l);
        let threshold = DEFAULT_RELATIVE_THRESHOLD * 0.25 * l;
        let mut watch = SpeedWatch::new(threshold);
        let rep = measure_waiting_time_observed(&sl, &datum, &setup, &mut [&mut watch]).unwrap();
        speed.push((format!("SLPM waiting-time run, L = {l}"), watch.worst));
        sl_reached &= rep.reached && rep.t_star_measured > 0.0;
        points.push((l.ln(), rep.t_star_measured.ln()));
    }
    let (x, y): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
    let (sl_slope, _, _) = linear_fit(&x, &y);
    let window = |s: f64| (-1.25..=-0.75).contains(&s);
    let t_stars: Vec<String> = study.reports.iter().map(|r| format!("{:.4}", r.t_star_measured)).collect();
    outcome(
        bounded && window(rel_slope) && sl_reached && window(sl_slope),
        format!(
            "rel m=2 t* = [{}] vs 16/L, slope {rel_slope:.4}; SLPM M=2 slope {sl_slope:.4}",
            t_stars.join(", ")
        ),
    )
}

fn criterion_8(speed: &[(String, f64)]) -> Outcome {
    let worst = speed.iter().map(|(_, w)| *w).fold(f64::NEG_INFINITY, f64::max);
    let ok = !speed.is_empty() && worst <= 0.0;
    outcome(ok, format!("{} SLPM runs, max (growth − t − 2h) = {worst:.3e}", speed.len()))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let base = synthesize_m_params(1.0, 1.0, 2, 2.5).unwrap().params;
    let unit = MSubParams::new(base.exponent, 2, base.b, base.ell, base.k, base.w, 1.0, base.center.clone()).unwrap();
    let mut worst_m: f64 = 0.0;
    for _ in 0..1000 {
        let u: f64 = rng.gen_range(0.3..3.0);
        let scale = u.powf(base.exponent - 1.0);
        let scaled = MSubParams::new(base.exponent, 2, base.b, base.ell, base.k, base.w, 1.0 / scale, base.center.clone()).unwrap();
        let t = rng.gen_range(0.0..scaled.lifetime);
        let rad = scaled.support_radius(t);
        let x: Vec<f64> = base.center.iter().map(|c| c + rng.gen_range(-0.7..0.7) * rad).collect();
        let lhs = scaled.eval(t, &x).unwrap();
        let xs: Vec<f64> = x.iter().zip(&base.center).map(|(a, c)| c + scale * (a - c)).collect();
        let rhs = unit.eval(scale * t, &xs).unwrap() / u;
        if lhs != 0.0 || rhs != 0.0 {
            worst_m = worst_m.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()));
        }
    }
    let rel_base = synthesize_rel_params(1.0, 1.0, 2, 2.0).unwrap().params;
    let unit_rel = RelSubParams { amplitude: 1.0, ..rel_base.clone() };
    let mut worst_rel: f64 = 0.0;
    for _ in 0..1000 {
        let u: f64 = rng.gen_range(0.05..3.0);
        let scaled = RelSubParams { amplitude: u, ..rel_base.clone() };
        let t = rng.gen_range(0.0..scaled.scaled_horizon());
        let rad = scaled.front_radius(t);
        let x: Vec<f64> = rel_base.center.iter().map(|c| c + rng.gen_range(-0.7..0.7) * rad).collect();
        let lhs = scaled.eval(t, &x).unwrap();
        let rhs = u * unit_rel.eval(u.powf(rel_base.m - 1.0) * t, &x).unwrap();
        if lhs != 0.0 || rhs != 0.0 {
            worst_rel = worst_rel.max((lhs - rhs).abs() / lhs.abs().max(rhs.abs()));
        }
    }
    outcome(
        worst_m <= 1e-12 && worst_rel <= 1e-12,
        format!("max relative deviation {worst_m:.2e} (speed-limited), {worst_rel:.2e} (relativistic) over 1000 points each"),
    )
}

fn main() {
    let mut speed = Vec::new();
    let mut results: Vec<(usize, Outcome, f64)> = Vec::new();
    let mut timed = |k: usize, f: &mut dyn FnMut() -> Outcome| {
        let t0 = Instant::now();
        let o = f();
        let secs = t0.elapsed().as_secs_f64();
        println!("{} criterion {k}: {} [{secs:.1} s]", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        results.push((k, o, secs));
    };
    timed(1, &mut criterion_1);
    timed(2, &mut criterion_2);
    timed(3, &mut criterion_3);
    timed(4, &mut criterion_4);
    timed(5, &mut || criterion_5(&mut speed));
    timed(6, &mut || criterion_6(&mut speed));
    timed(7, &mut || criterion_7(&mut speed));
    timed(8, &mut || criterion_8(&speed));
    timed(9, &mut criterion_9);
    let failed: Vec<usize> = results.iter().filter(|r| !r.1.pass).map(|r| r.0).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", results.len());
    } else {
        println!("acceptance: failing criteria {failed:?}");
        std::process::exit(1);
    }
}
