//! Analytic waiting-time bounds, growth-coefficient estimation and the
//! `t*` versus `L` scaling study.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{config, domain, Result};
use crate::model::{Equation, ModelKind};
use crate::numerics::{halton_ball, linear_fit};
use crate::solver::{measure_waiting_time, Datum, WaitingTimeReport, WaitingTimeSetup};
use crate::subsolutions::ell_policy;

/// Ball radii, relative to the reference radius, at which the growth ratio is sampled.
pub const GROWTH_RADII: [f64; 3] = [1e-1, 1e-2, 1e-3];
pub const GROWTH_SAMPLES: usize = 10_000;

fn check_l(l: f64) -> Result<()> {
    if l > 0.0 && l.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("L must be positive and finite, got {l}")))
    }
}

/// `T_ℓ = C L^{1−exponent}`. The constant `C` has no default.
pub fn lower_bound_t_ell(l: f64, c: Option<f64>, model: &ModelKind) -> Result<f64> {
    check_l(l)?;
    let c = c.ok_or_else(|| config("the lower-bound constant C must be supplied"))?;
    if !(c > 0.0) || !c.is_finite() {
        return Err(config(format!("C must be positive, got {c}")));
    }
    Ok(c * ((1.0 - model.exponent) * l.ln()).exp())
}

/// The constant `W` of `T_u = W L^{1−exponent}`: `4^m` for the relativistic
/// equation, `2^{M−1}/(K(ℓ−1))` for the speed-limited one.
pub fn w_constant(model: &ModelKind) -> Result<f64> {
    let e = model.exponent;
    match model.kind {
        Equation::RelativisticPm => Ok(4.0f64.powf(e)),
        Equation::SpeedLimitedPm => {
            let (_, ell) = ell_policy(model.dimension, e)?;
            let k = 2.0 * model.dimension as f64 * (e - 1.0);
            Ok(((e - 1.0) * 2.0f64.ln() - k.ln() - (ell - 1.0).ln()).exp())
        }
    }
}

/// `(T_u, W)` with `T_u = W L^{1−exponent}`.
pub fn upper_bound_t_u(l: f64, model: &ModelKind) -> Result<(f64, f64)> {
    check_l(l)?;
    let w = w_constant(model)?;
    Ok((w * ((1.0 - model.exponent) * l.ln()).exp(), w))
}

/// Estimates `lim_{ρ→0} inf_{B(x0+ρv0, ρ)} u0(x) |x−x0|^{−exponent}` from
/// the sampled minima at `ρ ∈ {10⁻¹, 10⁻², 10⁻³}·r_ref`.
///
/// Returns the value at the smallest radius, `0` if the datum vanishes
/// somewhere on a sampled ball and `+∞` if the ratio keeps growing by more
/// than half per decade.
pub fn estimate_growth_coefficient<F>(u0: F, x0: &[f64], v0: &[f64], exponent: f64, r_ref: f64) -> f64
where
    F: Fn(&[f64]) -> f64,
{
    let vnorm = crate::numerics::norm(v0);
    let mut ratios = Vec::with_capacity(GROWTH_RADII.len());
    for &frac in &GROWTH_RADII {
        let rho = frac * r_ref;
        let center: Vec<f64> = x0.iter().zip(v0).map(|(x, v)| x + rho * v / vnorm).collect();
        let mut best = f64::INFINITY;
        for p in halton_ball(&center, rho, GROWTH_SAMPLES) {
            let d = crate::numerics::distance(&p, x0);
            if d <= 0.0 {
                continue;
            }
            let u = u0(&p);
            if u <= 0.0 {
                return 0.0;
            }
            best = best.min(u * d.powf(-exponent));
        }
        ratios.push(best);
    }
    let growing = ratios.windows(2).all(|w| w[1] > 1.5 * w[0]);
    if growing {
        f64::INFINITY
    } else {
        *ratios.last().unwrap()
    }
}

/// Per-`L` datum of a scaling study: `Edge` with coefficient `L` and the
/// critical exponent of the model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeTemplate {
    pub edge: f64,
    /// Depth below the edge where the profile flattens; the plateau height scales with `L`.
    #[serde(default)]
    pub plateau_depth: Option<f64>,
}

impl EdgeTemplate {
    pub fn datum(&self, l: f64, model: &ModelKind) -> Datum {
        Datum::Edge {
            coefficient: l,
            exponent: model.growth_exponent(),
            edge: self.edge,
            plateau_depth: self.plateau_depth,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingStudy {
    /// Least-squares fit of `log t*` against `log L` over the conclusive runs.
    pub fit: Option<ScalingFit>,
    pub reports: Vec<WaitingTimeReport>,
    /// Whether every conclusive run satisfied `t* ≤ 1.1 T_u`.
    pub within_upper_bound: bool,
}

impl ScalingStudy {
    /// `L,t_star,T_upper,conclusive` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "L,t_star,T_upper,conclusive")?;
        for r in &self.reports {
            writeln!(
                out,
                "{:.16e},{:.16e},{:.16e},{}",
                r.l_used, r.t_star_measured, r.t_upper, r.reached
            )?;
        }
        Ok(())
    }

    pub fn summary_json(&self) -> serde_json::Value {
        match &self.fit {
            Some(f) => serde_json::json!({
                "slope": f.slope,
                "intercept": f.intercept,
                "residual": f.residual,
            }),
            None => serde_json::json!({
                "slope": null,
                "intercept": null,
                "residual": null,
            }),
        }
    }
}

/// Measures `t*` for each `L` (up to `jobs` runs in parallel) and fits the
/// log–log slope.
pub fn scaling_study(
    model: &ModelKind,
    ls: &[f64],
    template: &EdgeTemplate,
    setup: &WaitingTimeSetup,
    jobs: usize,
) -> Result<ScalingStudy> {
    if ls.len() < 3 {
        return Err(config(format!(
            "a scaling study needs at least 3 values of L, got {}",
            ls.len()
        )));
    }
    for &l in ls {
        if !(l > 0.0) || !l.is_finite() {
            return Err(config(format!("L values must be positive, got {l}")));
        }
    }
    let run_one = |&l: &f64| {
        let datum = template.datum(l, model);
        let mut s = setup.clone();
        s.l = Some(l);
        measure_waiting_time(model, &datum, &s)
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| config(format!("cannot start worker pool: {e}")))?;
    let reports: Vec<WaitingTimeReport> =
        pool.install(|| ls.par_iter().map(run_one).collect::<Result<Vec<_>>>())?;

    let (lx, ly): (Vec<f64>, Vec<f64>) = reports
        .iter()
        .filter(|r| r.reached && r.t_star_measured > 0.0)
        .map(|r| (r.l_used.ln(), r.t_star_measured.ln()))
        .unzip();
    let fit = (lx.len() >= 2).then(|| {
        let (slope, intercept, residual) = linear_fit(&lx, &ly);
        ScalingFit {
            slope,
            intercept,
            residual,
        }
    });
    let within_upper_bound = reports
        .iter()
        .filter(|r| r.reached)
        .all(|r| r.t_star_measured <= 1.1 * r.t_upper);
    Ok(ScalingStudy {
        fit,
        reports,
        within_upper_bound,
    })
}
