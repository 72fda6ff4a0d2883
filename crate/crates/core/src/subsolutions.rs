//! Explicit subsolution families and the synthesis of their parameters.
//!
//! Speed-limited family (continuous, support growing at constant speed `w`):
//!
//! ```text
//! u(t,x) = b^{1/(1-M)} (ℓ/s − 1/(s+wt))^{1/(1-M)} (1 − |x−ξ|²/(s+wt)²)_+^{1/(M-1)},   0 ≤ t < s/(wK)
//! ```
//!
//! Relativistic family (jump of height `U/A` at the moving front `r`):
//!
//! ```text
//! u(t,x) = U/A(τ) · (1 + sqrt(r(τ)² − |x−ξ|²)) · 1{|x−ξ| < r(τ)},   τ = U^{m-1} t
//! A(τ)   = ((m−1)(1+γτ))^{1/(m-1)}
//! r(τ)   = r0 + log(1+γτ) / (γ(m−1))
//! ```
//!
//! Both synthesis routines place the observation point `x0` at the origin and
//! the interior ball along `v0 = −e1`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numerics::{golden_section_max, norm, random_ball_point};

/// Points sampled when checking that a synthesized subsolution lies below
/// the comparison profile of the datum.
pub const PROFILE_SAMPLES: usize = 10_000;
const PROFILE_SEED: u64 = 42;

/// A radially symmetric subsolution, evaluated at a distance from its center.
pub trait RadialSubsolution: Sync {
    fn dimension(&self) -> usize;
    /// End of the time interval on which the subsolution property holds.
    fn valid_until(&self) -> f64;
    fn value_at(&self, t: f64, dist: f64) -> Result<f64>;
}

/// The trivial subsolution `u ≡ 0`.
#[derive(Debug, Clone, Copy)]
pub struct ZeroSubsolution {
    pub dimension: usize,
    pub until: f64,
}

impl RadialSubsolution for ZeroSubsolution {
    fn dimension(&self) -> usize {
        self.dimension
    }
    fn valid_until(&self) -> f64 {
        self.until
    }
    fn value_at(&self, _t: f64, _dist: f64) -> Result<f64> {
        Ok(0.0)
    }
}

fn origin_offset(dimension: usize, r1: f64) -> Vec<f64> {
    let mut c = vec![0.0; dimension];
    c[0] = -r1;
    c
}

// ---------------------------------------------------------------------------
// Speed-limited family
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMSub")]
pub struct MSubParams {
    /// `M`
    pub exponent: f64,
    pub dimension: usize,
    pub b: f64,
    pub ell: f64,
    pub k: f64,
    /// Front speed.
    pub w: f64,
    /// Initial support radius.
    pub s: f64,
    pub center: Vec<f64>,
    /// Always `s/(wK)`; recomputed on deserialization.
    pub lifetime: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMSub {
    exponent: f64,
    dimension: usize,
    b: f64,
    ell: f64,
    k: f64,
    w: f64,
    s: f64,
    center: Vec<f64>,
    #[serde(default)]
    lifetime: Option<f64>,
}

impl TryFrom<RawMSub> for MSubParams {
    type Error = Error;
    fn try_from(r: RawMSub) -> Result<Self> {
        let p = MSubParams::new(r.exponent, r.dimension, r.b, r.ell, r.k, r.w, r.s, r.center)?;
        match r.lifetime {
            Some(given) if (given - p.lifetime).abs() > 1e-12 * p.lifetime => Err(domain(format!(
                "lifetime {given} disagrees with s/(wK) = {}",
                p.lifetime
            ))),
            _ => Ok(p),
        }
    }
}

/// Slacks of the validity window `2N(M−1)/b ≤ w ≤ 1/sqrt(1 + (b²/4)(ℓ−1+ℓ/K)²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MValidity {
    pub slack_lower: f64,
    pub slack_upper: f64,
}

impl MValidity {
    pub fn is_valid(&self) -> bool {
        self.slack_lower >= 0.0 && self.slack_upper >= 0.0
    }
}

impl MSubParams {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        exponent: f64,
        dimension: usize,
        b: f64,
        ell: f64,
        k: f64,
        w: f64,
        s: f64,
        center: Vec<f64>,
    ) -> Result<Self> {
        if !(exponent > 1.0) || dimension < 1 {
            return Err(domain("M-family needs M > 1 and N ≥ 1"));
        }
        for (name, v) in [("b", b), ("K", k), ("w", w), ("s", s)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(domain(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if !(ell > 1.0) || !ell.is_finite() {
            return Err(domain(format!("ell must exceed 1, got {ell}")));
        }
        if center.len() != dimension {
            return Err(domain(format!(
                "center has {} coordinates, dimension is {dimension}",
                center.len()
            )));
        }
        Ok(Self {
            exponent,
            dimension,
            b,
            ell,
            k,
            w,
            s,
            center,
            lifetime: s / (w * k),
        })
    }

    pub fn support_radius(&self, t: f64) -> f64 {
        self.s + self.w * t
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if !(t >= 0.0) {
            return Err(domain(format!("time must be nonnegative, got {t}")));
        }
        if t >= self.lifetime {
            return Err(Error::LifetimeExceeded {
                t,
                lifetime: self.lifetime,
            });
        }
        Ok(())
    }

    /// Value at time `t` and distance `dist` from the center.
    pub fn eval_radial(&self, t: f64, dist: f64) -> Result<f64> {
        self.check_time(t)?;
        let rho = self.support_radius(t);
        if dist >= rho {
            return Ok(0.0);
        }
        let e = 1.0 / (self.exponent - 1.0);
        let amp = (self.b * (self.ell / self.s - 1.0 / rho)).powf(-e);
        let y = dist / rho;
        Ok(amp * (1.0 - y * y).powf(e))
    }

    pub fn eval(&self, t: f64, x: &[f64]) -> Result<f64> {
        if x.len() != self.dimension {
            return Err(domain("point dimension does not match parameters"));
        }
        let d = crate::numerics::distance(x, &self.center);
        self.eval_radial(t, d)
    }

    pub fn validity(&self) -> MValidity {
        validate_m_params(self)
    }
}

impl RadialSubsolution for MSubParams {
    fn dimension(&self) -> usize {
        self.dimension
    }
    fn valid_until(&self) -> f64 {
        self.lifetime
    }
    fn value_at(&self, t: f64, dist: f64) -> Result<f64> {
        self.eval_radial(t, dist)
    }
}

pub fn eval_m_sub(t: f64, x: &[f64], p: &MSubParams) -> Result<f64> {
    p.eval(t, x)
}

/// Upper end of the admissible front-speed window.
pub fn m_speed_ceiling(b: f64, ell: f64, k: f64) -> f64 {
    let c = ell - 1.0 + ell / k;
    1.0 / (1.0 + 0.25 * b * b * c * c).sqrt()
}

pub fn validate_m_params(p: &MSubParams) -> MValidity {
    let n = p.dimension as f64;
    MValidity {
        slack_lower: p.w - 2.0 * n * (p.exponent - 1.0) / p.b,
        slack_upper: m_speed_ceiling(p.b, p.ell, p.k) - p.w,
    }
}

/// Largest feasible `ℓ*` of the `r1`-free constraint
/// `4(ℓ−1)²/((α+1)² 4^{M−1}) + (ℓ−1+ℓ/K)² ≤ 4/K²` on `(1, 1+2/K]`, and the
/// half-gap choice `ℓ = 1 + (ℓ*−1)/2`.
pub fn ell_policy(dimension: usize, exponent: f64) -> Result<(f64, f64)> {
    let k = 2.0 * dimension as f64 * (exponent - 1.0);
    let alpha = 2.0 * k;
    // 4^{M-1} can overflow for large M; the first term then vanishes
    let first_scale = (2.0f64.ln() - 2.0 * (exponent - 1.0) * 2.0f64.ln()
        - 2.0 * (alpha + 1.0).ln())
    .exp()
        * 2.0;
    let excess = |ell: f64| {
        let d = ell - 1.0;
        first_scale * d * d + (d + ell / k).powi(2) - 4.0 / (k * k)
    };
    let (mut lo, mut hi) = (1.0, 1.0 + 2.0 / k);
    if !(excess(lo) < 0.0) || !(excess(hi) > 0.0) {
        return Err(Error::Synthesis(format!(
            "cannot bracket the feasible ell range for N = {dimension}, M = {exponent}"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 4.0 * f64::EPSILON {
            break;
        }
    }
    let ell_star = lo;
    if !(ell_star > 1.0) {
        return Err(Error::Synthesis("feasible ell range collapsed onto 1".into()));
    }
    Ok((ell_star, 1.0 + 0.5 * (ell_star - 1.0)))
}

#[derive(Debug, Clone, Serialize)]
pub struct MSynthesis {
    pub params: MSubParams,
    /// Time at which the support reaches the observation point.
    pub t_upper: f64,
    /// `W` in `T_u = W L^{1−M}`.
    pub w_constant: f64,
    pub r1: f64,
    pub alpha: f64,
    pub ell_star: f64,
}

fn check_positive_finite(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be positive and finite, got {v}")))
    }
}

/// Parameters of the speed-limited family for a datum with growth
/// coefficient `l` at the origin and an interior ball of radius `r` along `−e1`.
pub fn synthesize_m_params(l: f64, r: f64, dimension: usize, exponent: f64) -> Result<MSynthesis> {
    check_positive_finite("L", l)?;
    check_positive_finite("R", r)?;
    if !(exponent > 1.0) || dimension < 1 {
        return Err(domain("synthesis needs M > 1 and N ≥ 1"));
    }
    let n = dimension as f64;
    let k = 2.0 * n * (exponent - 1.0);
    let alpha = 2.0 * k;
    let ln2 = 2.0f64.ln();
    let ln_l_pow = (1.0 - exponent) * l.ln(); // ln L^{1-M}
    let r1 = r.min(ln_l_pow.exp());
    if !(r1 > 0.0) {
        return Err(Error::Synthesis(format!("r1 underflows for L = {l}, M = {exponent}")));
    }
    let s = alpha / (alpha + 1.0) * r1;
    let (ell_star, ell) = ell_policy(dimension, exponent)?;
    let ln_b = alpha.ln() + (exponent - 1.0) * ln2 + ln_l_pow - s.ln() - (ell - 1.0).ln();
    let b = ln_b.exp();
    if !b.is_finite() {
        return Err(Error::Synthesis(format!("b overflows (ln b = {ln_b})")));
    }
    let w = k / b;
    let ln_w_const = (exponent - 1.0) * ln2 - k.ln() - (ell - 1.0).ln();
    let w_constant = ln_w_const.exp();
    let t_upper = (ln_w_const + ln_l_pow).exp();
    let params = MSubParams::new(
        exponent,
        dimension,
        b,
        ell,
        k,
        w,
        s,
        origin_offset(dimension, r1),
    )?;
    let validity = params.validity();
    if !validity.is_valid() {
        return Err(Error::Synthesis(format!(
            "synthesized parameters violate the speed window: {validity:?}"
        )));
    }
    let growth = 2.0 / (exponent - 1.0);
    check_profile_below(&params.center, r, |x| params.eval(0.0, x), l, growth)?;
    Ok(MSynthesis {
        params,
        t_upper,
        w_constant,
        r1,
        alpha,
        ell_star,
    })
}

/// Samples `B(R v0, R)` and checks `sub(x) ≤ (L/2)|x|^growth`.
fn check_profile_below<F>(center_dir: &[f64], r: f64, sub: F, l: f64, growth: f64) -> Result<()>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let dim = center_dir.len();
    let ball_center = origin_offset(dim, r);
    let mut rng = ChaCha8Rng::seed_from_u64(PROFILE_SEED);
    for _ in 0..PROFILE_SAMPLES {
        let x = random_ball_point(&mut rng, &ball_center, r);
        let lhs = sub(&x)?;
        let rhs = 0.5 * l * norm(&x).powf(growth);
        if lhs > rhs * (1.0 + 1e-12) {
            return Err(Error::Synthesis(format!(
                "subsolution exceeds the datum profile at {x:?}: {lhs} > {rhs}"
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Relativistic family
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRelSub")]
pub struct RelSubParams {
    pub m: f64,
    pub dimension: usize,
    pub gamma: f64,
    pub r0: f64,
    /// Amplitude scale `U`.
    pub amplitude: f64,
    pub center: Vec<f64>,
    /// Horizon `T` of the unscaled family.
    pub horizon: f64,
    /// The `r1` that `gamma` was certified against.
    pub r1: f64,
    /// Supremum bound the synthesis used, when known.
    #[serde(default)]
    pub gamma0: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelSub {
    m: f64,
    dimension: usize,
    gamma: f64,
    r0: f64,
    amplitude: f64,
    center: Vec<f64>,
    horizon: f64,
    r1: f64,
    #[serde(default)]
    gamma0: Option<f64>,
}

impl TryFrom<RawRelSub> for RelSubParams {
    type Error = Error;
    fn try_from(r: RawRelSub) -> Result<Self> {
        let p = RelSubParams {
            m: r.m,
            dimension: r.dimension,
            gamma: r.gamma,
            r0: r.r0,
            amplitude: r.amplitude,
            center: r.center,
            horizon: r.horizon,
            r1: r.r1,
            gamma0: r.gamma0,
        };
        p.check()?;
        Ok(p)
    }
}

impl RelSubParams {
    pub fn check(&self) -> Result<()> {
        if !(self.m > 1.0) || self.dimension < 1 {
            return Err(domain("relativistic family needs m > 1 and N ≥ 1"));
        }
        if !(self.gamma >= 1.0) {
            return Err(domain(format!("gamma must be ≥ 1, got {}", self.gamma)));
        }
        for (name, v) in [
            ("r0", self.r0),
            ("U", self.amplitude),
            ("T", self.horizon),
            ("r1", self.r1),
        ] {
            check_positive_finite(name, v)?;
        }
        if self.r0 < 0.5 * self.r1 || self.r0 > self.r1 {
            return Err(domain(format!(
                "r0 = {} must lie in [r1/2, r1] with r1 = {}",
                self.r0, self.r1
            )));
        }
        if self.center.len() != self.dimension {
            return Err(domain("center dimension does not match"));
        }
        Ok(())
    }

    /// `τ = U^{m−1} t`
    pub fn scaled_time(&self, t: f64) -> f64 {
        self.amplitude.powf(self.m - 1.0) * t
    }

    /// The subsolution is certified on `[0, U^{1−m} T)`.
    pub fn scaled_horizon(&self) -> f64 {
        self.horizon / self.amplitude.powf(self.m - 1.0)
    }

    /// `A(τ) = ((m−1)(1+γτ))^{1/(m−1)}`
    pub fn a_unscaled(&self, tau: f64) -> f64 {
        ((self.m - 1.0) * (1.0 + self.gamma * tau)).powf(1.0 / (self.m - 1.0))
    }

    /// `r(τ) = r0 + log(1+γτ)/(γ(m−1))`
    pub fn radius_unscaled(&self, tau: f64) -> f64 {
        self.r0 + (self.gamma * tau).ln_1p() / (self.gamma * (self.m - 1.0))
    }

    /// Front radius at (scaled) time `t ≥ 0`.
    pub fn front_radius(&self, t: f64) -> f64 {
        self.radius_unscaled(self.scaled_time(t))
    }

    /// Front speed `dr/dt = U^{m−1}/((m−1)(1+γτ))`.
    pub fn front_speed(&self, t: f64) -> f64 {
        let um1 = self.amplitude.powf(self.m - 1.0);
        um1 / ((self.m - 1.0) * (1.0 + self.gamma * um1 * t))
    }

    /// Value just inside the front, `U/A(τ)`.
    pub fn jump_height(&self, t: f64) -> f64 {
        self.amplitude / self.a_unscaled(self.scaled_time(t))
    }

    fn check_time(&self, t: f64) -> Result<()> {
        if !(t >= 0.0) {
            return Err(domain(format!("time must be nonnegative, got {t}")));
        }
        let horizon = self.scaled_horizon();
        if t >= horizon {
            return Err(Error::HorizonExceeded { t, horizon });
        }
        Ok(())
    }

    pub fn eval_radial(&self, t: f64, dist: f64) -> Result<f64> {
        self.check_time(t)?;
        let tau = self.scaled_time(t);
        let r = self.radius_unscaled(tau);
        if dist >= r {
            return Ok(0.0);
        }
        let eta = (r * r - dist * dist).sqrt();
        Ok(self.amplitude * (1.0 + eta) / self.a_unscaled(tau))
    }

    pub fn eval(&self, t: f64, x: &[f64]) -> Result<f64> {
        if x.len() != self.dimension {
            return Err(domain("point dimension does not match parameters"));
        }
        self.eval_radial(t, crate::numerics::distance(x, &self.center))
    }
}

impl RadialSubsolution for RelSubParams {
    fn dimension(&self) -> usize {
        self.dimension
    }
    fn valid_until(&self) -> f64 {
        self.scaled_horizon()
    }
    fn value_at(&self, t: f64, dist: f64) -> Result<f64> {
        self.eval_radial(t, dist)
    }
}

pub fn eval_rel_sub(t: f64, x: &[f64], p: &RelSubParams) -> Result<f64> {
    p.eval(t, x)
}

pub fn front_radius_rel(t: f64, p: &RelSubParams) -> f64 {
    p.front_radius(t)
}

/// The bulk requirement `G(ρ, y)`: the relativistic family satisfies the
/// equation's inequality at a point with front radius `ρ` and distance `y`
/// from the center iff `γ ≥ G(ρ, y)`.
pub fn bulk_gamma_requirement(rho: f64, y: f64, dimension: usize, m: f64) -> Result<f64> {
    if !(rho > 0.0) || !(y >= 0.0) || y >= rho {
        return Err(domain(format!("need 0 ≤ y < rho, got rho = {rho}, y = {y}")));
    }
    Ok(g_unchecked(rho, y, dimension as f64, m))
}

#[inline]
fn g_unchecked(rho: f64, y: f64, n: f64, m: f64) -> f64 {
    let eta = ((rho - y) * (rho + y)).sqrt();
    let one_eta = 1.0 + eta;
    let d = (eta * eta * one_eta * one_eta + y * y).sqrt();
    let e = one_eta * one_eta + eta * one_eta - 1.0;
    let pm1 = one_eta.powf(m - 1.0);
    let pm = pm1 * one_eta;
    let f = -(n * pm / d + y * y * pm * e / (d * d * d) - m * y * y * pm1 / (eta * d));
    (rho / eta - f) / one_eta
}

/// Search settings for [`gamma0`].
#[derive(Debug, Clone, Copy)]
pub struct Gamma0Options {
    /// Grid points per axis of the coarse search.
    pub grid: usize,
    /// Relative width of the excluded band `y > ρ(1 − band)` next to the front.
    pub band: f64,
}

impl Default for Gamma0Options {
    fn default() -> Self {
        Self {
            grid: 512,
            band: 1e-3,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Gamma0 {
    /// `max(sup_H G, 1)`
    pub value: f64,
    pub sup_g: f64,
    pub argmax_rho: f64,
    pub argmax_y: f64,
}

/// The radial range `[r1/2, r1 + log(1+T)/(m−1)]` of the search region `H`.
pub fn gamma0_region(m: f64, horizon: f64, r1: f64) -> (f64, f64) {
    (0.5 * r1, r1 + horizon.ln_1p() / (m - 1.0))
}

/// `γ0 = max(1, sup G)` over `H = {(ρ, y): ρ ∈ [r1/2, r1 + log(1+T)/(m−1)], 0 ≤ y < ρ}`.
pub fn gamma0(dimension: usize, m: f64, horizon: f64, r1: f64) -> Gamma0 {
    gamma0_with(dimension, m, horizon, r1, Gamma0Options::default())
}

pub fn gamma0_with(dimension: usize, m: f64, horizon: f64, r1: f64, opts: Gamma0Options) -> Gamma0 {
    let n = dimension as f64;
    let (lo, hi) = gamma0_region(m, horizon, r1);
    let cells = opts.grid.max(3);
    let keep = 1.0 - opts.band;
    let rho_at = |i: usize| lo + (hi - lo) * i as f64 / (cells - 1) as f64;
    let y_at = |rho: f64, j: usize| rho * keep * j as f64 / (cells - 1) as f64;

    let (mut bi, mut bj, mut best) = (0, 0, f64::NEG_INFINITY);
    for i in 0..cells {
        let rho = rho_at(i);
        for j in 0..cells {
            let v = g_unchecked(rho, y_at(rho, j), n, m);
            if v > best {
                best = v;
                bi = i;
                bj = j;
            }
        }
    }

    // coordinate-wise golden-section refinement around the grid argmax
    let drho = (hi - lo) / (cells - 1) as f64;
    let mut rho = rho_at(bi);
    let mut y = y_at(rho, bj);
    let mut yfrac = if rho > 0.0 { y / (rho * keep) } else { 0.0 };
    let dfrac = 1.0 / (cells - 1) as f64;
    for _ in 0..60 {
        let prev = best;
        let (r_new, v_r) = golden_section_max(
            |r| g_unchecked(r, r * keep * yfrac, n, m),
            (rho - drho).max(lo),
            (rho + drho).min(hi),
            1e-13,
        );
        if v_r >= best {
            rho = r_new;
            best = v_r;
        }
        let (f_new, v_y) = golden_section_max(
            |f| g_unchecked(rho, rho * keep * f, n, m),
            (yfrac - dfrac).max(0.0),
            (yfrac + dfrac).min(1.0),
            1e-13,
        );
        if v_y >= best {
            yfrac = f_new;
            best = v_y;
        }
        y = rho * keep * yfrac;
        if best - prev <= 1e-15 * best.abs().max(1.0) {
            break;
        }
    }

    Gamma0 {
        value: best.max(1.0),
        sup_g: best,
        argmax_rho: rho,
        argmax_y: y,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelSynthesis {
    pub params: RelSubParams,
    pub t_upper: f64,
    /// `W = 4^m`
    pub w_constant: f64,
    pub gamma0: Gamma0,
}

/// Parameters of the relativistic family for a datum with growth
/// coefficient `l` at the origin and an interior ball of radius `r` along `−e1`.
pub fn synthesize_rel_params(l: f64, r: f64, dimension: usize, m: f64) -> Result<RelSynthesis> {
    check_positive_finite("L", l)?;
    check_positive_finite("R", r)?;
    if !(m > 1.0) || dimension < 1 {
        return Err(domain("synthesis needs m > 1 and N ≥ 1"));
    }
    let ln4 = 4.0f64.ln();
    let ln_l_pow = (1.0 - m) * l.ln(); // ln L^{1-m}
    let horizon = ((m + 1.0) * ln4 + ln_l_pow).exp();
    let r1 = r.min(1.0 / (m - 1.0)).min(1.0);
    let g0 = gamma0(dimension, m, horizon, r1);
    let gamma = g0.value.max(2.0);
    let r0 = r1 * (gamma - 1.0) / gamma;
    // U^{m-1} = (m−1) L^{m−1} r1 / (4^{m−1} γ)
    let ln_um1 = (m - 1.0).ln() - ln_l_pow - (m - 1.0) * ln4 + r1.ln() - gamma.ln();
    let amplitude = (ln_um1 / (m - 1.0)).exp();
    let x = (m - 1.0) * r1;
    let t_upper = ((m - 1.0) * ln4 + ln_l_pow).exp() * x.exp_m1() / x;
    let w_constant = 4.0f64.powf(m);
    let params = RelSubParams {
        m,
        dimension,
        gamma,
        r0,
        amplitude,
        center: origin_offset(dimension, r1),
        horizon,
        r1,
        gamma0: Some(g0.value),
    };
    params.check()?;
    check_profile_below(&params.center, r, |x| params.eval(0.0, x), l, 1.0 / (m - 1.0))?;
    Ok(RelSynthesis {
        params,
        t_upper,
        w_constant,
        gamma0: g0,
    })
}
