//! The two prototype flux-saturated porous medium equations.
//!
//! With viscosity and limiting speed normalized to one,
//!
//! ```text
//! relativistic PM:   u_t = div( u^m ∇u / sqrt(u² + |∇u|²) )
//! speed-limited PM:  u_t = div( u ∇u^{M-1} / sqrt(1 + |∇u^{M-1}|²) )
//! ```
//!
//! Every construction in this crate is radially symmetric, so fluxes are
//! exposed through their scalar radial component `a(z, g)` where `z` is the
//! value of `u` and `g` the radial derivative. Inputs in physical units must
//! be rescaled by the caller with `t̂ = (c²/ν) t`, `x̂ = (c/ν) x`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

/// Values of `z` below this are treated as zero by the speed-limited flux.
pub const SLPM_ZERO_GUARD: f64 = 1e-300;

/// `max_{q ≥ 0} q / (1 + q²)^{3/2}`, attained at `q = 1/√2`.
const SLPM_AZ_PEAK: f64 = 0.384_900_179_459_750_5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    RelativisticPm,
    SpeedLimitedPm,
}

/// Which prototype equation is solved, with its exponent and space dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawModel")]
pub struct ModelKind {
    pub kind: Equation,
    /// `m` for the relativistic equation, `M` for the speed-limited one.
    pub exponent: f64,
    pub dimension: usize,
}

#[derive(Deserialize)]
struct RawModel {
    kind: Equation,
    exponent: f64,
    dimension: usize,
}

impl TryFrom<RawModel> for ModelKind {
    type Error = Error;
    fn try_from(raw: RawModel) -> Result<Self> {
        ModelKind::new(raw.kind, raw.exponent, raw.dimension)
    }
}

impl ModelKind {
    pub fn new(kind: Equation, exponent: f64, dimension: usize) -> Result<Self> {
        if !(exponent > 1.0) || !exponent.is_finite() {
            return Err(domain(format!("exponent must be a finite value > 1, got {exponent}")));
        }
        if dimension < 1 {
            return Err(domain("dimension must be at least 1"));
        }
        Ok(Self {
            kind,
            exponent,
            dimension,
        })
    }

    pub fn relativistic(m: f64, dimension: usize) -> Result<Self> {
        Self::new(Equation::RelativisticPm, m, dimension)
    }

    pub fn speed_limited(big_m: f64, dimension: usize) -> Result<Self> {
        Self::new(Equation::SpeedLimitedPm, big_m, dimension)
    }

    /// Radial flux `a(z, g)`; rejects negative `z`.
    pub fn flux(&self, z: f64, g: f64) -> Result<f64> {
        check_nonnegative(z)?;
        Ok(self.flux_unchecked(z, g))
    }

    /// Radial flux without the sign check on `z`, for hot loops.
    #[inline]
    pub fn flux_unchecked(&self, z: f64, g: f64) -> f64 {
        match self.kind {
            Equation::RelativisticPm => rel_pm(z, g, self.exponent),
            Equation::SpeedLimitedPm => slpm(z, g, self.exponent),
        }
    }

    /// Saturation level `φ(z)`: `z^m`, resp. `z`.
    pub fn recession_phi(&self, z: f64) -> Result<f64> {
        recession_phi(z, self)
    }

    /// Formal speed of the support: `u^{m-1}`, resp. `1`.
    pub fn front_speed_bound(&self, umax: f64) -> f64 {
        front_speed_bound(umax, self)
    }

    /// Critical growth exponent of the initial datum at a boundary point:
    /// `1/(m-1)`, resp. `2/(M-1)`.
    pub fn growth_exponent(&self) -> f64 {
        match self.kind {
            Equation::RelativisticPm => 1.0 / (self.exponent - 1.0),
            Equation::SpeedLimitedPm => 2.0 / (self.exponent - 1.0),
        }
    }

    /// Upper bounds `(sup |∂a/∂z|, sup ∂a/∂g)` over `0 ≤ z ≤ zmax`, `g ∈ ℝ`.
    ///
    /// These control the monotonicity time step of the finite-volume scheme.
    #[inline]
    pub fn derivative_bounds(&self, zmax: f64) -> (f64, f64) {
        let e = self.exponent;
        match self.kind {
            Equation::RelativisticPm => {
                // a_g = z^{m+2}/(z²+g²)^{3/2} ≤ z^{m-1};  |a_z| ≤ m z^{m-1}
                let p = powf_fast(zmax, e - 1.0);
                (e * p, p)
            }
            Equation::SpeedLimitedPm => {
                // a_z = q/√(1+q²) + (M-2) q/(1+q²)^{3/2};  a_g = (M-1) z^{M-1}/(1+q²)^{3/2}
                let az = 1.0 + (e - 2.0).abs() * SLPM_AZ_PEAK;
                (az, (e - 1.0) * powf_fast(zmax, e - 1.0))
            }
        }
    }
}

fn check_nonnegative(z: f64) -> Result<()> {
    if z < 0.0 || z.is_nan() {
        Err(domain(format!("flux argument z must be nonnegative, got {z}")))
    } else {
        Ok(())
    }
}

/// `z^e`, with a fast path for small integer exponents.
#[inline]
pub(crate) fn powf_fast(z: f64, e: f64) -> f64 {
    if e == 1.0 {
        z
    } else if e == 2.0 {
        z * z
    } else if e == 3.0 {
        z * z * z
    } else if e == 0.0 {
        1.0
    } else {
        z.powf(e)
    }
}

#[inline]
fn rel_pm(z: f64, g: f64, m: f64) -> f64 {
    if z == 0.0 || g == 0.0 {
        return 0.0;
    }
    // z^m g / sqrt(z² + g²), written to avoid overflow of g² for huge g
    let (big, small) = if g.abs() > z { (g.abs(), z) } else { (z, g.abs()) };
    let r = small / big;
    let norm = big * (1.0 + r * r).sqrt();
    powf_fast(z, m) * (g / norm)
}

#[inline]
fn slpm(z: f64, g: f64, big_m: f64) -> f64 {
    if z < SLPM_ZERO_GUARD || g == 0.0 {
        return 0.0;
    }
    let q = (big_m - 1.0) * powf_fast(z, big_m - 2.0) * g;
    if !q.is_finite() {
        return z * g.signum();
    }
    let sat = if q.abs() > 1.0 {
        let r = 1.0 / q;
        q.signum() / (1.0 + r * r).sqrt()
    } else {
        q / (1.0 + q * q).sqrt()
    };
    z * sat
}

/// `a(z, g) = z^m g / sqrt(z² + g²)`.
pub fn flux_rel_pm(z: f64, g: f64, m: f64) -> Result<f64> {
    check_nonnegative(z)?;
    Ok(rel_pm(z, g, m))
}

/// `a(z, g) = z q / sqrt(1 + q²)` with `q = (M-1) z^{M-2} g`.
pub fn flux_slpm(z: f64, g: f64, big_m: f64) -> Result<f64> {
    check_nonnegative(z)?;
    Ok(slpm(z, g, big_m))
}

pub fn recession_phi(z: f64, model: &ModelKind) -> Result<f64> {
    check_nonnegative(z)?;
    Ok(match model.kind {
        Equation::RelativisticPm => powf_fast(z, model.exponent),
        Equation::SpeedLimitedPm => z,
    })
}

pub fn front_speed_bound(umax: f64, model: &ModelKind) -> f64 {
    match model.kind {
        Equation::RelativisticPm => powf_fast(umax.max(0.0), model.exponent - 1.0),
        Equation::SpeedLimitedPm => 1.0,
    }
}
