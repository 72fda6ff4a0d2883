//! Estimates the growth coefficient of a datum at its edge and evaluates
//! the waiting-time bounds for it.
//!
//! ```text
//! cargo run --example bounds
//! ```

use fluxsat::bounds::{estimate_growth_coefficient, lower_bound_t_ell, upper_bound_t_u};
use fluxsat::ModelKind;

fn main() -> fluxsat::Result<()> {
    for model in [ModelKind::relativistic(2.0, 1)?, ModelKind::speed_limited(3.0, 1)?] {
        let e = model.growth_exponent();
        // u0 = 3 (1 − |x|)^e, observed from the edge point x0 = 1 looking inward
        let u0 = |x: &[f64]| 3.0 * (1.0 - x[0].abs()).max(0.0).powf(e);
        let l = estimate_growth_coefficient(u0, &[1.0], &[-1.0], e, 0.5);
        let (t_u, w) = upper_bound_t_u(l, &model)?;
        println!("{:?} (exponent {}): L ≈ {l:.6}", model.kind, model.exponent);
        println!("  T_u = {t_u:.6} with W = {w:.6}");
        println!("  T_ell = {:.6} for an assumed C = 0.1", lower_bound_t_ell(l, Some(0.1), &model)?);
    }
    let flat = |_: &[f64]| 1.0;
    let l = estimate_growth_coefficient(flat, &[0.0], &[1.0], 2.0, 1.0);
    println!("datum positive at x0: L = {l}");
    Ok(())
}
