//! Runs the solver from an M-family subsolution raised by 5% and tracks
//! how far the numerical solution dips below the subsolution.
//!
//! ```text
//! cargo run --release --example comparison -- [cells]
//! ```

use fluxsat::subsolutions::synthesize_m_params;
use fluxsat::verify::{comparison_test, ComparisonConfig};
use fluxsat::ModelKind;

fn main() -> fluxsat::Result<()> {
    let cells = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1024);
    let model = ModelKind::speed_limited(2.0, 1)?;
    let p = synthesize_m_params(1.0, 1.0, 1, 2.0)?.params;
    let cfg = ComparisonConfig { cells, r_max: 3.0, t_end: 0.8 * p.lifetime, every: 25 };
    let rep = comparison_test(&model, &p, 0.05, &cfg)?;
    println!("cells = {cells}, t_end = {:.4}", cfg.t_end);
    println!(
        "min (u − u_sub) = {:.3e} at t = {:.4}, r = {:.4} ({} checks, {} steps)",
        rep.min_gap, rep.at_t, rep.at_r, rep.checks, rep.steps
    );
    println!("allowed: ≥ {:.3e}", -0.05 * rep.umax);
    Ok(())
}
