//! Measures waiting times for L ∈ {1, 2, 4} and fits the log–log slope.
//!
//! ```text
//! cargo run --release --example waiting_time -- [rel|slpm]
//! ```

use fluxsat::bounds::{scaling_study, EdgeTemplate};
use fluxsat::solver::WaitingTimeSetup;
use fluxsat::ModelKind;

fn main() -> fluxsat::Result<()> {
    let slpm = std::env::args().nth(1).as_deref() == Some("slpm");
    let (model, r_max) = if slpm {
        (ModelKind::speed_limited(2.0, 1)?, 3.0)
    } else {
        (ModelKind::relativistic(2.0, 1)?, 2.0)
    };
    let template = EdgeTemplate { edge: 1.0, plateau_depth: Some(0.5) };
    let setup = WaitingTimeSetup {
        x0_offset: 0.01,
        threshold: None,
        t_max: 40.0,
        r_max,
        cells: 1024,
        l: None,
        c_lower: None,
    };
    let study = scaling_study(&model, &[1.0, 2.0, 4.0], &template, &setup, 1)?;
    println!("{:>4} {:>12} {:>12}", "L", "t*", "T_u");
    for r in &study.reports {
        println!("{:>4} {:>12.6} {:>12.6}", r.l_used, r.t_star_measured, r.t_upper);
    }
    if let Some(fit) = &study.fit {
        println!("slope = {:.4} (residual {:.2e})", fit.slope, fit.residual);
    }
    println!("all within 1.1 × T_u: {}", study.within_upper_bound);
    Ok(())
}
