//! Evolves a speed-limited bump and prints mass and support over time.
//!
//! ```text
//! cargo run --release --example simulate
//! ```

use std::sync::Arc;

use fluxsat::solver::{init_state, Datum, RadialGrid, Solver, Trace, DEFAULT_RELATIVE_THRESHOLD};
use fluxsat::ModelKind;

fn main() -> fluxsat::Result<()> {
    let model = ModelKind::speed_limited(2.0, 2)?;
    let grid = Arc::new(RadialGrid::new(2, 3.0, 512)?);
    let datum = Datum::Bump { height: 1.0, radius: 1.0, power: 2.0 };
    let state = init_state(grid.clone(), &datum)?;
    let threshold = DEFAULT_RELATIVE_THRESHOLD * state.max_value();

    let mut trace = Trace::new(0.1, threshold, grid.cell_of(1.2));
    let mut solver = Solver::new(model, state)?;
    let summary = solver.run(1.0, &mut [&mut trace])?;

    println!("{:>6} {:>14} {:>10} {:>12}", "t", "mass", "support", "u(1.2)");
    for row in &trace.rows {
        println!("{:>6.2} {:>14.10} {:>10.4} {:>12.4e}", row.t, row.mass, row.support_radius, row.u_at_x0);
    }
    println!("{} steps to t = {:.3}", summary.steps, summary.t);
    Ok(())
}
