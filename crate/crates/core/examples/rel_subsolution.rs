//! Computes γ₀, synthesizes a relativistic-family subsolution and checks its jump.
//!
//! ```text
//! cargo run --example rel_subsolution -- [L] [R] [N] [m]
//! ```

use fluxsat::subsolutions::{gamma0, synthesize_rel_params};
use fluxsat::verify::{certify_rel, jump_check_rel, CertifyOptions};

fn arg(i: usize, default: f64) -> f64 {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> fluxsat::Result<()> {
    let (l, r, n, m) = (arg(1, 1.0), arg(2, 1.0), arg(3, 1.0) as usize, arg(4, 2.0));

    let g = gamma0(n, m, 1.0, 1.0);
    println!(
        "gamma0(N={n}, m={m}, T=1, r1=1) = {:.6} (sup G = {:.6} at rho = {:.4}, y = {:.4})",
        g.value, g.sup_g, g.argmax_rho, g.argmax_y
    );

    let syn = synthesize_rel_params(l, r, n, m)?;
    let p = &syn.params;
    println!("\nL = {l}, R = {r}, N = {n}, m = {m}");
    println!("gamma = {:.6}, U = {:.6}, r0 = {:.6}", p.gamma, p.amplitude, p.r0);
    println!("horizon = {}, T_u = {:.6}, W = {}", p.horizon, syn.t_upper, syn.w_constant);

    println!("\n{:>8} {:>10} {:>12} {:>12}", "t", "front", "speed", "jump");
    let end = p.scaled_horizon();
    for k in 0..=4 {
        let t = 0.99 * end * k as f64 / 4.0;
        println!(
            "{t:>8.3} {:>10.5} {:>12.6} {:>12.6}",
            p.front_radius(t),
            p.front_speed(t),
            p.jump_height(t)
        );
    }

    let t = 0.1 * end;
    let j = p.jump_height(t);
    let jc = jump_check_rel(t, p, (0.2 * j, 0.8 * j), (0.1 * j, 0.5 * j))?;
    println!("\njump inequality at t = {t:.3}: lhs = {:.3e}, rhs = {:.3e}", jc.lhs, jc.rhs);

    let report = certify_rel(p, &CertifyOptions::default());
    println!(
        "certification: {} (min gamma − G = {:.4})",
        if report.pass { "pass" } else { "FAIL" },
        report.min_slack
    );
    Ok(())
}
