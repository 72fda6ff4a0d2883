//! Synthesizes and certifies a speed-limited (M-family) subsolution.
//!
//! ```text
//! cargo run --example m_subsolution -- [L] [R] [N] [M]
//! ```

use fluxsat::subsolutions::synthesize_m_params;
use fluxsat::verify::{certify_m, CertifyOptions};

fn arg(i: usize, default: f64) -> f64 {
    std::env::args().nth(i).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() -> fluxsat::Result<()> {
    let (l, r, n, big_m) = (arg(1, 1.0), arg(2, 1.0), arg(3, 1.0) as usize, arg(4, 2.0));
    let syn = synthesize_m_params(l, r, n, big_m)?;
    let p = &syn.params;
    println!("L = {l}, R = {r}, N = {n}, M = {big_m}");
    println!("ell* = {:.6}, ell = {:.6}", syn.ell_star, p.ell);
    println!("K = {}, alpha = {}, r1 = {:.6}", p.k, syn.alpha, syn.r1);
    println!("s = {:.6}, b = {:.6}, w = {:.6}", p.s, p.b, p.w);
    println!("lifetime = {:.6}, T_u = {:.6}, W = {:.6}", p.lifetime, syn.t_upper, syn.w_constant);

    println!("\n{:>8} {:>12} {:>12}", "t", "support", "u(t, center)");
    for k in 0..=4 {
        let t = 0.99 * p.lifetime * k as f64 / 4.0;
        println!("{t:>8.4} {:>12.6} {:>12.6}", p.support_radius(t), p.eval_radial(t, 0.0)?);
    }

    let report = certify_m(p, &CertifyOptions::default());
    println!(
        "\ncertification: {} ({} samples, max residual {:.2e}, min slack {:.2e})",
        if report.pass { "pass" } else { "FAIL" },
        report.n_samples,
        report.max_residual,
        report.min_slack
    );
    Ok(())
}
