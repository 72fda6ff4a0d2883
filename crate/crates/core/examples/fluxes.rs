//! Tabulates both saturating fluxes and their recession functions.
//!
//! ```text
//! cargo run --example fluxes
//! ```

use fluxsat::ModelKind;

fn main() -> fluxsat::Result<()> {
    let rel = ModelKind::relativistic(2.0, 1)?;
    let slpm = ModelKind::speed_limited(2.0, 1)?;
    let z = 0.5;
    println!("z = {z}");
    println!("{:>10} {:>14} {:>14}", "g", "rel a(z,g)", "slpm a(z,g)");
    for g in [0.0, 0.1, 1.0, 10.0, 1e3, 1e6] {
        println!("{g:>10.0e} {:>14.8} {:>14.8}", rel.flux(z, g)?, slpm.flux(z, g)?);
    }
    println!("recession φ(z): rel {:.8}, slpm {:.8}", rel.recession_phi(z)?, slpm.recession_phi(z)?);
    println!(
        "front speed bound at umax = 1: rel {:.3}, slpm {:.3}",
        rel.front_speed_bound(1.0),
        slpm.front_speed_bound(1.0)
    );
    println!(
        "critical growth exponents: rel {}, slpm {}",
        rel.growth_exponent(),
        slpm.growth_exponent()
    );
    Ok(())
}
