//! Lifting a zero-area curve to a Legendrian curve for the contact structure
//! annihilated by dz + x dy, and projecting it back.
//!
//! ```text
//! cargo run --example legendrian_lift
//! ```

use whitney_graustein::catalog::catalog;
use whitney_graustein::legendrian::lift;
use whitney_graustein::{Error, ToleranceConfig};

fn main() -> whitney_graustein::Result<()> {
    let cfg = ToleranceConfig::default();
    let n = 2048;

    // The figure-eight encloses zero signed area, so its lift closes up.
    let f8 = catalog("figure8", n, &cfg)?;
    let gamma = lift(&f8, 0.0, &cfg)?;
    println!("lifted figure8: {} samples", gamma.n());
    println!("legendrian residual |z' + x y'|: {:.3e}", gamma.legendrian_residual(&cfg));

    // The z coordinate has the closed form -sin(3s)/3 - sin(s).
    let mut worst = 0.0f64;
    for i in 0..n {
        let s = std::f64::consts::TAU * i as f64 / n as f64;
        let want = -(3.0 * s).sin() / 3.0 - s.sin();
        worst = worst.max((gamma.zs()[i] - want).abs());
    }
    println!("max |z - closed form|: {worst:.3e}");

    // Dropping z returns the original samples bit for bit.
    let proj = gamma.lagrangian_projection();
    println!(
        "lagrangian projection identical to input: {}",
        proj.xs() == f8.xs() && proj.ys() == f8.ys()
    );

    // A curve with enclosed area cannot lift to a closed Legendrian curve.
    let circle = catalog("circle", 512, &cfg)?;
    match lift(&circle, 0.0, &cfg) {
        Err(Error::NonZeroArea { area, .. }) => {
            println!("circle refuses to lift: enclosed area {area:.6}")
        }
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
