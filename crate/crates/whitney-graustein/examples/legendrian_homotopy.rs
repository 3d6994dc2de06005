//! Exporting a planar homotopy to Legendrian space: every zero-area frame
//! lifts, and the lifted frames form a homotopy of Legendrian curves whose
//! rotation number never moves.
//!
//! ```text
//! cargo run --example legendrian_homotopy
//! ```

use whitney_graustein::catalog::catalog;
use whitney_graustein::{lift_homotopy, plan_whitney_graustein, ToleranceConfig};

fn main() -> whitney_graustein::Result<()> {
    let cfg = ToleranceConfig::default();
    let n = 384;

    let f8 = catalog("figure8", n, &cfg)?;
    let std0 = catalog("std(0)", n, &cfg)?;
    let h = plan_whitney_graustein(&f8, &std0, &cfg)?;

    // The zero-area part of the plan (everything after area normalization).
    let (from, to) = h.metadata.zero_area_segments.expect("planner marks the range");
    let sub = h.sub_homotopy(from, to)?;

    let sparse = ToleranceConfig { frame_count: 8, ..cfg.clone() };
    let frames = lift_homotopy(&sub, &sparse)?;
    println!("lifted {} frames:", frames.len());
    println!("{:>8} {:>14} {:>5}", "t", "residual", "rot");
    for (t, gamma) in &frames {
        println!(
            "{t:>8.4} {:>14.3e} {:>5}",
            gamma.legendrian_residual(&cfg),
            gamma.rotation_number(&cfg)?
        );
    }
    Ok(())
}
