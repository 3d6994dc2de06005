//! Deforming a curve to zero signed area through a certified regular
//! homotopy, so it can be lifted to a closed Legendrian curve.
//!
//! ```text
//! cargo run --example area_normalization
//! ```

use whitney_graustein::catalog::catalog;
use whitney_graustein::moves::normalize_area;
use whitney_graustein::{verify, ToleranceConfig};

fn main() -> whitney_graustein::Result<()> {
    let cfg = ToleranceConfig::default();

    for name in ["circle", "kcircle(-2)", "figure8"] {
        let curve = catalog(name, 512, &cfg)?;
        let (flat, h) = normalize_area(&curve, &cfg)?;
        let report = verify(&h, &curve, &flat, false, &cfg);
        println!(
            "{name}: area {:+.6} -> {:+.1e} in {} segment(s); rot {} preserved; certified: {}",
            curve.signed_area(),
            flat.signed_area(),
            h.segment_count(),
            flat.rotation_number(&cfg)?,
            report.pass
        );
    }
    Ok(())
}
