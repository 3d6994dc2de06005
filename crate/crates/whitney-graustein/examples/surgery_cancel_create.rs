//! Reidemeister-I surgeries on the front: cancelling an adjacent cusp pair of
//! opposite orientation, and creating one back.
//!
//! ```text
//! cargo run --example surgery_cancel_create
//! ```

use whitney_graustein::catalog::catalog;
use whitney_graustein::legendrian::{scan_cusps, CuspOrientation, CuspWord};
use whitney_graustein::moves::{cancel_cusp_pair, create_cusp_pair, standard_curve};
use whitney_graustein::{concatenate, verify, ToleranceConfig};

fn main() -> whitney_graustein::Result<()> {
    let cfg = ToleranceConfig::default();

    // The figure-eight carries word (-,+,+,-); the first pair is mixed.
    let f8 = catalog("figure8", 512, &cfg)?;
    let before = CuspWord::from_cusps(&scan_cusps(&f8, &cfg)?)?;
    let (two_cusp, h) = cancel_cusp_pair(&f8, 0, &cfg)?;
    let after = CuspWord::from_cusps(&scan_cusps(&two_cusp, &cfg)?)?;
    let report = verify(&h, &f8, &two_cusp, true, &cfg);
    println!("figure8 word {before} -> {after}");
    println!(
        "  certified: {} (min relative speed {:.2e}, every frame area <= {:.1e})",
        report.pass,
        report.min_relative_speed,
        report.max_frame_area.unwrap_or(f64::NAN)
    );

    // Creating a pair is the inverse move; the window's x' > 0 forces (+,-).
    let std0 = standard_curve(0, 512, &cfg)?;
    let labels = (CuspOrientation::Up, CuspOrientation::Down);
    let (four_cusp, h1) = create_cusp_pair(&std0, (0.9, 1.4), labels, &cfg)?;
    let created = CuspWord::from_cusps(&scan_cusps(&four_cusp, &cfg)?)?;
    println!("std(0) word +- -> {created} after insertion");

    // Cancel the pair we just made: the word round-trips.
    let cusps = scan_cusps(&four_cusp, &cfg)?;
    let first = (0..cusps.len())
        .find(|&k| cusps[k].s > 0.9 && cusps[(k + 1) % cusps.len()].s < 1.4)
        .expect("created pair is adjacent");
    let (back, h2) = cancel_cusp_pair(&four_cusp, first, &cfg)?;
    let restored = CuspWord::from_cusps(&scan_cusps(&back, &cfg)?)?;
    let round = concatenate(&h1, &h2)?;
    let report = verify(&round, &std0, &back, true, &cfg);
    println!("cancel it again -> {restored}; round trip certified: {}", report.pass);
    Ok(())
}
