//! What the verifier catches: a family of individually regular curves whose
//! rotation number silently jumps as an inner loop pinches off. Each slice
//! passes the regularity certificate, but the tangent field is discontinuous
//! in time — exactly the failure mode the tangent-angle criterion exists for.
//!
//! ```text
//! cargo run --example verify_negative
//! ```

use whitney_graustein::catalog::fig2_family;
use whitney_graustein::homotopy::{HomotopyMetadata, Interpolator, RegularHomotopy, Segment};
use whitney_graustein::{verify, ToleranceConfig};

fn main() -> whitney_graustein::Result<()> {
    let cfg = ToleranceConfig::default();
    let n = 384;
    let frames = 17;

    let keyframes: Vec<_> = (0..frames)
        .map(|j| fig2_family(j as f64 / (frames - 1) as f64, n))
        .collect::<whitney_graustein::Result<_>>()?;
    for (j, k) in keyframes.iter().enumerate() {
        let rot = k.rotation_number(&cfg)?;
        if j == 0 || j == frames - 1 {
            println!("slice {j}: regular, rot {rot}");
        }
    }

    let segments = (0..frames - 1)
        .map(|_| Segment::new(Interpolator::StraightLine { area_target: None }))
        .collect();
    let family = RegularHomotopy::new(keyframes, segments, HomotopyMetadata::default())?;
    let report = verify(
        &family,
        &family.first().clone(),
        &family.last().clone(),
        false,
        &cfg,
    );
    println!("\nverifier on the shrinking-loop family:\n{}", report.summary());
    assert!(!report.pass);
    Ok(())
}
