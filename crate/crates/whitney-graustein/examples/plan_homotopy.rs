//! The end-to-end planner: a certified regular homotopy between two curves of
//! equal rotation number, with the construction trace and the verifier's
//! report.
//!
//! ```text
//! cargo run --example plan_homotopy
//! ```

use whitney_graustein::catalog::catalog;
use whitney_graustein::{plan_whitney_graustein, verify, Error, ToleranceConfig};

fn main() -> whitney_graustein::Result<()> {
    let cfg = ToleranceConfig::default();
    let n = 384;

    let f8 = catalog("figure8", n, &cfg)?;
    let std0 = catalog("std(0)", n, &cfg)?;
    let h = plan_whitney_graustein(&f8, &std0, &cfg)?;

    println!("planned {} segments; construction trace:", h.segment_count());
    for line in &h.metadata.trace {
        println!("  {line}");
    }

    let report = verify(&h, &f8, &std0, false, &cfg);
    println!("\nindependent verification:\n{}", report.summary());

    // Equal rotation numbers are necessary: the planner refuses otherwise.
    let circle = catalog("circle", n, &cfg)?;
    match plan_whitney_graustein(&circle, &f8, &cfg) {
        Err(Error::RotationMismatch { rot0, rot1 }) => {
            println!("circle vs figure8: no homotopy exists (rot {rot0} vs {rot1})")
        }
        other => println!("unexpected: {:?}", other.map(|_| "homotopy")),
    }
    Ok(())
}
