//! Rotation numbers of the builtin catalog: the complete invariant of
//! regular closed plane curves up to regular homotopy.
//!
//! ```text
//! cargo run --example rotation_numbers
//! ```

use whitney_graustein::catalog::catalog;
use whitney_graustein::ToleranceConfig;

fn main() -> whitney_graustein::Result<()> {
    let cfg = ToleranceConfig::default();
    let n = 1024;

    println!("{:<14} {:>4} {:>14}", "curve", "rot", "signed area");
    for name in [
        "circle",
        "kcircle(2)",
        "kcircle(-2)",
        "kcircle(3)",
        "figure8",
        "std(0)",
        "std(-1)",
    ] {
        let curve = catalog(name, n, &cfg)?;
        println!(
            "{:<14} {:>4} {:>14.6}",
            name,
            curve.rotation_number(&cfg)?,
            curve.signed_area()
        );
    }

    // The tangent of a curve traversed backwards winds the other way.
    let f8 = catalog("figure8", n, &cfg)?;
    let reversed = f8.reverse_orientation();
    println!(
        "\nfigure8 reversed: rot {} (forward {})",
        reversed.rotation_number(&cfg)?,
        f8.rotation_number(&cfg)?
    );
    Ok(())
}
