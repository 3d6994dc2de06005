//! The standard zero-area models Std(n): one representative per rotation
//! number, already in reduced cusp-word form.
//!
//! ```text
//! cargo run --example standard_models
//! ```

use whitney_graustein::legendrian::{scan_cusps, CuspWord};
use whitney_graustein::moves::standard_curve;
use whitney_graustein::ToleranceConfig;

fn main() -> whitney_graustein::Result<()> {
    let cfg = ToleranceConfig::default();
    println!("{:>3} {:>11} {:>4}  word", "n", "area", "rot");
    for n in -3..=3 {
        let c = standard_curve(n, 512, &cfg)?;
        let word = CuspWord::from_cusps(&scan_cusps(&c, &cfg)?)?;
        println!(
            "{n:>3} {:>11.2e} {:>4}  {}{}",
            c.signed_area(),
            c.rotation_number(&cfg)?,
            word,
            c.name()
                .filter(|name| name.contains("alpha"))
                .map(|name| format!("   [constants: {name}]"))
                .unwrap_or_default()
        );
    }
    Ok(())
}
