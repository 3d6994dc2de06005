//! Front cusps and the cusp word: reading the rotation number off the front
//! projection three combinatorial ways.
//!
//! ```text
//! cargo run --example cusps_and_words
//! ```

use whitney_graustein::catalog::catalog;
use whitney_graustein::legendrian::{lift, rot_from_cusps, CuspWord};
use whitney_graustein::ToleranceConfig;

fn main() -> whitney_graustein::Result<()> {
    let cfg = ToleranceConfig::default();

    for name in ["figure8", "std(0)", "std(2)", "std(-1)"] {
        let curve = catalog(name, 1024, &cfg)?;
        let gamma = lift(&curve, 0.0, &cfg)?;
        let cusps = gamma.detect_cusps(&cfg)?;

        println!("{name}:");
        println!("  {:>10}  side  orient  sign(x')", "s");
        for c in &cusps {
            println!(
                "  {:>10.6}   {}     {}       {:+}",
                c.s, c.side, c.orientation, c.x_prime_sign
            );
        }
        let word = CuspWord::from_cusps(&cusps)?;
        let t = word.tally();
        println!("  word {word}");
        println!(
            "  rot = λ₋-ρ₊ = {}  = ρ₋-λ₊ = {}  = (c₋-c₊)/2 = {}  (winding: {})",
            t.left_down - t.right_up,
            t.right_down - t.left_up,
            (t.down() - t.up()) / 2,
            curve.rotation_number(&cfg)?
        );
        assert_eq!(rot_from_cusps(&word)?, curve.rotation_number(&cfg)?);
    }
    Ok(())
}
