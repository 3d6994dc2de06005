//! Cusp-word calculus: cancelling adjacent mixed pairs down to the normal
//! form dictated by (c₋ - c₊)/2.
//!
//! ```text
//! cargo run --example word_reduction
//! ```

use whitney_graustein::legendrian::{CuspOrientation, CuspWord, Side};
use whitney_graustein::moves::reduce_word;

fn word(text: &str) -> CuspWord {
    let letters = text
        .chars()
        .map(|c| match c {
            '+' => CuspOrientation::Up,
            _ => CuspOrientation::Down,
        })
        .collect();
    CuspWord::new(letters, Side::Right).unwrap()
}

fn main() -> whitney_graustein::Result<()> {
    for text in ["-++-", "----", "++-+", "+-+-+--+", "+++-"] {
        let w = word(text);
        let (normal, trace) = reduce_word(&w)?;
        println!("{text}  (value {:+})", w.value());
        for step in &trace.steps {
            println!("    {step}");
        }
        println!("    normal form: {normal}");
    }
    Ok(())
}
