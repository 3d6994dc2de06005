//! The JSON document formats: bit-exact round trips (numbers travel as
//! 17-significant-digit decimal strings) and Fourier ingestion.
//!
//! ```text
//! cargo run --example documents
//! ```

use whitney_graustein::catalog::catalog;
use whitney_graustein::io::{self, CurveDocument, FourierCoeffs, FourierSpec, Num};
use whitney_graustein::ToleranceConfig;

fn main() -> whitney_graustein::Result<()> {
    let cfg = ToleranceConfig::default();

    let curve = catalog("figure8", 64, &cfg)?;
    let doc = CurveDocument::from_curve(&curve);
    let text = io::serialize(&doc)?;
    println!("serialized figure8 at 64 samples: {} bytes", text.len());

    let back = io::parse::<CurveDocument>(&text)?.to_curve(64)?;
    println!(
        "round trip bit-exact: {}",
        back.xs() == curve.xs() && back.ys() == curve.ys()
    );

    // Fourier documents are sampled on ingest.
    let harmonic = CurveDocument {
        version: 1,
        name: Some("ellipse".into()),
        samples: None,
        fourier: Some(FourierSpec {
            x: FourierCoeffs { a0: Num(0.0), a: vec![Num(1.5)], b: vec![] },
            y: FourierCoeffs { a0: Num(0.0), a: vec![], b: vec![Num(0.8)] },
            n_samples: Some(256),
        }),
        z: None,
    };
    let ellipse = harmonic.to_curve(1024)?;
    println!(
        "fourier ellipse: {} samples, rot {}, area {:.4}",
        ellipse.n(),
        ellipse.rotation_number(&cfg)?,
        ellipse.signed_area()
    );
    Ok(())
}
