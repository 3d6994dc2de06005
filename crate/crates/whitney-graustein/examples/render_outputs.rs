//! Rendering: the front projection with labelled cusps as SVG, and homotopy
//! frames as CSV and layered SVG. Files land in `target/render/`.
//!
//! ```text
//! cargo run --example render_outputs
//! ```

use whitney_graustein::catalog::catalog;
use whitney_graustein::legendrian::lift;
use whitney_graustein::render::{render_frames, render_front_svg, FrameFormat};
use whitney_graustein::{plan_whitney_graustein, ToleranceConfig};

fn main() -> whitney_graustein::Result<()> {
    let cfg = ToleranceConfig::default();
    let out = std::path::Path::new("target/render");
    std::fs::create_dir_all(out)?;

    let f8 = catalog("figure8", 512, &cfg)?;
    let gamma = lift(&f8, 0.0, &cfg)?;
    render_front_svg(&gamma, &out.join("figure8_front.svg"), &cfg)?;
    println!("wrote {}", out.join("figure8_front.svg").display());

    let std0 = catalog("std(0)", 384, &cfg)?;
    let f8_small = catalog("figure8", 384, &cfg)?;
    let h = plan_whitney_graustein(&f8_small, &std0, &cfg)?;
    let csv_cfg = ToleranceConfig { frame_count: 24, ..cfg.clone() };
    render_frames(&h, &out.join("homotopy.csv"), FrameFormat::Csv, &csv_cfg)?;
    render_frames(&h, &out.join("homotopy.svg"), FrameFormat::Svg, &csv_cfg)?;
    println!("wrote {}", out.join("homotopy.csv").display());
    println!("wrote {}", out.join("homotopy.svg").display());
    Ok(())
}
