//! SVG and CSV output: front projections with labelled cusp markers, and
//! homotopy frame dumps.

use std::fmt::Write as _;
use std::path::Path;

use crate::config::ToleranceConfig;
use crate::curve::PlanarClosedCurve;
use crate::error::Result;
use crate::homotopy::RegularHomotopy;
use crate::io::format_f64;
use crate::legendrian::LegendrianCurve;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameFormat {
    Csv,
    Svg,
}

/// Writes the front projection `(y, z)` as a static SVG with one marker and
/// `L/R` `+`/`-` annotation per cusp.
pub fn render_front_svg(
    gamma: &LegendrianCurve,
    path: &Path,
    cfg: &ToleranceConfig,
) -> Result<()> {
    let front = gamma.front_projection(cfg)?;
    let mut points = front.points.clone();
    points.push(front.points[0]); // close the polyline

    let (min, max) = bounds(points.iter().copied());
    let mapper = Mapper::new(min, max, 640.0, 480.0, 40.0);

    let mut body = String::new();
    let _ = write!(body, "  <path d=\"");
    for (i, &(y, z)) in points.iter().enumerate() {
        let (px, py) = mapper.map(y, z);
        let _ = write!(body, "{}{px:.2} {py:.2} ", if i == 0 { "M" } else { "L" });
    }
    let _ = writeln!(body, "Z\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>");

    for cusp in &front.cusps {
        let (y, z) = {
            let p = gamma.evaluate(cusp.s);
            (p.1, p.2)
        };
        let (px, py) = mapper.map(y, z);
        let _ = writeln!(
            body,
            "  <circle cx=\"{px:.2}\" cy=\"{py:.2}\" r=\"4\" fill=\"crimson\"/>"
        );
        let _ = writeln!(
            body,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"14\" font-family=\"monospace\">{}{}</text>",
            px + 6.0,
            py - 6.0,
            cusp.side,
            cusp.orientation
        );
    }

    write_svg(path, 640.0, 480.0, &body)
}

/// Writes homotopy frames either as CSV rows `t,s,x,y` (`frame_count × n`
/// rows) or as an SVG with one path element per frame.
pub fn render_frames(
    h: &RegularHomotopy,
    path: &Path,
    format: FrameFormat,
    cfg: &ToleranceConfig,
) -> Result<()> {
    let frames = cfg.frame_count.max(2);
    match format {
        FrameFormat::Csv => {
            let n = h.n();
            let mut out = String::from("t,s,x,y\n");
            for j in 0..frames {
                let t = j as f64 / (frames - 1) as f64;
                let frame = h.evaluate_frame(t);
                for i in 0..n {
                    let s = frame.node(i);
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        format_f64(t),
                        format_f64(s),
                        format_f64(frame.xs()[i]),
                        format_f64(frame.ys()[i])
                    );
                }
            }
            std::fs::write(path, out)?;
            Ok(())
        }
        FrameFormat::Svg => {
            let mut all_points = Vec::new();
            let mut frame_curves = Vec::with_capacity(frames);
            for j in 0..frames {
                let t = j as f64 / (frames - 1) as f64;
                let frame = h.evaluate_frame(t);
                all_points.extend(frame.xs().iter().zip(frame.ys()).map(|(&x, &y)| (x, y)));
                frame_curves.push(frame);
            }
            let (min, max) = bounds(all_points.into_iter());
            let mapper = Mapper::new(min, max, 640.0, 480.0, 40.0);
            let mut body = String::new();
            for (j, frame) in frame_curves.iter().enumerate() {
                let opacity = 0.15 + 0.85 * j as f64 / (frames - 1) as f64;
                let _ = write!(body, "  <path d=\"");
                for i in 0..=frame.n() {
                    let k = i % frame.n();
                    let (px, py) = mapper.map(frame.xs()[k], frame.ys()[k]);
                    let _ = write!(body, "{}{px:.2} {py:.2} ", if i == 0 { "M" } else { "L" });
                }
                let _ = writeln!(
                    body,
                    "Z\" fill=\"none\" stroke=\"steelblue\" stroke-opacity=\"{opacity:.3}\"/>"
                );
            }
            write_svg(path, 640.0, 480.0, &body)
        }
    }
}

/// Writes a plane curve as a standalone SVG path.
pub fn render_curve_svg(curve: &PlanarClosedCurve, path: &Path) -> Result<()> {
    let points: Vec<(f64, f64)> = curve
        .xs()
        .iter()
        .zip(curve.ys())
        .map(|(&x, &y)| (x, y))
        .collect();
    let (min, max) = bounds(points.iter().copied());
    let mapper = Mapper::new(min, max, 640.0, 480.0, 40.0);
    let mut body = String::new();
    let _ = write!(body, "  <path d=\"");
    for i in 0..=points.len() {
        let (x, y) = points[i % points.len()];
        let (px, py) = mapper.map(x, y);
        let _ = write!(body, "{}{px:.2} {py:.2} ", if i == 0 { "M" } else { "L" });
    }
    let _ = writeln!(body, "Z\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>");
    write_svg(path, 640.0, 480.0, &body)
}

struct Mapper {
    min: (f64, f64),
    scale: f64,
    height: f64,
    margin: f64,
}

impl Mapper {
    fn new(min: (f64, f64), max: (f64, f64), width: f64, height: f64, margin: f64) -> Self {
        let dx = (max.0 - min.0).max(1e-9);
        let dy = (max.1 - min.1).max(1e-9);
        let scale = ((width - 2.0 * margin) / dx).min((height - 2.0 * margin) / dy);
        Self {
            min,
            scale,
            height,
            margin,
        }
    }

    /// Math coordinates to SVG pixels (y axis flipped).
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.margin + (x - self.min.0) * self.scale,
            self.height - self.margin - (y - self.min.1) * self.scale,
        )
    }
}

fn bounds(points: impl Iterator<Item = (f64, f64)>) -> ((f64, f64), (f64, f64)) {
    let mut min = (f64::INFINITY, f64::INFINITY);
    let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (x, y) in points {
        min.0 = min.0.min(x);
        min.1 = min.1.min(y);
        max.0 = max.0.max(x);
        max.1 = max.1.max(y);
    }
    (min, max)
}

fn write_svg(path: &Path, width: f64, height: f64, body: &str) -> Result<()> {
    let doc = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n{body}</svg>\n"
    );
    std::fs::write(path, doc)?;
    Ok(())
}
