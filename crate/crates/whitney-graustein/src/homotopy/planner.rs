//! The end-to-end planner: a certified regular homotopy between any two
//! curves of equal rotation number, and the Legendrian export of zero-area
//! homotopies.
//!
//! Each curve is driven through the same pipeline `P`: normalize the area,
//! make the cusps generic, cancel mixed cusp pairs until the word is reduced
//! (fixing a `(-,+)` normal form by the two-move trick), align cusps to the
//! standard model of the shared rotation number, and morph onto it. The
//! answer is `P(c0)` followed by `P(c1)` reversed. Soundness comes from the
//! verifier, not from the construction: the planner re-checks the full path
//! and its zero-area suffix before returning it.

use crate::config::ToleranceConfig;
use crate::curve::PlanarClosedCurve;
use crate::error::{Error, Result};
use crate::homotopy::{
    concatenate, reverse, verify, HomotopyMetadata, RegularHomotopy,
};
use crate::legendrian::{lift, scan_cusps, CuspOrientation, CuspWord, LegendrianCurve};
use crate::moves::{
    align_cusps, cancel_cusp_pair, normalize_area, normalize_word_orientation, standard_curve,
};

/// Plans a certified regular homotopy from `c0` to `c1`. Fails fast with
/// [`Error::RotationMismatch`] when no such homotopy can exist.
pub fn plan_whitney_graustein(
    c0: &PlanarClosedCurve,
    c1: &PlanarClosedCurve,
    cfg: &ToleranceConfig,
) -> Result<RegularHomotopy> {
    cfg.validate()?;
    let rot0 = c0.rotation_number(cfg)?;
    let rot1 = c1.rotation_number(cfg)?;
    if rot0 != rot1 {
        return Err(Error::RotationMismatch { rot0, rot1 });
    }

    let n = c0.n().max(c1.n()).max(256);
    let a = c0.resample(n)?;
    let b = c1.resample(n)?;
    let standard = standard_curve(rot0, n, cfg)?;

    let p0 = pipeline_to_standard(&a, &standard, "c0", cfg)?;
    let p1 = pipeline_to_standard(&b, &standard, "c1", cfg)?;

    let total0 = p0.homotopy.segment_count();
    let total1 = p1.homotopy.segment_count();
    let mut h = concatenate(&p0.homotopy, &reverse(&p1.homotopy))?;

    let mut trace = p0.trace;
    trace.push(format!("junction: both pipelines meet at {}", standard_name(&standard)));
    trace.extend(p1.trace.into_iter().map(|t| format!("{t} [reversed]")));

    // Zero-area frames start once c0's normalization prefix ends and stop
    // where the reversed c1 normalization begins.
    let zero_range = (p0.zero_from, total0 + total1 - p1.zero_from);
    h.metadata = HomotopyMetadata {
        trace,
        zero_area_segments: Some(zero_range),
    };

    // Soundness is machine-checked, not assumed.
    let full = verify(&h, c0, c1, false, cfg);
    if !full.pass {
        return Err(Error::Planner {
            stage: "final verification".into(),
            message: full.summary(),
        });
    }
    if zero_range.1 > zero_range.0 {
        let sub = h.sub_homotopy(zero_range.0, zero_range.1)?;
        let sub_report = verify(&sub, sub.first(), sub.last(), true, cfg);
        if !sub_report.pass {
            return Err(Error::Planner {
                stage: "zero-area suffix verification".into(),
                message: sub_report.summary(),
            });
        }
    }
    Ok(h)
}

fn standard_name(c: &PlanarClosedCurve) -> String {
    c.name().unwrap_or("std").to_string()
}

struct Pipeline {
    homotopy: RegularHomotopy,
    trace: Vec<String>,
    /// Index of the first segment whose frames all have zero area.
    zero_from: usize,
}

/// Drives one curve to the standard model of its rotation number.
fn pipeline_to_standard(
    curve: &PlanarClosedCurve,
    standard: &PlanarClosedCurve,
    tag: &str,
    cfg: &ToleranceConfig,
) -> Result<Pipeline> {
    let mut trace = Vec::new();

    let (flat, h_area) = normalize_area(curve, cfg).map_err(|e| stage(tag, "normalize_area", &e))?;
    let zero_from = h_area.segment_count();
    if zero_from > 0 {
        trace.push(format!(
            "{tag}: normalize_area (area {:+.3e} -> 0)",
            curve.signed_area()
        ));
    }
    let mut h = h_area;

    let magnitude = 0.01 * flat.bbox_diagonal().max(1e-9);
    let (mut cur, h_gen) = flat
        .perturb_generic(magnitude, cfg)
        .map_err(|e| stage(tag, "perturb_generic", &e))?;
    if !h_gen.is_constant() {
        trace.push(format!("{tag}: perturb_generic (magnitude {magnitude:.2e})"));
        h = concatenate(&h, &h_gen)?;
    }

    // Cancel mixed adjacent pairs, leftmost feasible first, until the word is
    // a normal form. Each cancellation removes exactly one + and one -.
    loop {
        let cusps = scan_cusps(&cur, cfg).map_err(|e| stage(tag, "cusp scan", &e))?;
        let word = CuspWord::from_cusps(&cusps)?;
        if word.len() == 2 {
            break;
        }
        let len = word.len();
        let candidates: Vec<usize> = (0..len)
            .filter(|&i| word.letters()[i] != word.letters()[(i + 1) % len])
            .collect();
        if candidates.is_empty() {
            break; // all letters equal: the positive/negative normal form
        }
        let mut advanced = false;
        let mut last_err: Option<Error> = None;
        for &i in &candidates {
            match cancel_cusp_pair(&cur, i, cfg) {
                Ok((next, hc)) => {
                    trace.push(format!(
                        "{tag}: cancel pair ({i},{}) {}{} at s=({:.3},{:.3})",
                        (i + 1) % len,
                        cusps[i].orientation,
                        cusps[(i + 1) % len].orientation,
                        cusps[i].s,
                        cusps[(i + 1) % len].s,
                    ));
                    h = concatenate(&h, &hc)?;
                    cur = next;
                    advanced = true;
                    break;
                }
                Err(e) => last_err = Some(e),
            }
        }
        if !advanced {
            return Err(Error::Planner {
                stage: format!("{tag}: cancellation"),
                message: last_err
                    .map(|e| e.to_string())
                    .unwrap_or_else(|| "no cancellable pair".into()),
            });
        }
    }

    // Rotation-zero words must land in the (+,-) class before alignment.
    let cusps = scan_cusps(&cur, cfg)?;
    let word = CuspWord::from_cusps(&cusps)?;
    if word.len() == 2
        && word.value() == 0
        && word.right_cusp_label() == CuspOrientation::Down
    {
        let (next, ho) =
            normalize_word_orientation(&cur, cfg).map_err(|e| stage(tag, "orientation", &e))?;
        trace.push(format!("{tag}: normalize_word_orientation (-,+) -> (+,-)"));
        h = concatenate(&h, &ho)?;
        cur = next;
    }

    let (aligned, h_align) =
        align_cusps(&cur, standard, cfg).map_err(|e| stage(tag, "align_cusps", &e))?;
    if !h_align.is_constant() {
        trace.push(format!("{tag}: align_cusps to {}", standard_name(standard)));
        h = concatenate(&h, &h_align)?;
    }

    let h_final = super::interpolate_area_projected(&aligned, standard, true, cfg)
        .map_err(|e| stage(tag, "final interpolation", &e))?;
    trace.push(format!(
        "{tag}: interpolate to {} ({} segment(s))",
        standard_name(standard),
        h_final.segment_count()
    ));
    h = concatenate(&h, &h_final)?;

    Ok(Pipeline {
        homotopy: h,
        trace,
        zero_from,
    })
}

fn stage(tag: &str, name: &str, e: &Error) -> Error {
    Error::Planner {
        stage: format!("{tag}: {name}"),
        message: e.to_string(),
    }
}

/// Lifts every sampled frame of a zero-area homotopy to a Legendrian curve
/// with `z0 = 0`, checking the lift invariants frame by frame and the
/// constancy of the Legendrian rotation number.
pub fn lift_homotopy(
    h: &RegularHomotopy,
    cfg: &ToleranceConfig,
) -> Result<Vec<(f64, LegendrianCurve)>> {
    let mut out = Vec::new();
    let mut rot_first: Option<i64> = None;
    for t in h.time_grid(cfg.frame_count) {
        let frame = h.evaluate_frame(t);
        let area = frame.signed_area();
        if area.abs() > cfg.eps_area {
            return Err(Error::NonZeroArea { area, t: Some(t) });
        }
        let gamma = lift(&frame, 0.0, cfg)?;
        let rot = gamma.rotation_number(cfg)?;
        match rot_first {
            None => rot_first = Some(rot),
            Some(r0) if r0 != rot => {
                return Err(Error::Planner {
                    stage: "lift_homotopy".into(),
                    message: format!("rotation jumped {r0} -> {rot} at t={t:.4}"),
                });
            }
            _ => {}
        }
        out.push((t, gamma));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn figure8(n: usize) -> PlanarClosedCurve {
        PlanarClosedCurve::from_fn(n, |s| (s.cos(), (2.0 * s).sin())).unwrap()
    }

    #[test]
    fn rotation_mismatch_is_detected_before_any_work() {
        let circle = PlanarClosedCurve::from_fn(256, |s| (s.cos(), s.sin())).unwrap();
        let f8 = figure8(256);
        match plan_whitney_graustein(&circle, &f8, &cfg()) {
            Err(Error::RotationMismatch { rot0: 1, rot1: 0 }) => {}
            other => panic!("expected RotationMismatch(1, 0), got {other:?}"),
        }
    }

    #[test]
    fn figure8_to_standard_model_plans_with_one_cancellation() {
        let cfg = cfg();
        let f8 = figure8(384);
        let std0 = standard_curve(0, 384, &cfg).unwrap();
        let h = plan_whitney_graustein(&f8, &std0, &cfg).unwrap();
        let cancels = h
            .metadata
            .trace
            .iter()
            .filter(|t| t.contains("cancel pair") && t.starts_with("c0"))
            .count();
        assert_eq!(cancels, 1, "trace: {:#?}", h.metadata.trace);
        let report = verify(&h, &f8, &std0, false, &cfg);
        assert!(report.pass, "{}", report.summary());
    }

    #[test]
    fn lift_homotopy_of_constant_figure8() {
        let cfg = cfg();
        let f8 = figure8(512);
        let h = RegularHomotopy::constant(f8);
        let frames = lift_homotopy(&h, &cfg).unwrap();
        assert_eq!(frames.len(), 2);
        // Every frame's z is the symbolic lift of the figure-eight.
        for (_, gamma) in &frames {
            for (i, &z) in gamma.zs().iter().enumerate().step_by(37) {
                let s = std::f64::consts::TAU * i as f64 / gamma.n() as f64;
                let want = -(3.0 * s).sin() / 3.0 - s.sin();
                assert!((z - want).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn lift_homotopy_rejects_nonzero_area_frames() {
        let cfg = cfg();
        let circle = PlanarClosedCurve::from_fn(256, |s| (s.cos(), s.sin())).unwrap();
        let h = RegularHomotopy::constant(circle);
        assert!(lift_homotopy(&h, &cfg).is_err());
    }
}
