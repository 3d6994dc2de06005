//! Cusp alignment: a reparametrization path moving every cusp parameter onto
//! the target's, followed by a scaling/translation path normalizing the
//! bounding box. After alignment, a straight-line morph between two curves
//! with the same cyclic word blends matching monotonicity arcs, which is what
//! makes the final interpolation robust.

use std::f64::consts::TAU;

use crate::config::ToleranceConfig;
use crate::curve::{CircleDiffeo, PlanarClosedCurve};
use crate::error::{Error, Result};
use crate::homotopy::{concatenate, verify, Interpolator, RegularHomotopy};
use crate::legendrian::{scan_cusps, CuspWord};
use crate::pump::{correct_area_exact, cyclic_distance, pump_weights};

/// Aligns `curve`'s cusp parameters and bounding box to `target`'s. Both
/// curves must carry the same cyclic cusp word (labels and sides, up to
/// rotating the start).
pub fn align_cusps(
    curve: &PlanarClosedCurve,
    target: &PlanarClosedCurve,
    cfg: &ToleranceConfig,
) -> Result<(PlanarClosedCurve, RegularHomotopy)> {
    let cusps_c = scan_cusps(curve, cfg)?;
    let cusps_t = scan_cusps(target, cfg)?;
    let word_c = CuspWord::from_cusps(&cusps_c)?;
    let word_t = CuspWord::from_cusps(&cusps_t)?;

    let mut rotations = word_c.matching_rotations(&word_t);
    if rotations.is_empty() {
        return Err(Error::WordMismatch(format!(
            "{word_c} (length {}) vs {word_t} (length {})",
            word_c.len(),
            word_t.len()
        )));
    }
    // Prefer the rotation moving cusps the least.
    let m = cusps_c.len();
    rotations.sort_by(|&r1, &r2| {
        let cost = |r: usize| -> f64 {
            (0..m)
                .map(|k| cyclic_distance(cusps_c[k].s, cusps_t[(k + r) % m].s))
                .sum()
        };
        cost(r1).partial_cmp(&cost(r2)).unwrap()
    });

    let keep_zero = curve.signed_area().abs() <= cfg.eps_area;
    let mut last_err: Option<Error> = None;
    for r in rotations {
        match try_alignment(curve, target, &cusps_c, &cusps_t, r, keep_zero, cfg) {
            Ok(done) => return Ok(done),
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::WordMismatch("no usable rotation".into())))
}

fn try_alignment(
    curve: &PlanarClosedCurve,
    target: &PlanarClosedCurve,
    cusps_c: &[crate::legendrian::Cusp],
    cusps_t: &[crate::legendrian::Cusp],
    rotation: usize,
    keep_zero: bool,
    cfg: &ToleranceConfig,
) -> Result<(PlanarClosedCurve, RegularHomotopy)> {
    let m = cusps_c.len();
    let n = curve.n();

    // The aligned curve is c∘φ, whose cusps sit at φ⁻¹(source params), so φ
    // must map each TARGET cusp parameter to the matched SOURCE one. Domain
    // anchors: target cusps, unwrapped increasingly; images: source cusps.
    let anchors_img: Vec<f64> = cusps_c.iter().map(|c| c.s).collect();
    let mut anchors_dom = Vec::with_capacity(m);
    let first_raw = cusps_t[rotation % m].s;
    let mut d0 = first_raw - anchors_img[0];
    while d0 > std::f64::consts::PI {
        d0 -= TAU;
    }
    while d0 < -std::f64::consts::PI {
        d0 += TAU;
    }
    anchors_dom.push(anchors_img[0] + d0);
    for k in 1..m {
        let prev_raw = cusps_t[(rotation + k - 1) % m].s;
        let raw = cusps_t[(rotation + k) % m].s;
        let gap = (raw - prev_raw).rem_euclid(TAU);
        let gap = if gap == 0.0 { TAU / m as f64 } else { gap };
        anchors_dom.push(anchors_dom[k - 1] + gap);
    }

    // Monotone C¹ (Fritsch-Carlson) circle map through the anchors; a
    // piecewise-linear map would leave derivative corners in the resampled
    // data, which the Legendrian lift is sensitive to.
    let secants: Vec<f64> = (0..m)
        .map(|k| {
            let d_lo = anchors_dom[k];
            let d_hi = if k + 1 < m {
                anchors_dom[k + 1]
            } else {
                anchors_dom[0] + TAU
            };
            let i_lo = anchors_img[k];
            let i_hi = if k + 1 < m {
                anchors_img[k + 1]
            } else {
                anchors_img[0] + TAU
            };
            (i_hi - i_lo) / (d_hi - d_lo)
        })
        .collect();
    let tangents: Vec<f64> = (0..m)
        .map(|k| {
            let prev = secants[(k + m - 1) % m];
            let cur = secants[k];
            // Monotonicity holds whenever 0 <= tangent <= 3·min(secants).
            (0.5 * (prev + cur)).min(3.0 * prev.min(cur))
        })
        .collect();
    let phi_at = |s: f64| -> f64 {
        let mut t = s;
        while t < anchors_dom[0] {
            t += TAU;
        }
        while t >= anchors_dom[0] + TAU {
            t -= TAU;
        }
        let mut k = m - 1;
        for q in 0..m {
            let lo = anchors_dom[q];
            let hi = if q + 1 < m {
                anchors_dom[q + 1]
            } else {
                anchors_dom[0] + TAU
            };
            if t >= lo && t < hi {
                k = q;
                break;
            }
        }
        let lo = anchors_dom[k];
        let hi = if k + 1 < m {
            anchors_dom[k + 1]
        } else {
            anchors_dom[0] + TAU
        };
        let ilo = anchors_img[k];
        let ihi = if k + 1 < m {
            anchors_img[k + 1]
        } else {
            anchors_img[0] + TAU
        };
        let h = hi - lo;
        let u = (t - lo) / h;
        let (u2, u3) = (u * u, u * u * u);
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h10 = u3 - 2.0 * u2 + u;
        let h11 = u3 - u2;
        let value = ilo * h00
            + ihi * h01
            + h * (tangents[k] * h10 + tangents[(k + 1) % m] * h11);
        value + (s - t)
    };

    let mut displacement: Vec<f64> = (0..n)
        .map(|i| {
            let s = TAU * i as f64 / n as f64;
            phi_at(s) - s
        })
        .collect();

    let max_disp = displacement.iter().fold(0.0f64, |a, d| a.max(d.abs()));
    let same_box = boxes_close(curve, target);
    if max_disp < 1e-12 && same_box {
        return Ok((curve.clone(), RegularHomotopy::constant(curve.clone())));
    }

    // A spline through piecewise-linear data can overshoot; relax corners
    // until the circle map stays strictly increasing.
    let mut diffeo = None;
    for _ in 0..6 {
        match CircleDiffeo::from_displacement_samples(displacement.clone()) {
            Ok(d) => {
                diffeo = Some(d);
                break;
            }
            Err(_) => {
                let smoothed: Vec<f64> = (0..n)
                    .map(|i| {
                        let prev = displacement[(i + n - 1) % n];
                        let next = displacement[(i + 1) % n];
                        0.25 * prev + 0.5 * displacement[i] + 0.25 * next
                    })
                    .collect();
                displacement = smoothed;
            }
        }
    }
    let Some(diffeo) = diffeo else {
        return Err(Error::Monotonicity(
            "cusp alignment map could not be made monotone".into(),
        ));
    };

    // Endpoint of the reparametrization path, with exact area restoration.
    let reparametrized = PlanarClosedCurve::from_fn(n, |s| curve.evaluate(diffeo.apply(s)))?;
    let reparametrized = if keep_zero {
        let w = pump_weights(&reparametrized, |_| 1.0);
        correct_area_exact(&reparametrized, &w, 0.0)?
    } else {
        reparametrized
    };

    let area_target = keep_zero.then_some(0.0);
    let h1 = RegularHomotopy::single(
        curve.clone(),
        reparametrized.clone(),
        Interpolator::ReparamPath {
            displacement: diffeo.displacement_samples().to_vec(),
            area_target,
        },
    )?;
    let report = verify(&h1, curve, &reparametrized, keep_zero, cfg);
    if !report.pass {
        return Err(Error::Certification {
            stage: "cusp alignment (reparametrization)".into(),
            report: Box::new(report),
        });
    }

    // Bounding-box normalization by uniform scale and translation.
    let (scale, translate) = box_map(&reparametrized, target);
    let mut h = h1;
    let mut out = reparametrized.clone();
    if (scale - 1.0).abs() > 1e-12 || translate.0.abs() > 1e-12 || translate.1.abs() > 1e-12 {
        let scaled = {
            let xs = out.xs().iter().map(|x| scale * x + translate.0).collect();
            let ys = out.ys().iter().map(|y| scale * y + translate.1).collect();
            PlanarClosedCurve::try_new(xs, ys)?
        };
        let h2 = RegularHomotopy::single(
            out.clone(),
            scaled.clone(),
            Interpolator::ScalingPath { scale, translate },
        )?;
        let report = verify(&h2, &out, &scaled, keep_zero, cfg);
        if !report.pass {
            return Err(Error::Certification {
                stage: "cusp alignment (scaling)".into(),
                report: Box::new(report),
            });
        }
        out = scaled;
        h = concatenate(&h, &h2)?;
    }

    // The word must have survived untouched.
    let out_word = CuspWord::from_cusps(&scan_cusps(&out, cfg)?)?;
    let target_word = CuspWord::from_cusps(cusps_t)?;
    if !out_word.cyclically_equal(&target_word) {
        return Err(Error::WordMismatch(format!(
            "alignment changed the word to {out_word}"
        )));
    }
    Ok((out, h))
}

fn boxes_close(a: &PlanarClosedCurve, b: &PlanarClosedCurve) -> bool {
    let (amin, amax) = a.bounding_box();
    let (bmin, bmax) = b.bounding_box();
    (amin.0 - bmin.0).abs() < 1e-9
        && (amin.1 - bmin.1).abs() < 1e-9
        && (amax.0 - bmax.0).abs() < 1e-9
        && (amax.1 - bmax.1).abs() < 1e-9
}

/// Uniform scale matching box diagonals, translation matching box centers.
fn box_map(from: &PlanarClosedCurve, to: &PlanarClosedCurve) -> (f64, (f64, f64)) {
    let (fmin, fmax) = from.bounding_box();
    let (tmin, tmax) = to.bounding_box();
    let fdiag = (fmax.0 - fmin.0).hypot(fmax.1 - fmin.1);
    let tdiag = (tmax.0 - tmin.0).hypot(tmax.1 - tmin.1);
    let scale = if fdiag > 0.0 { tdiag / fdiag } else { 1.0 };
    let fc = (0.5 * (fmin.0 + fmax.0), 0.5 * (fmin.1 + fmax.1));
    let tc = (0.5 * (tmin.0 + tmax.0), 0.5 * (tmin.1 + tmax.1));
    (scale, (tc.0 - scale * fc.0, tc.1 - scale * fc.1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::standard_curve;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn aligning_a_curve_with_itself_is_the_identity() {
        let c = standard_curve(0, 256, &cfg()).unwrap();
        let (out, h) = align_cusps(&c, &c, &cfg()).unwrap();
        assert!(h.is_constant());
        assert_eq!(out.xs(), c.xs());
    }

    #[test]
    fn word_length_mismatch_is_rejected() {
        let f8 =
            PlanarClosedCurve::from_fn(512, |s| (s.cos(), (2.0 * s).sin())).unwrap();
        let std0 = standard_curve(0, 512, &cfg()).unwrap();
        match align_cusps(&f8, &std0, &cfg()) {
            Err(Error::WordMismatch(_)) => {}
            other => panic!("expected WordMismatch, got {other:?}"),
        }
    }

    #[test]
    fn parameter_shifted_standard_curve_aligns() {
        let cfg = cfg();
        let std0 = standard_curve(0, 256, &cfg).unwrap();
        // Same geometry, cusps sitting at shifted parameters.
        let shifted = PlanarClosedCurve::from_fn(256, |s| {
            (-0.25 * (2.0 * (s + 0.7)).sin(), (s + 0.7).sin())
        })
        .unwrap();
        let (out, h) = align_cusps(&shifted, &std0, &cfg).unwrap();
        let report = verify(&h, &shifted, &out, true, &cfg);
        assert!(report.pass, "{}", report.summary());
        // Cusps now sit near the target's parameters.
        let got = scan_cusps(&out, &cfg).unwrap();
        let want = scan_cusps(&std0, &cfg).unwrap();
        for (g, w) in got.iter().zip(&want) {
            assert!(cyclic_distance(g.s, w.s) < 0.05, "{} vs {}", g.s, w.s);
        }
    }
}
