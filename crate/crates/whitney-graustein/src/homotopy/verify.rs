//! Independent certification of homotopies.
//!
//! The verifier knows nothing about how a homotopy was built: it samples
//! frames on a `(t, s)` lattice and checks endpoints, a relative speed floor,
//! rotation-number constancy, a bound on how far the tangent field may swing
//! between adjacent frames, and (optionally) per-frame zero area. The
//! tangent-angle criterion is the discrete stand-in for continuity of the
//! tangent in `t`: a family of individually regular curves whose tangents
//! jump — the classic shrinking-loop picture — fails it even though every
//! slice looks fine on its own.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::config::ToleranceConfig;
use crate::curve::PlanarClosedCurve;
use crate::homotopy::RegularHomotopy;

/// Thresholds the verifier enforced, echoed into the report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyTolerances {
    pub endpoint: f64,
    pub min_relative_speed: f64,
    pub max_tangent_angle: f64,
    pub area: f64,
}

/// Everything the verifier measured, with one pass flag per criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct CertificationReport {
    pub pass: bool,
    pub endpoint_pass: bool,
    pub speed_pass: bool,
    pub rot_pass: bool,
    pub tangent_pass: bool,
    /// `None` when the zero-area check was not requested.
    pub area_pass: Option<bool>,
    pub max_endpoint_deviation: f64,
    pub min_relative_speed: f64,
    /// `(t, s)` where the speed minimum was attained.
    pub min_speed_at: (f64, f64),
    /// Rotation number of each sampled frame; `None` marks a frame where the
    /// winding was undefined (irregular frame).
    pub rotation_numbers: Vec<Option<i64>>,
    pub rot_constant: bool,
    pub max_tangent_angle: f64,
    pub max_frame_area: Option<f64>,
    pub frames: usize,
    pub s_samples: usize,
    pub tolerances: VerifyTolerances,
}

impl CertificationReport {
    /// One line per criterion, `PASS`/`FAIL` first.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let line = |ok: bool, text: String| format!("{} {text}\n", if ok { "PASS" } else { "FAIL" });
        out.push_str(&line(
            self.endpoint_pass,
            format!(
                "endpoints: max deviation {:.3e} (tol {:.1e})",
                self.max_endpoint_deviation, self.tolerances.endpoint
            ),
        ));
        out.push_str(&line(
            self.speed_pass,
            format!(
                "speed: min relative speed {:.3e} at (t={:.4}, s={:.4}) (floor {:.1e})",
                self.min_relative_speed,
                self.min_speed_at.0,
                self.min_speed_at.1,
                self.tolerances.min_relative_speed
            ),
        ));
        out.push_str(&line(
            self.rot_pass,
            format!(
                "rotation number: {} over {} frames",
                if self.rot_constant { "constant" } else { "NOT constant" },
                self.frames
            ),
        ));
        out.push_str(&line(
            self.tangent_pass,
            format!(
                "tangent continuity: max adjacent-frame angle {:.4} rad (bound {:.4})",
                self.max_tangent_angle, self.tolerances.max_tangent_angle
            ),
        ));
        if let (Some(ok), Some(worst)) = (self.area_pass, self.max_frame_area) {
            out.push_str(&line(
                ok,
                format!(
                    "zero area: max per-frame |area| {:.3e} (tol {:.1e})",
                    worst, self.tolerances.area
                ),
            ));
        }
        out.push_str(if self.pass { "PASS overall\n" } else { "FAIL overall\n" });
        out
    }
}

/// Certifies `h` as a regular homotopy from `c0` to `c1`.
pub fn verify(
    h: &RegularHomotopy,
    c0: &PlanarClosedCurve,
    c1: &PlanarClosedCurve,
    expect_zero_area: bool,
    cfg: &ToleranceConfig,
) -> CertificationReport {
    let tolerances = VerifyTolerances {
        endpoint: 1e-6,
        min_relative_speed: cfg.eps_speed,
        max_tangent_angle: FRAC_PI_2,
        area: cfg.eps_area,
    };

    let ts = h.time_grid(cfg.frame_count);
    let n = h.n();
    let m = cfg.grid_refine.max(1) * n;

    let endpoint_dev = |frame: &PlanarClosedCurve, target: &PlanarClosedCurve| -> f64 {
        match target.resample(frame.n()) {
            Ok(t) => frame.max_sample_distance(&t),
            Err(_) => f64::INFINITY,
        }
    };

    let mut max_endpoint_deviation: f64 = 0.0;
    let mut min_relative_speed = f64::INFINITY;
    let mut min_speed_at = (0.0, 0.0);
    let mut min_frame_index = 0usize;
    let mut rotation_numbers = Vec::with_capacity(ts.len());
    let mut max_tangent_angle: f64 = 0.0;
    let mut max_frame_area: f64 = 0.0;

    let mut prev_tangents: Option<Vec<(f64, f64)>> = None;
    let mut frames_cache: Vec<PlanarClosedCurve> = Vec::with_capacity(ts.len());

    for (fi, &t) in ts.iter().enumerate() {
        let frame = h.evaluate_frame(t);
        if fi == 0 {
            max_endpoint_deviation = max_endpoint_deviation.max(endpoint_dev(&frame, c0));
        }
        if fi == ts.len() - 1 {
            max_endpoint_deviation = max_endpoint_deviation.max(endpoint_dev(&frame, c1));
        }

        let mut tangents = Vec::with_capacity(m);
        let mut frame_min = f64::INFINITY;
        let mut frame_max = 0.0f64;
        let mut frame_argmin = 0.0;
        for k in 0..m {
            let s = TAU * k as f64 / m as f64;
            let v = frame.derivative(s);
            let speed = v.0.hypot(v.1);
            if speed < frame_min {
                frame_min = speed;
                frame_argmin = s;
            }
            frame_max = frame_max.max(speed);
            tangents.push(v);
        }
        let rel = if frame_max > 0.0 { frame_min / frame_max } else { 0.0 };
        if rel < min_relative_speed {
            min_relative_speed = rel;
            min_speed_at = (t, frame_argmin);
            min_frame_index = fi;
        }

        if let Some(prev) = &prev_tangents {
            for (a, b) in prev.iter().zip(&tangents) {
                let cross = a.0 * b.1 - a.1 * b.0;
                let dot = a.0 * b.0 + a.1 * b.1;
                let angle = if (dot, cross) == (0.0, 0.0) {
                    std::f64::consts::PI
                } else {
                    cross.atan2(dot).abs()
                };
                max_tangent_angle = max_tangent_angle.max(angle);
            }
        }
        prev_tangents = Some(tangents);

        rotation_numbers.push(frame.rotation_number(cfg).ok());
        if expect_zero_area {
            max_frame_area = max_frame_area.max(frame.signed_area().abs());
        }
        frames_cache.push(frame);
    }

    // One refinement pass near the speed minimum: rescan a tight s-window on
    // the offending frame and on half-step frames around it.
    let (t_min, s_min) = min_speed_at;
    let dt = if ts.len() > 1 { ts[1] - ts[0] } else { 0.0 };
    let window = 2.0 * TAU / m as f64;
    let mut refine = |frame: &PlanarClosedCurve, t: f64| {
        let mut local_max = 0.0f64;
        for k in 0..m {
            let s = TAU * k as f64 / m as f64;
            let v = frame.derivative(s);
            local_max = local_max.max(v.0.hypot(v.1));
        }
        for q in 0..=64 {
            let s = s_min - window + 2.0 * window * q as f64 / 64.0;
            let v = frame.derivative(s);
            let rel = if local_max > 0.0 {
                v.0.hypot(v.1) / local_max
            } else {
                0.0
            };
            if rel < min_relative_speed {
                min_relative_speed = rel;
                min_speed_at = (t, s.rem_euclid(TAU));
            }
        }
    };
    refine(&frames_cache[min_frame_index], t_min);
    if dt > 0.0 {
        for half in [t_min - 0.5 * dt, t_min + 0.5 * dt] {
            if (0.0..=1.0).contains(&half) {
                refine(&h.evaluate_frame(half), half);
            }
        }
    }

    let endpoint_pass = max_endpoint_deviation <= tolerances.endpoint;
    let speed_pass = min_relative_speed >= tolerances.min_relative_speed;
    let rot0 = c0.rotation_number(cfg).ok();
    let rot_constant = rot0.is_some()
        && rotation_numbers
            .iter()
            .all(|r| r.is_some() && *r == rot0);
    let tangent_pass = max_tangent_angle <= tolerances.max_tangent_angle;
    let area_pass = expect_zero_area.then_some(max_frame_area <= tolerances.area);

    let pass = endpoint_pass
        && speed_pass
        && rot_constant
        && tangent_pass
        && area_pass.unwrap_or(true);

    CertificationReport {
        pass,
        endpoint_pass,
        speed_pass,
        rot_pass: rot_constant,
        rot_constant,
        tangent_pass,
        area_pass,
        max_endpoint_deviation,
        min_relative_speed,
        min_speed_at,
        rotation_numbers,
        max_tangent_angle,
        max_frame_area: expect_zero_area.then_some(max_frame_area),
        frames: ts.len(),
        s_samples: m,
        tolerances,
    }
}
