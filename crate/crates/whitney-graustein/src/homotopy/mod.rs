//! The homotopy data model: keyframe curves joined by segment interpolators,
//! with frame evaluation, path algebra, certified interpolation, the
//! end-to-end planner, and the independent verifier.

mod planner;
mod verify;

pub use planner::{lift_homotopy, plan_whitney_graustein};
pub use verify::{verify, CertificationReport, VerifyTolerances};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::ToleranceConfig;
use crate::curve::PlanarClosedCurve;
use crate::error::{Error, Result};
use crate::pump::{correct_area_exact, masked_pump_weights, pump_weights};
use crate::spline::PeriodicSpline;

/// How a segment turns its two bounding keyframes into intermediate frames.
#[derive(Debug, Clone)]
pub enum Interpolator {
    /// Linear interpolation of samples; when `area_target` is set, every
    /// frame is pushed back to that signed area along the pump.
    StraightLine { area_target: Option<f64> },
    /// Linear interpolation of samples produced by a cusp surgery. The pump
    /// that keeps frames at zero area avoids the replacement `window` and the
    /// `guards` zones around surviving cusps.
    SurgeryBump {
        window: (f64, f64),
        guards: Vec<(f64, f64)>,
    },
    /// Path of reparametrizations `s ↦ s + t·D(s)`; `D` is stored as
    /// displacement samples of the full move.
    ReparamPath {
        displacement: Vec<f64>,
        area_target: Option<f64>,
    },
    /// Uniform scaling and translation applied proportionally to `t`.
    ScalingPath { scale: f64, translate: (f64, f64) },
}

/// One homotopy segment; `reversed` runs the interpolator backwards.
#[derive(Debug, Clone)]
pub struct Segment {
    pub interpolator: Interpolator,
    pub reversed: bool,
}

impl Segment {
    pub fn new(interpolator: Interpolator) -> Self {
        Self {
            interpolator,
            reversed: false,
        }
    }

    fn frame(
        &self,
        from: &PlanarClosedCurve,
        to: &PlanarClosedCurve,
        tau: f64,
    ) -> PlanarClosedCurve {
        if self.reversed {
            self.interpolator.frame(to, from, 1.0 - tau)
        } else {
            self.interpolator.frame(from, to, tau)
        }
    }
}

impl Interpolator {
    fn frame(
        &self,
        from: &PlanarClosedCurve,
        to: &PlanarClosedCurve,
        tau: f64,
    ) -> PlanarClosedCurve {
        match self {
            Interpolator::StraightLine { area_target } => {
                let blend = lerp_curves(from, to, tau);
                match area_target {
                    Some(target) => {
                        let w = pump_weights(&blend, |_| 1.0);
                        correct_area_exact(&blend, &w, *target).unwrap_or(blend)
                    }
                    None => blend,
                }
            }
            Interpolator::SurgeryBump { window, guards } => {
                let blend = lerp_curves(from, to, tau);
                let mut zones = vec![*window];
                zones.extend_from_slice(guards);
                let w = masked_pump_weights(from, &zones);
                correct_area_exact(&blend, &w, 0.0).unwrap_or(blend)
            }
            Interpolator::ReparamPath {
                displacement,
                area_target,
            } => {
                let d = PeriodicSpline::new(displacement.clone());
                let n = from.n();
                let frame = PlanarClosedCurve::from_fn(n, |s| {
                    from.evaluate(s + tau * d.value(s))
                })
                .expect("reparametrized frame stays valid");
                match area_target {
                    Some(target) => {
                        let w = pump_weights(&frame, |_| 1.0);
                        correct_area_exact(&frame, &w, *target).unwrap_or(frame)
                    }
                    None => frame,
                }
            }
            Interpolator::ScalingPath { scale, translate } => {
                let alpha = 1.0 - tau + tau * scale;
                let xs = from.xs().iter().map(|x| alpha * x + tau * translate.0).collect();
                let ys = from.ys().iter().map(|y| alpha * y + tau * translate.1).collect();
                PlanarClosedCurve::try_new(xs, ys).expect("scaled frame stays valid")
            }
        }
    }
}

fn lerp_curves(a: &PlanarClosedCurve, b: &PlanarClosedCurve, t: f64) -> PlanarClosedCurve {
    assert_eq!(a.n(), b.n(), "keyframes must share the sample count");
    let xs = a
        .xs()
        .iter()
        .zip(b.xs())
        .map(|(p, q)| (1.0 - t) * p + t * q)
        .collect();
    let ys = a
        .ys()
        .iter()
        .zip(b.ys())
        .map(|(p, q)| (1.0 - t) * p + t * q)
        .collect();
    PlanarClosedCurve::try_new(xs, ys).expect("lerp of valid curves is valid")
}

/// Construction notes attached to a homotopy.
#[derive(Debug, Clone, Default)]
pub struct HomotopyMetadata {
    /// Human-readable build steps, one entry per event.
    pub trace: Vec<String>,
    /// Segment range (inclusive start, exclusive end) whose frames all claim
    /// zero area; set by the planner once normalization is done.
    pub zero_area_segments: Option<(usize, usize)>,
}

/// A regular homotopy: ordered keyframes plus one interpolator per gap.
/// Frames at any `t` are derived on demand, so the time resolution is a
/// rendering choice, not a storage format.
#[derive(Debug, Clone)]
pub struct RegularHomotopy {
    keyframes: Vec<PlanarClosedCurve>,
    segments: Vec<Segment>,
    pub metadata: HomotopyMetadata,
}

impl RegularHomotopy {
    pub fn new(
        keyframes: Vec<PlanarClosedCurve>,
        segments: Vec<Segment>,
        metadata: HomotopyMetadata,
    ) -> Result<Self> {
        if keyframes.is_empty() {
            return Err(Error::Precondition("homotopy needs a keyframe".into()));
        }
        if segments.len() + 1 != keyframes.len() {
            return Err(Error::Precondition(format!(
                "segment count {} must be keyframe count {} minus one",
                segments.len(),
                keyframes.len()
            )));
        }
        let n = keyframes[0].n();
        if keyframes.iter().any(|k| k.n() != n) {
            return Err(Error::Precondition(
                "all keyframes must share the sample count".into(),
            ));
        }
        Ok(Self {
            keyframes,
            segments,
            metadata,
        })
    }

    /// The homotopy that stays at `curve` for all `t`.
    pub fn constant(curve: PlanarClosedCurve) -> Self {
        Self {
            keyframes: vec![curve],
            segments: Vec::new(),
            metadata: HomotopyMetadata::default(),
        }
    }

    /// Single segment between two keyframes.
    pub fn single(
        from: PlanarClosedCurve,
        to: PlanarClosedCurve,
        interpolator: Interpolator,
    ) -> Result<Self> {
        Self::new(
            vec![from, to],
            vec![Segment::new(interpolator)],
            HomotopyMetadata::default(),
        )
    }

    pub fn keyframes(&self) -> &[PlanarClosedCurve] {
        &self.keyframes
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    pub fn first(&self) -> &PlanarClosedCurve {
        &self.keyframes[0]
    }

    pub fn last(&self) -> &PlanarClosedCurve {
        self.keyframes.last().expect("nonempty")
    }

    pub fn is_constant(&self) -> bool {
        self.segments.is_empty()
    }

    /// Sample count shared by all keyframes.
    pub fn n(&self) -> usize {
        self.keyframes[0].n()
    }

    /// The curve at time `t ∈ [0, 1]`. Keyframes are returned exactly
    /// (cloned samples), interior frames are computed from the segment's
    /// interpolator with `t` rescaled uniformly per segment.
    pub fn evaluate_frame(&self, t: f64) -> PlanarClosedCurve {
        if self.segments.is_empty() || t <= 0.0 {
            return self.keyframes[0].clone();
        }
        if t >= 1.0 {
            return self.last().clone();
        }
        let k = self.segments.len() as f64;
        let scaled = t * k;
        let mut j = scaled.floor() as usize;
        if j >= self.segments.len() {
            j = self.segments.len() - 1;
        }
        let tau = scaled - j as f64;
        if tau == 0.0 {
            return self.keyframes[j].clone();
        }
        self.segments[j].frame(&self.keyframes[j], &self.keyframes[j + 1], tau)
    }

    /// Uniform time grid with `per_segment` frames per segment, always
    /// including every keyframe time. A constant homotopy yields `{0, 1}`.
    pub fn time_grid(&self, per_segment: usize) -> Vec<f64> {
        if self.segments.is_empty() {
            return vec![0.0, 1.0];
        }
        let k = self.segments.len();
        let f = per_segment.max(1);
        let mut ts = Vec::with_capacity(k * f + 1);
        for j in 0..k {
            for q in 0..f {
                ts.push((j as f64 + q as f64 / f as f64) / k as f64);
            }
        }
        ts.push(1.0);
        ts
    }

    /// Resamples every keyframe (and displacement payload) to `n` samples.
    pub fn resample(&self, n: usize) -> Result<Self> {
        if n == self.n() {
            return Ok(self.clone());
        }
        let keyframes = self
            .keyframes
            .iter()
            .map(|k| k.resample(n))
            .collect::<Result<Vec<_>>>()?;
        let segments = self
            .segments
            .iter()
            .map(|seg| {
                let interpolator = match &seg.interpolator {
                    Interpolator::ReparamPath {
                        displacement,
                        area_target,
                    } => {
                        let d = PeriodicSpline::new(displacement.clone());
                        let resampled = (0..n)
                            .map(|i| d.value(std::f64::consts::TAU * i as f64 / n as f64))
                            .collect();
                        Interpolator::ReparamPath {
                            displacement: resampled,
                            area_target: *area_target,
                        }
                    }
                    other => other.clone(),
                };
                Segment {
                    interpolator,
                    reversed: seg.reversed,
                }
            })
            .collect();
        Ok(Self {
            keyframes,
            segments,
            metadata: self.metadata.clone(),
        })
    }

    /// Restriction to a segment range, keeping the bounding keyframes.
    pub fn sub_homotopy(&self, start_segment: usize, end_segment: usize) -> Result<Self> {
        if start_segment > end_segment || end_segment > self.segments.len() {
            return Err(Error::Precondition("segment range out of bounds".into()));
        }
        if start_segment == end_segment {
            return Ok(Self::constant(self.keyframes[start_segment].clone()));
        }
        Self::new(
            self.keyframes[start_segment..=end_segment].to_vec(),
            self.segments[start_segment..end_segment].to_vec(),
            HomotopyMetadata::default(),
        )
    }
}

/// Joins two homotopies whose junction keyframes agree within `1e-9` per
/// sample (after resampling to a common count).
pub fn concatenate(h1: &RegularHomotopy, h2: &RegularHomotopy) -> Result<RegularHomotopy> {
    let n = h1.n().max(h2.n());
    let a = h1.resample(n)?;
    let b = h2.resample(n)?;
    let gap = a.last().max_sample_distance(b.first());
    if gap > 1e-9 {
        return Err(Error::MismatchedEndpoints { gap });
    }
    if a.is_constant() {
        let mut out = b;
        let mut trace = a.metadata.trace;
        trace.extend(out.metadata.trace);
        out.metadata.trace = trace;
        return Ok(out);
    }
    if b.is_constant() {
        let mut out = a;
        out.metadata.trace.extend(b.metadata.trace);
        return Ok(out);
    }
    let mut keyframes = a.keyframes;
    keyframes.extend(b.keyframes.into_iter().skip(1));
    let mut segments = a.segments;
    segments.extend(b.segments);
    let mut trace = a.metadata.trace;
    trace.extend(b.metadata.trace);
    RegularHomotopy::new(
        keyframes,
        segments,
        HomotopyMetadata {
            trace,
            zero_area_segments: None,
        },
    )
}

/// The same path traversed backwards.
pub fn reverse(h: &RegularHomotopy) -> RegularHomotopy {
    let mut keyframes = h.keyframes.clone();
    keyframes.reverse();
    let mut segments = h.segments.clone();
    segments.reverse();
    for seg in &mut segments {
        seg.reversed = !seg.reversed;
    }
    let mut trace = h.metadata.trace.clone();
    trace.reverse();
    RegularHomotopy {
        keyframes,
        segments,
        metadata: HomotopyMetadata {
            trace,
            zero_area_segments: None,
        },
    }
}

/// Straight-line interpolation between two curves with optional per-frame
/// exact area restoration, certified; on failure, bisects with seeded
/// midpoint jitter until the insertion budget runs out.
pub fn interpolate_area_projected(
    c0: &PlanarClosedCurve,
    c1: &PlanarClosedCurve,
    keep_area_zero: bool,
    cfg: &ToleranceConfig,
) -> Result<RegularHomotopy> {
    let n = c0.n().max(c1.n());
    let a = c0.resample(n)?;
    let b = c1.resample(n)?;
    if keep_area_zero {
        for c in [&a, &b] {
            let area = c.signed_area();
            if area.abs() > cfg.eps_area {
                return Err(Error::NonZeroArea { area, t: None });
            }
        }
    }
    let target = if keep_area_zero { Some(0.0) } else { None };
    let mut budget = Budget {
        insertions: 0,
        worst: (0.5, 0.0, f64::INFINITY),
    };
    build_span(&a, &b, target, keep_area_zero, cfg, &mut budget)
}

struct Budget {
    insertions: usize,
    worst: (f64, f64, f64),
}

fn build_span(
    from: &PlanarClosedCurve,
    to: &PlanarClosedCurve,
    target: Option<f64>,
    keep_area_zero: bool,
    cfg: &ToleranceConfig,
    budget: &mut Budget,
) -> Result<RegularHomotopy> {
    let h = RegularHomotopy::single(
        from.clone(),
        to.clone(),
        Interpolator::StraightLine { area_target: target },
    )?;
    let report = verify::verify(&h, from, to, keep_area_zero, cfg);
    if report.pass {
        return Ok(h);
    }
    if report.min_relative_speed < budget.worst.2 {
        budget.worst = (
            report.min_speed_at.0,
            report.min_speed_at.1,
            report.min_relative_speed,
        );
    }
    if budget.insertions >= cfg.retry_budget {
        return Err(Error::Interpolation {
            t: budget.worst.0,
            s: budget.worst.1,
            speed: budget.worst.2,
        });
    }
    budget.insertions += 1;
    let mid = jittered_midpoint(from, to, target, cfg, budget.insertions)?;
    let left = build_span(from, &mid, target, keep_area_zero, cfg, budget)?;
    let right = build_span(&mid, to, target, keep_area_zero, cfg, budget)?;
    concatenate(&left, &right)
}

fn jittered_midpoint(
    from: &PlanarClosedCurve,
    to: &PlanarClosedCurve,
    target: Option<f64>,
    cfg: &ToleranceConfig,
    attempt: usize,
) -> Result<PlanarClosedCurve> {
    let mid = lerp_curves(from, to, 0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed ^ (0x9e37 + attempt as u64));
    let amp = 1e-3 * mid.bbox_diagonal().max(1e-6) * attempt as f64;
    let n = mid.n();
    let mut xs = mid.xs().to_vec();
    let mut ys = mid.ys().to_vec();
    for k in 1..=4usize {
        let (ax, bx, ay, by): (f64, f64, f64, f64) = (
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        for i in 0..n {
            let s = std::f64::consts::TAU * i as f64 / n as f64;
            let (c, sn) = ((k as f64 * s).cos(), (k as f64 * s).sin());
            xs[i] += amp / k as f64 * (ax * c + bx * sn);
            ys[i] += amp / k as f64 * (ay * c + by * sn);
        }
    }
    let jittered = PlanarClosedCurve::try_new(xs, ys)?;
    match target {
        Some(t) => {
            let w = pump_weights(&jittered, |_| 1.0);
            correct_area_exact(&jittered, &w, t)
        }
        None => Ok(jittered),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    fn std0(n: usize) -> PlanarClosedCurve {
        PlanarClosedCurve::from_fn(n, |s| (-0.25 * (2.0 * s).sin(), s.sin())).unwrap()
    }

    #[test]
    fn frame_endpoints_are_exact() {
        let a = std0(128);
        let b = a.scale(2.0).unwrap();
        let h = RegularHomotopy::single(
            a.clone(),
            b.clone(),
            Interpolator::StraightLine { area_target: None },
        )
        .unwrap();
        assert_eq!(h.evaluate_frame(0.0).xs(), a.xs());
        assert_eq!(h.evaluate_frame(1.0).xs(), b.xs());
    }

    #[test]
    fn constant_homotopy_is_constant() {
        let c = std0(64);
        let h = RegularHomotopy::constant(c.clone());
        for t in [0.0, 0.3, 0.77, 1.0] {
            assert_eq!(h.evaluate_frame(t).xs(), c.xs());
        }
    }

    #[test]
    fn concatenate_then_reverse_round_trips() {
        let a = std0(96);
        let b = a.translate(0.3, -0.2);
        let c = b.scale(1.5).unwrap();
        let h1 = RegularHomotopy::single(
            a.clone(),
            b.clone(),
            Interpolator::StraightLine { area_target: None },
        )
        .unwrap();
        let h2 = RegularHomotopy::single(
            b.clone(),
            c.clone(),
            Interpolator::StraightLine { area_target: None },
        )
        .unwrap();
        let h = concatenate(&h1, &h2).unwrap();
        assert_eq!(h.segment_count(), 2);

        let hr = reverse(&h);
        assert_eq!(hr.first().xs(), c.xs());
        assert_eq!(hr.last().xs(), a.xs());

        // Double reversal reproduces frames exactly.
        let hrr = reverse(&hr);
        for t in [0.1, 0.25, 0.5, 0.9] {
            assert_eq!(hrr.evaluate_frame(t).xs(), h.evaluate_frame(t).xs());
        }

        // concatenate(h, reverse(h)) starts and ends at the same curve.
        let loopback = concatenate(&h, &reverse(&h)).unwrap();
        assert_eq!(loopback.first().xs(), a.xs());
        assert_eq!(loopback.last().xs(), a.xs());
    }

    #[test]
    fn concatenate_rejects_gaps() {
        let a = std0(64);
        let b = a.translate(0.5, 0.0);
        let h1 = RegularHomotopy::constant(a);
        let h2 = RegularHomotopy::constant(b);
        assert!(matches!(
            concatenate(&h1, &h2),
            Err(Error::MismatchedEndpoints { .. })
        ));
    }

    #[test]
    fn straight_line_frames_keep_zero_area_when_asked() {
        let a = std0(128);
        // A reparametrized copy: same geometry, different samples.
        let b = PlanarClosedCurve::from_fn(128, |s| {
            (-0.25 * (2.0 * (s + 0.4)).sin(), (s + 0.4).sin())
        })
        .unwrap();
        let h = interpolate_area_projected(&a, &b, true, &cfg()).unwrap();
        for t in [0.2, 0.5, 0.8] {
            assert!(h.evaluate_frame(t).signed_area().abs() <= 1e-12);
        }
    }

    #[test]
    fn identical_endpoints_interpolate_trivially() {
        let a = std0(128);
        let h = interpolate_area_projected(&a, &a.clone(), true, &cfg()).unwrap();
        let mid = h.evaluate_frame(0.5);
        assert!(mid.max_sample_distance(&a) <= 1e-12);
    }

    #[test]
    fn mirrored_standard_curve_fails_single_segment_interpolation() {
        // The midpoint of Std(0) and its x-reflection is (0, sin s), which has
        // zero speed at s = π/2: no straight segment can certify.
        let a = std0(256);
        let b = a.mirror_y();
        let no_retry = ToleranceConfig {
            retry_budget: 0,
            ..cfg()
        };
        match interpolate_area_projected(&a, &b, true, &no_retry) {
            Err(Error::Interpolation { t, s, speed }) => {
                assert_abs_diff_eq!(t, 0.5, epsilon = 0.1);
                let folded = if s > PI { s - PI } else { s };
                assert_abs_diff_eq!(folded, PI / 2.0, epsilon = 0.2);
                assert!(speed < 1e-2);
            }
            other => panic!("expected InterpolationFailure, got {other:?}"),
        }
    }

    #[test]
    fn scaling_path_keeps_zero_area() {
        let a = std0(128);
        let b = a.scale(1.7).unwrap().translate(0.2, 0.1);
        let h = RegularHomotopy::single(
            a,
            b,
            Interpolator::ScalingPath {
                scale: 1.7,
                translate: (0.2, 0.1),
            },
        )
        .unwrap();
        for t in [0.25, 0.5, 0.75] {
            assert_abs_diff_eq!(h.evaluate_frame(t).signed_area(), 0.0, epsilon = 1e-12);
        }
    }
}
